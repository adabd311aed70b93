#include "feedback/graph.hpp"

#include <algorithm>
#include <set>

#include "feedback/error.hpp"

namespace feedback {

Graph Graph::build(std::vector<std::string> vertex_names,
                   const std::vector<NamePair>& edge_pairs) {
  Graph g;
  g.index_.reserve(vertex_names.size());
  for (std::size_t i = 0; i < vertex_names.size(); ++i) {
    auto [it, inserted] = g.index_.emplace(vertex_names[i], static_cast<VertexId>(i));
    if (!inserted) throw Error(Errc::DuplicateVertex, "vertex '" + vertex_names[i] + "' listed twice");
  }
  g.names_ = std::move(vertex_names);
  g.adjacency_.resize(g.names_.size());

  std::set<std::pair<VertexId, VertexId>> seen;
  g.edges_.reserve(edge_pairs.size());
  for (const auto& [first, second] : edge_pairs) {
    auto lookup = [&](const std::string& name) {
      auto it = g.index_.find(name);
      if (it == g.index_.end()) {
        throw Error(Errc::UnknownVertex, "edge " + first + "-" + second + " references unknown vertex '" + name + "'");
      }
      return it->second;
    };
    VertexId u = lookup(first);
    VertexId v = lookup(second);
    if (u == v) throw Error(Errc::SelfLoop, "edge " + first + "-" + second + " is a self-loop");
    Edge e{std::min(u, v), std::max(u, v)};
    if (!seen.emplace(e.a, e.b).second) {
      throw Error(Errc::DuplicateEdge, "edge " + first + "-" + second + " listed twice");
    }
    auto id = static_cast<EdgeId>(g.edges_.size());
    g.edges_.push_back(e);
    g.adjacency_[e.a].push_back({e.b, id});
    g.adjacency_[e.b].push_back({e.a, id});
  }
  for (auto& row : g.adjacency_) {
    std::sort(row.begin(), row.end(),
              [](const Incidence& x, const Incidence& y) { return x.neighbor < y.neighbor; });
  }
  return g;
}

std::optional<VertexId> Graph::find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

VertexId Graph::index_of(std::string_view name) const {
  auto v = find(name);
  if (!v) throw Error(Errc::UnknownVertex, "unknown vertex '" + std::string(name) + "'");
  return *v;
}

std::vector<VertexId> Graph::neighbors(VertexId v) const {
  std::vector<VertexId> out;
  out.reserve(degree(v));
  for (const auto& inc : adjacency(v)) out.push_back(inc.neighbor);
  return out;
}

std::optional<EdgeId> Graph::edge_between(VertexId u, VertexId v) const {
  if (u >= vertex_count() || v >= vertex_count()) return std::nullopt;
  const auto& row = adjacency_[u];
  auto it = std::lower_bound(row.begin(), row.end(), v,
                             [](const Incidence& inc, VertexId x) { return inc.neighbor < x; });
  if (it == row.end() || it->neighbor != v) return std::nullopt;
  return it->edge;
}

std::string Graph::edge_label(EdgeId e) const {
  const Edge& ed = edge(e);
  return names_[ed.a] + "-" + names_[ed.b];
}

std::vector<NamePair> Graph::edge_name_pairs() const {
  std::vector<NamePair> out;
  out.reserve(edges_.size());
  for (const auto& e : edges_) out.emplace_back(names_[e.a], names_[e.b]);
  return out;
}

bool is_connected(const Graph& g) {
  if (g.vertex_count() == 0) return true;
  std::vector<bool> seen(g.vertex_count(), false);
  std::vector<VertexId> stack{0};
  seen[0] = true;
  std::size_t reached = 1;
  while (!stack.empty()) {
    VertexId v = stack.back();
    stack.pop_back();
    for (const auto& inc : g.adjacency(v)) {
      if (!seen[inc.neighbor]) {
        seen[inc.neighbor] = true;
        ++reached;
        stack.push_back(inc.neighbor);
      }
    }
  }
  return reached == g.vertex_count();
}

bool is_eulerian(const Graph& g) {
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (g.degree(v) % 2 != 0) return false;
  }
  return true;
}

std::size_t count_degree_residues(const Graph& g, int modulus, int residue) {
  if (modulus < 1 || residue < 0 || residue >= modulus) {
    throw Error(Errc::BadResidue, "residue " + std::to_string(residue) + " mod " + std::to_string(modulus));
  }
  std::size_t count = 0;
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (g.degree(v) % static_cast<std::size_t>(modulus) == static_cast<std::size_t>(residue)) ++count;
  }
  return count;
}

std::vector<std::size_t> degree_multiset(const Graph& g) {
  std::vector<std::size_t> out;
  out.reserve(g.vertex_count());
  for (VertexId v = 0; v < g.vertex_count(); ++v) out.push_back(g.degree(v));
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

bool color_from(const Graph& g, VertexId v, std::vector<int>& color) {
  if (v == g.vertex_count()) return true;
  for (int c = 0; c < 3; ++c) {
    bool clash = false;
    for (const auto& inc : g.adjacency(v)) {
      if (inc.neighbor < v && color[inc.neighbor] == c) {
        clash = true;
        break;
      }
    }
    if (clash) continue;
    color[v] = c;
    if (color_from(g, v + 1, color)) return true;
  }
  color[v] = -1;
  return false;
}

}  // namespace

std::optional<ColorPartition> three_coloring(const Graph& g) {
  std::vector<int> color(g.vertex_count(), -1);
  if (!color_from(g, 0, color)) return std::nullopt;

  // Renumber classes by first appearance so the output is canonical.
  ColorPartition out;
  std::vector<int> remap(3, -1);
  out.color_of.resize(g.vertex_count());
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    int& r = remap[color[v]];
    if (r < 0) {
      r = static_cast<int>(out.classes.size());
      out.classes.emplace_back();
    }
    out.classes[r].push_back(v);
    out.color_of[v] = r;
  }
  return out;
}

bool is_proper_coloring(const Graph& g, const ColorPartition& partition) {
  if (partition.color_of.size() != g.vertex_count() || partition.classes.size() > 3) return false;
  for (const auto& e : g.edges()) {
    if (partition.color_of[e.a] == partition.color_of[e.b]) return false;
  }
  std::size_t covered = 0;
  for (std::size_t c = 0; c < partition.classes.size(); ++c) {
    for (VertexId v : partition.classes[c]) {
      if (v >= g.vertex_count() || partition.color_of[v] != static_cast<int>(c)) return false;
      ++covered;
    }
  }
  return covered == g.vertex_count();
}

}  // namespace feedback
