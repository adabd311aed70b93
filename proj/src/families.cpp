#include "feedback/families.hpp"

#include <cmath>
#include <numbers>

#include "feedback/error.hpp"

namespace feedback {

namespace {

constexpr char kRowLetter[] = {'u', 'v', 'w'};

void require_fresh(const Graph& g, const std::string& name) {
  if (g.find(name)) throw Error(Errc::NameCollision, "vertex '" + name + "' already exists");
}

}  // namespace

std::string octa_name(Row r, int level) {
  return std::string(1, kRowLetter[static_cast<int>(r)]) + std::to_string(level);
}

Graph octahedral_path(int n) {
  if (n < 1) throw Error(Errc::BadParameter, "octahedral path needs n >= 1, got " + std::to_string(n));
  std::vector<std::string> names;
  names.reserve(3 * (n + 1));
  for (int i = 0; i <= n; ++i) {
    for (Row r : {Row::U, Row::V, Row::W}) names.push_back(octa_name(r, i));
  }
  std::vector<NamePair> edges;
  edges.reserve(9 * n + 3);
  auto u = [](int i) { return octa_name(Row::U, i); };
  auto v = [](int i) { return octa_name(Row::V, i); };
  auto w = [](int i) { return octa_name(Row::W, i); };
  for (int i = 0; i <= n; ++i) {
    edges.emplace_back(u(i), v(i));
    edges.emplace_back(u(i), w(i));
    edges.emplace_back(v(i), w(i));
    if (i == n) break;
    edges.emplace_back(u(i), u(i + 1));
    edges.emplace_back(u(i), w(i + 1));
    edges.emplace_back(v(i), v(i + 1));
    edges.emplace_back(v(i), u(i + 1));
    edges.emplace_back(w(i), w(i + 1));
    edges.emplace_back(w(i), v(i + 1));
  }
  return Graph::build(std::move(names), edges);
}

Graph double_wheel(int rim) {
  if (rim < 3) throw Error(Errc::BadParameter, "double wheel needs rim >= 3, got " + std::to_string(rim));
  std::vector<std::string> names;
  for (int i = 0; i < rim; ++i) names.push_back("v" + std::to_string(i));
  names.emplace_back("x");
  names.emplace_back("y");
  std::vector<NamePair> edges;
  for (int i = 0; i < rim; ++i) edges.emplace_back(names[i], names[(i + 1) % rim]);
  for (int i = 0; i < rim; ++i) edges.emplace_back(names[i], "x");
  for (int i = 0; i < rim; ++i) edges.emplace_back(names[i], "y");
  return Graph::build(std::move(names), edges);
}

Graph cycle_graph(int n) {
  if (n < 3) throw Error(Errc::BadParameter, "cycle needs n >= 3, got " + std::to_string(n));
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.push_back("c" + std::to_string(i));
  std::vector<NamePair> edges;
  for (int i = 0; i < n; ++i) edges.emplace_back(names[i], names[(i + 1) % n]);
  return Graph::build(std::move(names), edges);
}

Graph octahedron_addition(const Graph& g, VertexId u1, VertexId u2, VertexId u3,
                          std::string_view name_prefix) {
  const VertexId corner[3] = {u1, u2, u3};
  for (int i = 0; i < 3; ++i) {
    VertexId x = corner[i];
    VertexId y = corner[(i + 1) % 3];
    if (x >= g.vertex_count() || y >= g.vertex_count() || !g.adjacent(x, y)) {
      throw Error(Errc::NotATriangle, "corners " + std::to_string(x) + " and " + std::to_string(y) + " are not adjacent");
    }
  }
  std::vector<std::string> names = g.names();
  std::vector<NamePair> edges = g.edge_name_pairs();
  std::string added[3];
  for (int i = 0; i < 3; ++i) {
    added[i] = std::string(name_prefix) + std::to_string(i + 1);
    require_fresh(g, added[i]);
    names.push_back(added[i]);
  }
  edges.emplace_back(added[0], added[1]);
  edges.emplace_back(added[0], added[2]);
  edges.emplace_back(added[1], added[2]);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      if (j != i) edges.emplace_back(added[i], g.name(corner[j]));
    }
  }
  return Graph::build(std::move(names), edges);
}

Graph two_subdivision(const Graph& g, VertexId u, VertexId v, VertexId w, VertexId w2,
                      const std::string& name_a, const std::string& name_b) {
  auto uv = g.edge_between(u, v);
  if (!uv) throw Error(Errc::MissingEdge, "no edge between vertices " + std::to_string(u) + " and " + std::to_string(v));
  for (VertexId x : {w, w2}) {
    if (x == u || x == v || !g.adjacent(x, u) || !g.adjacent(x, v)) {
      throw Error(Errc::NotCommonNeighbor, "vertex " + std::to_string(x) + " is not a common neighbor of " + g.edge_label(*uv));
    }
  }
  if (w == w2) throw Error(Errc::NotCommonNeighbor, "common neighbors must be distinct, got " + g.name(w) + " twice");
  if (name_a == name_b) throw Error(Errc::NameCollision, "new vertices share the name '" + name_a + "'");
  require_fresh(g, name_a);
  require_fresh(g, name_b);

  std::vector<std::string> names = g.names();
  names.push_back(name_a);
  names.push_back(name_b);
  std::vector<NamePair> edges;
  edges.reserve(g.edge_count() + 6);
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (e == *uv) continue;
    edges.emplace_back(g.name(g.edge(e).a), g.name(g.edge(e).b));
  }
  const std::string& nu = g.name(u);
  const std::string& nv = g.name(v);
  edges.emplace_back(nu, name_a);
  edges.emplace_back(name_a, name_b);
  edges.emplace_back(name_b, nv);
  edges.emplace_back(name_a, g.name(w));
  edges.emplace_back(name_b, g.name(w));
  edges.emplace_back(name_a, g.name(w2));
  edges.emplace_back(name_b, g.name(w2));
  return Graph::build(std::move(names), edges);
}

Layout octahedral_path_layout(int n) {
  if (n < 1) throw Error(Errc::BadParameter, "octahedral path needs n >= 1, got " + std::to_string(n));
  Layout out;
  for (int i = 0; i <= n; ++i) {
    for (int row = 0; row < 3; ++row) out.push_back({static_cast<double>(i), static_cast<double>(row)});
  }
  return out;
}

Layout double_wheel_layout(int rim) {
  if (rim < 3) throw Error(Errc::BadParameter, "double wheel needs rim >= 3, got " + std::to_string(rim));
  Layout out = cycle_layout(rim);
  out.push_back({-0.25, 0.0});
  out.push_back({0.25, 0.0});
  return out;
}

Layout cycle_layout(int n) {
  if (n < 3) throw Error(Errc::BadParameter, "cycle needs n >= 3, got " + std::to_string(n));
  Layout out;
  for (int i = 0; i < n; ++i) {
    double angle = 2.0 * std::numbers::pi * i / n;
    out.push_back({std::cos(angle), std::sin(angle)});
  }
  return out;
}

}  // namespace feedback
