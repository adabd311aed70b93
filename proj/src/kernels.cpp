#include "feedback/kernels.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>

#include <absl/container/flat_hash_set.h>

#include "feedback/error.hpp"
#include "feedback/families.hpp"

namespace feedback {

namespace {

using VMask = std::uint64_t;
constexpr std::size_t kMaxMaskVertices = 64;

VMask bit(VertexId v) { return VMask{1} << v; }

std::vector<VMask> adjacency_masks(const Graph& g) {
  std::vector<VMask> rows(g.vertex_count(), 0);
  for (const auto& e : g.edges()) {
    rows[e.a] |= bit(e.b);
    rows[e.b] |= bit(e.a);
  }
  return rows;
}

void require_vertex(const Graph& g, VertexId v) {
  if (v >= g.vertex_count()) throw Error(Errc::UnknownVertex, "vertex index " + std::to_string(v) + " out of range");
}

void require_mask_size(const Graph& g, std::size_t limit) {
  std::size_t cap = std::min(limit, kMaxMaskVertices);
  if (g.vertex_count() > cap) {
    throw Error(Errc::LimitExceeded, std::to_string(g.vertex_count()) + " vertices exceed the kernel search limit of " + std::to_string(cap));
  }
}

// Smaller sets first, then the lexicographically least sorted member list.
bool canonical_less(VMask a, VMask b) {
  int ca = std::popcount(a);
  int cb = std::popcount(b);
  if (ca != cb) return ca < cb;
  VMask diff = a ^ b;
  return diff != 0 && (a & (diff & (~diff + 1))) != 0;
}

KernelSet to_kernel(VMask members, VertexId start) {
  KernelSet out;
  out.start = start;
  for (VMask m = members; m != 0; m &= m - 1) out.members.push_back(static_cast<VertexId>(std::countr_zero(m)));
  return out;
}

bool independent(const std::vector<VMask>& adj, VMask set) {
  for (VMask m = set; m != 0; m &= m - 1) {
    if (adj[std::countr_zero(m)] & set) return false;
  }
  return true;
}

// Reduced row echelon form of the adjacency matrix; returns a nullspace basis.
std::vector<VMask> nullspace_basis(const Graph& g) {
  const std::size_t n = g.vertex_count();
  std::vector<VMask> rows = adjacency_masks(g);
  std::vector<int> pivot_row_of_col(n, -1);
  std::size_t rank = 0;
  for (std::size_t col = 0; col < n && rank < n; ++col) {
    std::size_t pick = rank;
    while (pick < n && !(rows[pick] & bit(static_cast<VertexId>(col)))) ++pick;
    if (pick == n) continue;
    std::swap(rows[rank], rows[pick]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r != rank && (rows[r] & bit(static_cast<VertexId>(col)))) rows[r] ^= rows[rank];
    }
    pivot_row_of_col[col] = static_cast<int>(rank);
    ++rank;
  }
  std::vector<VMask> basis;
  for (std::size_t free = 0; free < n; ++free) {
    if (pivot_row_of_col[free] >= 0) continue;
    VMask x = bit(static_cast<VertexId>(free));
    for (std::size_t col = 0; col < n; ++col) {
      int r = pivot_row_of_col[col];
      if (r >= 0 && (rows[r] & bit(static_cast<VertexId>(free)))) x |= bit(static_cast<VertexId>(col));
    }
    basis.push_back(x);
  }
  return basis;
}

}  // namespace

bool KernelSet::contains(VertexId v) const { return std::binary_search(members.begin(), members.end(), v); }

std::vector<std::string> KernelSet::names(const Graph& g) const {
  std::vector<std::string> out;
  for (VertexId v : members) out.push_back(g.name(v));
  return out;
}

std::string KernelCheck::describe(const Graph& g) const {
  switch (clause) {
    case KernelClause::Holds: return "even kernel";
    case KernelClause::EmptySet: return "the set is empty";
    case KernelClause::StartNotInSet: return "start vertex " + g.name(*vertex) + " is not in the set";
    case KernelClause::NotIndependent: return "members joined by edge " + g.edge_label(*edge);
    case KernelClause::OddNeighborCount:
      return "vertex " + g.name(*vertex) + " has " + std::to_string(count) + " neighbors in the set";
  }
  return "";
}

KernelCheck is_even_kernel(const Graph& g, VertexId start, std::span<const VertexId> members) {
  require_vertex(g, start);
  std::vector<char> in(g.vertex_count(), 0);
  for (VertexId v : members) {
    require_vertex(g, v);
    in[v] = 1;
  }
  KernelCheck check;
  if (members.empty()) {
    check.clause = KernelClause::EmptySet;
    return check;
  }
  if (!in[start]) {
    check.clause = KernelClause::StartNotInSet;
    check.vertex = start;
    return check;
  }
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (in[g.edge(e).a] && in[g.edge(e).b]) {
      check.clause = KernelClause::NotIndependent;
      check.edge = e;
      return check;
    }
  }
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (in[v]) continue;
    std::size_t count = 0;
    for (const auto& inc : g.adjacency(v)) count += in[inc.neighbor];
    if (count % 2 != 0) {
      check.clause = KernelClause::OddNeighborCount;
      check.vertex = v;
      check.count = count;
      return check;
    }
  }
  return check;
}

KernelCheck is_even_kernel(const Graph& g, const KernelSet& s) { return is_even_kernel(g, s.start, s.members); }

std::size_t KernelGraph::degree_in(const Graph& host, VertexId v) const {
  std::size_t d = 0;
  for (EdgeId e : edges) {
    if (host.edge(e).a == v || host.edge(e).b == v) ++d;
  }
  return d;
}

KernelGraph kernel_graph(const Graph& g, std::span<const VertexId> left, std::span<const VertexId> right) {
  std::vector<char> side(g.vertex_count(), 0);  // 1 = left, 2 = right
  for (VertexId v : left) {
    require_vertex(g, v);
    side[v] = 1;
  }
  for (VertexId v : right) {
    require_vertex(g, v);
    if (side[v] == 1) throw Error(Errc::BadBipartition, "vertex " + g.name(v) + " is on both sides");
    side[v] = 2;
  }
  KernelGraph h;
  h.left.assign(left.begin(), left.end());
  h.right.assign(right.begin(), right.end());
  std::sort(h.left.begin(), h.left.end());
  std::sort(h.right.begin(), h.right.end());
  for (VertexId s : h.left) {
    for (const auto& inc : g.adjacency(s)) {
      if (side[inc.neighbor] == 0) {
        throw Error(Errc::BadBipartition, "neighbor " + g.name(inc.neighbor) + " of " + g.name(s) + " is missing from the right side");
      }
    }
  }
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    int sa = side[g.edge(e).a];
    int sb = side[g.edge(e).b];
    if ((sa == 1 && sb == 2) || (sa == 2 && sb == 1)) h.edges.push_back(e);
  }
  return h;
}

std::size_t adjacency_nullity(const Graph& g) {
  require_mask_size(g, kMaxMaskVertices);
  return nullspace_basis(g).size();
}

std::optional<KernelSet> find_even_kernel_nullspace(const Graph& g, VertexId start) {
  require_vertex(g, start);
  require_mask_size(g, kMaxMaskVertices);
  const std::vector<VMask> basis = nullspace_basis(g);
  if (basis.size() >= 63) throw Error(Errc::LimitExceeded, "nullspace too large to enumerate");
  const std::vector<VMask> adj = adjacency_masks(g);

  std::optional<VMask> best;
  VMask x = 0;
  const std::uint64_t total = std::uint64_t{1} << basis.size();
  // Gray-code walk: step i flips the basis vector at the lowest set bit of i.
  for (std::uint64_t i = 1; i <= total; ++i) {
    if ((x & bit(start)) && independent(adj, x) && (!best || canonical_less(x, *best))) best = x;
    if (i == total) break;
    x ^= basis[std::countr_zero(i)];
  }
  if (!best) return std::nullopt;
  return to_kernel(*best, start);
}

namespace {

struct Backtrack {
  const Graph& g;
  std::vector<VMask> adj;
  // Vertices whose neighborhood is fully decided once vertex i is decided.
  std::vector<std::vector<VertexId>> settled_at;
  VertexId start;
  std::optional<VMask> best;

  Backtrack(const Graph& graph, VertexId s) : g(graph), adj(adjacency_masks(graph)), settled_at(graph.vertex_count()), start(s) {
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
      VertexId last = v;
      for (const auto& inc : g.adjacency(v)) last = std::max(last, inc.neighbor);
      settled_at[last].push_back(v);
    }
  }

  bool parity_ok(VertexId decided, VMask chosen) const {
    for (VertexId u : settled_at[decided]) {
      if (!(chosen & bit(u)) && std::popcount(adj[u] & chosen) % 2 != 0) return false;
    }
    return true;
  }

  void run(VertexId v, VMask chosen) {
    if (best && std::popcount(chosen) > std::popcount(*best)) return;
    if (v == g.vertex_count()) {
      if (!best || canonical_less(chosen, *best)) best = chosen;
      return;
    }
    // Including v first visits lexicographically smaller sets first.
    if (!(adj[v] & chosen)) {
      VMask with = chosen | bit(v);
      if (parity_ok(v, with)) run(v + 1, with);
    }
    if (v != start && parity_ok(v, chosen)) run(v + 1, chosen);
  }
};

}  // namespace

std::optional<KernelSet> find_even_kernel_backtracking(const Graph& g, VertexId start) {
  require_vertex(g, start);
  require_mask_size(g, kMaxMaskVertices);
  Backtrack search(g, start);
  search.run(0, 0);
  if (!search.best) return std::nullopt;
  return to_kernel(*search.best, start);
}

std::optional<KernelSet> find_even_kernel(const Graph& g, VertexId start, const KernelSearchOptions& options) {
  require_vertex(g, start);
  require_mask_size(g, options.vertex_limit);
  std::optional<KernelSet> found = adjacency_nullity(g) > options.max_nullity
                                       ? find_even_kernel_backtracking(g, start)
                                       : find_even_kernel_nullspace(g, start);
  if (found && !is_even_kernel(g, *found)) {
    throw Error(Errc::PreconditionFailed, "kernel search returned a set that fails the predicate");
  }
  return found;
}

ColorClassKernel color_class_kernel(const Graph& g, VertexId start) {
  require_vertex(g, start);
  ColorClassKernel out;
  if (!is_connected(g)) {
    out.not_applicable = "graph is not connected";
    return out;
  }
  if (!is_eulerian(g)) {
    out.not_applicable = "graph is not Eulerian";
    return out;
  }
  if (std::size_t c = count_degree_residues(g, 4, 2); c != 0) {
    out.not_applicable = std::to_string(c) + " vertices have degree 2 mod 4";
    return out;
  }
  auto coloring = three_coloring(g);
  if (!coloring) {
    out.not_applicable = "graph is not 3-colorable";
    return out;
  }
  if (coloring->class_count() != 3) {
    out.not_applicable = "coloring uses " + std::to_string(coloring->class_count()) + " classes, not 3";
    return out;
  }
  KernelSet s;
  s.start = start;
  s.members = coloring->classes[coloring->color_of[start]];
  if (KernelCheck check = is_even_kernel(g, s); !check) {
    out.not_applicable = "color class of the start is not an even kernel: " + check.describe(g);
    return out;
  }
  out.kernel = std::move(s);
  return out;
}

KernelSet lemma32_kernel(int m, Lemma32Start which) {
  if (m < 0) throw Error(Errc::BadParameter, "m must be >= 0, got " + std::to_string(m));
  KernelSet s;
  for (int i = 0; i <= m; ++i) {
    s.members.push_back(octa_vertex(Row::U, 3 * i));
    s.members.push_back(octa_vertex(Row::V, 3 * i + 1));
  }
  std::sort(s.members.begin(), s.members.end());
  s.start = which == Lemma32Start::P0 ? octa_vertex(Row::U, 0) : octa_vertex(Row::V, 1);
  return s;
}

Lemma33Sets lemma33_sets(int m, int k) {
  if (m < 0 || k < 0 || k > m) {
    throw Error(Errc::BadParameter, "need 0 <= k <= m, got m=" + std::to_string(m) + " k=" + std::to_string(k));
  }
  Lemma33Sets out;
  out.n = 3 * m + 2;
  for (int i = 0; i <= k; ++i) {
    out.s1.push_back(octa_vertex(Row::U, 3 * i));
    out.s1.push_back(octa_vertex(Row::V, 3 * i + 1));
  }
  for (int j = 0; j <= m - k; ++j) {
    out.s2.push_back(octa_vertex(Row::V, 3 * k + 1 + 3 * j));
    out.s2.push_back(octa_vertex(Row::W, 3 * k + 2 + 3 * j));
  }
  out.combined = out.s1;
  out.combined.insert(out.combined.end(), out.s2.begin(), out.s2.end());
  std::sort(out.combined.begin(), out.combined.end());
  out.combined.erase(std::unique(out.combined.begin(), out.combined.end()), out.combined.end());
  out.start = octa_vertex(Row::V, 3 * k + 1);

  Graph g = octahedral_path(out.n);
  out.combined_check = is_even_kernel(g, out.start, out.combined);
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (std::binary_search(out.combined.begin(), out.combined.end(), v)) continue;
    std::size_t count = 0;
    for (const auto& inc : g.adjacency(v)) {
      count += std::binary_search(out.combined.begin(), out.combined.end(), inc.neighbor) ? 1 : 0;
    }
    if (count % 2 != 0) out.odd_vertices.push_back(v);
  }
  return out;
}

Strategy kernel_strategy(const Graph& g, VertexId start, const KernelSet& s) {
  if (s.start != start) throw Error(Errc::PreconditionFailed, "kernel was built for a different start vertex");
  if (KernelCheck check = is_even_kernel(g, s); !check) {
    throw Error(Errc::PreconditionFailed, "not an even kernel: " + check.describe(g));
  }
  return [members = s.members](const GameState& state) -> VertexId {
    auto in_set = [&](VertexId v) { return std::binary_search(members.begin(), members.end(), v); };
    const Graph& graph = state.graph();
    if (in_set(state.token())) {
      throw Error(Errc::StrategyBreakdown, "token is already on kernel vertex " + graph.name(state.token()));
    }
    for (const auto& inc : graph.adjacency(state.token())) {
      if (!state.used().contains(inc.edge) && in_set(inc.neighbor)) return inc.neighbor;
    }
    throw Error(Errc::StrategyBreakdown, "no unused edge from " + graph.name(state.token()) + " back into the kernel");
  };
}

Strategy first_move_strategy() {
  return [](const GameState& state) { return legal_moves(state).front(); };
}

namespace {

struct StrategyCheck {
  const Strategy& strategy;
  Player player;
  absl::flat_hash_set<std::pair<std::uint64_t, VertexId>> proven;
  std::vector<VertexId> line;
  std::uint64_t explored = 0;

  // True if `player` wins every continuation; otherwise `line` holds a loss.
  bool holds(const GameState& state) {
    if (!state.ongoing()) return state.winner() == player;
    auto key = std::make_pair(state.used().low_word(), state.token());
    if (proven.contains(key)) return true;
    ++explored;
    if (state.mover() == player) {
      VertexId to = strategy(state);
      line.push_back(to);
      if (!holds(apply_move(state, to))) return false;
      line.pop_back();
    } else {
      for (VertexId to : legal_moves(state)) {
        line.push_back(to);
        if (!holds(apply_move(state, to))) return false;
        line.pop_back();
      }
    }
    proven.insert(key);
    return true;
  }
};

}  // namespace

StrategyVerdict verify_strategy(const Graph& g, VertexId start, const Strategy& strategy, Player player,
                                std::size_t edge_limit) {
  std::size_t cap = std::min<std::size_t>(edge_limit, 64);
  if (g.edge_count() > cap) {
    throw Error(Errc::LimitExceeded, std::to_string(g.edge_count()) + " edges exceed the verifier limit of " + std::to_string(cap));
  }
  StrategyCheck check{strategy, player, {}, {}, 0};
  StrategyVerdict verdict;
  verdict.verified = check.holds(new_game(g, start));
  if (!verdict.verified) verdict.counter_line = std::move(check.line);
  verdict.states_explored = check.explored;
  return verdict;
}

}  // namespace feedback
