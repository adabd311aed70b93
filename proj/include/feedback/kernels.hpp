#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "feedback/game.hpp"
#include "feedback/graph.hpp"

namespace feedback {

// Candidate even kernel. Whether `start` belongs to `members` is checked by
// is_even_kernel, not here.
struct KernelSet {
  std::vector<VertexId> members;  // ascending
  VertexId start = 0;

  bool contains(VertexId v) const;
  std::vector<std::string> names(const Graph& g) const;
};

enum class KernelClause {
  Holds,
  EmptySet,
  StartNotInSet,
  NotIndependent,    // `edge` joins two members
  OddNeighborCount,  // `vertex` sees `count` members
};

struct KernelCheck {
  KernelClause clause = KernelClause::Holds;
  std::optional<VertexId> vertex;
  std::optional<EdgeId> edge;
  std::size_t count = 0;

  bool holds() const { return clause == KernelClause::Holds; }
  explicit operator bool() const { return holds(); }
  std::string describe(const Graph& g) const;
};

/// S is an even kernel for (G, start) iff start is in S, no two members are
/// adjacent, and every vertex outside S has an even number of neighbors in
/// S. On failure the first violated clause is reported, with vertices
/// scanned in index order. Throws UnknownVertex.
KernelCheck is_even_kernel(const Graph& g, VertexId start, std::span<const VertexId> members);
KernelCheck is_even_kernel(const Graph& g, const KernelSet& s);

// Bipartite subgraph between S (left) and R (right) holding every G-edge
// with one end in each.
struct KernelGraph {
  std::vector<VertexId> left;
  std::vector<VertexId> right;
  std::vector<EdgeId> edges;  // indices into the host graph

  std::size_t degree_in(const Graph& host, VertexId v) const;
};

// Throws BadBipartition if S and R overlap or R misses a neighbor of S, and
// UnknownVertex for out-of-range indices.
KernelGraph kernel_graph(const Graph& g, std::span<const VertexId> left, std::span<const VertexId> right);

struct KernelSearchOptions {
  std::size_t vertex_limit = 30;
  // Above this nullspace dimension the search backtracks over independent
  // sets instead of enumerating the nullspace.
  std::size_t max_nullity = 20;
};

/// Even kernel containing `start`, or nullopt if none exists.
///
/// Over GF(2) an independent set S is an even kernel exactly when its
/// indicator x solves Ax = 0 for the adjacency matrix A, so the search walks
/// the nullspace of A and keeps vectors with x_start = 1 whose support is
/// independent. Among all kernels the smallest is returned, ties broken by
/// the lexicographically least sorted member list, so both search paths give
/// the same answer. Throws LimitExceeded above vertex_limit vertices.
std::optional<KernelSet> find_even_kernel(const Graph& g, VertexId start, const KernelSearchOptions& options = {});

// The two search paths, exposed for cross-checking.
std::optional<KernelSet> find_even_kernel_nullspace(const Graph& g, VertexId start);
std::optional<KernelSet> find_even_kernel_backtracking(const Graph& g, VertexId start);

// Dimension of the nullspace of the adjacency matrix over GF(2).
std::size_t adjacency_nullity(const Graph& g);

struct ColorClassKernel {
  std::optional<KernelSet> kernel;
  std::string not_applicable;  // failed condition when kernel is empty
};

/// For a connected Eulerian graph with a proper coloring using exactly three
/// classes and no vertex of degree 2 mod 4, the color class of `start`.
/// The class is checked with is_even_kernel before it is returned.
ColorClassKernel color_class_kernel(const Graph& g, VertexId start);

// Start residue for the {u_3i, v_3i+1} kernel of E_{3m+1}.
enum class Lemma32Start { P0, P1 };

/// {u_3i, v_3i+1 : 0 <= i <= m} in octahedral_path(3m + 1), started at u_0
/// (P0) or v_1 (P1). Throws BadParameter for m < 0.
KernelSet lemma32_kernel(int m, Lemma32Start which = Lemma32Start::P0);

struct Lemma33Sets {
  int n = 0;  // 3m + 2
  std::vector<VertexId> s1;
  std::vector<VertexId> s2;
  std::vector<VertexId> combined;
  VertexId start = 0;  // v_{3k+1}
  KernelCheck combined_check;
  // Vertices outside the union with an odd number of neighbors in it.
  std::vector<VertexId> odd_vertices;
};

/// S1 = {u_3i, v_3i+1 : 0 <= i <= k} and S2 = {v_3k+1+3j, w_3k+2+3j :
/// 0 <= j <= m-k} in octahedral_path(3m + 2), together with the parity
/// violations of their union. Throws BadParameter unless 0 <= k <= m.
Lemma33Sets lemma33_sets(int m, int k);

// Chooses the next vertex for the player it was built for.
using Strategy = std::function<VertexId(const GameState&)>;

/// Second-player strategy for an even kernel S: from a token outside S,
/// return along the lowest-index unused edge into S.
/// Throws PreconditionFailed unless S is an even kernel for (g, start). The
/// returned strategy throws StrategyBreakdown if it ever finds no such edge.
Strategy kernel_strategy(const Graph& g, VertexId start, const KernelSet& s);

// Plays the lowest-index legal move.
Strategy first_move_strategy();

struct StrategyVerdict {
  bool verified = false;
  // Destinations of the moves on one line the strategy loses, in order.
  std::vector<VertexId> counter_line;
  std::uint64_t states_explored = 0;
};

/// Plays `strategy` for `player` against every adversary reply, memoized on
/// (token, used-mask). Verified iff `player` wins every line.
/// Throws LimitExceeded above edge_limit edges (at most 64).
StrategyVerdict verify_strategy(const Graph& g, VertexId start, const Strategy& strategy, Player player,
                                std::size_t edge_limit = 40);

}  // namespace feedback
