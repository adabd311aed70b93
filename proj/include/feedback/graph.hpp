#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace feedback {

using VertexId = std::uint32_t;
using EdgeId = std::uint32_t;

// Stored with a < b.
struct Edge {
  VertexId a;
  VertexId b;

  VertexId other(VertexId v) const { return v == a ? b : a; }
  friend bool operator==(const Edge&, const Edge&) = default;
};

struct Incidence {
  VertexId neighbor;
  EdgeId edge;
};

using NamePair = std::pair<std::string, std::string>;

/// Immutable simple undirected graph.
///
/// Vertices are identified by index after construction; names exist for
/// I/O only. Edge e is the e-th pair passed to build() for the lifetime of
/// the graph, so edge masks over this indexing stay valid. Adjacency rows are
/// sorted by neighbor index.
class Graph {
 public:
  Graph() = default;

  /// Throws Error with DuplicateVertex, UnknownVertex, SelfLoop or
  /// DuplicateEdge, naming the offending item.
  static Graph build(std::vector<std::string> vertex_names,
                     const std::vector<NamePair>& edge_pairs);

  std::size_t vertex_count() const { return names_.size(); }
  std::size_t edge_count() const { return edges_.size(); }

  const std::string& name(VertexId v) const { return names_.at(v); }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<VertexId> find(std::string_view name) const;
  // Throws UnknownVertex.
  VertexId index_of(std::string_view name) const;

  std::span<const Edge> edges() const { return edges_; }
  const Edge& edge(EdgeId e) const { return edges_.at(e); }
  std::span<const Incidence> adjacency(VertexId v) const { return adjacency_.at(v); }

  std::vector<VertexId> neighbors(VertexId v) const;
  std::size_t degree(VertexId v) const { return adjacency_.at(v).size(); }
  bool adjacent(VertexId u, VertexId v) const { return edge_between(u, v).has_value(); }
  std::optional<EdgeId> edge_between(VertexId u, VertexId v) const;

  // "u-v" using vertex names.
  std::string edge_label(EdgeId e) const;

  std::vector<NamePair> edge_name_pairs() const;

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, VertexId> index_;
  std::vector<Edge> edges_;
  std::vector<std::vector<Incidence>> adjacency_;
};

// Up to three disjoint classes covering every vertex; no edge is
// monochromatic. Classes are listed in order of first use.
struct ColorPartition {
  std::vector<std::vector<VertexId>> classes;
  std::vector<int> color_of;

  std::size_t class_count() const { return classes.size(); }
};

bool is_connected(const Graph& g);
// All degrees even. Connectivity is reported separately.
bool is_eulerian(const Graph& g);
// Number of vertices whose degree is congruent to residue mod modulus.
// Throws BadResidue unless modulus >= 1 and 0 <= residue < modulus.
std::size_t count_degree_residues(const Graph& g, int modulus, int residue);

std::vector<std::size_t> degree_multiset(const Graph& g);

// Exhaustive backtracking over vertices in index order, first-fit color per
// branch. nullopt means the graph is not 3-colorable.
std::optional<ColorPartition> three_coloring(const Graph& g);

bool is_proper_coloring(const Graph& g, const ColorPartition& partition);

}  // namespace feedback
