#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "feedback/graph.hpp"

namespace feedback {

// Vertex rows of the octahedral path. Level i holds u_i, v_i, w_i.
enum class Row { U = 0, V = 1, W = 2 };

// Index of row r at level i in octahedral_path(n): vertices are laid out
// u0, v0, w0, u1, v1, w1, ...
constexpr VertexId octa_vertex(Row r, int level) {
  return static_cast<VertexId>(3 * level + static_cast<int>(r));
}
std::string octa_name(Row r, int level);

/// Chain of n octahedra glued along faces (levels 0..n), named u0..un,
/// v0..vn, w0..wn. Interior levels have degree 6, the end levels degree 4.
/// Throws BadParameter if n < 1.
Graph octahedral_path(int n);

/// Rim cycle v0..v(rim-1) plus non-adjacent hubs x and y joined to every rim
/// vertex. Eulerian exactly when rim is even. Throws BadParameter if rim < 3.
Graph double_wheel(int rim);

// c0..c(n-1). Throws BadParameter if n < 3.
Graph cycle_graph(int n);

/// Inserts a triangle a1 a2 a3 (names prefixed by name_prefix) into the
/// triangle u1 u2 u3, joining a_i to u_j and u_k for {i,j,k} = {1,2,3}.
/// The face condition is the caller's to assert; only pairwise adjacency is
/// checked (NotATriangle). NameCollision if a new name already exists.
Graph octahedron_addition(const Graph& g, VertexId u1, VertexId u2, VertexId u3,
                          std::string_view name_prefix = "a");

/// Replaces edge uv by the path u-a-b-v and joins a and b to both w and w2.
/// Degrees of u and v are unchanged, w and w2 gain two each.
/// Throws MissingEdge, NotCommonNeighbor or NameCollision.
Graph two_subdivision(const Graph& g, VertexId u, VertexId v, VertexId w, VertexId w2,
                      const std::string& name_a = "a", const std::string& name_b = "b");

struct Point {
  double x = 0;
  double y = 0;
};

// Drawing hints, one point per vertex in index order.
using Layout = std::vector<Point>;

// (level, row) with rows u=0, v=1, w=2.
Layout octahedral_path_layout(int n);
// Rim on the unit circle, hubs offset from the center.
Layout double_wheel_layout(int rim);
Layout cycle_layout(int n);

}  // namespace feedback
