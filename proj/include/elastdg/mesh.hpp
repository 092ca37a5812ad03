#pragma once

#include <Eigen/Dense>

#include <array>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <vector>

namespace elastdg {

using Vec2 = Eigen::Vector2d;

enum class EdgeTag { interior, dirichlet, neumann };

/// Rule assigning boundary edges to Gamma_D or Gamma_N, queried at the edge
/// midpoint. The default tags the whole boundary Dirichlet.
using BoundarySplit = std::function<EdgeTag(const Vec2& midpoint)>;

BoundarySplit all_dirichlet();

struct Edge {
  std::array<int, 2> vertices;  // endpoint indices, vertices[0] < vertices[1]
  int plus_element = -1;        // element with the smaller index
  int minus_element = -1;       // -1 on boundary edges
  Vec2 normal;                  // unit, points out of the plus element
  EdgeTag tag = EdgeTag::interior;
  double length = 0.0;

  bool is_boundary() const { return minus_element < 0; }
};

/// Uniform north-east-cut triangulation of the unit square.
///
/// Level 1 is the two-triangle mesh obtained by cutting the square along the
/// diagonal from (0,0) to (1,1); level i is its (i-1)-fold uniform
/// quadrisection, so level i carries 2*4^(i-1) triangles. Immutable after
/// construction.
class Mesh {
 public:
  Mesh(int level, const BoundarySplit& split = all_dirichlet());

  int level() const { return level_; }
  int num_vertices() const { return static_cast<int>(vertices_.size()); }
  int num_triangles() const { return static_cast<int>(triangles_.size()); }
  int num_edges() const { return static_cast<int>(edges_.size()); }

  const Vec2& vertex(int v) const { return vertices_[v]; }
  const std::array<int, 3>& triangle(int t) const { return triangles_[t]; }
  const Edge& edge(int e) const;

  const std::vector<Edge>& edges() const { return edges_; }

  /// Vertex coordinates of triangle t in local order.
  std::array<Vec2, 3> triangle_vertices(int t) const;

  /// Indices of the three edges on the boundary of triangle t.
  const std::array<int, 3>& triangle_edges(int t) const { return tri_edges_[t]; }

  double signed_area(int t) const;
  double element_diameter(int t) const { return h_K_[t]; }
  double max_element_diameter() const { return h_max_; }
  double inradius(int t) const;

  /// Plain-text dump ("v x y" / "t i j k" / "e i j tag"), debugging aid only.
  void write_text(std::ostream& out) const;

 private:
  int level_;
  std::vector<Vec2> vertices_;
  std::vector<std::array<int, 3>> triangles_;
  std::vector<Edge> edges_;
  std::vector<std::array<int, 3>> tri_edges_;
  std::vector<double> h_K_;
  double h_max_ = 0.0;
};

struct SkeletonEntry {
  int plus_element;
  int minus_element;  // -1 when absent
  Vec2 normal;
  double length;
  EdgeTag tag;
};

/// Edge lookup with bounds checking; throws std::out_of_range.
SkeletonEntry skeleton_query(const Mesh& mesh, int edge_index);

}  // namespace elastdg
