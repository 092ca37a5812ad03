#include "elastdg/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>
#include <stdexcept>

namespace elastdg {

BoundarySplit all_dirichlet() {
  return [](const Vec2&) { return EdgeTag::dirichlet; };
}

Mesh::Mesh(int level, const BoundarySplit& split) : level_(level) {
  if (level < 1) throw std::invalid_argument("mesh level must be >= 1");

  const int n = 1 << (level - 1);  // cells per side
  const double h = 1.0 / n;

  vertices_.reserve((n + 1) * (n + 1));
  for (int j = 0; j <= n; ++j)
    for (int i = 0; i <= n; ++i) vertices_.emplace_back(i * h, j * h);

  auto vid = [n](int i, int j) { return j * (n + 1) + i; };

  // Each cell is cut along its own north-east diagonal; the lower-right
  // triangle comes first so element indices are deterministic.
  triangles_.reserve(2 * n * n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const int v00 = vid(i, j), v10 = vid(i + 1, j);
      const int v01 = vid(i, j + 1), v11 = vid(i + 1, j + 1);
      triangles_.push_back({v00, v10, v11});
      triangles_.push_back({v00, v11, v01});
    }
  }

  // Collect edges; the map keeps them sorted by vertex pair so edge numbering
  // does not depend on traversal order.
  std::map<std::array<int, 2>, Edge> edge_map;
  for (int t = 0; t < num_triangles(); ++t) {
    for (int k = 0; k < 3; ++k) {
      int a = triangles_[t][k];
      int b = triangles_[t][(k + 1) % 3];
      std::array<int, 2> key{std::min(a, b), std::max(a, b)};
      auto [it, inserted] = edge_map.try_emplace(key);
      Edge& e = it->second;
      if (inserted) {
        e.vertices = key;
        e.plus_element = t;
      } else {
        e.minus_element = t;  // second incident element has the larger index
      }
    }
  }

  edges_.reserve(edge_map.size());
  for (auto& [key, e] : edge_map) {
    const Vec2 p0 = vertices_[e.vertices[0]];
    const Vec2 p1 = vertices_[e.vertices[1]];
    const Vec2 d = p1 - p0;
    e.length = d.norm();
    Vec2 normal(d.y(), -d.x());
    normal /= e.length;
    // Orient out of the plus element: flip if the plus centroid lies on the
    // positive side.
    const auto& tri = triangles_[e.plus_element];
    const Vec2 centroid =
        (vertices_[tri[0]] + vertices_[tri[1]] + vertices_[tri[2]]) / 3.0;
    if (normal.dot(centroid - 0.5 * (p0 + p1)) > 0) normal = -normal;
    e.normal = normal;
    if (e.is_boundary()) e.tag = split(0.5 * (p0 + p1));
    edges_.push_back(e);
  }

  std::map<std::array<int, 2>, int> edge_index;
  for (int i = 0; i < num_edges(); ++i) edge_index[edges_[i].vertices] = i;

  tri_edges_.resize(triangles_.size());
  for (int t = 0; t < num_triangles(); ++t) {
    for (int k = 0; k < 3; ++k) {
      int a = triangles_[t][k];
      int b = triangles_[t][(k + 1) % 3];
      tri_edges_[t][k] = edge_index.at({std::min(a, b), std::max(a, b)});
    }
  }

  h_K_.resize(triangles_.size());
  for (int t = 0; t < num_triangles(); ++t) {
    const auto v = triangle_vertices(t);
    h_K_[t] = std::max({(v[1] - v[0]).norm(), (v[2] - v[1]).norm(),
                        (v[0] - v[2]).norm()});
    h_max_ = std::max(h_max_, h_K_[t]);
  }
}

const Edge& Mesh::edge(int e) const {
  if (e < 0 || e >= num_edges()) throw std::out_of_range("edge index");
  return edges_[e];
}

std::array<Vec2, 3> Mesh::triangle_vertices(int t) const {
  const auto& tri = triangles_[t];
  return {vertices_[tri[0]], vertices_[tri[1]], vertices_[tri[2]]};
}

double Mesh::signed_area(int t) const {
  const auto v = triangle_vertices(t);
  return 0.5 * ((v[1].x() - v[0].x()) * (v[2].y() - v[0].y()) -
                (v[2].x() - v[0].x()) * (v[1].y() - v[0].y()));
}

double Mesh::inradius(int t) const {
  const auto v = triangle_vertices(t);
  const double a = (v[1] - v[0]).norm();
  const double b = (v[2] - v[1]).norm();
  const double c = (v[0] - v[2]).norm();
  return 2.0 * std::abs(signed_area(t)) / (a + b + c);
}

void Mesh::write_text(std::ostream& out) const {
  for (const auto& v : vertices_) out << "v " << v.x() << " " << v.y() << "\n";
  for (const auto& t : triangles_)
    out << "t " << t[0] << " " << t[1] << " " << t[2] << "\n";
  for (const auto& e : edges_) {
    const char* tag = e.tag == EdgeTag::interior    ? "interior"
                      : e.tag == EdgeTag::dirichlet ? "dirichlet"
                                                    : "neumann";
    out << "e " << e.vertices[0] << " " << e.vertices[1] << " " << tag << "\n";
  }
}

SkeletonEntry skeleton_query(const Mesh& mesh, int edge_index) {
  const Edge& e = mesh.edge(edge_index);
  return {e.plus_element, e.minus_element, e.normal, e.length, e.tag};
}

}  // namespace elastdg
