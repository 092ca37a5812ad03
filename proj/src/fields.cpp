#include "elastdg/fields.hpp"

#include "elastdg/quadrature.hpp"

namespace elastdg {

namespace {

const std::array<Vec2, 2> kVectorGens = {Vec2(1, 0), Vec2(0, 1)};

}  // namespace

Mat2 eval_tensor(const BrokenSpace& space, const Eigen::VectorXd& coeffs,
                 int elem, const ElementGeometry& geo, const Vec2& ref) {
  (void)geo;
  const auto vals = space.scalar_basis().values(ref);
  const auto& gens = tensor_generators();
  Mat2 out = Mat2::Zero();
  const int off = space.element_offset(elem);
  for (int m = 0; m < space.modes_per_element(); ++m)
    for (int c = 0; c < 3; ++c)
      out += coeffs[off + space.local_index(m, c)] * vals[m] * gens[c];
  return out;
}

Vec2 eval_tensor_divergence(const BrokenSpace& space,
                            const Eigen::VectorXd& coeffs, int elem,
                            const ElementGeometry& geo, const Vec2& ref) {
  const auto grads = space.scalar_basis().gradients(ref);
  const auto& gens = tensor_generators();
  Vec2 out = Vec2::Zero();
  const int off = space.element_offset(elem);
  for (int m = 0; m < space.modes_per_element(); ++m) {
    const Vec2 grad = geo.inverse_transpose * grads.col(m);
    for (int c = 0; c < 3; ++c)
      out += coeffs[off + space.local_index(m, c)] * (gens[c] * grad);
  }
  return out;
}

Vec2 eval_vector(const BrokenSpace& space, const Eigen::VectorXd& coeffs,
                 int elem, const ElementGeometry& geo, const Vec2& ref) {
  (void)geo;
  const auto vals = space.scalar_basis().values(ref);
  Vec2 out = Vec2::Zero();
  const int off = space.element_offset(elem);
  for (int m = 0; m < space.modes_per_element(); ++m)
    for (int c = 0; c < 2; ++c)
      out[c] += coeffs[off + space.local_index(m, c)] * vals[m];
  return out;
}

Mat2 eval_vector_strain(const BrokenSpace& space,
                        const Eigen::VectorXd& coeffs, int elem,
                        const ElementGeometry& geo, const Vec2& ref) {
  const auto grads = space.scalar_basis().gradients(ref);
  Mat2 grad_u = Mat2::Zero();
  const int off = space.element_offset(elem);
  for (int m = 0; m < space.modes_per_element(); ++m) {
    const Vec2 grad = geo.inverse_transpose * grads.col(m);
    for (int c = 0; c < 2; ++c)
      grad_u.row(c) +=
          coeffs[off + space.local_index(m, c)] * grad.transpose();
  }
  return 0.5 * (grad_u + grad_u.transpose());
}

Eigen::VectorXd project_tensor_field(
    const BrokenSpace& space, int quad_degree,
    const std::function<Mat2(const Vec2&)>& field) {
  const auto rule = triangle_quadrature(quad_degree);
  const auto& gens = tensor_generators();
  const double gen_norm2[3] = {1.0, 1.0, 2.0};
  Eigen::VectorXd coeffs = Eigen::VectorXd::Zero(space.total_dofs());
  const Mesh& mesh = space.mesh();
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const auto geo = element_geometry(mesh.triangle_vertices(t));
    const int off = space.element_offset(t);
    for (int q = 0; q < rule.size(); ++q) {
      const Vec2 ref(rule.points(q, 0), rule.points(q, 1));
      const Mat2 f = field(geo.map(ref));
      const auto vals = space.scalar_basis().values(ref);
      const double w = rule.weights[q] * geo.det;
      for (int m = 0; m < space.modes_per_element(); ++m)
        for (int c = 0; c < 3; ++c)
          coeffs[off + space.local_index(m, c)] +=
              w * vals[m] * f.cwiseProduct(gens[c]).sum() / gen_norm2[c];
    }
    // reference-orthonormal basis: element mass is det * diag(gen norms)
    for (int m = 0; m < space.modes_per_element(); ++m)
      for (int c = 0; c < 3; ++c)
        coeffs[off + space.local_index(m, c)] /= geo.det;
  }
  return coeffs;
}

Eigen::VectorXd project_vector_field(
    const BrokenSpace& space, int quad_degree,
    const std::function<Vec2(const Vec2&)>& field) {
  const auto rule = triangle_quadrature(quad_degree);
  Eigen::VectorXd coeffs = Eigen::VectorXd::Zero(space.total_dofs());
  const Mesh& mesh = space.mesh();
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const auto geo = element_geometry(mesh.triangle_vertices(t));
    const int off = space.element_offset(t);
    for (int q = 0; q < rule.size(); ++q) {
      const Vec2 ref(rule.points(q, 0), rule.points(q, 1));
      const Vec2 f = field(geo.map(ref));
      const auto vals = space.scalar_basis().values(ref);
      const double w = rule.weights[q] * geo.det;
      for (int m = 0; m < space.modes_per_element(); ++m)
        for (int c = 0; c < 2; ++c)
          coeffs[off + space.local_index(m, c)] += w * vals[m] * f[c];
    }
    for (int m = 0; m < space.modes_per_element(); ++m)
      for (int c = 0; c < 2; ++c)
        coeffs[off + space.local_index(m, c)] /= geo.det;
  }
  return coeffs;
}

Mat2 eval_trace_tensor(const TraceSpace& space, const Eigen::VectorXd& coeffs,
                       int edge, double s) {
  Mat2 out = Mat2::Zero();
  if (space.empty() || space.edge_components(edge) == 0) return out;
  const auto vals = space.mode_values(edge, s);
  const auto& gens = space.tensor_generators_on(edge);
  const int off = space.edge_offset(edge);
  for (int m = 0; m < space.modes_per_edge(); ++m)
    for (int c = 0; c < space.edge_components(edge); ++c)
      out += coeffs[off + space.local_index(m, c, edge)] * vals[m] * gens[c];
  return out;
}

Vec2 eval_trace_vector(const TraceSpace& space, const Eigen::VectorXd& coeffs,
                       int edge, double s) {
  Vec2 out = Vec2::Zero();
  if (space.empty() || space.edge_components(edge) == 0) return out;
  const auto vals = space.mode_values(edge, s);
  const int off = space.edge_offset(edge);
  for (int m = 0; m < space.modes_per_edge(); ++m)
    for (int c = 0; c < 2; ++c)
      out += coeffs[off + space.local_index(m, c, edge)] * vals[m] *
             kVectorGens[c];
  return out;
}

}  // namespace elastdg
