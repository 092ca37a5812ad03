#include "elastdg/edge_ops.hpp"

#include <cmath>
#include <stdexcept>

namespace elastdg {

namespace {

Vec2 edge_point(const Mesh& mesh, int edge, double s) {
  const Edge& e = mesh.edge(edge);
  const Vec2 p0 = mesh.vertex(e.vertices[0]);
  const Vec2 p1 = mesh.vertex(e.vertices[1]);
  return p0 + s * (p1 - p0);
}

}  // namespace

Mat2 average_tensor(const Mat2& plus, const std::optional<Mat2>& minus,
                    EdgeTag tag) {
  if (tag != EdgeTag::interior || !minus) return plus;
  return 0.5 * (plus + *minus);
}

Vec2 jump_tensor(const Mat2& plus, const std::optional<Mat2>& minus,
                 const Vec2& n, EdgeTag tag) {
  switch (tag) {
    case EdgeTag::interior:
      return (plus - *minus) * n;  // tau+ n+ + tau- n-, n- = -n
    case EdgeTag::dirichlet:
      return Vec2::Zero();
    case EdgeTag::neumann:
      return plus * n;
  }
  return Vec2::Zero();
}

Vec2 average_vector(const Vec2& plus, const std::optional<Vec2>& minus,
                    EdgeTag tag) {
  if (tag != EdgeTag::interior || !minus) return plus;
  return 0.5 * (plus + *minus);
}

Mat2 jump_vector(const Vec2& plus, const std::optional<Vec2>& minus,
                 const Vec2& n, EdgeTag tag) {
  if (tag == EdgeTag::neumann) return Mat2::Zero();
  const Vec2 w = (tag == EdgeTag::interior) ? Vec2(plus - *minus) : plus;
  // w (x) n + n (x) w - (w.n) I; symmetric and trace-free, [v] n = w.
  return w * n.transpose() + n * w.transpose() -
         w.dot(n) * Mat2::Identity();
}

std::vector<Mat2> average(const TensorTraceSample& s) {
  std::vector<Mat2> out(s.plus.size());
  for (size_t q = 0; q < s.plus.size(); ++q)
    out[q] = average_tensor(
        s.plus[q],
        s.boundary() ? std::nullopt : std::optional<Mat2>(s.minus[q]), s.tag);
  return out;
}

std::vector<Vec2> average(const VectorTraceSample& s) {
  std::vector<Vec2> out(s.plus.size());
  for (size_t q = 0; q < s.plus.size(); ++q)
    out[q] = average_vector(
        s.plus[q],
        s.boundary() ? std::nullopt : std::optional<Vec2>(s.minus[q]), s.tag);
  return out;
}

std::vector<Vec2> jump(const TensorTraceSample& s) {
  std::vector<Vec2> out(s.plus.size());
  for (size_t q = 0; q < s.plus.size(); ++q)
    out[q] = jump_tensor(
        s.plus[q],
        s.boundary() ? std::nullopt : std::optional<Mat2>(s.minus[q]),
        s.normal, s.tag);
  return out;
}

std::vector<Mat2> jump(const VectorTraceSample& s) {
  std::vector<Mat2> out(s.plus.size());
  for (size_t q = 0; q < s.plus.size(); ++q)
    out[q] = jump_vector(
        s.plus[q],
        s.boundary() ? std::nullopt : std::optional<Vec2>(s.minus[q]),
        s.normal, s.tag);
  return out;
}

TensorTraceSample sample_tensor_trace(const BrokenSpace& space,
                                      const Eigen::VectorXd& coeffs, int edge,
                                      const QuadratureRule& rule) {
  const Mesh& mesh = space.mesh();
  const Edge& e = mesh.edge(edge);
  TensorTraceSample s;
  s.edge = edge;
  s.tag = e.tag;
  s.normal = e.normal;
  const auto geo_p = element_geometry(mesh.triangle_vertices(e.plus_element));
  const bool interior = !e.is_boundary();
  ElementGeometry geo_m;
  if (interior) geo_m = element_geometry(mesh.triangle_vertices(e.minus_element));
  for (int q = 0; q < rule.size(); ++q) {
    const Vec2 x = edge_point(mesh, edge, rule.points(q, 0));
    s.plus.push_back(
        eval_tensor(space, coeffs, e.plus_element, geo_p, geo_p.pull_back(x)));
    if (interior)
      s.minus.push_back(eval_tensor(space, coeffs, e.minus_element, geo_m,
                                    geo_m.pull_back(x)));
  }
  return s;
}

VectorTraceSample sample_vector_trace(const BrokenSpace& space,
                                      const Eigen::VectorXd& coeffs, int edge,
                                      const QuadratureRule& rule) {
  const Mesh& mesh = space.mesh();
  const Edge& e = mesh.edge(edge);
  VectorTraceSample s;
  s.edge = edge;
  s.tag = e.tag;
  s.normal = e.normal;
  const auto geo_p = element_geometry(mesh.triangle_vertices(e.plus_element));
  const bool interior = !e.is_boundary();
  ElementGeometry geo_m;
  if (interior) geo_m = element_geometry(mesh.triangle_vertices(e.minus_element));
  for (int q = 0; q < rule.size(); ++q) {
    const Vec2 x = edge_point(mesh, edge, rule.points(q, 0));
    s.plus.push_back(
        eval_vector(space, coeffs, e.plus_element, geo_p, geo_p.pull_back(x)));
    if (interior)
      s.minus.push_back(eval_vector(space, coeffs, e.minus_element, geo_m,
                                    geo_m.pull_back(x)));
  }
  return s;
}

Eigen::VectorXd trace_project_tensor(
    const TraceSpace& target, int quad_degree,
    const std::function<Mat2(int, const Vec2&)>& field) {
  Eigen::VectorXd coeffs = Eigen::VectorXd::Zero(target.total_dofs());
  if (target.empty()) return coeffs;
  const Mesh& mesh = target.mesh();
  const auto rule = edge_quadrature(quad_degree);
  for (int e = 0; e < mesh.num_edges(); ++e) {
    const int ncomp = target.edge_components(e);
    if (ncomp == 0) continue;
    const auto& gens = target.tensor_generators_on(e);
    const double h = mesh.edge(e).length;
    const int off = target.edge_offset(e);
    Eigen::VectorXd diag(ncomp);
    for (int c = 0; c < ncomp; ++c) {
      diag[c] = gens[c].squaredNorm();
      if (diag[c] <= 0.0)
        throw std::runtime_error("singular edge mass entry (basis bug)");
    }
    for (int q = 0; q < rule.size(); ++q) {
      const double s = rule.points(q, 0);
      const double w = rule.weights[q] * h;
      const Mat2 f = field(e, edge_point(mesh, e, s));
      const auto modes = target.mode_values(e, s);
      for (int m = 0; m < target.modes_per_edge(); ++m)
        for (int c = 0; c < ncomp; ++c)
          coeffs[off + target.local_index(m, c, e)] +=
              w * modes[m] * f.cwiseProduct(gens[c]).sum() / diag[c];
    }
  }
  return coeffs;
}

Eigen::VectorXd trace_project_vector(
    const TraceSpace& target, int quad_degree,
    const std::function<Vec2(int, const Vec2&)>& field) {
  Eigen::VectorXd coeffs = Eigen::VectorXd::Zero(target.total_dofs());
  if (target.empty()) return coeffs;
  const Mesh& mesh = target.mesh();
  const auto rule = edge_quadrature(quad_degree);
  for (int e = 0; e < mesh.num_edges(); ++e) {
    const int ncomp = target.edge_components(e);
    if (ncomp == 0) continue;
    const double h = mesh.edge(e).length;
    const int off = target.edge_offset(e);
    for (int q = 0; q < rule.size(); ++q) {
      const double s = rule.points(q, 0);
      const double w = rule.weights[q] * h;
      const Vec2 f = field(e, edge_point(mesh, e, s));
      const auto modes = target.mode_values(e, s);
      for (int m = 0; m < target.modes_per_edge(); ++m)
        for (int c = 0; c < 2; ++c)
          coeffs[off + target.local_index(m, c, e)] += w * modes[m] * f[c];
    }
  }
  return coeffs;
}

namespace {

// Accumulates the edge functional of a lifting into the element-space rhs,
// then divides by the diagonal broken mass.
struct LiftAccumulator {
  const BrokenSpace& space;
  Eigen::VectorXd rhs;

  explicit LiftAccumulator(const BrokenSpace& s)
      : space(s), rhs(Eigen::VectorXd::Zero(s.total_dofs())) {}

  Eigen::VectorXd finish() {
    const Mesh& mesh = space.mesh();
    const double gen_norm2[3] = {1.0, 1.0, 2.0};
    for (int t = 0; t < mesh.num_triangles(); ++t) {
      const auto geo = element_geometry(mesh.triangle_vertices(t));
      const int off = space.element_offset(t);
      for (int m = 0; m < space.modes_per_element(); ++m)
        for (int c = 0; c < space.components(); ++c) {
          const double mass =
              geo.det * (space.shape() == ValueShape::symmetric_tensor
                             ? gen_norm2[c]
                             : 1.0);
          rhs[off + space.local_index(m, c)] /= mass;
        }
    }
    return std::move(rhs);
  }
};

}  // namespace

Eigen::VectorXd lifting(LiftKind kind, const SpacePair& spaces,
                        int quad_degree,
                        const std::function<Mat2(int, const Vec2&)>& xi,
                        const std::function<Vec2(int, const Vec2&)>& w) {
  const bool into_stress = (kind == LiftKind::r_Q || kind == LiftKind::l_Q);
  const BrokenSpace& target =
      into_stress ? *spaces.stress : *spaces.displacement;
  const Mesh& mesh = *spaces.mesh;
  const auto rule = edge_quadrature(quad_degree);
  const auto& gens = tensor_generators();
  LiftAccumulator acc(target);

  for (int e = 0; e < mesh.num_edges(); ++e) {
    const Edge& edge = mesh.edge(e);
    const Vec2 n = edge.normal;
    const int sides = edge.is_boundary() ? 1 : 2;
    for (int side = 0; side < sides; ++side) {
      const int elem = side == 0 ? edge.plus_element : edge.minus_element;
      const auto geo = element_geometry(mesh.triangle_vertices(elem));
      const int off = target.element_offset(elem);
      const double sgn = side == 0 ? 1.0 : -1.0;
      for (int q = 0; q < rule.size(); ++q) {
        const double s = rule.points(q, 0);
        const Vec2 x = edge_point(mesh, e, s);
        const double wq = rule.weights[q] * edge.length;
        const auto vals = target.scalar_basis().values(geo.pull_back(x));
        for (int m = 0; m < target.modes_per_element(); ++m) {
          for (int c = 0; c < target.components(); ++c) {
            double pairing = 0.0;
            switch (kind) {
              case LiftKind::r_Q: {
                // -<{tau} n, xi n>; {tau} = tau on boundary edges
                const double avg = edge.is_boundary() ? 1.0 : 0.5;
                pairing = -avg * vals[m] * (gens[c] * n).dot(xi(e, x) * n);
                break;
              }
              case LiftKind::l_Q: {
                // -<[tau], w> with bddef conventions
                if (edge.tag == EdgeTag::dirichlet) break;
                pairing = -sgn * vals[m] * (gens[c] * n).dot(w(e, x));
                break;
              }
              case LiftKind::r_V: {
                // -<{v}, w>
                const double avg = edge.is_boundary() ? 1.0 : 0.5;
                pairing = -avg * vals[m] * w(e, x)[c];
                break;
              }
              case LiftKind::l_V: {
                // -<[v] n, xi n>; [v] n = v+ - v- (vjumpn), = v on Gamma_D
                if (edge.tag == EdgeTag::neumann) break;
                pairing = -sgn * vals[m] * (xi(e, x) * n)[c];
                break;
              }
            }
            acc.rhs[off + target.local_index(m, c)] += wq * pairing;
          }
        }
      }
    }
  }
  return acc.finish();
}

double lifting_identity_residual(
    LiftKind kind, const SpacePair& spaces, int quad_degree,
    const Eigen::VectorXd& lifted,
    const std::function<Mat2(int, const Vec2&)>& xi,
    const std::function<Vec2(int, const Vec2&)>& w) {
  // (lift, basis_i) - rhs_i must vanish for every basis function. Recompute
  // the rhs with the same loop and compare against mass * coefficients.
  const bool into_stress = (kind == LiftKind::r_Q || kind == LiftKind::l_Q);
  const BrokenSpace& target =
      into_stress ? *spaces.stress : *spaces.displacement;
  const Eigen::VectorXd again = lifting(kind, spaces, quad_degree, xi, w);
  double max_diff = 0.0;
  for (int i = 0; i < target.total_dofs(); ++i)
    max_diff = std::max(max_diff, std::abs(again[i] - lifted[i]));
  return max_diff;
}

DgIdentityTerms dg_identity_terms(const SpacePair& spaces,
                                  const Eigen::VectorXd& tau_coeffs,
                                  const Eigen::VectorXd& v_coeffs,
                                  int quad_degree) {
  const Mesh& mesh = *spaces.mesh;
  const BrokenSpace& Q = *spaces.stress;
  const BrokenSpace& V = *spaces.displacement;
  DgIdentityTerms terms{0, 0, 0, 0};

  const auto tri_rule = triangle_quadrature(quad_degree);
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const auto geo = element_geometry(mesh.triangle_vertices(t));
    for (int q = 0; q < tri_rule.size(); ++q) {
      const Vec2 ref(tri_rule.points(q, 0), tri_rule.points(q, 1));
      const double wq = tri_rule.weights[q] * geo.det;
      const Mat2 tau = eval_tensor(Q, tau_coeffs, t, geo, ref);
      const Vec2 div_tau = eval_tensor_divergence(Q, tau_coeffs, t, geo, ref);
      const Vec2 v = eval_vector(V, v_coeffs, t, geo, ref);
      const Mat2 eps_v = eval_vector_strain(V, v_coeffs, t, geo, ref);
      terms.strain_pairing += wq * tau.cwiseProduct(eps_v).sum();
      terms.divergence += wq * div_tau.dot(v);
    }
  }

  const auto rule = edge_quadrature(quad_degree);
  for (int e = 0; e < mesh.num_edges(); ++e) {
    const Edge& edge = mesh.edge(e);
    const auto tau_s = sample_tensor_trace(Q, tau_coeffs, e, rule);
    const auto v_s = sample_vector_trace(V, v_coeffs, e, rule);
    const auto tau_jump = jump(tau_s);
    const auto tau_avg = average(tau_s);
    const auto v_jump = jump(v_s);
    const auto v_avg = average(v_s);
    for (int q = 0; q < rule.size(); ++q) {
      const double wq = rule.weights[q] * edge.length;
      terms.jump_avg += wq * tau_jump[q].dot(v_avg[q]);
      terms.avg_jump +=
          wq * (tau_avg[q] * edge.normal).dot(v_jump[q] * edge.normal);
    }
  }
  return terms;
}

double trace_identity_residual(const SpacePair& spaces,
                               const Eigen::VectorXd& tau_coeffs,
                               const Eigen::VectorXd& v_coeffs,
                               int quad_degree) {
  const Mesh& mesh = *spaces.mesh;
  const BrokenSpace& Q = *spaces.stress;
  const BrokenSpace& V = *spaces.displacement;
  const auto rule = edge_quadrature(quad_degree);
  double lhs = 0.0, rhs = 0.0;
  for (int e = 0; e < mesh.num_edges(); ++e) {
    const Edge& edge = mesh.edge(e);
    const auto tau_s = sample_tensor_trace(Q, tau_coeffs, e, rule);
    const auto v_s = sample_vector_trace(V, v_coeffs, e, rule);
    const auto tau_jump = jump(tau_s);
    const auto tau_avg = average(tau_s);
    const auto v_jump = jump(v_s);
    const auto v_avg = average(v_s);
    for (int q = 0; q < rule.size(); ++q) {
      const double wq = rule.weights[q] * edge.length;
      // <tau n, v> over both element boundaries sharing this edge
      double both_sides = (tau_s.plus[q] * edge.normal).dot(v_s.plus[q]);
      if (!tau_s.boundary())
        both_sides += (tau_s.minus[q] * -edge.normal).dot(v_s.minus[q]);
      lhs += wq * both_sides;
      rhs += wq * ((tau_avg[q] * edge.normal).dot(v_jump[q] * edge.normal) +
                   tau_jump[q].dot(v_avg[q]));
    }
  }
  return std::abs(lhs - rhs);
}

}  // namespace elastdg
