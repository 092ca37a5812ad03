#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "elastdg/edge_ops.hpp"

#include <cmath>
#include <random>

using namespace elastdg;

namespace {

Eigen::VectorXd random_coeffs(int n, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v[i] = d(rng);
  return v;
}

}  // namespace

TEST_CASE("average and jump with boundary conventions") {
  const Vec2 n(0, 1);
  Mat2 I = Mat2::Identity();

  // interior averages and tensor jump
  CHECK((average_tensor(I, I, EdgeTag::interior) - I).norm() == 0.0);
  CHECK(average_vector(Vec2(1, 0), Vec2(0, 0), EdgeTag::interior).x() ==
        doctest::Approx(0.5));
  CHECK((jump_tensor(I, I, n, EdgeTag::interior)).norm() == 0.0);
  const Vec2 jt = jump_tensor(I, Mat2::Zero(), n, EdgeTag::interior);
  CHECK((jt - Vec2(0, 1)).norm() < 1e-15);

  // boundary conventions
  CHECK((average_tensor(3.0 * I, std::nullopt, EdgeTag::dirichlet) - 3.0 * I)
            .norm() == 0.0);
  CHECK(jump_tensor(I, std::nullopt, n, EdgeTag::dirichlet).norm() == 0.0);
  CHECK((jump_tensor(I, std::nullopt, n, EdgeTag::neumann) - n).norm() == 0.0);
  CHECK(jump_vector(Vec2(1, 2), std::nullopt, n, EdgeTag::neumann).norm() ==
        0.0);
}

TEST_CASE("vector jump worked example") {
  // v+ = (1,0), v- = 0, n = (1,0): [v] = [[1,0],[0,-1]], [v]n = v+ - v-
  const Vec2 n(1, 0);
  const Mat2 j = jump_vector(Vec2(1, 0), Vec2(0, 0), n, EdgeTag::interior);
  Mat2 expect;
  expect << 1, 0, 0, -1;
  CHECK((j - expect).cwiseAbs().maxCoeff() < 1e-15);
  CHECK((j * n - Vec2(1, 0)).norm() < 1e-15);
  // continuous fields have no jump
  CHECK(jump_vector(Vec2(0.3, -2), Vec2(0.3, -2), n, EdgeTag::interior)
            .norm() < 1e-16);
}

TEST_CASE("jump of a vector is symmetric, trace-free, and obeys [v]n = v+-v-") {
  std::mt19937 rng(41);
  std::uniform_real_distribution<double> d(-2.0, 2.0);
  for (int i = 0; i < 200; ++i) {
    const double phi = d(rng);
    const Vec2 n(std::cos(phi), std::sin(phi));
    const Vec2 vp(d(rng), d(rng)), vm(d(rng), d(rng));
    const Mat2 j = jump_vector(vp, vm, n, EdgeTag::interior);
    CHECK(std::abs(j(0, 1) - j(1, 0)) < 1e-15);
    CHECK(std::abs(j.trace()) < 1e-14);
    CHECK((j * n - (vp - vm)).cwiseAbs().maxCoeff() < 1e-13);
    // two-sided bound |[v]| <= 2 |[v]n| with the matching lower bound
    const double jn = (j * n).norm();
    CHECK(j.norm() <= 2.0 * jn + 1e-14);
    CHECK(jn <= j.norm() + 1e-14);
  }
}

TEST_CASE("normal-jump norm equivalence on discrete jumps") {
  // c1 |[u]| <= |[u] n| <= c2 |[u]| with c1, c2 in [1/2, 2]
  auto mesh = std::make_shared<const Mesh>(3);
  SpacePair sp = build_spaces(mesh, {1, 1, 1, 1});
  const auto coeffs = random_coeffs(sp.displacement->total_dofs(), 23);
  const auto rule = edge_quadrature(6);
  double num = 0.0, den = 0.0;
  for (int e = 0; e < mesh->num_edges(); ++e) {
    const auto sample = sample_vector_trace(*sp.displacement, coeffs, e, rule);
    const auto jumps = jump(sample);
    const Vec2 n = mesh->edge(e).normal;
    for (int q = 0; q < rule.size(); ++q) {
      const double w = rule.weights[q] * mesh->edge(e).length;
      num += w * (jumps[q] * n).squaredNorm();
      den += w * jumps[q].squaredNorm();
    }
  }
  const double ratio = std::sqrt(num / den);
  CHECK(ratio >= 0.5 - 1e-12);
  CHECK(ratio <= 2.0 + 1e-12);
}

TEST_CASE("trace projection is idempotent and takes means at degree 0") {
  auto mesh = std::make_shared<const Mesh>(2);
  SpacePair sp = build_spaces(mesh, {1, 1, 1, 1});

  // constant tensor onto degree-1 trace space reproduces itself
  Mat2 c;
  c << 2.0, -0.5, -0.5, 1.0;
  const auto coeffs = trace_project_tensor(
      *sp.stress_trace, 6, [&](int, const Vec2&) { return c; });
  for (int e = 0; e < mesh->num_edges(); ++e) {
    if (sp.stress_trace->edge_components(e) < 3) continue;
    const Mat2 back = eval_trace_tensor(*sp.stress_trace, coeffs, e, 0.37);
    CHECK((back - c).cwiseAbs().maxCoeff() < 1e-12);
  }

  // linear field onto a degree-0 target: midpoint value per edge
  SpacePair sp0 = build_spaces(mesh, {0, 0, 0, 0});
  auto linear = [](int, const Vec2& x) {
    return Vec2(x.x() + 2 * x.y(), -x.x());
  };
  const auto vc = trace_project_vector(*sp0.displ_trace, 4, linear);
  for (int e = 0; e < mesh->num_edges(); ++e) {
    if (sp0.displ_trace->edge_components(e) == 0) continue;
    const Vec2 mid = 0.5 * (mesh->vertex(mesh->edge(e).vertices[0]) +
                            mesh->vertex(mesh->edge(e).vertices[1]));
    const Vec2 back = eval_trace_vector(*sp0.displ_trace, vc, e, 0.5);
    CHECK((back - linear(e, mid)).cwiseAbs().maxCoeff() < 1e-13);
  }

  // projection of a member of the space is the identity on coefficients
  const auto direct = random_coeffs(sp.displ_trace->total_dofs(), 5);
  const auto reproj = trace_project_vector(
      *sp.displ_trace, 6, [&](int e, const Vec2& x) {
        const Vec2 p0 = mesh->vertex(mesh->edge(e).vertices[0]);
        const Vec2 p1 = mesh->vertex(mesh->edge(e).vertices[1]);
        const double s = (x - p0).norm() / (p1 - p0).norm();
        return eval_trace_vector(*sp.displ_trace, direct, e, s);
      });
  CHECK((reproj - direct).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("liftings satisfy their defining identities") {
  auto mesh = std::make_shared<const Mesh>(2);
  SpacePair sp = build_spaces(mesh, {1, 1, 1, 1});
  auto xi = [&](int e, const Vec2& x) {
    Mat2 m;
    const double a = std::sin(3 * x.x() + e * 0.1), b = std::cos(2 * x.y());
    m << a, b, b, -a;
    return m;
  };
  auto w = [&](int e, const Vec2& x) {
    return Vec2(std::cos(x.x() + 0.2 * e), std::sin(2 * x.y()));
  };

  for (LiftKind kind :
       {LiftKind::r_Q, LiftKind::l_Q, LiftKind::r_V, LiftKind::l_V}) {
    const auto lifted = lifting(kind, sp, 10, xi, w);
    CHECK(lifting_identity_residual(kind, sp, 10, lifted, xi, w) < 1e-11);
  }

  // zero data lifts to zero
  auto zero_xi = [](int, const Vec2&) { return Mat2::Zero().eval(); };
  auto zero_w = [](int, const Vec2&) { return Vec2::Zero().eval(); };
  CHECK(lifting(LiftKind::r_Q, sp, 4, zero_xi, zero_w).norm() == 0.0);
  CHECK(lifting(LiftKind::l_V, sp, 4, zero_xi, zero_w).norm() == 0.0);
}

TEST_CASE("lifting norm ratios stay bounded across levels") {
  // fixed oscillatory data pattern; |r_Q(xi)|_0^2 / |h^-1/2 xi|^2 must not
  // drift between levels 3 and 5
  auto xi = [](int, const Vec2& x) {
    Mat2 m;
    const double a = std::sin(5 * x.x()) + 0.3, b = std::cos(4 * x.y());
    m << a, b, b, 0.7 - a;
    return m;
  };
  auto zero_w = [](int, const Vec2&) { return Vec2::Zero().eval(); };
  std::vector<double> ratios;
  for (int level : {3, 4, 5}) {
    auto mesh = std::make_shared<const Mesh>(level);
    SpacePair sp = build_spaces(mesh, {1, 1, 1, 1});
    const auto lifted = lifting(LiftKind::r_Q, sp, 12, xi, zero_w);
    // |r_Q(xi)|_0^2 via the diagonal broken mass
    double lift_norm2 = 0.0;
    const auto& Q = *sp.stress;
    const double gen_norm2[3] = {1.0, 1.0, 2.0};
    for (int t = 0; t < mesh->num_triangles(); ++t) {
      const auto geo = element_geometry(mesh->triangle_vertices(t));
      for (int m = 0; m < Q.modes_per_element(); ++m)
        for (int c = 0; c < 3; ++c) {
          const double v = lifted[Q.element_offset(t) + Q.local_index(m, c)];
          lift_norm2 += v * v * geo.det * gen_norm2[c];
        }
    }
    const auto rule = edge_quadrature(12);
    double data_norm2 = 0.0;  // |h^-1/2 xi|^2 over the skeleton
    for (int e = 0; e < mesh->num_edges(); ++e) {
      const Edge& edge = mesh->edge(e);
      const Vec2 p0 = mesh->vertex(edge.vertices[0]);
      const Vec2 p1 = mesh->vertex(edge.vertices[1]);
      for (int q = 0; q < rule.size(); ++q) {
        const Vec2 x = p0 + rule.points(q, 0) * (p1 - p0);
        data_norm2 += rule.weights[q] * xi(e, x).squaredNorm();
      }
    }
    ratios.push_back(lift_norm2 / data_norm2);
  }
  for (double r : ratios) {
    CHECK(r / ratios.front() < 2.0);
    CHECK(ratios.front() / r < 2.0);
  }
}

TEST_CASE("DG identity residual vanishes for discrete pairs") {
  auto mesh = std::make_shared<const Mesh>(3);
  SpacePair sp = build_spaces(mesh, {1, 1, 1, 1});
  const int qdeg = 2 * 1 + 2;

  // tau = 0
  {
    Eigen::VectorXd zero = Eigen::VectorXd::Zero(sp.stress->total_dofs());
    Eigen::VectorXd v = random_coeffs(sp.displacement->total_dofs(), 1);
    CHECK(dg_identity_terms(sp, zero, v, qdeg).residual() == 0.0);
  }

  // constant pair: element terms vanish, edge terms cancel
  {
    const auto c_tau = project_tensor_field(*sp.stress, 2, [](const Vec2&) {
      Mat2 m;
      m << 1.0, 0.25, 0.25, -2.0;
      return m;
    });
    const auto c_v =
        project_vector_field(*sp.displacement, 2, [](const Vec2&) {
          return Vec2(0.4, -1.1);
        });
    const auto terms = dg_identity_terms(sp, c_tau, c_v, qdeg);
    CHECK(std::abs(terms.strain_pairing) < 1e-13);
    CHECK(std::abs(terms.divergence) < 1e-13);
    CHECK(terms.residual() < 1e-13);
  }

  // 100 random pairs
  for (int i = 0; i < 100; ++i) {
    const auto tau = random_coeffs(sp.stress->total_dofs(), 1000 + i);
    const auto v = random_coeffs(sp.displacement->total_dofs(), 2000 + i);
    const auto terms = dg_identity_terms(sp, tau, v, qdeg);
    CHECK(terms.residual() <= 1e-11 * std::max(1.0, terms.scale()));
    CHECK(trace_identity_residual(sp, tau, v, qdeg) <=
          1e-11 * std::max(1.0, terms.scale()));
  }
}

TEST_CASE("DG identity with mixed boundary tags") {
  auto split = [](const Vec2& mid) {
    return mid.x() < 1e-12 ? EdgeTag::neumann : EdgeTag::dirichlet;
  };
  auto mesh = std::make_shared<const Mesh>(2, split);
  SpacePair sp = build_spaces(mesh, {2, 1, 1, 1});
  const int qdeg = 2 * 2 + 2;
  for (int i = 0; i < 25; ++i) {
    const auto tau = random_coeffs(sp.stress->total_dofs(), 500 + i);
    const auto v = random_coeffs(sp.displacement->total_dofs(), 700 + i);
    const auto terms = dg_identity_terms(sp, tau, v, qdeg);
    CHECK(terms.residual() <= 1e-11 * std::max(1.0, terms.scale()));
  }
}
