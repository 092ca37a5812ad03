#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "elastdg/material.hpp"

#include <random>

using namespace elastdg;

namespace {

Mat2 random_symmetric(std::mt19937& rng) {
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  Mat2 m;
  const double a = d(rng), b = d(rng), c = d(rng);
  m << a, c, c, b;
  return m;
}

}  // namespace

TEST_CASE("compliance on the identity and on trace-free tensors") {
  Material m(1.0, 0.4);
  const Mat2 AI = apply_compliance(Mat2::Identity(), m);
  // (1+nu)(1-2nu)/E = 1.4 * 0.2 = 0.28
  CHECK((AI - 0.28 * Mat2::Identity()).cwiseAbs().maxCoeff() < 1e-15);

  Mat2 dev;
  dev << 0.3, -0.2, -0.2, -0.3;
  CHECK((apply_compliance(dev, m) - m.a() * dev).cwiseAbs().maxCoeff() <
        1e-15);
  CHECK(apply_compliance(Mat2::Zero(), m).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("material parameter validation") {
  CHECK_THROWS_AS(Material(1.0, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(Material(1.0, -0.1), std::invalid_argument);
  CHECK_THROWS_AS(Material(-2.0, 0.3), std::invalid_argument);
}

TEST_CASE("stiffness inverts compliance") {
  std::mt19937 rng(3);
  for (double nu : {0.1, 0.3, 0.4, 0.49, 0.4999}) {
    Material m(2.5, nu);
    // lambda grows like 1/(1-2nu); the cancellation in A(C eps) scales with it
    const double tol = 1e-13 * std::max(1.0, m.lambda() / m.E);
    for (int i = 0; i < 50; ++i) {
      const Mat2 s = random_symmetric(rng);
      const Mat2 back = apply_compliance(apply_stiffness(s, m), m);
      CHECK((back - s).cwiseAbs().maxCoeff() < tol);
      const Mat2 fwd = apply_stiffness(apply_compliance(s, m), m);
      CHECK((fwd - s).cwiseAbs().maxCoeff() < 1e-12);
    }
    // trace-free strain sees only the shear modulus
    Mat2 dev;
    dev << 0.7, 0.1, 0.1, -0.7;
    CHECK((apply_stiffness(dev, m) - 2.0 * m.mu() * dev).cwiseAbs().maxCoeff() <
          1e-14);
  }
}

TEST_CASE("stiffness against the numerically inverted Voigt compliance") {
  Material m(1.0, 0.4);
  const Eigen::Matrix3d VA = m.compliance_voigt();
  // Voigt Gram of the generators is diag(1,1,2); solve A c = g for the
  // stiffness image of each generator and compare coefficients.
  const auto& gens = tensor_generators();
  Eigen::Matrix3d gram = Eigen::Matrix3d::Zero();
  gram.diagonal() << 1.0, 1.0, 2.0;
  const Eigen::Matrix3d VC_num = gram * VA.inverse();  // maps coefficients
  for (int j = 0; j < 3; ++j) {
    const Mat2 img = apply_stiffness(gens[j], m);
    // coefficients of img in the generator basis
    Eigen::Vector3d c(img(0, 0), img(1, 1), img(0, 1));
    Eigen::Vector3d rhs = Eigen::Vector3d::Zero();
    rhs[j] = 1.0;
    const Eigen::Vector3d c_num =
        (VA * gram.inverse()).inverse() * rhs;  // A (C g_j) = g_j
    CHECK((c - c_num).cwiseAbs().maxCoeff() < 1e-12);
  }
  (void)VC_num;
}

TEST_CASE("compliance positivity floor") {
  std::mt19937 rng(11);
  for (double nu : {0.05, 0.25, 0.45, 0.499}) {
    Material m(1.0, nu);
    CHECK(m.compliance_floor() > 0.0);
    for (int i = 0; i < 40; ++i) {
      const Mat2 s = random_symmetric(rng);
      const double energy =
          apply_compliance(s, m).cwiseProduct(s).sum();
      CHECK(energy >= m.compliance_floor() * s.squaredNorm() - 1e-14);
    }
  }
}

TEST_CASE("manufactured displacement and strain at the center") {
  ManufacturedCase mc(Material{1.0, 0.4});
  const Vec2 u = mc.displacement(Vec2(0.5, 0.5));
  CHECK(u.x() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(u.y() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(mc.strain(Vec2(0.5, 0.5)).cwiseAbs().maxCoeff() < 1e-14);
  // boundary values vanish
  for (double s : {0.0, 0.3, 0.77, 1.0}) {
    CHECK(mc.displacement(Vec2(s, 0.0)).norm() < 1e-15);
    CHECK(mc.displacement(Vec2(1.0, s)).norm() < 1e-15);
  }
}

TEST_CASE("closed-form forcing matches a finite-difference divergence") {
  // independent oracle: central differences of the stress columns
  ManufacturedCase mc(Material{1.0, 0.4});
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> inner(0.1, 0.9);
  const double h = 1e-5;
  for (int i = 0; i < 10; ++i) {
    const Vec2 p(inner(rng), inner(rng));
    Vec2 div_fd;
    for (int r = 0; r < 2; ++r) {
      const Mat2 sxp = mc.stress(p + Vec2(h, 0));
      const Mat2 sxm = mc.stress(p - Vec2(h, 0));
      const Mat2 syp = mc.stress(p + Vec2(0, h));
      const Mat2 sym = mc.stress(p - Vec2(0, h));
      div_fd[r] = (sxp(r, 0) - sxm(r, 0)) / (2 * h) +
                  (syp(r, 1) - sym(r, 1)) / (2 * h);
    }
    CHECK((mc.forcing(p) - div_fd).cwiseAbs().maxCoeff() < 1e-6);
  }
}

TEST_CASE("manufactured stress is symmetric and consistent with the law") {
  ManufacturedCase mc(Material{1.0, 0.3});
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < 20; ++i) {
    const Vec2 p(unit(rng), unit(rng));
    const Mat2 s = mc.stress(p);
    CHECK(std::abs(s(0, 1) - s(1, 0)) < 1e-15);
    const Mat2 back = apply_compliance(s, mc.material);
    CHECK((back - mc.strain(p)).cwiseAbs().maxCoeff() < 1e-13);
  }
}
