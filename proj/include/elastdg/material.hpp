#pragma once

#include "elastdg/basis.hpp"

namespace elastdg {

/// Isotropic material in 2D. The compliance acts on symmetric tensors as
/// A s = a s + b tr(s) I with a = (1+nu)/E and b = -(1+nu) nu / E; its
/// inverse is C e = 2 mu e + lambda tr(e) I.
struct Material {
  double E = 1.0;
  double nu = 0.3;

  Material() = default;
  Material(double youngs, double poisson);

  double a() const { return (1.0 + nu) / E; }
  double b() const { return -(1.0 + nu) * nu / E; }
  double mu() const { return E / (2.0 * (1.0 + nu)); }
  double lambda() const {
    return nu * E / ((1.0 + nu) * (1.0 - 2.0 * nu));
  }

  /// Smallest eigenvalue of A on symmetric tensors, min(a, a + 2b) > 0.
  double compliance_floor() const { return std::min(a(), a() + 2.0 * b()); }

  /// 3x3 matrix of A in the generator basis (E1, E2, E3), entries
  /// (A E_j) : E_i weighted for the Frobenius pairing.
  Eigen::Matrix3d compliance_voigt() const;
};

Mat2 apply_compliance(const Mat2& sigma, const Material& m);
Mat2 apply_stiffness(const Mat2& strain, const Material& m);

/// Exact solution of section-style verification runs on the unit square:
/// u = (sin(pi x) sin(pi y), sin(pi x) sin(pi y)), sigma = C eps(u),
/// f = div sigma, all in closed form.
struct ManufacturedCase {
  Material material;

  explicit ManufacturedCase(const Material& m) : material(m) {}

  Vec2 displacement(const Vec2& p) const;
  Mat2 strain(const Vec2& p) const;
  Mat2 stress(const Vec2& p) const;
  Vec2 stress_divergence(const Vec2& p) const;  // f = div sigma
  Vec2 forcing(const Vec2& p) const { return stress_divergence(p); }
};

}  // namespace elastdg
