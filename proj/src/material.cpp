#include "elastdg/material.hpp"

#include <cmath>
#include <stdexcept>

namespace elastdg {

Material::Material(double youngs, double poisson) : E(youngs), nu(poisson) {
  if (E <= 0) throw std::invalid_argument("Young's modulus must be positive");
  if (nu <= 0 || nu >= 0.5)
    throw std::invalid_argument("Poisson ratio must lie in (0, 1/2)");
}

Eigen::Matrix3d Material::compliance_voigt() const {
  const auto& gens = tensor_generators();
  Eigen::Matrix3d v;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      v(i, j) = apply_compliance(gens[j], *this).cwiseProduct(gens[i]).sum();
  return v;
}

Mat2 apply_compliance(const Mat2& sigma, const Material& m) {
  return m.a() * sigma + m.b() * sigma.trace() * Mat2::Identity();
}

Mat2 apply_stiffness(const Mat2& strain, const Material& m) {
  return 2.0 * m.mu() * strain +
         m.lambda() * strain.trace() * Mat2::Identity();
}

Vec2 ManufacturedCase::displacement(const Vec2& p) const {
  const double g = std::sin(M_PI * p.x()) * std::sin(M_PI * p.y());
  return Vec2(g, g);
}

Mat2 ManufacturedCase::strain(const Vec2& p) const {
  const double gx = M_PI * std::cos(M_PI * p.x()) * std::sin(M_PI * p.y());
  const double gy = M_PI * std::sin(M_PI * p.x()) * std::cos(M_PI * p.y());
  Mat2 eps;
  eps << gx, 0.5 * (gx + gy), 0.5 * (gx + gy), gy;
  return eps;
}

Mat2 ManufacturedCase::stress(const Vec2& p) const {
  return apply_stiffness(strain(p), material);
}

Vec2 ManufacturedCase::stress_divergence(const Vec2& p) const {
  // With g = sin(pi x) sin(pi y): g_xx = g_yy = -pi^2 g and
  // g_xy = pi^2 cos(pi x) cos(pi y), so both components of div sigma equal
  // -pi^2 (3 mu + lambda) g + pi^2 (mu + lambda) cos(pi x) cos(pi y).
  const double mu = material.mu();
  const double lambda = material.lambda();
  const double g = std::sin(M_PI * p.x()) * std::sin(M_PI * p.y());
  const double cc = std::cos(M_PI * p.x()) * std::cos(M_PI * p.y());
  const double value =
      M_PI * M_PI * (-(3.0 * mu + lambda) * g + (mu + lambda) * cc);
  return Vec2(value, value);
}

}  // namespace elastdg
