#include "elastdg/basis.hpp"

#include "elastdg/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace elastdg {

const std::array<Mat2, 3>& tensor_generators() {
  static const std::array<Mat2, 3> gens = [] {
    std::array<Mat2, 3> g;
    g[0] << 1, 0, 0, 0;
    g[1] << 0, 0, 0, 1;
    g[2] << 0, 1, 1, 0;
    return g;
  }();
  return gens;
}

ScalarBasis::ScalarBasis(int degree) : degree_(degree) {
  if (degree < 0) throw std::invalid_argument("basis degree must be >= 0");
  for (int d = 0; d <= degree; ++d)
    for (int a = d; a >= 0; --a) exponents_.push_back({a, d - a});

  const int n = size();
  Eigen::MatrixXd gram(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      gram(i, j) = reference_monomial_integral(
          exponents_[i][0] + exponents_[j][0],
          exponents_[i][1] + exponents_[j][1]);

  // phi = L^{-1} m gives an orthonormal set: (L^{-1}) G (L^{-1})^T = I.
  // One refinement pass on the exact Gram of the first-pass basis repairs
  // the roundoff the ill-conditioned monomial Gram introduces at degree 4.
  Eigen::LLT<Eigen::MatrixXd> llt(gram);
  if (llt.info() != Eigen::Success)
    throw std::runtime_error("monomial Gram matrix not SPD");
  coeffs_ = llt.matrixL().solve(Eigen::MatrixXd::Identity(n, n));
  const Eigen::MatrixXd gram2 = coeffs_ * gram * coeffs_.transpose();
  Eigen::LLT<Eigen::MatrixXd> llt2(gram2);
  coeffs_ = llt2.matrixL().solve(coeffs_);
}

Eigen::VectorXd ScalarBasis::values(const Vec2& p) const {
  const int n = size();
  Eigen::VectorXd mono(n);
  for (int i = 0; i < n; ++i)
    mono[i] = std::pow(p.x(), exponents_[i][0]) *
              std::pow(p.y(), exponents_[i][1]);
  return coeffs_ * mono;
}

Eigen::MatrixXd ScalarBasis::gradients(const Vec2& p) const {
  const int n = size();
  Eigen::MatrixXd mono_grad(2, n);
  for (int i = 0; i < n; ++i) {
    const int a = exponents_[i][0], b = exponents_[i][1];
    mono_grad(0, i) = a == 0 ? 0.0 : a * std::pow(p.x(), a - 1) * std::pow(p.y(), b);
    mono_grad(1, i) = b == 0 ? 0.0 : b * std::pow(p.x(), a) * std::pow(p.y(), b - 1);
  }
  return mono_grad * coeffs_.transpose();
}

EdgeModes::EdgeModes(int degree) : degree_(degree) {
  if (degree < 0) throw std::invalid_argument("edge mode degree must be >= 0");
  const int n = degree + 1;
  Eigen::MatrixXd gram(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) gram(i, j) = 1.0 / (i + j + 1);
  Eigen::LLT<Eigen::MatrixXd> llt(gram);
  if (llt.info() != Eigen::Success)
    throw std::runtime_error("edge Gram matrix not SPD");
  coeffs_ = llt.matrixL().solve(Eigen::MatrixXd::Identity(n, n));
  const Eigen::MatrixXd gram2 = coeffs_ * gram * coeffs_.transpose();
  Eigen::LLT<Eigen::MatrixXd> llt2(gram2);
  coeffs_ = llt2.matrixL().solve(coeffs_);
}

Eigen::VectorXd EdgeModes::values(double s) const {
  const int n = size();
  Eigen::VectorXd mono(n);
  double p = 1.0;
  for (int i = 0; i < n; ++i) {
    mono[i] = p;
    p *= s;
  }
  return coeffs_ * mono;
}

ElementGeometry element_geometry(const std::array<Vec2, 3>& v) {
  ElementGeometry geo;
  geo.v0 = v[0];
  geo.jacobian.col(0) = v[1] - v[0];
  geo.jacobian.col(1) = v[2] - v[0];
  const double det = geo.jacobian.determinant();
  geo.det = std::abs(det);
  geo.inverse_transpose = geo.jacobian.inverse().transpose();
  return geo;
}

}  // namespace elastdg
