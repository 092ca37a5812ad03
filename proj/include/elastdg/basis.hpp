#pragma once

#include <Eigen/Dense>

#include <array>

namespace elastdg {

using Mat2 = Eigen::Matrix2d;
using Vec2 = Eigen::Vector2d;

/// Symmetric 2x2 generators fixed across the project:
/// E1 = [[1,0],[0,0]], E2 = [[0,0],[0,1]], E3 = [[0,1],[1,0]].
const std::array<Mat2, 3>& tensor_generators();

inline int scalar_dim(int degree) { return (degree + 1) * (degree + 2) / 2; }

/// Orthonormal scalar polynomial basis of P_k on the reference triangle,
/// built by Gram-Schmidt on monomials with the exact monomial Gram matrix.
class ScalarBasis {
 public:
  explicit ScalarBasis(int degree);

  int degree() const { return degree_; }
  int size() const { return static_cast<int>(exponents_.size()); }

  /// Values of all basis functions at a reference point.
  Eigen::VectorXd values(const Vec2& p) const;

  /// Reference gradients, one column per basis function (2 x size).
  Eigen::MatrixXd gradients(const Vec2& p) const;

 private:
  int degree_;
  std::vector<std::array<int, 2>> exponents_;
  Eigen::MatrixXd coeffs_;  // row i = monomial coefficients of basis i
};

/// Orthonormal polynomial modes of degree <= k on the reference edge [0,1].
class EdgeModes {
 public:
  explicit EdgeModes(int degree);

  int size() const { return degree_ + 1; }
  int degree() const { return degree_; }

  Eigen::VectorXd values(double s) const;

 private:
  int degree_;
  Eigen::MatrixXd coeffs_;
};

/// Affine geometry of a physical triangle: x = v0 + J * xhat.
struct ElementGeometry {
  Vec2 v0;
  Mat2 jacobian;
  Mat2 inverse_transpose;
  double det;  // |det J| = 2 * area

  Vec2 map(const Vec2& ref) const { return v0 + jacobian * ref; }
  Vec2 pull_back(const Vec2& x) const {
    return jacobian.inverse() * (x - v0);
  }
};

ElementGeometry element_geometry(const std::array<Vec2, 3>& vertices);

}  // namespace elastdg
