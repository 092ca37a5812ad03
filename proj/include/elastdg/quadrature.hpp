#pragma once

#include <Eigen/Dense>

namespace elastdg {

/// Quadrature on the reference triangle {x,y >= 0, x+y <= 1} or the
/// reference edge [0,1]. Rules integrate polynomials up to `exactness`
/// exactly (relative error below 1e-13 against monomial integrals).
struct QuadratureRule {
  Eigen::MatrixXd points;   // n x 2 (triangle) or n x 1 (edge)
  Eigen::VectorXd weights;  // sums to domain measure
  int exactness = 0;

  int size() const { return static_cast<int>(weights.size()); }
};

/// Gauss-Legendre rule on [0,1], exact for polynomials of degree >= d.
QuadratureRule edge_quadrature(int d);

/// Collapsed-coordinate (Duffy) tensor Gauss rule on the reference triangle,
/// exact for total degree >= d.
QuadratureRule triangle_quadrature(int d);

/// Exact integral of x^a y^b over the reference triangle: a! b! / (a+b+2)!.
double reference_monomial_integral(int a, int b);

}  // namespace elastdg
