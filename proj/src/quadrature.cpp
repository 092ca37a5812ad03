#include "elastdg/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace elastdg {

namespace {

constexpr int kMaxExactness = 40;

// Legendre polynomial value and derivative at x in [-1,1].
void legendre(int n, double x, double& p, double& dp) {
  double p0 = 1.0, p1 = x;
  if (n == 0) {
    p = 1.0;
    dp = 0.0;
    return;
  }
  for (int k = 2; k <= n; ++k) {
    const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  p = p1;
  dp = n * (x * p1 - p0) / (x * x - 1.0);
}

// Gauss-Legendre nodes/weights on [-1,1] by Newton iteration from the
// Chebyshev initial guess.
void gauss_legendre(int n, Eigen::VectorXd& x, Eigen::VectorXd& w) {
  x.resize(n);
  w.resize(n);
  for (int i = 0; i < n; ++i) {
    double xi = -std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double p, dp;
    for (int it = 0; it < 100; ++it) {
      legendre(n, xi, p, dp);
      const double dx = -p / dp;
      xi += dx;
      if (std::abs(dx) < 1e-15) break;
    }
    legendre(n, xi, p, dp);
    x[i] = xi;
    w[i] = 2.0 / ((1.0 - xi * xi) * dp * dp);
  }
}

}  // namespace

QuadratureRule edge_quadrature(int d) {
  if (d < 0 || d > kMaxExactness)
    throw std::invalid_argument("edge quadrature degree out of range");
  const int n = d / 2 + 1;  // 2n-1 >= d
  Eigen::VectorXd x, w;
  gauss_legendre(n, x, w);
  QuadratureRule rule;
  rule.points.resize(n, 1);
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    rule.points(i, 0) = 0.5 * (x[i] + 1.0);
    rule.weights[i] = 0.5 * w[i];
  }
  rule.exactness = 2 * n - 1;
  return rule;
}

QuadratureRule triangle_quadrature(int d) {
  if (d < 0 || d > kMaxExactness)
    throw std::invalid_argument("triangle quadrature degree out of range");
  // Duffy map (u,v) -> (u, v(1-u)) with Jacobian (1-u); a total-degree-d
  // polynomial becomes degree d+1 in u and d in v.
  const int n = (d + 2) / 2 + 1;
  Eigen::VectorXd x, w;
  gauss_legendre(n, x, w);
  QuadratureRule rule;
  rule.points.resize(n * n, 2);
  rule.weights.resize(n * n);
  int idx = 0;
  for (int i = 0; i < n; ++i) {
    const double u = 0.5 * (x[i] + 1.0);
    const double wu = 0.5 * w[i];
    for (int j = 0; j < n; ++j) {
      const double v = 0.5 * (x[j] + 1.0);
      const double wv = 0.5 * w[j];
      rule.points(idx, 0) = u;
      rule.points(idx, 1) = v * (1.0 - u);
      rule.weights[idx] = wu * wv * (1.0 - u);
      ++idx;
    }
  }
  rule.exactness = d;
  return rule;
}

double reference_monomial_integral(int a, int b) {
  // a! b! / (a+b+2)! computed without overflow for the degrees in use.
  double value = 1.0;
  for (int k = 1; k <= a + b + 2; ++k) value /= k;
  for (int k = 1; k <= a; ++k) value *= k;
  for (int k = 1; k <= b; ++k) value *= k;
  return value;
}

}  // namespace elastdg
