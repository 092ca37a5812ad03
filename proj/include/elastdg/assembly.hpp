#pragma once

#include "elastdg/edge_ops.hpp"
#include "elastdg/method.hpp"

#include <Eigen/Sparse>

#include <iosfwd>

namespace elastdg {

/// Index ranges of the unknown blocks in the fixed ordering
/// [sigma | sigma_check | u | u_check]; absent fields have size 0 and
/// has_* = false.
struct FieldLayout {
  int sigma_offset = 0, sigma_size = 0;
  int sigma_check_offset = 0, sigma_check_size = 0;
  int u_offset = 0, u_size = 0;
  int u_check_offset = 0, u_check_size = 0;
  int total = 0;
  bool has_sigma_check = false;
  bool has_u_check = false;
};

/// Sparse symmetric saddle-point system over the present fields. The rhs is
/// zero until a load is attached (assemble_rhs + set_load).
struct BlockSystem {
  Eigen::SparseMatrix<double> matrix;
  Eigen::VectorXd rhs;
  FieldLayout layout;
  MethodConfig config;
  std::vector<std::string> warnings;

  void set_load(const Eigen::VectorXd& u_block);

  /// Coordinate text dump "row col value", 0-based, for external debugging.
  void dump_coordinate(std::ostream& out) const;
};

/// Max relative symmetry defect |M - M^T| / max|M|.
double symmetry_defect(const Eigen::SparseMatrix<double>& m);

/// Monolithic four-field system (formulation four_field_h1 / four_field_hdiv;
/// the two differ only in which DG-identity side of the stress/momentum
/// pairing is integrated).
BlockSystem assemble_four_field(const SpacePair& spaces,
                                const MethodConfig& config);

/// Reduced systems, eliminating the edge unknowns through their closure
/// rows. Elimination of a hard-constraint row (eta1 = 0 resp. tau2 = 0)
/// is rejected.
BlockSystem reduce_to_three_field_H(const SpacePair& spaces,
                                    const MethodConfig& config);
BlockSystem reduce_to_three_field_W(const SpacePair& spaces,
                                    const MethodConfig& config);
BlockSystem reduce_to_two_field(const SpacePair& spaces,
                                const MethodConfig& config);

/// Limiting cases: mixed_limit (three-field-H structure with gamma = 0,
/// tau2 = 0, Qcheck = {0}) and primal_limit (three-field-W structure with
/// gamma = 0, Vcheck = {0}, eta1 = 0). Space inclusions are checked.
BlockSystem assemble_limit(const SpacePair& spaces, const MethodConfig& config);

/// Dispatch on config.formulation.
BlockSystem assemble_system(const SpacePair& spaces,
                            const MethodConfig& config);

/// Load vector (f, v_h) over the displacement test block.
Eigen::VectorXd assemble_rhs(const SpacePair& spaces,
                             const std::function<Vec2(const Vec2&)>& f,
                             int quad_degree);

/// Default assembly quadrature exactness, 2 max(alpha) + 2.
int assembly_quadrature_degree(const SpacePair& spaces);

/// Coefficient vectors of all four fields. Fields eliminated from the solved
/// system are recovered from their closure relations
/// (sigma_check = -tau1 P[u_h], u_check = -eta2 P[sigma_h]).
struct FieldSolution {
  Eigen::VectorXd sigma;
  Eigen::VectorXd sigma_check;
  Eigen::VectorXd u;
  Eigen::VectorXd u_check;
  double residual = 0.0;
};

FieldSolution split_solution(const SpacePair& spaces, const BlockSystem& system,
                             const Eigen::VectorXd& x);

/// Numerical traces evaluated from stored coefficients:
/// sigma_hat = {sigma} + [sigma] gamma^T + sigma_check,
/// u_hat = {u} - (gamma^T n) [u] n + u_check.
Mat2 numerical_trace_stress(const SpacePair& spaces, const MethodConfig& config,
                            const FieldSolution& sol, int edge, double s);
Vec2 numerical_trace_displacement(const SpacePair& spaces,
                                  const MethodConfig& config,
                                  const FieldSolution& sol, int edge, double s);

/// Relative l2 distance between shared coefficient blocks of two solutions.
double relative_field_distance(const Eigen::VectorXd& a,
                               const Eigen::VectorXd& b);

}  // namespace elastdg
