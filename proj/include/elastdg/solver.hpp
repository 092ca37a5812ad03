#pragma once

#include "elastdg/assembly.hpp"

namespace elastdg {

/// Outcome of a sparse direct solve. Singularity is detected from the
/// factorization itself and from an inverse-iteration estimate of the
/// smallest singular value (flagged below 1e-12 times the largest entry),
/// which separates rank-deficient systems from merely ill-conditioned ones.
struct SolveReport {
  bool singular = false;
  double residual = 0.0;                 // |Mx-b| / |b|
  double smallest_singular_ratio = 0.0;  // sigma_min estimate / max |entry|
  std::string message;
};

struct SolveResult {
  FieldSolution fields;
  SolveReport report;
};

/// Sparse direct solve of an assembled system. On singular systems the
/// report carries the diagnostic and the fields are zero.
SolveResult solve(const SpacePair& spaces, const BlockSystem& system);

/// Per-element factorizations of the HDG local problems
///   (A s, tau)_K + (u, div tau)_K            = <uhat, tau n>_dK
///   (div s, v)_K - <2 tau1 u, v>_dK          = (f, v)_K - <2 tau1 uhat, v>_dK
/// mapping trace data to element fields.
class HdgLocalOperator {
 public:
  HdgLocalOperator(const SpacePair& spaces, const MethodConfig& config);

  /// Solve the local problem of element t for given global trace
  /// coefficients and load; returns (sigma_K, u_K) element coefficient
  /// blocks.
  std::pair<Eigen::VectorXd, Eigen::VectorXd> local_solve(
      int t, const Eigen::VectorXd& uhat, const Eigen::VectorXd& f_load) const;

  /// Residual of the two local equations for given data, max abs entry.
  double local_residual(int t, const Eigen::VectorXd& uhat,
                        const Eigen::VectorXd& f_load,
                        const Eigen::VectorXd& sigma_K,
                        const Eigen::VectorXd& u_K) const;

  int trace_dofs_of(int t, std::vector<int>& global) const;

  const Eigen::MatrixXd& saddle(int t) const { return saddle_[t]; }
  const Eigen::MatrixXd& trace_coupling(int t) const { return coupling_[t]; }
  const Eigen::MatrixXd& trace_penalty(int t) const { return penalty_[t]; }

 private:
  const SpacePair& spaces_;
  MethodConfig config_;
  std::vector<Eigen::MatrixXd> saddle_;    // [[A, D^T],[D, -2T]]
  std::vector<Eigen::PartialPivLU<Eigen::MatrixXd>> lu_;
  std::vector<Eigen::MatrixXd> coupling_;  // N = [R; -S]
  std::vector<Eigen::MatrixXd> penalty_;   // 2 That
  std::vector<std::vector<int>> trace_map_;
};

struct HdgResult {
  FieldSolution fields;
  Eigen::VectorXd uhat;  // globally coupled trace unknowns
  SolveReport report;
  bool condensed_spd = false;
  double condensed_symmetry_defect = 0.0;
  int condensed_unknowns = 0;
};

/// Static condensation: assemble the Schur complement onto the displacement
/// trace, solve the symmetric positive definite global problem, and recover
/// element fields by local back-substitution. Requires gamma = 0 and
/// V_h|_E in Vcheck_h (a4 >= a2).
HdgResult hdg_condense_and_solve(const SpacePair& spaces,
                                 const MethodConfig& config,
                                 const std::function<Vec2(const Vec2&)>& f);

/// Monolithic three-field configuration equivalent to the condensed HDG
/// solve: tau2 = 4 tau1 on interior edges and a doubled tau1 on Gamma_D.
MethodConfig hdg_equivalent_monolithic_config(const MethodConfig& config);

}  // namespace elastdg
