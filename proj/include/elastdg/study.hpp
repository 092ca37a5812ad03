#pragma once

#include "elastdg/solver.hpp"

#include <optional>
#include <string>

namespace elastdg {

struct ErrorRow {
  int level = 0;
  double h = 0.0;
  int ndof_sigma = 0, ndof_sigmacheck = 0, ndof_u = 0, ndof_ucheck = 0;
  bool singular = false;
  double e_sigma_L2 = 0.0;
  double e_divsigma_L2 = 0.0;
  double e_u_L2 = 0.0;
  double e_strain_L2 = 0.0;
  double norm_sigma_check = 0.0;  // discrete trace norms (regime weighted)
  double norm_u_check = 0.0;
  double stability_ratio = 0.0;   // discrete solution norm / ||f||_0
  std::optional<double> rate_sigma, rate_divsigma, rate_u, rate_strain;
  double nu = 0.0;  // locking studies tag rows by Poisson ratio
  // exact-field norms, filled by the locking study so spreads can be taken
  // on relative errors (absolute ones scale with lambda as nu -> 1/2)
  double exact_sigma_norm = 0.0;
  double exact_divsigma_norm = 0.0;
  std::optional<double> spread_sigma, spread_divsigma;  // per level, locking
};

struct ErrorReport {
  std::vector<ErrorRow> rows;
};

struct StudyConfig {
  MethodConfig method;
  int level_min = 2;
  int level_max = 6;
  int quadrature_boost = 4;  // error integration beyond assembly exactness
  std::string output_path;   // empty: no file written
};

/// Exact fields to measure errors against; the manufactured case provides
/// one, polynomial override cases another.
struct ExactSolution {
  std::function<Vec2(const Vec2&)> displacement;
  std::function<Mat2(const Vec2&)> strain;
  std::function<Mat2(const Vec2&)> stress;
  std::function<Vec2(const Vec2&)> stress_divergence;
};

ExactSolution exact_fields(const ManufacturedCase& mc);

/// Field errors of a discrete solution, integrated with boosted quadrature
/// (the manufactured solution is trigonometric).
ErrorRow compute_errors(const SpacePair& spaces, const MethodConfig& config,
                        const FieldSolution& sol, const ExactSolution& exact,
                        int quadrature_boost = 4);
ErrorRow compute_errors(const SpacePair& spaces, const MethodConfig& config,
                        const FieldSolution& sol, const ManufacturedCase& mc,
                        int quadrature_boost = 4);

/// Regime-weighted discrete solution norms (the stability functionals of
/// the two well-posedness regimes), summed over all four fields.
double discrete_solution_norm(const SpacePair& spaces,
                              const MethodConfig& config,
                              const FieldSolution& sol);

/// log2 error ratios between consecutive rows of matching levels.
void attach_rates(ErrorReport& report);

/// Mesh/assemble/solve/error sweep over the level range; singular levels are
/// recorded with empty error cells.
ErrorReport run_study(const StudyConfig& config);

/// Exact CSV contract of the study reports.
void write_csv(const ErrorReport& report, std::ostream& out,
               bool with_nu_columns = false);
void write_csv_file(const ErrorReport& report, const std::string& path,
                    bool with_nu_columns = false);

struct LimitRow {
  double rho = 0.0;
  double d_sigma = 0.0, d_divsigma = 0.0, d_u = 0.0;
  double distance() const { return d_sigma + d_divsigma + d_u; }
  std::optional<double> order;  // in rho, between consecutive rows
};

struct LimitReport {
  std::vector<LimitRow> rows;
};

enum class LimitKind { mixed, primal };

/// Distance of the two-field solve to the mixed/primal limit solution as the
/// stabilization coefficient rho decreases (gamma = 0 throughout).
LimitReport run_limit_study(LimitKind kind, const std::vector<double>& rhos,
                            int level, DegreeTuple alpha,
                            const Material& material,
                            const std::string& output_path = "");

/// H(div) preset alpha=(1,0,0,1) swept over Poisson ratios; rows carry nu.
ErrorReport run_locking_study(const std::vector<double>& nu_list,
                              int level_min, int level_max, double E = 1.0,
                              const std::string& output_path = "");

/// Relative spread (max-min)/max of a quantity across the locking rows of
/// one level.
double locking_spread(const ErrorReport& report, int level, bool divsigma);

/// Named scheme presets (rows of the method tables).
MethodConfig preset_config(const std::string& name);
std::vector<std::string> preset_names();

/// Load quadrature used by studies: assembly exactness + 4.
int load_quadrature_degree(const SpacePair& spaces);

}  // namespace elastdg
