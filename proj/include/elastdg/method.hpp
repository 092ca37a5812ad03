#pragma once

#include "elastdg/material.hpp"
#include "elastdg/spaces.hpp"

#include <limits>
#include <string>
#include <vector>

namespace elastdg {

enum class Formulation {
  four_field_h1,
  four_field_hdiv,
  three_field_H,   // sigma_check eliminated
  three_field_W,   // u_check eliminated
  two_field,       // both eliminated
  mixed_limit,     // gamma=0, tau2=0, Qcheck={0}
  primal_limit,    // gamma=0, Vcheck={0}, eta1=0
};

const char* formulation_name(Formulation f);
Formulation parse_formulation(const std::string& name);

/// Per-edge parameter value rho * h_e^p.
struct EdgeParam {
  double rho = 1.0;
  double exponent = 0.0;

  double value(double h) const;
};

/// Which side of the DG identity the stress/momentum coupling integrates.
enum class AssemblyRoute { automatic, grad, div };

/// Full description of one scheme instance: formulation, degree tuple,
/// stabilization parameters eta/tau of the Nitsche closure, the trace
/// weight gamma (replicated to the vector (gamma, gamma)), and material.
/// eta_infinite / tau_infinite select the exact-constraint degenerate rows
/// (tau2 = 0 resp. eta1 = 0).
struct MethodConfig {
  Formulation formulation = Formulation::four_field_hdiv;
  DegreeTuple alpha{1, 0, 0, 1};
  EdgeParam eta{1.0, -1.0};
  EdgeParam tau{1.0, 1.0};
  bool eta_infinite = false;
  bool tau_infinite = false;
  double gamma = 1.0;
  Material material{1.0, 0.4};
  AssemblyRoute route = AssemblyRoute::automatic;

  // Edge-type scalings of the closure parameters; the HDG equivalence uses
  // a doubled Dirichlet tau1.
  double tau1_dirichlet_scale = 1.0;
  double tau2_neumann_scale = 1.0;

  static constexpr double infinity() {
    return std::numeric_limits<double>::infinity();
  }

  /// Closure parameter tau1 on an edge (infinity encodes eta1 = 0).
  double tau1(double h, EdgeTag tag) const;
  /// Closure parameter tau2 on an edge (infinity encodes eta2 = 0; zero is
  /// the mixed-limit constraint).
  double tau2(double h, EdgeTag tag) const;

  AssemblyRoute resolved_route() const;
};

/// Non-fatal checks of the parameter regime assumptions; ill-posed settings
/// are assembled anyway (detecting them is the solver's job).
std::vector<std::string> regime_warnings(const MethodConfig& config);

}  // namespace elastdg
