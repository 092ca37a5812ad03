#include "elastdg/method.hpp"

#include <cmath>
#include <stdexcept>

namespace elastdg {

const char* formulation_name(Formulation f) {
  switch (f) {
    case Formulation::four_field_h1: return "four_field_h1";
    case Formulation::four_field_hdiv: return "four_field_hdiv";
    case Formulation::three_field_H: return "three_field_H";
    case Formulation::three_field_W: return "three_field_W";
    case Formulation::two_field: return "two_field";
    case Formulation::mixed_limit: return "mixed_limit";
    case Formulation::primal_limit: return "primal_limit";
  }
  return "?";
}

Formulation parse_formulation(const std::string& name) {
  for (Formulation f :
       {Formulation::four_field_h1, Formulation::four_field_hdiv,
        Formulation::three_field_H, Formulation::three_field_W,
        Formulation::two_field, Formulation::mixed_limit,
        Formulation::primal_limit})
    if (name == formulation_name(f)) return f;
  throw std::invalid_argument("unknown formulation: " + name);
}

double EdgeParam::value(double h) const {
  return rho * std::pow(h, exponent);
}

double MethodConfig::tau1(double h, EdgeTag tag) const {
  if (formulation == Formulation::primal_limit || tau_infinite)
    return infinity();
  double v = tau.value(h);
  if (tag == EdgeTag::dirichlet) v *= tau1_dirichlet_scale;
  return v;
}

double MethodConfig::tau2(double h, EdgeTag tag) const {
  if (formulation == Formulation::mixed_limit || eta_infinite) return 0.0;
  const double eta_v = eta.value(h);
  if (eta_v == 0.0) return infinity();
  double v = 1.0 / eta_v;
  if (tag == EdgeTag::neumann) v *= tau2_neumann_scale;
  return v;
}

AssemblyRoute MethodConfig::resolved_route() const {
  if (route != AssemblyRoute::automatic) return route;
  switch (formulation) {
    case Formulation::four_field_h1:
    case Formulation::primal_limit:
      return AssemblyRoute::grad;
    case Formulation::four_field_hdiv:
    case Formulation::mixed_limit:
      return AssemblyRoute::div;
    default:
      // tau ~ h^{-1} marks the H1 regime, tau ~ h the H(div) regime
      return tau.exponent < 0 ? AssemblyRoute::grad : AssemblyRoute::div;
  }
}

std::vector<std::string> regime_warnings(const MethodConfig& config) {
  std::vector<std::string> warnings;
  const bool h1 = config.resolved_route() == AssemblyRoute::grad;
  if (config.gamma < 0)
    warnings.push_back("gamma is negative; assumptions require 0 <= gamma");
  if (config.tau_infinite || config.eta_infinite) return warnings;
  if (h1) {
    if (config.tau.exponent != -1 || config.tau.rho <= 0)
      warnings.push_back("H1 regime expects tau = rho h^-1 with rho > 0");
    if (config.eta.exponent != 1 || config.eta.rho < 0)
      warnings.push_back("H1 regime expects eta = rho h with rho >= 0");
  } else {
    if (config.tau.exponent != 1 || config.tau.rho < 0)
      warnings.push_back("H(div) regime expects tau = rho h with rho >= 0");
    if (config.eta.exponent != -1 || config.eta.rho <= 0)
      warnings.push_back("H(div) regime expects eta = rho h^-1 with rho > 0");
  }
  return warnings;
}

}  // namespace elastdg
