#include "elastdg/study.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <sstream>

namespace {

using namespace elastdg;

DegreeTuple parse_alpha(const std::string& text) {
  std::stringstream ss(text);
  std::array<int, 4> a{};
  std::string tok;
  for (int i = 0; i < 4; ++i) {
    if (!std::getline(ss, tok, ','))
      throw CLI::ValidationError("--alpha needs four comma-separated entries");
    a[i] = (tok == "x" || tok == "-") ? -1 : std::stoi(tok);
  }
  return {a[0], a[1], a[2], a[3]};
}

EdgeParam parse_param(const std::string& text, bool& infinite) {
  infinite = false;
  if (text == "inf") {
    infinite = true;
    return {};
  }
  std::stringstream ss(text);
  std::string tok;
  std::getline(ss, tok, ',');
  EdgeParam p;
  p.rho = std::stod(tok);
  if (std::getline(ss, tok, ',')) p.exponent = std::stod(tok);
  return p;
}

std::pair<int, int> parse_levels(const std::string& text) {
  const auto pos = text.find("..");
  if (pos == std::string::npos)
    return {std::stoi(text), std::stoi(text)};
  return {std::stoi(text.substr(0, pos)), std::stoi(text.substr(pos + 2))};
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(std::stod(tok));
  return out;
}

void print_report(const ErrorReport& report) {
  write_csv(report, std::cout);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"elastdg - DG convergence lab for linear elasticity with "
               "symmetric stress"};
  app.require_subcommand(1);

  // ---- study
  auto* study = app.add_subcommand("study", "convergence study over levels");
  std::string formulation = "four_field_hdiv", alpha_s = "1,0,0,1";
  std::string eta_s = "1,-1", tau_s = "1,1", levels_s = "2..6", out_path;
  double gamma = 1.0, nu = 0.4, E = 1.0;
  study->add_option("--formulation", formulation,
                    "four_field_h1|four_field_hdiv|three_field_H|"
                    "three_field_W|two_field|mixed_limit|primal_limit");
  study->add_option("--alpha", alpha_s, "degrees a1,a2,a3,a4 (x = empty)");
  study->add_option("--eta", eta_s, "rho,p meaning rho*h^p, or 'inf'");
  study->add_option("--tau", tau_s, "rho,p meaning rho*h^p, or 'inf'");
  study->add_option("--gamma", gamma, "trace weight gamma");
  study->add_option("--nu", nu, "Poisson ratio in (0,1/2)");
  study->add_option("--E", E, "Young's modulus");
  study->add_option("--levels", levels_s, "lmin..lmax");
  study->add_option("--out", out_path, "CSV output path");

  // ---- limit
  auto* limit = app.add_subcommand("limit", "mixed/primal limit study");
  std::string kind = "mixed", rhos_s = "1,0.25,0.0625";
  std::string lim_alpha_s = "";
  int lim_level = 4;
  double lim_nu = 0.4, lim_E = 1.0;
  std::string lim_out;
  limit->add_option("--kind", kind, "mixed|primal");
  limit->add_option("--rhos", rhos_s, "decreasing rho list");
  limit->add_option("--level", lim_level, "mesh level");
  limit->add_option("--alpha", lim_alpha_s, "degrees (defaults per kind)");
  limit->add_option("--nu", lim_nu, "Poisson ratio");
  limit->add_option("--E", lim_E, "Young's modulus");
  limit->add_option("--out", lim_out, "CSV output path");

  // ---- locking
  auto* locking = app.add_subcommand("locking", "nu sweep, H(div) preset");
  std::string nus_s = "0.4,0.49,0.499,0.4999", lock_levels_s = "2..6";
  std::string lock_out;
  double lock_E = 1.0;
  locking->add_option("--nu-list", nus_s, "Poisson ratios");
  locking->add_option("--levels", lock_levels_s, "lmin..lmax");
  locking->add_option("--E", lock_E, "Young's modulus");
  locking->add_option("--out", lock_out, "CSV output path");

  // ---- preset
  auto* preset = app.add_subcommand("preset", "run a named scheme preset");
  std::string preset_name, preset_levels_s = "2..6", preset_out;
  double preset_nu = 0.4;
  preset->add_option("name", preset_name, "preset name (see --list)");
  preset->add_option("--levels", preset_levels_s, "lmin..lmax");
  preset->add_option("--nu", preset_nu, "Poisson ratio");
  preset->add_option("--out", preset_out, "CSV output path");
  bool list_presets = false;
  preset->add_flag("--list", list_presets, "list preset names");

  // ---- mesh dump
  auto* meshcmd = app.add_subcommand("mesh", "plain-text mesh dump");
  int mesh_level = 1;
  meshcmd->add_option("--level", mesh_level, "refinement level");

  // ---- system dump
  auto* syscmd = app.add_subcommand("system", "coordinate-format matrix dump");
  std::string sys_formulation = "four_field_hdiv", sys_alpha_s = "1,0,0,1";
  std::string sys_eta_s = "1,-1", sys_tau_s = "1,1";
  int sys_level = 2;
  double sys_gamma = 1.0, sys_nu = 0.4;
  syscmd->add_option("--formulation", sys_formulation, "formulation tag");
  syscmd->add_option("--alpha", sys_alpha_s, "degrees a1,a2,a3,a4");
  syscmd->add_option("--eta", sys_eta_s, "rho,p or 'inf'");
  syscmd->add_option("--tau", sys_tau_s, "rho,p or 'inf'");
  syscmd->add_option("--gamma", sys_gamma, "trace weight");
  syscmd->add_option("--nu", sys_nu, "Poisson ratio");
  syscmd->add_option("--level", sys_level, "mesh level");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*study) {
      StudyConfig sc;
      sc.method.formulation = parse_formulation(formulation);
      sc.method.alpha = parse_alpha(alpha_s);
      sc.method.eta = parse_param(eta_s, sc.method.eta_infinite);
      sc.method.tau = parse_param(tau_s, sc.method.tau_infinite);
      sc.method.gamma = gamma;
      sc.method.material = Material(E, nu);
      auto [lo, hi] = parse_levels(levels_s);
      sc.level_min = lo;
      sc.level_max = hi;
      sc.output_path = out_path;
      ErrorReport report = run_study(sc);
      print_report(report);
    } else if (*limit) {
      const LimitKind k = kind == "primal" ? LimitKind::primal : LimitKind::mixed;
      DegreeTuple alpha = k == LimitKind::primal ? DegreeTuple{1, 2, 1, -1}
                                                 : DegreeTuple{1, 0, 0, 1};
      if (!lim_alpha_s.empty()) alpha = parse_alpha(lim_alpha_s);
      LimitReport report = run_limit_study(k, parse_list(rhos_s), lim_level,
                                           alpha, Material(lim_E, lim_nu),
                                           lim_out);
      std::cout << "rho,d_sigma,d_divsigma,d_u,d_total,order\n";
      for (const auto& r : report.rows) {
        std::cout << r.rho << "," << r.d_sigma << "," << r.d_divsigma << ","
                  << r.d_u << "," << r.distance() << ",";
        if (r.order) std::cout << *r.order;
        std::cout << "\n";
      }
    } else if (*locking) {
      auto [lo, hi] = parse_levels(lock_levels_s);
      ErrorReport report =
          run_locking_study(parse_list(nus_s), lo, hi, lock_E, lock_out);
      write_csv(report, std::cout, true);
    } else if (*preset) {
      if (list_presets || preset_name.empty()) {
        for (const auto& n : preset_names()) std::cout << n << "\n";
        return 0;
      }
      StudyConfig sc;
      sc.method = preset_config(preset_name);
      sc.method.material = Material(1.0, preset_nu);
      auto [lo, hi] = parse_levels(preset_levels_s);
      sc.level_min = lo;
      sc.level_max = hi;
      sc.output_path = preset_out;
      print_report(run_study(sc));
    } else if (*meshcmd) {
      Mesh mesh(mesh_level);
      mesh.write_text(std::cout);
    } else if (*syscmd) {
      MethodConfig cfg;
      cfg.formulation = parse_formulation(sys_formulation);
      cfg.alpha = parse_alpha(sys_alpha_s);
      cfg.eta = parse_param(sys_eta_s, cfg.eta_infinite);
      cfg.tau = parse_param(sys_tau_s, cfg.tau_infinite);
      cfg.gamma = sys_gamma;
      cfg.material = Material(1.0, sys_nu);
      auto mesh = std::make_shared<const Mesh>(sys_level);
      SpacePair spaces = build_spaces(mesh, cfg.alpha);
      BlockSystem sys = assemble_system(spaces, cfg);
      sys.dump_coordinate(std::cout);
    }
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 1;
  }
  return 0;
}
