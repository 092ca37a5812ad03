// Acceptance suite: one line per criterion, nonzero exit on any failure.

#include "elastdg/study.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>

using namespace elastdg;

namespace {

int failures = 0;

void report(int criterion, bool pass, const std::string& what,
            const std::string& detail) {
  std::printf("%s criterion %d: %s (%s)\n", pass ? "PASS" : "FAIL", criterion,
              what.c_str(), detail.c_str());
  if (!pass) ++failures;
}

std::string fmt(const char* pattern, double a, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), pattern, a, b, c);
  return buf;
}

double seconds_since(
    const std::chrono::steady_clock::time_point& t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

bool in_band(const std::optional<double>& rate, double target, double tol) {
  return rate && std::abs(*rate - target) <= tol;
}

ErrorReport run_levels(const MethodConfig& method, int lo, int hi) {
  StudyConfig sc;
  sc.method = method;
  sc.level_min = lo;
  sc.level_max = hi;
  return run_study(sc);
}

// ---------------------------------------------------------------- 1
void criterion_1() {
  const auto t0 = std::chrono::steady_clock::now();
  const ErrorReport rep = run_levels(preset_config("new-h1-k0"), 2, 6);
  const double dt = seconds_since(t0);
  const ErrorRow& last = rep.rows.back();
  const bool rates_ok = !last.singular &&
                        in_band(last.rate_sigma, 1.0, 0.15) &&
                        in_band(last.rate_strain, 1.0, 0.15);
  report(1, rates_ok && dt < 30.0,
         "H1 lowest-order rates, alpha=(0,1,1,0), levels 2-6",
         fmt("rate_sigma=%.3f rate_strain=%.3f runtime=%.1fs",
             last.rate_sigma.value_or(-1), last.rate_strain.value_or(-1),
             dt));
}

// ---------------------------------------------------------------- 2
void criterion_2() {
  bool all_ok = true;
  std::string detail;
  for (const char* name : {"illposed-h1-a", "illposed-h1-b"}) {
    const ErrorReport rep = run_levels(preset_config(name), 3, 6);
    bool any_singular = false;
    for (const auto& r : rep.rows) any_singular |= r.singular;
    bool stagnates = false;
    if (!any_singular) {
      const double first = rep.rows.front().e_sigma_L2;
      const double final = rep.rows.back().e_sigma_L2;
      stagnates = final >= 0.5 * first;  // three refinements, < 2x reduction
      detail += fmt("%.2f->", first) + fmt("%.2f ", final);
    } else {
      detail += "singular ";
    }
    all_ok = all_ok && (any_singular || stagnates);
  }
  report(2, all_ok, "H1 ill-posedness, alpha=(0,1,0,0) and (0,1,0,1)",
         "sigma error stagnates: " + detail);
}

// ---------------------------------------------------------------- 3
void criterion_3() {
  bool all_ok = true;
  std::string detail;
  for (const char* name : {"new-hdiv-k0", "new-hdiv-k0-q1"}) {
    const ErrorReport rep = run_levels(preset_config(name), 2, 6);
    const ErrorRow& last = rep.rows.back();
    const bool ok = !last.singular && in_band(last.rate_sigma, 1.0, 0.15) &&
                    in_band(last.rate_divsigma, 1.0, 0.15) &&
                    in_band(last.rate_u, 1.0, 0.15);
    detail += fmt("[%.3f %.3f %.3f] ", last.rate_sigma.value_or(-1),
                  last.rate_divsigma.value_or(-1), last.rate_u.value_or(-1));
    all_ok = all_ok && ok;
  }
  report(3, all_ok,
         "H(div) lowest-order rates, alpha=(1,0,0,1) and (1,0,1,1)",
         "final [sigma div u] rates: " + detail);
}

// ---------------------------------------------------------------- 4
void criterion_4() {
  bool all_ok = true;
  std::string detail;
  for (const char* name : {"illposed-hdiv-a", "illposed-hdiv-b"}) {
    const ErrorReport rep = run_levels(preset_config(name), 3, 6);
    bool any_singular = false;
    for (const auto& r : rep.rows) any_singular |= r.singular;
    if (any_singular) {
      detail += "singular ";
      continue;
    }
    const ErrorRow& first = rep.rows.front();
    const ErrorRow& last = rep.rows.back();
    const bool div_converges = in_band(last.rate_divsigma, 1.0, 0.15);
    const bool sigma_stuck = last.e_sigma_L2 >= 0.5 * first.e_sigma_L2;
    const bool u_stuck = last.e_u_L2 >= 0.5 * first.e_u_L2;
    detail += fmt("div_rate=%.3f sigma %.2f", last.rate_divsigma.value_or(-1),
                  last.e_sigma_L2 / first.e_sigma_L2) +
              fmt(" u %.2f; ", last.e_u_L2 / first.e_u_L2);
    all_ok = all_ok && div_converges && sigma_stuck && u_stuck;
  }
  report(4, all_ok,
         "H(div) ill-posedness, alpha=(1,0,i,0): div rate 1, sigma/u stuck",
         detail);
}

// ---------------------------------------------------------------- 5
void criterion_5() {
  const auto t0 = std::chrono::steady_clock::now();
  const ErrorReport rep_k1 = run_levels(preset_config("new-hdiv-k1"), 2, 5);
  const ErrorRow& k1 = rep_k1.rows.back();
  const bool ok_k1 = !k1.singular && in_band(k1.rate_sigma, 2.0, 0.2);

  const ErrorReport rep_k2 = run_levels(preset_config("new-hdiv-k2"), 2, 5);
  const ErrorRow& k2 = rep_k2.rows.back();
  const bool ok_k2 = !k2.singular && in_band(k2.rate_sigma, 4.0, 0.3);
  const double dt = seconds_since(t0);
  report(5, ok_k1 && ok_k2 && dt < 600.0,
         "higher-order stress L2 rates, alpha=(2,1,2,2) and (3,2,2,3)",
         fmt("rate(2122)=%.3f rate(3223)=%.3f runtime=%.1fs",
             k1.rate_sigma.value_or(-1), k2.rate_sigma.value_or(-1), dt));
}

// ---------------------------------------------------------------- 6
void criterion_6() {
  const std::vector<double> nus = {0.4, 0.49, 0.499, 0.4999};
  const ErrorReport rep = run_locking_study(nus, 2, 6);
  bool rates_ok = true;
  double rel_lo_near = 1e300, rel_hi_near = 0.0;
  for (const auto& r : rep.rows) {
    if (r.level != 6 || r.singular) continue;
    rates_ok = rates_ok && in_band(r.rate_sigma, 1.0, 0.15) &&
               in_band(r.rate_divsigma, 1.0, 0.15) &&
               in_band(r.rate_u, 1.0, 0.15);
    if (r.nu > 0.45) {
      const double rel = r.e_sigma_L2 / r.exact_sigma_norm;
      rel_lo_near = std::min(rel_lo_near, rel);
      rel_hi_near = std::max(rel_hi_near, rel);
    }
  }
  const double spread = locking_spread(rep, 6, false);
  const double spread_near = (rel_hi_near - rel_lo_near) / rel_hi_near;
  report(6, rates_ok && spread <= 0.10,
         "locking-free behavior, nu -> 1/2",
         std::string(rates_ok ? "rates in band" : "rates off") +
             fmt("; relative sigma-error spread=%.1f%%", 100 * spread) +
             fmt(" (near-1/2 trio %.1f%%)", 100 * spread_near));
}

// ---------------------------------------------------------------- 7
void criterion_7() {
  bool all_ok = true;
  std::string detail;
  auto mesh = std::make_shared<const Mesh>(2);
  for (const char* name : {"new-h1-k0", "new-hdiv-k0"}) {
    MethodConfig base = preset_config(name);
    SpacePair sp = build_spaces(mesh, base.alpha);
    const ManufacturedCase mc(base.material);
    const Eigen::VectorXd load = assemble_rhs(
        sp, [&](const Vec2& x) { return mc.forcing(x); },
        load_quadrature_degree(sp));
    auto run = [&](BlockSystem sys) {
      sys.set_load(load);
      SolveResult res = solve(sp, sys);
      if (res.report.singular) all_ok = false;
      return res.fields;
    };
    const FieldSolution four = run(assemble_four_field(sp, base));
    const FieldSolution tH = run(reduce_to_three_field_H(sp, base));
    const FieldSolution tW = run(reduce_to_three_field_W(sp, base));
    const FieldSolution two = run(reduce_to_two_field(sp, base));
    MethodConfig flipped = base;
    flipped.formulation = base.formulation == Formulation::four_field_h1
                              ? Formulation::four_field_hdiv
                              : Formulation::four_field_h1;
    const FieldSolution other = run(assemble_four_field(sp, flipped));

    double worst = 0.0;
    for (const FieldSolution* s : {&tH, &tW, &two, &other}) {
      worst = std::max(worst, relative_field_distance(s->sigma, four.sigma));
      worst = std::max(worst, relative_field_distance(s->u, four.u));
    }
    worst = std::max(worst,
                     relative_field_distance(tW.sigma_check, four.sigma_check));
    worst = std::max(worst,
                     relative_field_distance(tH.u_check, four.u_check));
    detail += fmt("%.1e ", worst);
    all_ok = all_ok && worst <= 1e-10;
  }
  report(7, all_ok, "formulation equivalence suite on level 2",
         "worst relative field distance per alpha: " + detail);
}

// ---------------------------------------------------------------- 8
void criterion_8() {
  auto mesh = std::make_shared<const Mesh>(2);
  MethodConfig cfg;
  cfg.formulation = Formulation::four_field_hdiv;
  cfg.alpha = {1, 0, 0, 1};
  cfg.tau = EdgeParam{1.0, 1.0};
  cfg.eta = EdgeParam{0.25, -1.0};  // tau2 = 4 tau1
  cfg.gamma = 0.0;
  cfg.material = Material(1.0, 0.4);
  SpacePair sp = build_spaces(mesh, cfg.alpha);
  const ManufacturedCase mc(cfg.material);
  auto f = [&](const Vec2& x) { return mc.forcing(x); };

  const HdgResult hdg = hdg_condense_and_solve(sp, cfg, f);
  BlockSystem mono =
      reduce_to_three_field_H(sp, hdg_equivalent_monolithic_config(cfg));
  mono.set_load(assemble_rhs(sp, f, load_quadrature_degree(sp)));
  const SolveResult ref = solve(sp, mono);

  const double d_sigma =
      relative_field_distance(hdg.fields.sigma, ref.fields.sigma);
  const double d_u = relative_field_distance(hdg.fields.u, ref.fields.u);
  const bool count_ok = hdg.condensed_unknowns == sp.displ_trace->total_dofs();
  report(8, !hdg.report.singular && !ref.report.singular && hdg.condensed_spd &&
                hdg.condensed_symmetry_defect < 1e-12 && count_ok &&
                d_sigma <= 1e-9 && d_u <= 1e-9,
         "HDG condensation equals the monolithic three-field solve",
         fmt("d_sigma=%.1e d_u=%.1e", d_sigma, d_u) +
             (hdg.condensed_spd ? ", condensed SPD" : ", NOT SPD") +
             fmt(", trace unknowns=%.0f", double(hdg.condensed_unknowns)));
}

// ---------------------------------------------------------------- 9
void criterion_9() {
  const LimitReport mixed = run_limit_study(
      LimitKind::mixed, {1.0, 0.25, 0.0625}, 4, {1, 0, 0, 1},
      Material(1.0, 0.4));
  bool mixed_ok = true;
  double worst_order = 1e300;
  for (size_t i = 1; i < mixed.rows.size(); ++i) {
    mixed_ok = mixed_ok && mixed.rows[i].order.has_value() &&
               *mixed.rows[i].order >= 0.4;
    if (mixed.rows[i].order)
      worst_order = std::min(worst_order, *mixed.rows[i].order);
  }
  const LimitReport primal = run_limit_study(
      LimitKind::primal, {1.0, 0.25, 0.0625}, 4, {1, 2, 1, -1},
      Material(1.0, 0.4));
  bool primal_ok = true;
  for (size_t i = 1; i < primal.rows.size(); ++i)
    primal_ok =
        primal_ok && primal.rows[i].distance() < primal.rows[i - 1].distance();
  report(9, mixed_ok && primal_ok,
         "limit convergence at level 4, rho in {1, 1/4, 1/16}",
         fmt("mixed order>=%.2f", worst_order) +
             (primal_ok ? ", primal monotone" : ", primal NOT monotone"));
}

// ---------------------------------------------------------------- 10
void criterion_10() {
  bool ok = true;
  std::string detail;

  // DG identity, 100 random pairs on level 3
  {
    auto mesh = std::make_shared<const Mesh>(3);
    SpacePair sp = build_spaces(mesh, {1, 1, 1, 1});
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      Eigen::VectorXd tau(sp.stress->total_dofs());
      Eigen::VectorXd v(sp.displacement->total_dofs());
      for (int j = 0; j < tau.size(); ++j) tau[j] = d(rng);
      for (int j = 0; j < v.size(); ++j) v[j] = d(rng);
      const auto terms = dg_identity_terms(sp, tau, v, 4);
      worst = std::max(worst,
                       terms.residual() / std::max(1.0, terms.scale()));
    }
    ok = ok && worst <= 1e-11;
    detail += fmt("dg_identity=%.1e ", worst);
  }

  // jump-normal identity pointwise
  {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> d(-3.0, 3.0);
    double worst = 0.0;
    for (int i = 0; i < 500; ++i) {
      const double phi = d(rng);
      const Vec2 n(std::cos(phi), std::sin(phi));
      const Vec2 vp(d(rng), d(rng)), vm(d(rng), d(rng));
      const Mat2 j = jump_vector(vp, vm, n, EdgeTag::interior);
      worst = std::max(worst, (j * n - (vp - vm)).cwiseAbs().maxCoeff());
    }
    ok = ok && worst <= 1e-13;
    detail += fmt("vjumpn=%.1e ", worst);
  }

  // A o C identity
  {
    const Material m(1.0, 0.4);
    std::mt19937 rng(13);
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      Mat2 s;
      const double a = d(rng), b = d(rng), c = d(rng);
      s << a, c, c, b;
      worst = std::max(
          worst,
          (apply_compliance(apply_stiffness(s, m), m) - s).cwiseAbs()
              .maxCoeff());
      worst = std::max(
          worst,
          (apply_stiffness(apply_compliance(s, m), m) - s).cwiseAbs()
              .maxCoeff());
    }
    ok = ok && worst <= 1e-13;
    detail += fmt("AoC=%.1e ", worst);
  }

  // manufactured forcing against the finite-difference divergence
  {
    const ManufacturedCase mc(Material{1.0, 0.4});
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> inner(0.1, 0.9);
    const double h = 1e-5;
    double worst = 0.0;
    for (int i = 0; i < 10; ++i) {
      const Vec2 p(inner(rng), inner(rng));
      Vec2 fd;
      for (int r = 0; r < 2; ++r)
        fd[r] = (mc.stress(p + Vec2(h, 0))(r, 0) -
                 mc.stress(p - Vec2(h, 0))(r, 0) +
                 mc.stress(p + Vec2(0, h))(r, 1) -
                 mc.stress(p - Vec2(0, h))(r, 1)) /
                (2 * h);
      worst = std::max(worst, (mc.forcing(p) - fd).cwiseAbs().maxCoeff());
    }
    ok = ok && worst <= 1e-6;
    detail += fmt("f_vs_fd=%.1e", worst);
  }

  report(10, ok, "calculus invariants", detail);
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  std::printf("%d of 10 criteria passed\n", 10 - failures);
  return failures;
}
