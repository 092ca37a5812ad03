#include "elastdg/study.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <stdexcept>

namespace elastdg {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.15g", v);
  return buf;
}

double l2_norm_of_load(const SpacePair& spaces,
                       const std::function<Vec2(const Vec2&)>& f,
                       int quad_degree) {
  const Mesh& mesh = *spaces.mesh;
  const auto rule = triangle_quadrature(quad_degree);
  double acc = 0.0;
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const auto geo = element_geometry(mesh.triangle_vertices(t));
    for (int q = 0; q < rule.size(); ++q) {
      const Vec2 x = geo.map(Vec2(rule.points(q, 0), rule.points(q, 1)));
      acc += rule.weights[q] * geo.det * f(x).squaredNorm();
    }
  }
  return std::sqrt(acc);
}

// squared L2 norm of a trace-space coefficient vector restricted to an edge
double edge_coeff_norm2(const TraceSpace& space, const Eigen::VectorXd& coeffs,
                        int e) {
  double acc = 0.0;
  const int off = space.edge_offset(e);
  if (space.shape() == ValueShape::symmetric_tensor) {
    const auto& gens = space.tensor_generators_on(e);
    for (int m = 0; m < space.modes_per_edge(); ++m)
      for (int c = 0; c < space.edge_components(e); ++c) {
        const double v = coeffs[off + space.local_index(m, c, e)];
        acc += v * v * gens[c].squaredNorm();
      }
  } else {
    for (int d = 0; d < space.edge_dofs(e); ++d) {
      const double v = coeffs[off + d];
      acc += v * v;
    }
  }
  return acc;
}

}  // namespace

int load_quadrature_degree(const SpacePair& spaces) {
  return assembly_quadrature_degree(spaces) + 4;
}

ExactSolution exact_fields(const ManufacturedCase& mc) {
  return {[mc](const Vec2& x) { return mc.displacement(x); },
          [mc](const Vec2& x) { return mc.strain(x); },
          [mc](const Vec2& x) { return mc.stress(x); },
          [mc](const Vec2& x) { return mc.stress_divergence(x); }};
}

ErrorRow compute_errors(const SpacePair& spaces, const MethodConfig& config,
                        const FieldSolution& sol, const ManufacturedCase& mc,
                        int quadrature_boost) {
  return compute_errors(spaces, config, sol, exact_fields(mc),
                        quadrature_boost);
}

ErrorRow compute_errors(const SpacePair& spaces, const MethodConfig& config,
                        const FieldSolution& sol, const ExactSolution& mc,
                        int quadrature_boost) {
  const Mesh& mesh = *spaces.mesh;
  const BrokenSpace& Q = *spaces.stress;
  const BrokenSpace& V = *spaces.displacement;
  const auto rule = triangle_quadrature(assembly_quadrature_degree(spaces) +
                                        quadrature_boost);
  ErrorRow row;
  row.level = mesh.level();
  row.h = mesh.max_element_diameter();
  row.ndof_sigma = Q.total_dofs();
  row.ndof_u = V.total_dofs();
  row.ndof_sigmacheck = spaces.stress_trace->total_dofs();
  row.ndof_ucheck = spaces.displ_trace->total_dofs();
  row.nu = config.material.nu;

  double es = 0, ed = 0, eu = 0, ee = 0;
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const auto geo = element_geometry(mesh.triangle_vertices(t));
    for (int q = 0; q < rule.size(); ++q) {
      const Vec2 ref(rule.points(q, 0), rule.points(q, 1));
      const Vec2 x = geo.map(ref);
      const double w = rule.weights[q] * geo.det;
      es += w * (mc.stress(x) - eval_tensor(Q, sol.sigma, t, geo, ref))
                    .squaredNorm();
      ed += w * (mc.stress_divergence(x) -
                 eval_tensor_divergence(Q, sol.sigma, t, geo, ref))
                    .squaredNorm();
      eu += w *
            (mc.displacement(x) - eval_vector(V, sol.u, t, geo, ref))
                .squaredNorm();
      ee += w * (mc.strain(x) - eval_vector_strain(V, sol.u, t, geo, ref))
                    .squaredNorm();
    }
  }
  row.e_sigma_L2 = std::sqrt(es);
  row.e_divsigma_L2 = std::sqrt(ed);
  row.e_u_L2 = std::sqrt(eu);
  row.e_strain_L2 = std::sqrt(ee);

  // regime-weighted trace norms: eta1^{1/2} sigma_check in the H1 naming is
  // tau1^{-1/2} sigma_check in the H(div) one, so a single weight serves both
  double nsc = 0, nuc = 0;
  for (int e = 0; e < mesh.num_edges(); ++e) {
    const Edge& edge = mesh.edge(e);
    const double t1 = config.tau1(edge.length, edge.tag);
    const double t2 = config.tau2(edge.length, edge.tag);
    if (sol.sigma_check.size() > 0 && t1 > 0 && t1 != kInf)
      nsc +=
          edge_coeff_norm2(*spaces.stress_trace, sol.sigma_check, e) / t1;
    if (sol.u_check.size() > 0 && t2 > 0 && t2 != kInf)
      nuc += t2 * edge_coeff_norm2(*spaces.displ_trace, sol.u_check, e);
  }
  row.norm_sigma_check = std::sqrt(nsc);
  row.norm_u_check = std::sqrt(nuc);
  return row;
}

double discrete_solution_norm(const SpacePair& spaces,
                              const MethodConfig& config,
                              const FieldSolution& sol) {
  const Mesh& mesh = *spaces.mesh;
  const BrokenSpace& Q = *spaces.stress;
  const BrokenSpace& V = *spaces.displacement;
  const bool h1 = config.resolved_route() == AssemblyRoute::grad;
  const int qdeg = assembly_quadrature_degree(spaces);
  const auto tri_rule = triangle_quadrature(qdeg);
  const auto rule = edge_quadrature(qdeg);

  double acc = 0.0;
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const auto geo = element_geometry(mesh.triangle_vertices(t));
    for (int q = 0; q < tri_rule.size(); ++q) {
      const Vec2 ref(tri_rule.points(q, 0), tri_rule.points(q, 1));
      const double w = tri_rule.weights[q] * geo.det;
      const Mat2 sig = eval_tensor(Q, sol.sigma, t, geo, ref);
      if (h1) {
        // ||sigma||_{0,h}^2 starts from (A sigma, sigma); ||u||_{1,h}^2 from
        // the broken strain
        acc += w * apply_compliance(sig, config.material)
                       .cwiseProduct(sig)
                       .sum();
        acc += w * eval_vector_strain(V, sol.u, t, geo, ref).squaredNorm();
      } else {
        acc += w * sig.squaredNorm();
        acc += w * eval_tensor_divergence(Q, sol.sigma, t, geo, ref)
                       .squaredNorm();
        acc += w * eval_vector(V, sol.u, t, geo, ref).squaredNorm();
      }
    }
  }

  const TraceSpace& Qc = *spaces.stress_trace;
  const TraceSpace& Vc = *spaces.displ_trace;
  for (int e = 0; e < mesh.num_edges(); ++e) {
    const Edge& edge = mesh.edge(e);
    const double t1 = config.tau1(edge.length, edge.tag);
    const double t2 = config.tau2(edge.length, edge.tag);
    const auto sig_s = sample_tensor_trace(Q, sol.sigma, e, rule);
    const auto u_s = sample_vector_trace(V, sol.u, e, rule);
    const auto sig_jump = jump(sig_s);
    const auto sig_avg = average(sig_s);
    const auto u_jump = jump(u_s);
    const auto u_avg = average(u_s);

    // projections onto the trace spaces where the norms ask for them
    Eigen::VectorXd pj_sigma, pj_u;
    if (!Qc.empty()) {
      pj_sigma = Eigen::VectorXd::Zero(Qc.edge_dofs(e));
      if (Qc.edge_components(e) > 0) {
        const auto& gens = Qc.tensor_generators_on(e);
        for (int q = 0; q < rule.size(); ++q) {
          const double w = rule.weights[q] * edge.length;
          const auto psi = Qc.mode_values(e, rule.points(q, 0));
          for (int m = 0; m < Qc.modes_per_edge(); ++m)
            for (int c = 0; c < Qc.edge_components(e); ++c)
              pj_sigma[Qc.local_index(m, c, e)] +=
                  w * psi[m] * u_jump[q].cwiseProduct(gens[c]).sum() /
                  gens[c].squaredNorm();
        }
      }
    }
    if (!Vc.empty()) {
      pj_u = Eigen::VectorXd::Zero(Vc.edge_dofs(e));
      for (int q = 0; q < rule.size(); ++q) {
        const double w = rule.weights[q] * edge.length;
        const auto psi = Vc.mode_values(e, rule.points(q, 0));
        for (int m = 0; m < Vc.modes_per_edge(); ++m)
          for (int c = 0; c < 2 && Vc.edge_components(e) > 0; ++c)
            pj_u[Vc.local_index(m, c, e)] += w * psi[m] * sig_jump[q][c];
      }
    }

    auto gen_weighted_norm2 = [&](const Eigen::VectorXd& coeffs) {
      double s = 0.0;
      if (Qc.edge_components(e) == 0) return s;
      const auto& gens = Qc.tensor_generators_on(e);
      for (int m = 0; m < Qc.modes_per_edge(); ++m)
        for (int c = 0; c < Qc.edge_components(e); ++c) {
          const double v = coeffs[Qc.local_index(m, c, e)];
          s += v * v * gens[c].squaredNorm();
        }
      return s;
    };

    if (h1) {
      const double eta1 = t1 == kInf ? 0.0 : (t1 == 0.0 ? kInf : 1.0 / t1);
      for (int q = 0; q < rule.size(); ++q) {
        const double w = rule.weights[q] * edge.length;
        if (eta1 != kInf && eta1 > 0)
          acc += w * eta1 * sig_avg[q].squaredNorm();
      }
      if (!Qc.empty() && eta1 != kInf && eta1 > 0)
        acc += gen_weighted_norm2(pj_sigma) / eta1;  // eta1^{-1} |P [u]|^2
    } else {
      if (t2 > 0 && t2 != kInf) {
        for (int q = 0; q < rule.size(); ++q) {
          const double w = rule.weights[q] * edge.length;
          acc += w / t2 * sig_jump[q].squaredNorm();
          acc += w * t2 * u_avg[q].squaredNorm();
        }
      }
      if (t1 > 0 && t1 != kInf)
        for (int q = 0; q < rule.size(); ++q)
          acc += rule.weights[q] * edge.length * t1 * u_jump[q].squaredNorm();
    }

    // trace unknown contributions
    if (sol.sigma_check.size() > 0 && t1 > 0 && t1 != kInf)
      acc += edge_coeff_norm2(Qc, sol.sigma_check, e) / t1;
    if (sol.u_check.size() > 0 && t2 > 0 && t2 != kInf)
      acc += edge_coeff_norm2(Vc, sol.u_check, e) * t2;
  }
  return std::sqrt(acc);
}

void attach_rates(ErrorReport& report) {
  for (size_t i = 1; i < report.rows.size(); ++i) {
    ErrorRow& cur = report.rows[i];
    const ErrorRow& prev = report.rows[i - 1];
    if (cur.singular || prev.singular) continue;
    if (cur.level != prev.level + 1 || cur.nu != prev.nu) continue;
    auto rate = [](double e0, double e1) -> std::optional<double> {
      if (e0 <= 1e-14 || e1 <= 1e-14) return std::nullopt;
      return std::log2(e0 / e1);
    };
    cur.rate_sigma = rate(prev.e_sigma_L2, cur.e_sigma_L2);
    cur.rate_divsigma = rate(prev.e_divsigma_L2, cur.e_divsigma_L2);
    cur.rate_u = rate(prev.e_u_L2, cur.e_u_L2);
    cur.rate_strain = rate(prev.e_strain_L2, cur.e_strain_L2);
  }
}

ErrorReport run_study(const StudyConfig& config) {
  if (config.level_min < 1 || config.level_max < config.level_min)
    throw std::invalid_argument("level range must be nonempty and increasing");
  ErrorReport report;
  const ManufacturedCase mc(config.method.material);
  for (int level = config.level_min; level <= config.level_max; ++level) {
    auto mesh = std::make_shared<const Mesh>(level);
    SpacePair spaces = build_spaces(mesh, config.method.alpha);
    BlockSystem system = assemble_system(spaces, config.method);
    system.set_load(assemble_rhs(
        spaces, [&](const Vec2& x) { return mc.forcing(x); },
        load_quadrature_degree(spaces)));
    SolveResult res = solve(spaces, system);
    if (res.report.singular) {
      ErrorRow row;
      row.level = level;
      row.h = mesh->max_element_diameter();
      row.ndof_sigma = spaces.stress->total_dofs();
      row.ndof_u = spaces.displacement->total_dofs();
      row.ndof_sigmacheck = spaces.stress_trace->total_dofs();
      row.ndof_ucheck = spaces.displ_trace->total_dofs();
      row.singular = true;
      row.nu = config.method.material.nu;
      report.rows.push_back(row);
      continue;
    }
    ErrorRow row = compute_errors(spaces, config.method, res.fields, mc,
                                  config.quadrature_boost);
    const double fnorm = l2_norm_of_load(
        spaces, [&](const Vec2& x) { return mc.forcing(x); },
        load_quadrature_degree(spaces));
    row.stability_ratio =
        discrete_solution_norm(spaces, config.method, res.fields) /
        std::max(fnorm, 1e-300);
    report.rows.push_back(row);
  }
  attach_rates(report);
  if (!config.output_path.empty()) write_csv_file(report, config.output_path);
  return report;
}

void write_csv(const ErrorReport& report, std::ostream& out,
               bool with_nu_columns) {
  out << "level,h,ndof_sigma,ndof_sigmacheck,ndof_u,ndof_ucheck,"
         "e_sigma_L2,e_divsigma_L2,e_u_L2,e_strain_L2,"
         "rate_sigma,rate_divsigma,rate_u,rate_strain,status";
  if (with_nu_columns) out << ",nu,spread_sigma,spread_divsigma";
  out << "\n";
  for (const auto& r : report.rows) {
    out << r.level << "," << fmt(r.h) << "," << r.ndof_sigma << ","
        << r.ndof_sigmacheck << "," << r.ndof_u << "," << r.ndof_ucheck << ",";
    if (r.singular) {
      out << ",,,,,,,,singular";
    } else {
      out << fmt(r.e_sigma_L2) << "," << fmt(r.e_divsigma_L2) << ","
          << fmt(r.e_u_L2) << "," << fmt(r.e_strain_L2) << ",";
      auto cell = [&](const std::optional<double>& v) {
        if (v) out << fmt(*v);
      };
      cell(r.rate_sigma);
      out << ",";
      cell(r.rate_divsigma);
      out << ",";
      cell(r.rate_u);
      out << ",";
      cell(r.rate_strain);
      out << ",ok";
    }
    if (with_nu_columns) {
      out << "," << fmt(r.nu) << ",";
      if (r.spread_sigma) out << fmt(*r.spread_sigma);
      out << ",";
      if (r.spread_divsigma) out << fmt(*r.spread_divsigma);
    }
    out << "\n";
  }
}

void write_csv_file(const ErrorReport& report, const std::string& path,
                    bool with_nu_columns) {
  std::ofstream out(path, std::ios::binary);  // LF line endings
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  write_csv(report, out, with_nu_columns);
}

namespace {

// L2 norms of the difference of two coefficient vectors on the same spaces.
void field_distance(const SpacePair& spaces, const FieldSolution& a,
                    const FieldSolution& b, double& d_sigma, double& d_div,
                    double& d_u) {
  const Mesh& mesh = *spaces.mesh;
  const BrokenSpace& Q = *spaces.stress;
  const BrokenSpace& V = *spaces.displacement;
  const Eigen::VectorXd ds = a.sigma - b.sigma;
  const Eigen::VectorXd du = a.u - b.u;
  const auto rule = triangle_quadrature(assembly_quadrature_degree(spaces));
  double s2 = 0, dv2 = 0, u2 = 0;
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const auto geo = element_geometry(mesh.triangle_vertices(t));
    for (int q = 0; q < rule.size(); ++q) {
      const Vec2 ref(rule.points(q, 0), rule.points(q, 1));
      const double w = rule.weights[q] * geo.det;
      s2 += w * eval_tensor(Q, ds, t, geo, ref).squaredNorm();
      dv2 += w * eval_tensor_divergence(Q, ds, t, geo, ref).squaredNorm();
      u2 += w * eval_vector(V, du, t, geo, ref).squaredNorm();
    }
  }
  d_sigma = std::sqrt(s2);
  d_div = std::sqrt(dv2);
  d_u = std::sqrt(u2);
}

}  // namespace

LimitReport run_limit_study(LimitKind kind, const std::vector<double>& rhos,
                            int level, DegreeTuple alpha,
                            const Material& material,
                            const std::string& output_path) {
  if (rhos.empty()) throw std::invalid_argument("empty rho sequence");
  auto mesh = std::make_shared<const Mesh>(level);
  SpacePair spaces = build_spaces(mesh, alpha);
  const ManufacturedCase mc(material);
  const Eigen::VectorXd load = assemble_rhs(
      spaces, [&](const Vec2& x) { return mc.forcing(x); },
      load_quadrature_degree(spaces));

  MethodConfig limit_cfg;
  limit_cfg.alpha = alpha;
  limit_cfg.material = material;
  limit_cfg.gamma = 0.0;
  limit_cfg.formulation = kind == LimitKind::mixed ? Formulation::mixed_limit
                                                   : Formulation::primal_limit;
  BlockSystem limit_sys = assemble_limit(spaces, limit_cfg);
  limit_sys.set_load(load);
  SolveResult limit_sol = solve(spaces, limit_sys);
  if (limit_sol.report.singular)
    throw std::runtime_error("limit system is singular");

  LimitReport report;
  for (double rho : rhos) {
    MethodConfig cfg;
    cfg.alpha = alpha;
    cfg.material = material;
    cfg.gamma = 0.0;
    cfg.formulation = Formulation::two_field;
    if (kind == LimitKind::mixed) {
      cfg.tau = EdgeParam{rho, 1.0};         // tau1 = rho h
      cfg.eta = EdgeParam{1.0 / rho, -1.0};  // tau2 = rho h
    } else {
      cfg.tau = EdgeParam{1.0 / rho, -1.0};  // eta1 = rho h
      cfg.eta = EdgeParam{rho, 1.0};         // eta2 = rho h
    }
    BlockSystem sys = reduce_to_two_field(spaces, cfg);
    sys.set_load(load);
    SolveResult res = solve(spaces, sys);
    if (res.report.singular)
      throw std::runtime_error("two-field system singular in limit study");
    LimitRow row;
    row.rho = rho;
    field_distance(spaces, res.fields, limit_sol.fields, row.d_sigma,
                   row.d_divsigma, row.d_u);
    report.rows.push_back(row);
  }
  for (size_t i = 1; i < report.rows.size(); ++i) {
    const double d0 = report.rows[i - 1].distance();
    const double d1 = report.rows[i].distance();
    const double r0 = report.rows[i - 1].rho, r1 = report.rows[i].rho;
    if (d0 > 1e-14 && d1 > 1e-14 && r0 != r1)
      report.rows[i].order = std::log(d0 / d1) / std::log(r0 / r1);
  }
  if (!output_path.empty()) {
    std::ofstream out(output_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + output_path);
    out << "rho,d_sigma,d_divsigma,d_u,d_total,order\n";
    for (const auto& r : report.rows) {
      out << fmt(r.rho) << "," << fmt(r.d_sigma) << "," << fmt(r.d_divsigma)
          << "," << fmt(r.d_u) << "," << fmt(r.distance()) << ",";
      if (r.order) out << fmt(*r.order);
      out << "\n";
    }
  }
  return report;
}

ErrorReport run_locking_study(const std::vector<double>& nu_list,
                              int level_min, int level_max, double E,
                              const std::string& output_path) {
  ErrorReport all;
  for (double nu : nu_list) {
    StudyConfig sc;
    sc.method = preset_config("new-hdiv-k0");
    sc.method.material = Material(E, nu);  // rejects nu >= 1/2
    sc.level_min = level_min;
    sc.level_max = level_max;
    ErrorReport one = run_study(sc);

    // exact-field norms of this material for the relative-error summary
    const ManufacturedCase mc(sc.method.material);
    auto mesh = std::make_shared<const Mesh>(4);
    const auto rule = triangle_quadrature(16);
    double s2 = 0.0, d2 = 0.0;
    for (int t = 0; t < mesh->num_triangles(); ++t) {
      const auto geo = element_geometry(mesh->triangle_vertices(t));
      for (int q = 0; q < rule.size(); ++q) {
        const Vec2 x = geo.map(Vec2(rule.points(q, 0), rule.points(q, 1)));
        const double w = rule.weights[q] * geo.det;
        s2 += w * mc.stress(x).squaredNorm();
        d2 += w * mc.stress_divergence(x).squaredNorm();
      }
    }
    for (auto& row : one.rows) {
      row.exact_sigma_norm = std::sqrt(s2);
      row.exact_divsigma_norm = std::sqrt(d2);
      all.rows.push_back(row);
    }
  }
  for (auto& row : all.rows) {
    if (row.singular) continue;
    row.spread_sigma = locking_spread(all, row.level, false);
    row.spread_divsigma = locking_spread(all, row.level, true);
  }
  if (!output_path.empty()) write_csv_file(all, output_path, true);
  return all;
}

double locking_spread(const ErrorReport& report, int level, bool divsigma) {
  double lo = kInf, hi = 0.0;
  for (const auto& r : report.rows) {
    if (r.level != level || r.singular) continue;
    double v = divsigma ? r.e_divsigma_L2 : r.e_sigma_L2;
    const double norm = divsigma ? r.exact_divsigma_norm : r.exact_sigma_norm;
    if (norm > 0.0) v /= norm;  // relative errors when the norms are known
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  if (hi <= 0.0 || lo == kInf) return 0.0;
  return (hi - lo) / hi;
}

MethodConfig preset_config(const std::string& name) {
  // rows of the method tables; rho1 = rho2 = 1 and gamma = 1 unless a row
  // pins a parameter
  std::map<std::string, MethodConfig> presets;
  auto h1 = [](DegreeTuple a) {
    MethodConfig c;
    c.formulation = Formulation::four_field_h1;
    c.alpha = a;
    c.tau = EdgeParam{1.0, -1.0};
    c.eta = EdgeParam{1.0, 1.0};
    c.gamma = 1.0;
    return c;
  };
  auto hdiv = [](DegreeTuple a) {
    MethodConfig c;
    c.formulation = Formulation::four_field_hdiv;
    c.alpha = a;
    c.tau = EdgeParam{1.0, 1.0};
    c.eta = EdgeParam{1.0, -1.0};
    c.gamma = 1.0;
    return c;
  };
  presets["new-h1-k0"] = h1({0, 1, 1, 0});
  presets["new-h1-k0-v1"] = h1({0, 1, 1, 1});
  presets["new-h1-k1"] = h1({1, 2, 1, 1});
  presets["new-hdiv-k0"] = hdiv({1, 0, 0, 1});
  presets["new-hdiv-k0-q1"] = hdiv({1, 0, 1, 1});
  presets["new-hdiv-k1"] = hdiv({2, 1, 2, 2});
  presets["new-hdiv-k2"] = hdiv({3, 2, 2, 3});
  presets["illposed-h1-a"] = h1({0, 1, 0, 0});
  presets["illposed-h1-b"] = h1({0, 1, 0, 1});
  presets["illposed-hdiv-a"] = hdiv({1, 0, 0, 0});
  presets["illposed-hdiv-b"] = hdiv({1, 0, 1, 0});
  {
    // hybridizable special case (gamma = 0, tau2 = 4 tau1)
    MethodConfig c = hdiv({1, 0, 0, 1});
    c.gamma = 0.0;
    c.eta = EdgeParam{0.25, -1.0};
    presets["hdg-hdiv-k0"] = c;
  }
  {
    // LDG row with eta = 0 (u_check vanishes)
    MethodConfig c = h1({0, 1, 0, 1});
    c.gamma = 0.0;
    c.eta = EdgeParam{0.0, 1.0};
    presets["ldg-h1-k0"] = c;
  }
  {
    // LDG row with tau = 0 (sigma_check vanishes)
    MethodConfig c = hdiv({1, 0, 0, 1});
    c.gamma = 0.0;
    c.tau = EdgeParam{0.0, 1.0};
    presets["ldg-hdiv-k0"] = c;
  }
  auto it = presets.find(name);
  if (it == presets.end()) throw std::invalid_argument("unknown preset: " + name);
  return it->second;
}

std::vector<std::string> preset_names() {
  return {"new-h1-k0",      "new-h1-k0-v1",   "new-h1-k1",
          "new-hdiv-k0",    "new-hdiv-k0-q1", "new-hdiv-k1",
          "new-hdiv-k2",    "illposed-h1-a",  "illposed-h1-b",
          "illposed-hdiv-a", "illposed-hdiv-b", "hdg-hdiv-k0",
          "ldg-h1-k0",      "ldg-hdiv-k0"};
}

}  // namespace elastdg
