#include "elastdg/assembly.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

namespace elastdg {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct EdgeSideData {
  int elem = -1;
  double sgn = 1.0;                // +1 plus side, -1 minus side
  Eigen::MatrixXd stress_vals;     // nq x stress modes
  Eigen::MatrixXd displ_vals;      // nq x displacement modes
};

// Geometric direction factors of the edge operators for basis functions,
// constant along straight edges. Zeroed according to the boundary
// conventions (jump of tensors on Gamma_D, jump of vectors on Gamma_N).
struct EdgeDirections {
  // stress basis, per side and generator
  Vec2 jump_tau[2][3];   // [tau] direction
  Vec2 avg_tau_n[2][3];  // {tau} n direction (includes the 1/2)
  // displacement basis, per side and component
  Vec2 avg_v[2][2];      // {v}
  Vec2 jump_v_n[2][2];   // [v] n
  Mat2 jump_v_ten[2][2];  // full tensor jump [v]
};

EdgeDirections edge_directions(const Edge& edge) {
  EdgeDirections d;
  const Vec2 n = edge.normal;
  const auto& gens = tensor_generators();
  const bool interior = !edge.is_boundary();
  const double avg = interior ? 0.5 : 1.0;
  const Vec2 e0(1, 0), e1(0, 1);
  const std::array<Vec2, 2> evec = {e0, e1};
  for (int s = 0; s < 2; ++s) {
    const double sgn = s == 0 ? 1.0 : -1.0;
    for (int c = 0; c < 3; ++c) {
      const Vec2 En = gens[c] * n;
      d.avg_tau_n[s][c] = avg * En;
      d.jump_tau[s][c] = edge.tag == EdgeTag::dirichlet ? Vec2::Zero().eval()
                                                        : Vec2(sgn * En);
    }
    for (int c = 0; c < 2; ++c) {
      d.avg_v[s][c] = avg * evec[c];
      if (edge.tag == EdgeTag::neumann) {
        d.jump_v_n[s][c].setZero();
        d.jump_v_ten[s][c].setZero();
      } else {
        d.jump_v_n[s][c] = sgn * evec[c];
        d.jump_v_ten[s][c] =
            sgn * (evec[c] * n.transpose() + n * evec[c].transpose() -
                   evec[c].dot(n) * Mat2::Identity());
      }
    }
  }
  return d;
}

struct Assembler {
  const SpacePair& spaces;
  MethodConfig config;
  FieldLayout layout;
  bool with_sc = false;   // sigma_check kept as unknown block
  bool with_uc = false;   // u_check kept as unknown block
  bool fold_sc = false;   // sigma_check eliminated into a u-u penalty
  bool fold_uc = false;   // u_check eliminated into a sigma-sigma penalty
  bool use_qcheck = true;  // false when Qcheck is treated as {0}
  bool use_vcheck = true;
  AssemblyRoute route = AssemblyRoute::div;
  int quad_deg = 2;
  std::vector<Eigen::Triplet<double>> trips;

  Assembler(const SpacePair& sp, const MethodConfig& cfg)
      : spaces(sp), config(cfg) {}

  void add(int r, int c, double v) {
    if (v != 0.0) trips.emplace_back(r, c, v);
  }
  void add_sym(int r, int c, double v) {
    if (v == 0.0) return;
    trips.emplace_back(r, c, v);
    trips.emplace_back(c, r, v);
  }

  void build_layout() {
    const int n_sigma = spaces.stress->total_dofs();
    const int n_u = spaces.displacement->total_dofs();
    const int n_sc = (with_sc && use_qcheck) ? spaces.stress_trace->total_dofs() : 0;
    const int n_uc = (with_uc && use_vcheck) ? spaces.displ_trace->total_dofs() : 0;
    layout.sigma_offset = 0;
    layout.sigma_size = n_sigma;
    layout.sigma_check_offset = n_sigma;
    layout.sigma_check_size = n_sc;
    layout.u_offset = n_sigma + n_sc;
    layout.u_size = n_u;
    layout.u_check_offset = n_sigma + n_sc + n_u;
    layout.u_check_size = n_uc;
    layout.total = n_sigma + n_sc + n_u + n_uc;
    layout.has_sigma_check = with_sc && use_qcheck;
    layout.has_u_check = with_uc && use_vcheck;
  }

  void element_blocks() {
    const Mesh& mesh = *spaces.mesh;
    const BrokenSpace& Q = *spaces.stress;
    const BrokenSpace& V = *spaces.displacement;
    const auto& gens = tensor_generators();
    const Eigen::Matrix3d VA = config.material.compliance_voigt();
    const auto rule = triangle_quadrature(quad_deg);
    const bool grad_route = route == AssemblyRoute::grad;

    const int nsm = Q.modes_per_element();
    const int num = V.modes_per_element();

    for (int t = 0; t < mesh.num_triangles(); ++t) {
      const auto geo = element_geometry(mesh.triangle_vertices(t));
      const int off_s = layout.sigma_offset + Q.element_offset(t);
      const int off_u = layout.u_offset + V.element_offset(t);

      // (A sigma, tau): orthonormal scalar modes give det * VA per mode
      for (int m = 0; m < nsm; ++m)
        for (int ci = 0; ci < 3; ++ci)
          for (int cj = 0; cj < 3; ++cj)
            add(off_s + Q.local_index(m, ci), off_s + Q.local_index(m, cj),
                geo.det * VA(ci, cj));

      // stress/displacement coupling, element part of the b-form
      Eigen::MatrixXd b_local = Eigen::MatrixXd::Zero(3 * nsm, 2 * num);
      for (int q = 0; q < rule.size(); ++q) {
        const Vec2 ref(rule.points(q, 0), rule.points(q, 1));
        const double w = rule.weights[q] * geo.det;
        const auto s_grads = Q.scalar_basis().gradients(ref);
        if (grad_route) {
          // -(tau, eps(v)): E_c : eps(q e_c') = e_c' . (E_c grad q)
          const auto s_vals = Q.scalar_basis().values(ref);
          const auto u_grads = V.scalar_basis().gradients(ref);
          for (int mj = 0; mj < num; ++mj) {
            const Vec2 g = geo.inverse_transpose * u_grads.col(mj);
            for (int mi = 0; mi < nsm; ++mi)
              for (int ci = 0; ci < 3; ++ci) {
                const Vec2 Eg = gens[ci] * g;
                for (int cj = 0; cj < 2; ++cj)
                  b_local(Q.local_index(mi, ci), V.local_index(mj, cj)) -=
                      w * s_vals[mi] * Eg[cj];
              }
          }
        } else {
          // (div tau, v)
          const auto u_vals = V.scalar_basis().values(ref);
          for (int mi = 0; mi < nsm; ++mi) {
            const Vec2 g = geo.inverse_transpose * s_grads.col(mi);
            for (int ci = 0; ci < 3; ++ci) {
              const Vec2 divdir = gens[ci] * g;
              for (int mj = 0; mj < num; ++mj)
                for (int cj = 0; cj < 2; ++cj)
                  b_local(Q.local_index(mi, ci), V.local_index(mj, cj)) +=
                      w * divdir[cj] * u_vals[mj];
            }
          }
        }
      }
      for (int i = 0; i < 3 * nsm; ++i)
        for (int j = 0; j < 2 * num; ++j)
          add_sym(off_s + i, off_u + j, b_local(i, j));
    }
  }

  void edge_blocks() {
    const Mesh& mesh = *spaces.mesh;
    const BrokenSpace& Q = *spaces.stress;
    const BrokenSpace& V = *spaces.displacement;
    const TraceSpace& Qc = *spaces.stress_trace;
    const TraceSpace& Vc = *spaces.displ_trace;
    const auto rule = edge_quadrature(quad_deg);
    const int nq = rule.size();
    const int nsm = Q.modes_per_element();
    const int num = V.modes_per_element();
    const bool grad_route = route == AssemblyRoute::grad;

    for (int e = 0; e < mesh.num_edges(); ++e) {
      const Edge& edge = mesh.edge(e);
      const double h = edge.length;
      const double tau1 = config.tau1(h, edge.tag);
      const double tau2 = config.tau2(h, edge.tag);
      const double gamma_n =
          config.gamma * (edge.normal.x() + edge.normal.y());
      const int sides = edge.is_boundary() ? 1 : 2;
      const EdgeDirections dir = edge_directions(edge);

      // scalar trace values of both element bases
      EdgeSideData side[2];
      const Vec2 p0 = mesh.vertex(edge.vertices[0]);
      const Vec2 p1 = mesh.vertex(edge.vertices[1]);
      for (int s = 0; s < sides; ++s) {
        side[s].elem = s == 0 ? edge.plus_element : edge.minus_element;
        side[s].sgn = s == 0 ? 1.0 : -1.0;
        const auto geo =
            element_geometry(mesh.triangle_vertices(side[s].elem));
        side[s].stress_vals.resize(nq, nsm);
        side[s].displ_vals.resize(nq, num);
        for (int q = 0; q < nq; ++q) {
          const Vec2 x = p0 + rule.points(q, 0) * (p1 - p0);
          const Vec2 ref = geo.pull_back(x);
          side[s].stress_vals.row(q) = Q.scalar_basis().values(ref);
          side[s].displ_vals.row(q) = V.scalar_basis().values(ref);
        }
      }

      // scalar overlap integrals
      Eigen::MatrixXd overlap_su[2][2];  // stress modes x displ modes
      for (int si = 0; si < sides; ++si)
        for (int sj = 0; sj < sides; ++sj) {
          overlap_su[si][sj].setZero(nsm, num);
          for (int q = 0; q < nq; ++q)
            overlap_su[si][sj] += rule.weights[q] * h *
                                  side[si].stress_vals.row(q).transpose() *
                                  side[sj].displ_vals.row(q);
        }

      // ---- b-form edge terms (sigma x u), mirrored
      for (int si = 0; si < sides; ++si)
        for (int sj = 0; sj < sides; ++sj)
          for (int ci = 0; ci < 3; ++ci)
            for (int cj = 0; cj < 2; ++cj) {
              double factor =
                  gamma_n * dir.jump_tau[si][ci].dot(dir.jump_v_n[sj][cj]);
              if (grad_route)
                factor += dir.avg_tau_n[si][ci].dot(dir.jump_v_n[sj][cj]);
              else
                factor -= dir.jump_tau[si][ci].dot(dir.avg_v[sj][cj]);
              if (factor == 0.0) continue;
              for (int mi = 0; mi < nsm; ++mi)
                for (int mj = 0; mj < num; ++mj)
                  add_sym(layout.sigma_offset +
                              Q.element_offset(side[si].elem) +
                              Q.local_index(mi, ci),
                          layout.u_offset + V.element_offset(side[sj].elem) +
                              V.local_index(mj, cj),
                          factor * overlap_su[si][sj](mi, mj));
            }

      // ---- sigma_check block (closure row <sigma_check + tau1 [u], .> )
      if (use_qcheck && !Qc.empty() && Qc.edge_components(e) > 0) {
        const auto& q_gens = Qc.tensor_generators_on(e);
        const int ncomp = Qc.edge_components(e);
        const int nmodes = Qc.modes_per_edge();
        const bool sc_zero = tau1 == 0.0;  // sigma_check vanishes identically

        // mode overlaps <psi_m, displ basis> on this edge
        Eigen::MatrixXd mode_overlap[2];
        for (int s = 0; s < sides; ++s) {
          mode_overlap[s].setZero(nmodes, num);
          for (int q = 0; q < nq; ++q) {
            const auto psi = Qc.mode_values(e, rule.points(q, 0));
            mode_overlap[s] += rule.weights[q] * h * psi *
                               side[s].displ_vals.row(q);
          }
        }

        for (int mc = 0; mc < nmodes; ++mc)
          for (int cc = 0; cc < ncomp; ++cc) {
            const double gnorm2 = q_gens[cc].squaredNorm();
            const bool pure_trace = Qc.is_pure_trace_generator(e, cc);
            // the pairing <[u], psi W3> vanishes identically ([u] is
            // trace-free), so pure-trace components never couple
            const bool couple = !sc_zero && !pure_trace &&
                                edge.tag != EdgeTag::neumann;

            std::vector<std::pair<int, double>> u_row;  // <[u_j], psi gen>
            if (couple) {
              for (int s = 0; s < sides; ++s)
                for (int cj = 0; cj < 2; ++cj) {
                  const double fac =
                      dir.jump_v_ten[s][cj].cwiseProduct(q_gens[cc]).sum();
                  if (fac == 0.0) continue;
                  for (int mj = 0; mj < num; ++mj)
                    u_row.emplace_back(
                        V.element_offset(side[s].elem) + V.local_index(mj, cj),
                        fac * mode_overlap[s](mc, mj));
                }
            }

            if (with_sc) {
              const int row = layout.sigma_check_offset + Qc.edge_offset(e) +
                              Qc.local_index(mc, cc, e);
              double diag;
              if (sc_zero || (tau1 == kInf && (pure_trace || !couple)))
                diag = 1.0;  // pinned: component forced to zero
              else if (tau1 == kInf)
                diag = 0.0;  // pure Lagrange row
              else
                diag = gnorm2 / (2.0 * tau1);
              add(row, row, diag);
              for (const auto& [col, val] : u_row)
                add_sym(row, layout.u_offset + col, 0.5 * val);
            } else if (fold_sc && couple && tau1 > 0.0) {
              // -c_D contribution: -(tau1/2) U^T G^{-1} U
              const double scale = -0.5 * tau1 / gnorm2;
              for (const auto& [ci_, vi] : u_row)
                for (const auto& [cj_, vj] : u_row)
                  add(layout.u_offset + ci_, layout.u_offset + cj_,
                      scale * vi * vj);
            }
          }
      }

      // ---- u_check block (closure row scaled to -<[sigma],vc> - tau2 <uc,vc>)
      if (use_vcheck && !Vc.empty() && Vc.edge_components(e) > 0) {
        const int nmodes = Vc.modes_per_edge();
        const bool uc_zero = tau2 == kInf;  // eta2 = 0: u_check vanishes

        Eigen::MatrixXd mode_overlap[2];  // <psi_m, stress basis>
        for (int s = 0; s < sides; ++s) {
          mode_overlap[s].setZero(nmodes, nsm);
          for (int q = 0; q < nq; ++q) {
            const auto psi = Vc.mode_values(e, rule.points(q, 0));
            mode_overlap[s] += rule.weights[q] * h * psi *
                               side[s].stress_vals.row(q);
          }
        }

        for (int mc = 0; mc < nmodes; ++mc)
          for (int cc = 0; cc < 2; ++cc) {
            std::vector<std::pair<int, double>> s_row;  // <u_check, [tau_i]>
            if (!uc_zero) {
              const Vec2 ec = cc == 0 ? Vec2(1, 0) : Vec2(0, 1);
              for (int s = 0; s < sides; ++s)
                for (int ci = 0; ci < 3; ++ci) {
                  const double fac = ec.dot(dir.jump_tau[s][ci]);
                  if (fac == 0.0) continue;
                  for (int mi = 0; mi < nsm; ++mi)
                    s_row.emplace_back(
                        Q.element_offset(side[s].elem) + Q.local_index(mi, ci),
                        fac * mode_overlap[s](mc, mi));
                }
            }

            if (with_uc) {
              const int row = layout.u_check_offset + Vc.edge_offset(e) +
                              Vc.local_index(mc, cc, e);
              add(row, row, uc_zero ? -1.0 : -tau2);
              for (const auto& [col, val] : s_row)
                add_sym(row, layout.sigma_offset + col, -val);
            } else if (fold_uc && !uc_zero) {
              if (tau2 == 0.0)
                throw std::logic_error(
                    "u_check elimination with tau2 = 0 (hard constraint)");
              // +eta2 <P[sigma],[tau]> = (1/tau2) J J^T
              const double scale = 1.0 / tau2;
              for (const auto& [ci_, vi] : s_row)
                for (const auto& [cj_, vj] : s_row)
                  add(layout.sigma_offset + ci_, layout.sigma_offset + cj_,
                      scale * vi * vj);
            }
          }
      }
    }
  }

  BlockSystem finish() {
    BlockSystem sys;
    sys.layout = layout;
    sys.config = config;
    sys.matrix.resize(layout.total, layout.total);
    sys.matrix.setFromTriplets(trips.begin(), trips.end());
    sys.rhs = Eigen::VectorXd::Zero(layout.total);
    sys.warnings = regime_warnings(config);
    return sys;
  }
};

void check_alpha(const SpacePair& spaces, const MethodConfig& config) {
  const DegreeTuple a = spaces.alpha, b = config.alpha;
  if (a.a1 != b.a1 || a.a2 != b.a2 || a.a3 != b.a3 || a.a4 != b.a4)
    throw std::invalid_argument("spaces and config degree tuples differ");
}

BlockSystem assemble_impl(const SpacePair& spaces, const MethodConfig& cfg) {
  Assembler asmb(spaces, cfg);
  asmb.quad_deg = assembly_quadrature_degree(spaces);
  asmb.route = cfg.resolved_route();
  switch (cfg.formulation) {
    case Formulation::four_field_h1:
    case Formulation::four_field_hdiv:
      asmb.with_sc = asmb.with_uc = true;
      break;
    case Formulation::three_field_H:
      asmb.fold_sc = true;
      asmb.with_uc = true;
      break;
    case Formulation::three_field_W:
      asmb.with_sc = true;
      asmb.fold_uc = true;
      break;
    case Formulation::two_field:
      asmb.fold_sc = asmb.fold_uc = true;
      break;
    case Formulation::mixed_limit:
      asmb.with_uc = true;
      asmb.use_qcheck = false;
      asmb.config.gamma = 0.0;
      break;
    case Formulation::primal_limit:
      asmb.with_sc = true;
      asmb.use_vcheck = false;
      asmb.config.gamma = 0.0;
      break;
  }
  asmb.build_layout();
  asmb.element_blocks();
  asmb.edge_blocks();
  return asmb.finish();
}

}  // namespace

void BlockSystem::set_load(const Eigen::VectorXd& u_block) {
  if (u_block.size() != layout.u_size)
    throw std::invalid_argument("load vector size mismatch");
  rhs.setZero(layout.total);
  rhs.segment(layout.u_offset, layout.u_size) = u_block;
}

void BlockSystem::dump_coordinate(std::ostream& out) const {
  for (int k = 0; k < matrix.outerSize(); ++k)
    for (Eigen::SparseMatrix<double>::InnerIterator it(matrix, k); it; ++it)
      out << it.row() << " " << it.col() << " " << it.value() << "\n";
}

double symmetry_defect(const Eigen::SparseMatrix<double>& m) {
  Eigen::SparseMatrix<double> d = m - Eigen::SparseMatrix<double>(m.transpose());
  double max_entry = 0.0;
  for (int k = 0; k < m.outerSize(); ++k)
    for (Eigen::SparseMatrix<double>::InnerIterator it(m, k); it; ++it)
      max_entry = std::max(max_entry, std::abs(it.value()));
  double defect = 0.0;
  for (int k = 0; k < d.outerSize(); ++k)
    for (Eigen::SparseMatrix<double>::InnerIterator it(d, k); it; ++it)
      defect = std::max(defect, std::abs(it.value()));
  return max_entry > 0 ? defect / max_entry : 0.0;
}

int assembly_quadrature_degree(const SpacePair& spaces) {
  return 2 * spaces.max_degree() + 2;
}

BlockSystem assemble_four_field(const SpacePair& spaces,
                                const MethodConfig& config) {
  if (config.formulation != Formulation::four_field_h1 &&
      config.formulation != Formulation::four_field_hdiv)
    throw std::invalid_argument("assemble_four_field needs a four-field tag");
  check_alpha(spaces, config);
  return assemble_impl(spaces, config);
}

BlockSystem reduce_to_three_field_H(const SpacePair& spaces,
                                    const MethodConfig& config) {
  check_alpha(spaces, config);
  if (config.tau_infinite)
    throw std::invalid_argument(
        "sigma_check row is a hard constraint (eta1 = 0); not eliminable");
  MethodConfig cfg = config;
  cfg.formulation = Formulation::three_field_H;
  return assemble_impl(spaces, cfg);
}

BlockSystem reduce_to_three_field_W(const SpacePair& spaces,
                                    const MethodConfig& config) {
  check_alpha(spaces, config);
  if (config.eta_infinite)
    throw std::invalid_argument(
        "u_check row is a hard constraint (tau2 = 0); not eliminable");
  MethodConfig cfg = config;
  cfg.formulation = Formulation::three_field_W;
  return assemble_impl(spaces, cfg);
}

BlockSystem reduce_to_two_field(const SpacePair& spaces,
                                const MethodConfig& config) {
  check_alpha(spaces, config);
  if (config.tau_infinite || config.eta_infinite)
    throw std::invalid_argument(
        "two-field reduction needs both closure rows eliminable");
  MethodConfig cfg = config;
  cfg.formulation = Formulation::two_field;
  return assemble_impl(spaces, cfg);
}

BlockSystem assemble_limit(const SpacePair& spaces,
                           const MethodConfig& config) {
  check_alpha(spaces, config);
  if (config.formulation == Formulation::mixed_limit) {
    if (spaces.displ_trace->empty() || spaces.alpha.a4 < spaces.alpha.a2)
      throw std::invalid_argument(
          "mixed limit needs V_h|_E in Vcheck_h (a4 >= a2)");
  } else if (config.formulation == Formulation::primal_limit) {
    if (spaces.stress_trace->empty() || spaces.alpha.a3 < spaces.alpha.a1)
      throw std::invalid_argument("primal limit needs a3 >= a1");
  } else {
    throw std::invalid_argument("assemble_limit needs a limit formulation");
  }
  return assemble_impl(spaces, config);
}

BlockSystem assemble_system(const SpacePair& spaces,
                            const MethodConfig& config) {
  switch (config.formulation) {
    case Formulation::four_field_h1:
    case Formulation::four_field_hdiv:
      return assemble_four_field(spaces, config);
    case Formulation::three_field_H:
      return reduce_to_three_field_H(spaces, config);
    case Formulation::three_field_W:
      return reduce_to_three_field_W(spaces, config);
    case Formulation::two_field:
      return reduce_to_two_field(spaces, config);
    case Formulation::mixed_limit:
    case Formulation::primal_limit:
      return assemble_limit(spaces, config);
  }
  throw std::logic_error("unreachable");
}

Eigen::VectorXd assemble_rhs(const SpacePair& spaces,
                             const std::function<Vec2(const Vec2&)>& f,
                             int quad_degree) {
  const Mesh& mesh = *spaces.mesh;
  const BrokenSpace& V = *spaces.displacement;
  const auto rule = triangle_quadrature(quad_degree);
  Eigen::VectorXd load = Eigen::VectorXd::Zero(V.total_dofs());
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const auto geo = element_geometry(mesh.triangle_vertices(t));
    const int off = V.element_offset(t);
    for (int q = 0; q < rule.size(); ++q) {
      const Vec2 ref(rule.points(q, 0), rule.points(q, 1));
      const double w = rule.weights[q] * geo.det;
      const Vec2 fx = f(geo.map(ref));
      const auto vals = V.scalar_basis().values(ref);
      for (int m = 0; m < V.modes_per_element(); ++m)
        for (int c = 0; c < 2; ++c)
          load[off + V.local_index(m, c)] += w * vals[m] * fx[c];
    }
  }
  return load;
}

namespace {

// sigma_check = -tau1 P[u_h] and u_check = -eta2 P[sigma_h], edge by edge.
Eigen::VectorXd recover_sigma_check(const SpacePair& spaces,
                                    const MethodConfig& config,
                                    const Eigen::VectorXd& u) {
  const TraceSpace& Qc = *spaces.stress_trace;
  Eigen::VectorXd out = Eigen::VectorXd::Zero(Qc.total_dofs());
  if (Qc.empty() || config.formulation == Formulation::mixed_limit) return out;
  const Mesh& mesh = *spaces.mesh;
  const auto rule = edge_quadrature(assembly_quadrature_degree(spaces));
  for (int e = 0; e < mesh.num_edges(); ++e) {
    const Edge& edge = mesh.edge(e);
    const int ncomp = Qc.edge_components(e);
    if (ncomp == 0) continue;
    const double tau1 = config.tau1(edge.length, edge.tag);
    if (tau1 == kInf || tau1 == 0.0) continue;  // constraint / vanishing case
    const auto& gens = Qc.tensor_generators_on(e);
    const auto sample = sample_vector_trace(*spaces.displacement, u, e, rule);
    const auto jumps = jump(sample);
    const int off = Qc.edge_offset(e);
    for (int q = 0; q < rule.size(); ++q) {
      const double w = rule.weights[q] * edge.length;
      const auto psi = Qc.mode_values(e, rule.points(q, 0));
      for (int m = 0; m < Qc.modes_per_edge(); ++m)
        for (int c = 0; c < ncomp; ++c)
          out[off + Qc.local_index(m, c, e)] -=
              tau1 * w * psi[m] *
              jumps[q].cwiseProduct(gens[c]).sum() / gens[c].squaredNorm();
    }
  }
  return out;
}

Eigen::VectorXd recover_u_check(const SpacePair& spaces,
                                const MethodConfig& config,
                                const Eigen::VectorXd& sigma) {
  const TraceSpace& Vc = *spaces.displ_trace;
  Eigen::VectorXd out = Eigen::VectorXd::Zero(Vc.total_dofs());
  if (Vc.empty() || config.formulation == Formulation::primal_limit)
    return out;
  const Mesh& mesh = *spaces.mesh;
  const auto rule = edge_quadrature(assembly_quadrature_degree(spaces));
  for (int e = 0; e < mesh.num_edges(); ++e) {
    const Edge& edge = mesh.edge(e);
    if (Vc.edge_components(e) == 0) continue;
    const double tau2 = config.tau2(edge.length, edge.tag);
    if (tau2 == 0.0 || tau2 == kInf) continue;
    const double eta2 = 1.0 / tau2;
    const auto sample = sample_tensor_trace(*spaces.stress, sigma, e, rule);
    const auto jumps = jump(sample);
    const int off = Vc.edge_offset(e);
    for (int q = 0; q < rule.size(); ++q) {
      const double w = rule.weights[q] * edge.length;
      const auto psi = Vc.mode_values(e, rule.points(q, 0));
      for (int m = 0; m < Vc.modes_per_edge(); ++m)
        for (int c = 0; c < 2; ++c)
          out[off + Vc.local_index(m, c, e)] -= eta2 * w * psi[m] * jumps[q][c];
    }
  }
  return out;
}

}  // namespace

FieldSolution split_solution(const SpacePair& spaces, const BlockSystem& sys,
                             const Eigen::VectorXd& x) {
  const FieldLayout& L = sys.layout;
  FieldSolution sol;
  sol.sigma = x.segment(L.sigma_offset, L.sigma_size);
  sol.u = x.segment(L.u_offset, L.u_size);
  if (L.has_sigma_check)
    sol.sigma_check = x.segment(L.sigma_check_offset, L.sigma_check_size);
  else
    sol.sigma_check = recover_sigma_check(spaces, sys.config, sol.u);
  if (L.has_u_check)
    sol.u_check = x.segment(L.u_check_offset, L.u_check_size);
  else
    sol.u_check = recover_u_check(spaces, sys.config, sol.sigma);
  return sol;
}

Mat2 numerical_trace_stress(const SpacePair& spaces, const MethodConfig& config,
                            const FieldSolution& sol, int edge, double s) {
  QuadratureRule pt;
  pt.points.resize(1, 1);
  pt.points(0, 0) = s;
  pt.weights = Eigen::VectorXd::Ones(1);
  const auto sample = sample_tensor_trace(*spaces.stress, sol.sigma, edge, pt);
  const Mat2 avg = average(sample)[0];
  const Vec2 jmp = jump(sample)[0];
  const Vec2 gamma_vec(config.gamma, config.gamma);
  Mat2 out = avg + jmp * gamma_vec.transpose();
  if (sol.sigma_check.size() > 0)
    out += eval_trace_tensor(*spaces.stress_trace, sol.sigma_check, edge, s);
  return out;
}

Vec2 numerical_trace_displacement(const SpacePair& spaces,
                                  const MethodConfig& config,
                                  const FieldSolution& sol, int edge,
                                  double s) {
  QuadratureRule pt;
  pt.points.resize(1, 1);
  pt.points(0, 0) = s;
  pt.weights = Eigen::VectorXd::Ones(1);
  const auto sample =
      sample_vector_trace(*spaces.displacement, sol.u, edge, pt);
  const Vec2 avg = average(sample)[0];
  const Mat2 jmp = jump(sample)[0];
  const Vec2 gamma_vec(config.gamma, config.gamma);
  const Edge& e = spaces.mesh->edge(edge);
  Vec2 out = avg - gamma_vec.dot(e.normal) * (jmp * e.normal);
  if (sol.u_check.size() > 0)
    out += eval_trace_vector(*spaces.displ_trace, sol.u_check, edge, s);
  return out;
}

double relative_field_distance(const Eigen::VectorXd& a,
                               const Eigen::VectorXd& b) {
  const double scale = std::max(b.norm(), 1e-300);
  return (a - b).norm() / scale;
}

}  // namespace elastdg
