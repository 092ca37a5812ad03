#pragma once

#include "elastdg/fields.hpp"
#include "elastdg/quadrature.hpp"

#include <optional>

namespace elastdg {

/// Edge operators of the broken calculus. Boundary conventions are baked in
/// here so that every formulation shares one implementation:
///   Gamma_D: {tau}=tau, [tau]=0,    {v}=v, [v]=v(x)n-(v.n)I
///   Gamma_N: {tau}=tau, [tau]=tau n, {v}=v, [v]=0
/// On interior edges n is the stored plus-side normal.

Mat2 average_tensor(const Mat2& plus, const std::optional<Mat2>& minus,
                    EdgeTag tag);
Vec2 jump_tensor(const Mat2& plus, const std::optional<Mat2>& minus,
                 const Vec2& n, EdgeTag tag);
Vec2 average_vector(const Vec2& plus, const std::optional<Vec2>& minus,
                    EdgeTag tag);
Mat2 jump_vector(const Vec2& plus, const std::optional<Vec2>& minus,
                 const Vec2& n, EdgeTag tag);

/// Side values of a field on one edge at the quadrature points of `rule`
/// (reference edge coordinates). Boundary edges carry only plus values.
template <typename Value>
struct TraceSample {
  int edge = -1;
  EdgeTag tag = EdgeTag::interior;
  Vec2 normal = Vec2::Zero();
  std::vector<Value> plus;
  std::vector<Value> minus;  // empty on boundary edges

  bool boundary() const { return minus.empty(); }
};

using TensorTraceSample = TraceSample<Mat2>;
using VectorTraceSample = TraceSample<Vec2>;

std::vector<Mat2> average(const TensorTraceSample& sample);
std::vector<Vec2> average(const VectorTraceSample& sample);
std::vector<Vec2> jump(const TensorTraceSample& sample);
std::vector<Mat2> jump(const VectorTraceSample& sample);

/// Sample a coefficient field of a broken space on an edge.
TensorTraceSample sample_tensor_trace(const BrokenSpace& space,
                                      const Eigen::VectorXd& coeffs, int edge,
                                      const QuadratureRule& rule);
VectorTraceSample sample_vector_trace(const BrokenSpace& space,
                                      const Eigen::VectorXd& coeffs, int edge,
                                      const QuadratureRule& rule);

/// Edge-by-edge L2 projection onto a trace space (Pcheck operators). The
/// edge mass is diagonal for the orthonormal modes; a singular diagonal
/// entry signals a basis bug and throws.
Eigen::VectorXd trace_project_tensor(
    const TraceSpace& target, int quad_degree,
    const std::function<Mat2(int edge, const Vec2& x)>& field);
Eigen::VectorXd trace_project_vector(
    const TraceSpace& target, int quad_degree,
    const std::function<Vec2(int edge, const Vec2& x)>& field);

enum class LiftKind { r_Q, l_Q, r_V, l_V };

/// Lifting of edge data into the matching broken space:
///   (r_Q(xi), tau) = -<{tau} n, xi n>      (l_Q(w), tau) = -<[tau], w>
///   (r_V(w),  v  ) = -<{v}, w>             (l_V(xi), v ) = -<[v] n, xi n>
/// xi is tensor-valued (r_Q, l_V), w vector-valued (l_Q, r_V).
Eigen::VectorXd lifting(LiftKind kind, const SpacePair& spaces,
                        int quad_degree,
                        const std::function<Mat2(int, const Vec2&)>& xi,
                        const std::function<Vec2(int, const Vec2&)>& w);

/// Residual of the defining variational identity of a lifting against every
/// basis function of the target space, returned as max abs entry.
double lifting_identity_residual(
    LiftKind kind, const SpacePair& spaces, int quad_degree,
    const Eigen::VectorXd& lifted,
    const std::function<Mat2(int, const Vec2&)>& xi,
    const std::function<Vec2(int, const Vec2&)>& w);

struct DgIdentityTerms {
  double strain_pairing;   // (tau, eps_h v)
  double divergence;       // (div_h tau, v)
  double jump_avg;         // <[tau], {v}>
  double avg_jump;         // <{tau} n, [v] n>

  double residual() const {
    return std::abs(strain_pairing + divergence - jump_avg - avg_jump);
  }
  double scale() const {
    return std::abs(strain_pairing) + std::abs(divergence) +
           std::abs(jump_avg) + std::abs(avg_jump);
  }
};

/// Evaluates each term of the DG identity by quadrature for discrete
/// (tau, v); the residual must vanish to roundoff.
DgIdentityTerms dg_identity_terms(const SpacePair& spaces,
                                  const Eigen::VectorXd& tau_coeffs,
                                  const Eigen::VectorXd& v_coeffs,
                                  int quad_degree);

/// <tau n, v>_{dT_h} - <{tau} n, [v] n> - <[tau], {v}> for discrete pairs.
double trace_identity_residual(const SpacePair& spaces,
                               const Eigen::VectorXd& tau_coeffs,
                               const Eigen::VectorXd& v_coeffs,
                               int quad_degree);

}  // namespace elastdg
