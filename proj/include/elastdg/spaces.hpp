#pragma once

#include "elastdg/basis.hpp"
#include "elastdg/mesh.hpp"

#include <memory>
#include <optional>
#include <vector>

namespace elastdg {

enum class ValueShape { vector, symmetric_tensor };

/// Fully discontinuous element space: vector-valued P_k (2 components) or
/// symmetric-tensor-valued P_k (3 generator components). No DOF is shared
/// between elements.
class BrokenSpace {
 public:
  BrokenSpace(const Mesh& mesh, ValueShape shape, int degree);

  ValueShape shape() const { return shape_; }
  int degree() const { return degree_; }
  int components() const { return shape_ == ValueShape::vector ? 2 : 3; }
  int modes_per_element() const { return scalar_.size(); }
  int dofs_per_element() const { return components() * modes_per_element(); }
  int total_dofs() const { return total_dofs_; }
  int element_offset(int t) const { return t * dofs_per_element(); }

  /// dof index inside an element: mode-major over components.
  int local_index(int mode, int comp) const {
    return mode * components() + comp;
  }

  const ScalarBasis& scalar_basis() const { return scalar_; }
  const Mesh& mesh() const { return *mesh_; }

 private:
  const Mesh* mesh_;
  ValueShape shape_;
  int degree_;
  ScalarBasis scalar_;
  int total_dofs_;
};

/// Edge (skeleton) space for numerical traces. Tensor traces use the
/// per-edge frame generators W1 = n (x) n - t (x) t, W2 = n (x) t + t (x) n,
/// W3 = I; on Gamma_N only the combination with vanishing normal trace
/// (t (x) t) survives. Vector traces vanish entirely on Gamma_D.
/// degree = -1 builds the zero-dimensional sentinel space.
class TraceSpace {
 public:
  TraceSpace(const Mesh& mesh, ValueShape shape, int degree);

  ValueShape shape() const { return shape_; }
  int degree() const { return degree_; }
  bool empty() const { return degree_ < 0; }
  int modes_per_edge() const { return empty() ? 0 : modes_->size(); }
  int total_dofs() const { return total_dofs_; }

  int edge_offset(int e) const { return offsets_[e]; }
  int edge_components(int e) const { return n_comp_[e]; }
  int edge_dofs(int e) const { return n_comp_[e] * modes_per_edge(); }
  int local_index(int mode, int comp, int e) const {
    return mode * n_comp_[e] + comp;
  }

  /// Generator matrices of a tensor trace edge (unit tangent from the sorted
  /// vertex pair); throws for vector spaces.
  const std::vector<Mat2>& tensor_generators_on(int e) const;

  /// True when generator c on edge e is the pure-trace mode W3 (its pairing
  /// with any vector jump vanishes identically).
  bool is_pure_trace_generator(int e, int c) const;

  const EdgeModes& modes() const { return *modes_; }
  const Mesh& mesh() const { return *mesh_; }

  /// Mode values at reference coordinate s, scaled orthonormal on the
  /// physical edge (factor 1/sqrt(h_e)).
  Eigen::VectorXd mode_values(int e, double s) const;

 private:
  const Mesh* mesh_;
  ValueShape shape_;
  int degree_;
  std::shared_ptr<EdgeModes> modes_;
  std::vector<int> offsets_;
  std::vector<int> n_comp_;
  std::vector<std::vector<Mat2>> tensor_gens_;  // per edge, tensor case
  int total_dofs_ = 0;
};

/// Degree tuple (a1,a2,a3,a4) for Q_h, V_h, Qcheck_h, Vcheck_h; -1 marks the
/// empty sentinel for trace spaces.
struct DegreeTuple {
  int a1, a2, a3, a4;
};

struct SpacePair {
  std::shared_ptr<const Mesh> mesh;
  std::shared_ptr<BrokenSpace> stress;        // Q_h^{a1}, symmetric tensor
  std::shared_ptr<BrokenSpace> displacement;  // V_h^{a2}, vector
  std::shared_ptr<TraceSpace> stress_trace;   // Qcheck_h^{a3}
  std::shared_ptr<TraceSpace> displ_trace;    // Vcheck_h^{a4}
  DegreeTuple alpha;

  int max_degree() const;
};

SpacePair build_spaces(std::shared_ptr<const Mesh> mesh, DegreeTuple alpha);

}  // namespace elastdg
