#include "elastdg/spaces.hpp"

#include <cmath>
#include <stdexcept>

namespace elastdg {

BrokenSpace::BrokenSpace(const Mesh& mesh, ValueShape shape, int degree)
    : mesh_(&mesh), shape_(shape), degree_(degree), scalar_(degree) {
  total_dofs_ = mesh.num_triangles() * dofs_per_element();
}

TraceSpace::TraceSpace(const Mesh& mesh, ValueShape shape, int degree)
    : mesh_(&mesh), shape_(shape), degree_(degree) {
  const int ne = mesh.num_edges();
  offsets_.assign(ne + 1, 0);
  n_comp_.assign(ne, 0);
  if (empty()) {
    offsets_.back() = 0;
    return;
  }
  modes_ = std::make_shared<EdgeModes>(degree);
  if (shape == ValueShape::symmetric_tensor) tensor_gens_.resize(ne);

  for (int e = 0; e < ne; ++e) {
    const Edge& edge = mesh.edge(e);
    if (shape == ValueShape::vector) {
      n_comp_[e] = edge.tag == EdgeTag::dirichlet ? 0 : 2;
    } else {
      const Vec2 n = edge.normal;
      const Vec2 t(-n.y(), n.x());
      auto& gens = tensor_gens_[e];
      if (edge.tag == EdgeTag::neumann) {
        // only the zero-normal-trace direction survives
        gens.push_back(t * t.transpose());
      } else {
        gens.push_back(n * n.transpose() - t * t.transpose());
        gens.push_back(n * t.transpose() + t * n.transpose());
        gens.push_back(Mat2::Identity());
      }
      n_comp_[e] = static_cast<int>(gens.size());
    }
    offsets_[e + 1] = offsets_[e] + n_comp_[e] * modes_per_edge();
  }
  total_dofs_ = offsets_.back();
}

const std::vector<Mat2>& TraceSpace::tensor_generators_on(int e) const {
  if (shape_ != ValueShape::symmetric_tensor)
    throw std::logic_error("tensor generators requested from a vector space");
  return tensor_gens_[e];
}

bool TraceSpace::is_pure_trace_generator(int e, int c) const {
  if (shape_ != ValueShape::symmetric_tensor) return false;
  return mesh_->edge(e).tag != EdgeTag::neumann && c == 2;
}

Eigen::VectorXd TraceSpace::mode_values(int e, double s) const {
  return modes_->values(s) / std::sqrt(mesh_->edge(e).length);
}

int SpacePair::max_degree() const {
  return std::max({alpha.a1, alpha.a2, alpha.a3, alpha.a4, 0});
}

SpacePair build_spaces(std::shared_ptr<const Mesh> mesh, DegreeTuple alpha) {
  if (alpha.a1 < 0 || alpha.a2 < 0)
    throw std::invalid_argument("element space degrees must be >= 0");
  SpacePair sp;
  sp.mesh = mesh;
  sp.alpha = alpha;
  sp.stress = std::make_shared<BrokenSpace>(*mesh, ValueShape::symmetric_tensor,
                                            alpha.a1);
  sp.displacement =
      std::make_shared<BrokenSpace>(*mesh, ValueShape::vector, alpha.a2);
  sp.stress_trace = std::make_shared<TraceSpace>(
      *mesh, ValueShape::symmetric_tensor, alpha.a3);
  sp.displ_trace =
      std::make_shared<TraceSpace>(*mesh, ValueShape::vector, alpha.a4);
  return sp;
}

}  // namespace elastdg
