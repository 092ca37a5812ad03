#pragma once

#include "elastdg/spaces.hpp"

namespace elastdg {

/// Evaluation of broken-space coefficient vectors on one element. Reference
/// coordinates are with respect to the element's affine chart.

Mat2 eval_tensor(const BrokenSpace& space, const Eigen::VectorXd& coeffs,
                 int elem, const ElementGeometry& geo, const Vec2& ref);

Vec2 eval_tensor_divergence(const BrokenSpace& space,
                            const Eigen::VectorXd& coeffs, int elem,
                            const ElementGeometry& geo, const Vec2& ref);

Vec2 eval_vector(const BrokenSpace& space, const Eigen::VectorXd& coeffs,
                 int elem, const ElementGeometry& geo, const Vec2& ref);

Mat2 eval_vector_strain(const BrokenSpace& space,
                        const Eigen::VectorXd& coeffs, int elem,
                        const ElementGeometry& geo, const Vec2& ref);

/// L2 projection of a smooth field onto a broken space (orthonormal reference
/// basis makes the element mass diagonal).
Eigen::VectorXd project_tensor_field(
    const BrokenSpace& space, int quad_degree,
    const std::function<Mat2(const Vec2&)>& field);

Eigen::VectorXd project_vector_field(
    const BrokenSpace& space, int quad_degree,
    const std::function<Vec2(const Vec2&)>& field);

/// Evaluation of trace-space coefficients on an edge at reference
/// coordinate s in [0,1] (arclength from the lower-indexed vertex).
Mat2 eval_trace_tensor(const TraceSpace& space, const Eigen::VectorXd& coeffs,
                       int edge, double s);
Vec2 eval_trace_vector(const TraceSpace& space, const Eigen::VectorXd& coeffs,
                       int edge, double s);

}  // namespace elastdg
