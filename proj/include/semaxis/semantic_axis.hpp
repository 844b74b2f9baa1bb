#pragma once

#include "semaxis/dataset.hpp"
#include "semaxis/types.hpp"

#include <cmath>
#include <string>
#include <string_view>
#include <vector>

namespace semaxis {

/// Analyst intent behind an axis. Unipolar: the control group is the bulk of
/// the remaining points. Bipolar: the control group is another cluster.
/// Manual: built or fine-tuned by editing components directly.
enum class AxisKind { unipolar, bipolar, manual };

std::string_view to_string(AxisKind k);
AxisKind axis_kind_from_string(std::string_view s);

struct SemanticAxis {
  Vector v;
  IdList target_ids;
  IdList control_ids;
  AxisKind kind = AxisKind::manual;
  std::string label;
  WeightVector weight_snapshot = WeightVector::uniform(1);

  Index dims() const noexcept { return v.size(); }
};

/// Element-wise product of the centroid difference with the weights:
///   v_k = (mean_target(p_k) - mean_control(p_k)) * w_k
template <typename DerivedT, typename DerivedC, typename DerivedW>
Vector centroid_difference(const Eigen::MatrixBase<DerivedT>& target_rows,
                           const Eigen::MatrixBase<DerivedC>& control_rows,
                           const Eigen::MatrixBase<DerivedW>& w) {
  const Vector diff = (target_rows.colwise().mean() - control_rows.colwise().mean()).transpose();
  return diff.cwiseProduct(w.reshaped());
}

SemanticAxis build_axis(const Dataset& d, const IdList& target, const IdList& control, const WeightVector& w,
                        AxisKind kind, std::string label);

/// Hand-built axis from explicit components. Throws ZeroAxis for v = 0.
SemanticAxis manual_axis(Vector v, const WeightVector& w, std::string label);

/// p . v / |v|_2
template <typename DerivedP, typename DerivedV>
double project(const Eigen::MatrixBase<DerivedP>& p, const Eigen::MatrixBase<DerivedV>& v) {
  if (p.size() != v.size()) {
    throw Error(ErrorCode::DimensionMismatch, "point has " + std::to_string(p.size()) +
                                                  " attributes, axis " + std::to_string(v.size()));
  }
  const double norm = v.norm();
  if (!(norm > 0.0)) throw Error(ErrorCode::ZeroAxis, "axis vector is zero");
  return p.reshaped().dot(v.reshaped()) / norm;
}

inline double project(const Vector& p, const SemanticAxis& axis) { return project(p, axis.v); }

/// Projection of every row.
Vector project_all(const Matrix& points, const Vector& v);
inline Vector project_all(const Dataset& d, const SemanticAxis& axis) { return project_all(d.points(), axis.v); }

SemanticAxis edit_axis_component(const SemanticAxis& axis, Index attr, double new_value);

enum class Side { above, below };

struct AttributeRectangle {
  Index attribute;
  double value;
  Side side;      // above iff value > 0
  double height;  // |value|
  /// Evenly spaced position along the axis, 0 = left (control) end.
  /// Negative components fill inward from the left end, positive ones inward
  /// from the right end, largest magnitude outermost.
  Index slot;
};

/// Rectangles listed by |value| descending, ties by attribute index.
/// Zero components carry no semantics and are left out.
struct RectangleLayout {
  std::vector<AttributeRectangle> rectangles;
  Index slots = 0;
};

RectangleLayout rectangle_layout(const SemanticAxis& axis);
RectangleLayout rectangle_layout(const Vector& v);

/// Point i maps to (project(p_i, a), project(p_i, b)).
Matrix composite_space(const SemanticAxis& a, const SemanticAxis& b, const Dataset& d);

/// Ids whose projection lies in [lo, hi], in dataset order.
IdList brush_axis(const Vector& projections, const IdList& ids, double lo, double hi);

}  // namespace semaxis
