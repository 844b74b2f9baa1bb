#include "semaxis/semantic_axis.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_set>

namespace semaxis {

std::string_view to_string(AxisKind k) {
  switch (k) {
    case AxisKind::unipolar: return "unipolar";
    case AxisKind::bipolar: return "bipolar";
    case AxisKind::manual: return "manual";
  }
  return "manual";
}

AxisKind axis_kind_from_string(std::string_view s) {
  if (s == "unipolar") return AxisKind::unipolar;
  if (s == "bipolar") return AxisKind::bipolar;
  if (s == "manual") return AxisKind::manual;
  throw Error(ErrorCode::BadRequest, "unknown axis kind '" + std::string(s) + "'");
}

namespace {

IdList dedupe(const IdList& ids) {
  IdList out;
  std::unordered_set<std::string> seen;
  for (const auto& id : ids) {
    if (seen.insert(id).second) out.push_back(id);
  }
  return out;
}

Matrix gather_rows(const Dataset& d, const IdList& ids) {
  Matrix rows(static_cast<Index>(ids.size()), d.dims());
  for (Index r = 0; r < rows.rows(); ++r) rows.row(r) = d.points().row(d.require_index(ids[r]));
  return rows;
}

}  // namespace

SemanticAxis build_axis(const Dataset& d, const IdList& target, const IdList& control, const WeightVector& w,
                        AxisKind kind, std::string label) {
  if (target.empty()) throw Error(ErrorCode::EmptyGroup, "target group is empty");
  if (control.empty()) throw Error(ErrorCode::EmptyGroup, "control group is empty");
  if (w.size() != d.dims()) throw Error(ErrorCode::DimensionMismatch, "weights do not match dataset");

  IdList t = dedupe(target);
  IdList c = dedupe(control);
  const std::unordered_set<std::string> tset(t.begin(), t.end());
  for (const auto& id : c) {
    if (tset.count(id)) throw Error(ErrorCode::OverlappingGroups, "id '" + id + "' is in both groups");
  }
  const Matrix trows = gather_rows(d, t);
  const Matrix crows = gather_rows(d, c);

  SemanticAxis axis;
  axis.v = centroid_difference(trows, crows, w.values());
  if (!(axis.v.squaredNorm() > 0.0)) {
    throw Error(ErrorCode::ZeroAxis, "group centers coincide under the current weights");
  }
  axis.target_ids = std::move(t);
  axis.control_ids = std::move(c);
  axis.kind = kind;
  axis.label = std::move(label);
  axis.weight_snapshot = w;
  return axis;
}

SemanticAxis manual_axis(Vector v, const WeightVector& w, std::string label) {
  if (v.size() != w.size()) throw Error(ErrorCode::DimensionMismatch, "axis does not match weights");
  if (!v.allFinite()) throw Error(ErrorCode::BadRequest, "axis components must be finite");
  if (!(v.squaredNorm() > 0.0)) throw Error(ErrorCode::ZeroAxis, "axis vector is zero");
  SemanticAxis axis;
  axis.v = std::move(v);
  axis.kind = AxisKind::manual;
  axis.label = std::move(label);
  axis.weight_snapshot = w;
  return axis;
}

Vector project_all(const Matrix& points, const Vector& v) {
  if (points.cols() != v.size()) {
    throw Error(ErrorCode::DimensionMismatch, "points have " + std::to_string(points.cols()) +
                                                  " attributes, axis " + std::to_string(v.size()));
  }
  const double norm = v.norm();
  if (!(norm > 0.0)) throw Error(ErrorCode::ZeroAxis, "axis vector is zero");
  return (points * v) / norm;
}

SemanticAxis edit_axis_component(const SemanticAxis& axis, Index attr, double new_value) {
  if (attr < 0 || attr >= axis.dims()) {
    throw Error(ErrorCode::IndexOutOfRange, "attribute " + std::to_string(attr) + " out of range");
  }
  if (!std::isfinite(new_value)) throw Error(ErrorCode::BadRequest, "component must be finite");
  SemanticAxis out = axis;
  out.v[attr] = new_value;
  if (!(out.v.squaredNorm() > 0.0)) throw Error(ErrorCode::ZeroAxis, "edit would zero the axis");
  out.kind = AxisKind::manual;
  return out;
}

RectangleLayout rectangle_layout(const Vector& v) {
  std::vector<Index> order;
  for (Index k = 0; k < v.size(); ++k) {
    if (v[k] != 0.0) order.push_back(k);
  }
  std::stable_sort(order.begin(), order.end(),
                   [&](Index a, Index b) { return std::abs(v[a]) > std::abs(v[b]); });

  RectangleLayout layout;
  layout.slots = static_cast<Index>(order.size());
  Index left = 0;
  Index right = layout.slots - 1;
  for (Index k : order) {
    const bool positive = v[k] > 0.0;
    layout.rectangles.push_back(
        {k, v[k], positive ? Side::above : Side::below, std::abs(v[k]), positive ? right-- : left++});
  }
  return layout;
}

RectangleLayout rectangle_layout(const SemanticAxis& axis) { return rectangle_layout(axis.v); }

Matrix composite_space(const SemanticAxis& a, const SemanticAxis& b, const Dataset& d) {
  if (a.dims() != d.dims() || b.dims() != d.dims()) {
    throw Error(ErrorCode::DimensionMismatch, "axes do not match dataset");
  }
  Matrix coords(d.size(), 2);
  coords.col(0) = project_all(d.points(), a.v);
  coords.col(1) = project_all(d.points(), b.v);
  return coords;
}

IdList brush_axis(const Vector& projections, const IdList& ids, double lo, double hi) {
  if (static_cast<Index>(ids.size()) != projections.size()) {
    throw Error(ErrorCode::DimensionMismatch, "projection and id counts differ");
  }
  if (!(lo <= hi)) throw Error(ErrorCode::BadRequest, "brush interval needs lo <= hi");
  IdList out;
  for (Index i = 0; i < projections.size(); ++i) {
    if (projections[i] >= lo && projections[i] <= hi) out.push_back(ids[i]);
  }
  return out;
}

}  // namespace semaxis
