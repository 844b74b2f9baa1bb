#include "semaxis/lasso.hpp"

#include "semaxis/error.hpp"

#include <algorithm>
#include <cmath>

namespace semaxis {

void validate_polygon(const Polygon& poly) {
  if (poly.size() < 3) {
    throw Error(ErrorCode::InvalidPolygon, "polygon needs at least 3 vertices, got " + std::to_string(poly.size()));
  }
  for (const auto& v : poly) {
    if (!v.allFinite()) throw Error(ErrorCode::InvalidPolygon, "polygon vertex is not finite");
  }
}

namespace {

bool on_segment(const Point2& a, const Point2& b, const Point2& p) {
  const Point2 ab = b - a;
  const Point2 ap = p - a;
  const double cross = ab.x() * ap.y() - ab.y() * ap.x();
  const double scale = std::max({1.0, ab.cwiseAbs().maxCoeff(), ap.cwiseAbs().maxCoeff()});
  if (std::abs(cross) > 1e-12 * scale * scale) return false;
  return p.x() >= std::min(a.x(), b.x()) && p.x() <= std::max(a.x(), b.x()) && p.y() >= std::min(a.y(), b.y()) &&
         p.y() <= std::max(a.y(), b.y());
}

}  // namespace

bool contains(const Polygon& poly, const Point2& p) {
  const std::size_t n = poly.size();
  bool inside = false;
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Point2& a = poly[i];
    const Point2& b = poly[j];
    if (on_segment(a, b, p)) return true;
    // Horizontal ray toward +x; half-open rule on y avoids double counting vertices.
    if ((a.y() > p.y()) != (b.y() > p.y())) {
      const double x_cross = a.x() + (p.y() - a.y()) * (b.x() - a.x()) / (b.y() - a.y());
      if (p.x() < x_cross) inside = !inside;
    }
  }
  return inside;
}

IdList lasso_select(const Matrix& coords, const IdList& ids, const Polygon& poly) {
  validate_polygon(poly);
  if (coords.cols() != 2 || coords.rows() != static_cast<Index>(ids.size())) {
    throw Error(ErrorCode::DimensionMismatch, "coordinates must be N x 2 and match the id list");
  }
  IdList out;
  for (Index i = 0; i < coords.rows(); ++i) {
    if (contains(poly, Point2(coords(i, 0), coords(i, 1)))) out.push_back(ids[i]);
  }
  return out;
}

Point2 vertex_centroid(const Polygon& poly) {
  validate_polygon(poly);
  Point2 c = Point2::Zero();
  for (const auto& v : poly) c += v;
  return c / static_cast<double>(poly.size());
}

}  // namespace semaxis
