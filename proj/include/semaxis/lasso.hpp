#pragma once

#include "semaxis/types.hpp"

#include <vector>

namespace semaxis {

using Point2 = Eigen::Vector2d;
using Polygon = std::vector<Point2>;

/// Throws InvalidPolygon unless the polygon has at least three finite vertices.
void validate_polygon(const Polygon& poly);

/// Even-odd containment; points on an edge or vertex count as inside.
bool contains(const Polygon& poly, const Point2& p);

/// Ids whose coordinates (row i of an N x 2 matrix) fall inside the polygon.
IdList lasso_select(const Matrix& coords, const IdList& ids, const Polygon& poly);

/// Arithmetic mean of the vertices.
Point2 vertex_centroid(const Polygon& poly);

}  // namespace semaxis
