#pragma once

#include "semaxis/dataset.hpp"
#include "semaxis/embedding.hpp"
#include "semaxis/lasso.hpp"
#include "semaxis/layout.hpp"
#include "semaxis/ranking.hpp"
#include "semaxis/semantic_axis.hpp"

#include <json.hpp>

namespace semaxis {

using Json = nlohmann::json;

/// Bumped whenever a persisted document changes shape.
inline constexpr int kSchemaVersion = 1;

Json to_json(const Vector& v);
Vector vector_from_json(const Json& j);
Json to_json(const Matrix& m);  // array of rows
Matrix matrix_from_json(const Json& j, Index cols);

Json to_json(const WeightVector& w);
WeightVector weights_from_json(const Json& j);

Json to_json(const SemanticAxis& axis);
SemanticAxis axis_from_json(const Json& j);

Json to_json(const Polygon& poly);
Polygon polygon_from_json(const Json& j);

Json to_json(const EmbeddingConfig& cfg);
/// Missing fields keep their defaults.
EmbeddingConfig embedding_config_from_json(const Json& j);

Json to_json(const RectangleLayout& layout, const std::vector<std::string>& attributes);
Json to_json(const BeadLayout& beads);
Json to_json(const RankingResult& r);

BrushFilter filter_from_json(const Json& j, const Dataset& d);

/// Accepts an attribute index or name.
Index attribute_from_json(const Json& j, const Dataset& d);

/// Reads a required field, reporting BadRequest when absent or mistyped.
template <typename T>
T require(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw Error(ErrorCode::BadRequest, std::string("missing field '") + key + "'");
  }
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::BadRequest, std::string("field '") + key + "': " + e.what());
  }
}

}  // namespace semaxis
