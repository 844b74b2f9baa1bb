#include "semaxis/serialization.hpp"

namespace semaxis {

Json to_json(const Vector& v) {
  Json a = Json::array();
  for (Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

Vector vector_from_json(const Json& j) {
  if (!j.is_array()) throw Error(ErrorCode::BadRequest, "expected an array of numbers");
  Vector v(static_cast<Index>(j.size()));
  for (Index i = 0; i < v.size(); ++i) {
    if (!j[i].is_number()) throw Error(ErrorCode::BadRequest, "expected a number");
    v[i] = j[i].get<double>();
  }
  return v;
}

Json to_json(const Matrix& m) {
  Json rows = Json::array();
  for (Index i = 0; i < m.rows(); ++i) rows.push_back(to_json(Vector(m.row(i).transpose())));
  return rows;
}

Matrix matrix_from_json(const Json& j, Index cols) {
  if (!j.is_array()) throw Error(ErrorCode::BadRequest, "expected an array of rows");
  Matrix m(static_cast<Index>(j.size()), cols);
  for (Index i = 0; i < m.rows(); ++i) {
    const Vector row = vector_from_json(j[i]);
    if (row.size() != cols) throw Error(ErrorCode::BadRequest, "row has the wrong length");
    m.row(i) = row.transpose();
  }
  return m;
}

Json to_json(const WeightVector& w) { return to_json(w.values()); }

WeightVector weights_from_json(const Json& j) {
  try {
    return WeightVector(vector_from_json(j));
  } catch (const Error& e) {
    throw Error(ErrorCode::InvalidWeights, e.what());
  }
}

Json to_json(const SemanticAxis& axis) {
  return {{"label", axis.label},
          {"kind", std::string(to_string(axis.kind))},
          {"v", to_json(axis.v)},
          {"target_ids", axis.target_ids},
          {"control_ids", axis.control_ids},
          {"weight_snapshot", to_json(axis.weight_snapshot)}};
}

SemanticAxis axis_from_json(const Json& j) {
  SemanticAxis axis;
  axis.label = require<std::string>(j, "label");
  axis.kind = axis_kind_from_string(require<std::string>(j, "kind"));
  axis.v = vector_from_json(j.at("v"));
  axis.target_ids = require<IdList>(j, "target_ids");
  axis.control_ids = require<IdList>(j, "control_ids");
  axis.weight_snapshot = weights_from_json(j.at("weight_snapshot"));
  if (axis.v.size() != axis.weight_snapshot.size()) {
    throw Error(ErrorCode::DimensionMismatch, "axis and weight snapshot differ in length");
  }
  return axis;
}

Json to_json(const Polygon& poly) {
  Json a = Json::array();
  for (const auto& p : poly) a.push_back({p.x(), p.y()});
  return a;
}

Polygon polygon_from_json(const Json& j) {
  if (!j.is_array()) throw Error(ErrorCode::InvalidPolygon, "polygon must be an array of [x, y] pairs");
  Polygon poly;
  for (const auto& v : j) {
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
      throw Error(ErrorCode::InvalidPolygon, "polygon vertex must be [x, y]");
    }
    poly.emplace_back(v[0].get<double>(), v[1].get<double>());
  }
  validate_polygon(poly);
  return poly;
}

Json to_json(const EmbeddingConfig& cfg) {
  return {{"algorithm", std::string(to_string(cfg.algorithm))},
          {"perplexity", cfg.perplexity},
          {"iterations", cfg.iterations},
          {"learning_rate", cfg.learning_rate},
          {"early_exaggeration", cfg.early_exaggeration},
          {"exaggeration_iterations", cfg.exaggeration_iterations},
          {"initial_momentum", cfg.initial_momentum},
          {"final_momentum", cfg.final_momentum},
          {"momentum_switch_iteration", cfg.momentum_switch_iteration},
          {"kl_interval", cfg.kl_interval},
          {"seed", cfg.seed}};
}

EmbeddingConfig embedding_config_from_json(const Json& j) {
  EmbeddingConfig cfg;
  if (j.is_null()) return cfg;
  if (!j.is_object()) throw Error(ErrorCode::BadRequest, "embedding config must be an object");
  try {
    if (j.contains("algorithm")) cfg.algorithm = algorithm_from_string(j["algorithm"].get<std::string>());
    cfg.perplexity = j.value("perplexity", cfg.perplexity);
    cfg.iterations = j.value("iterations", cfg.iterations);
    cfg.learning_rate = j.value("learning_rate", cfg.learning_rate);
    cfg.early_exaggeration = j.value("early_exaggeration", cfg.early_exaggeration);
    cfg.exaggeration_iterations = j.value("exaggeration_iterations", cfg.exaggeration_iterations);
    cfg.initial_momentum = j.value("initial_momentum", cfg.initial_momentum);
    cfg.final_momentum = j.value("final_momentum", cfg.final_momentum);
    cfg.momentum_switch_iteration = j.value("momentum_switch_iteration", cfg.momentum_switch_iteration);
    cfg.kl_interval = j.value("kl_interval", cfg.kl_interval);
    cfg.seed = j.value("seed", cfg.seed);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidConfig, e.what());
  }
  cfg.validate();
  return cfg;
}

Json to_json(const RectangleLayout& layout, const std::vector<std::string>& attributes) {
  Json rects = Json::array();
  for (const auto& r : layout.rectangles) {
    rects.push_back({{"attribute", r.attribute},
                     {"name", attributes.at(static_cast<std::size_t>(r.attribute))},
                     {"value", r.value},
                     {"side", r.side == Side::above ? "above" : "below"},
                     {"height", r.height},
                     {"slot", r.slot}});
  }
  return {{"slots", layout.slots}, {"rectangles", rects}};
}

Json to_json(const BeadLayout& beads) {
  return {{"x", to_json(beads.x)},
          {"y", to_json(beads.y)},
          {"r", to_json(beads.r)},
          {"iterations", beads.iterations},
          {"max_overlap", beads.max_overlap}};
}

Json to_json(const RankingResult& r) {
  Json j = {{"order", r.order}, {"scores", r.scores}};
  if (!r.slices.empty()) {
    Json slices = Json::array();
    for (const auto& s : r.slices) slices.push_back({{"period", s.period}, {"ranking", to_json(s.ranking)}});
    j["slices"] = slices;
  }
  return j;
}

Index attribute_from_json(const Json& j, const Dataset& d) {
  if (j.is_number_integer()) {
    const auto k = j.get<long long>();
    if (k < 0 || k >= d.dims()) throw Error(ErrorCode::IndexOutOfRange, "attribute " + std::to_string(k));
    return static_cast<Index>(k);
  }
  if (j.is_string()) {
    if (auto k = d.attribute_index(j.get<std::string>())) return *k;
    throw Error(ErrorCode::IndexOutOfRange, "unknown attribute '" + j.get<std::string>() + "'");
  }
  throw Error(ErrorCode::BadRequest, "attribute must be an index or a name");
}

BrushFilter filter_from_json(const Json& j, const Dataset& d) {
  if (!j.is_object() || !j.contains("attr")) throw Error(ErrorCode::InvalidFilter, "filter needs attr, lo, hi");
  BrushFilter f;
  f.attr = attribute_from_json(j["attr"], d);
  f.lo = require<double>(j, "lo");
  f.hi = require<double>(j, "hi");
  f.validate();
  return f;
}

}  // namespace semaxis
