#include "semaxis/http_api.hpp"

#include <httplib.h>

#include <algorithm>
#include <sstream>

namespace semaxis {

int http_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::UnknownAxis:
    case ErrorCode::UnknownCheckpoint:
    case ErrorCode::UnknownDataset:
    case ErrorCode::UnknownJob:
    case ErrorCode::NoEmbedding:
      return 404;
    case ErrorCode::DatasetGone:
      return 410;
    case ErrorCode::SlotsFull:
    case ErrorCode::CompositeLocked:
    case ErrorCode::JobActive:
    case ErrorCode::AlreadyNormalized:
      return 409;
    case ErrorCode::Io:
      return 500;
    default:
      return 400;
  }
}

namespace {

using httplib::Request;
using httplib::Response;

void send_json(Response& res, const Json& body, int status = 200) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

Json parse_body(const Request& req) {
  if (req.body.empty()) return Json::object();
  try {
    return Json::parse(req.body);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::BadRequest, std::string("malformed JSON: ") + e.what());
  }
}

std::string param(const Request& req, const char* key, std::string fallback = {}) {
  return req.has_param(key) ? req.get_param_value(key) : fallback;
}

// Wraps a handler so library errors turn into JSON error bodies.
template <typename F>
httplib::Server::Handler guarded(F&& fn) {
  return [fn = std::forward<F>(fn)](const Request& req, Response& res) {
    try {
      fn(req, res);
    } catch (const Error& e) {
      send_json(res, {{"error", std::string(to_string(e.code()))}, {"message", e.what()}}, http_status(e.code()));
    } catch (const nlohmann::json::exception& e) {
      send_json(res, {{"error", "BadRequest"}, {"message", e.what()}}, 400);
    } catch (const std::exception& e) {
      send_json(res, {{"error", "Internal"}, {"message", e.what()}}, 500);
    }
  };
}

Json info_json(const DatasetInfo& info) {
  return {{"dataset_id", info.id},
          {"n", info.n},
          {"d", info.d},
          {"attributes", info.attributes},
          {"normalization", std::string(to_string(info.normalization))},
          {"periods", info.periods}};
}

Json job_json(const JobStatus& s) {
  Json j = {{"job_id", s.id},
            {"dataset_id", s.dataset_id},
            {"state", std::string(to_string(s.state))},
            {"iteration", s.iteration},
            {"kl", s.kl},
            {"cached", s.cached}};
  if (!s.error.empty()) j["error"] = s.error;
  return j;
}

Json checkpoint_json(const Session& session, const Checkpoint& cp) { return session.checkpoint_document(cp); }

// Positions of a ranking row's scores under a scale; `lo`/`hi` give the value extent.
std::vector<double> row_positions(const RankingResult& r, ScaleKind kind, double lo, double hi) {
  std::vector<double> out;
  out.reserve(r.scores.size());
  const Index n = static_cast<Index>(r.scores.size());
  Index rank = 0;
  for (Index k = 0; k < n; ++k) {
    if (k == 0 || r.scores[k] != r.scores[k - 1]) rank = k + 1;
    ScaleContext ctx{lo, hi, lo, hi, rank, n};
    out.push_back(scale_position(r.scores[k], kind, ctx));
  }
  return out;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

}  // namespace

Json axis_payload(const Session& session, const AxisRecord& rec) {
  const auto ds = session.dataset(rec.dataset_id);
  const Vector proj = project_all(ds->points(), rec.axis.v);
  const Vector radii = display_radii(weighted_scores(ds->points(), session.weights(rec.dataset_id)));
  const double lo = proj.minCoeff();
  const double hi = proj.maxCoeff();
  const double width = session.config().axis_width;
  Vector anchors = Vector::Constant(proj.size(), 0.5 * width);
  if (hi > lo) anchors = (width * (proj.array() - lo) / (hi - lo)).matrix();
  const BeadLayout beads = deoverlap(anchors, radii);

  Json doc = session.axis_document(rec);
  return {{"axis_id", rec.id},
          {"dataset_id", rec.dataset_id},
          {"axis", doc},
          {"rectangles", to_json(rectangle_layout(rec.axis), ds->attributes())},
          {"ids", ds->ids()},
          {"projections", to_json(proj)},
          {"beads", to_json(beads)}};
}

void register_routes(httplib::Server& server, Session& session) {
  Session* s = &session;

  // -- datasets
  server.Post("/datasets", guarded([s](const Request& req, Response& res) {
    CsvOptions opt;
    opt.id_column = param(req, "id_column");
    opt.period_column = param(req, "period_column");
    const auto delim = param(req, "delimiter", ",");
    opt.delimiter = delim.empty() ? ',' : delim.front();
    const auto norm = normalization_from_string(param(req, "normalization", "raw"));
    send_json(res, info_json(s->add_dataset(req.body, opt, norm)), 201);
  }));
  server.Get("/datasets", guarded([s](const Request&, Response& res) {
    Json out = Json::array();
    for (const auto& info : s->datasets()) out.push_back(info_json(info));
    send_json(res, out);
  }));
  server.Get(R"(/datasets/([^/]+))", guarded([s](const Request& req, Response& res) {
    const std::string id = req.matches[1];
    Json j = info_json(s->dataset_info(id));
    j["weights"] = to_json(s->weights(id));
    send_json(res, j);
  }));
  server.Delete(R"(/datasets/([^/]+))", guarded([s](const Request& req, Response& res) {
    s->remove_dataset(req.matches[1]);
    send_json(res, {{"deleted", std::string(req.matches[1])}});
  }));
  server.Get(R"(/datasets/([^/]+)/points)", guarded([s](const Request& req, Response& res) {
    const auto d = s->dataset(req.matches[1]);
    send_json(res, {{"ids", d->ids()}, {"attributes", d->attributes()}, {"rows", to_json(d->points())}});
  }));
  server.Get(R"(/datasets/([^/]+)/weights)", guarded([s](const Request& req, Response& res) {
    send_json(res, s->weights_document(req.matches[1]));
  }));
  server.Put(R"(/datasets/([^/]+)/weights)", guarded([s](const Request& req, Response& res) {
    const std::string id = req.matches[1];
    const Json body = parse_body(req);
    if (!body.contains("attr")) throw Error(ErrorCode::BadRequest, "missing field 'attr'");
    const Index attr = attribute_from_json(body["attr"], *s->dataset(id));
    const auto w = s->adjust_weights(id, attr, require<double>(body, "target"));
    send_json(res, {{"dataset_id", id}, {"weights", to_json(w)}});
  }));

  // -- embeddings
  server.Post(R"(/datasets/([^/]+)/embedding)", guarded([s](const Request& req, Response& res) {
    const auto cfg = embedding_config_from_json(parse_body(req));
    const auto job = s->submit_embedding(req.matches[1], cfg);
    send_json(res, {{"job_id", job}}, 202);
  }));
  server.Get(R"(/jobs/([^/]+))", guarded([s](const Request& req, Response& res) {
    send_json(res, job_json(s->job(req.matches[1])));
  }));
  server.Get(R"(/datasets/([^/]+)/embedding)", guarded([s](const Request& req, Response& res) {
    const std::string id = req.matches[1];
    const auto emb = s->current_embedding(id);
    if (!emb) throw Error(ErrorCode::NoEmbedding, "no embedding for the current weights of '" + id + "'");
    const auto d = s->dataset(id);
    if (param(req, "format") == "table") {
      res.set_content(embedding_table(d->ids(), emb->coords), "text/csv");
      return;
    }
    Json trace = Json::array();
    for (const auto& c : emb->kl_trace) trace.push_back({{"iteration", c.iteration}, {"kl", c.kl}});
    send_json(res, {{"ids", d->ids()}, {"coords", to_json(emb->coords)}, {"config", to_json(emb->config)},
                    {"kl_trace", trace}});
  }));
  server.Post(R"(/datasets/([^/]+)/lasso)", guarded([s](const Request& req, Response& res) {
    const Json body = parse_body(req);
    if (!body.contains("polygon")) throw Error(ErrorCode::InvalidPolygon, "missing field 'polygon'");
    send_json(res, {{"ids", s->lasso(req.matches[1], polygon_from_json(body["polygon"]))}});
  }));
  server.Post(R"(/datasets/([^/]+)/coloring)", guarded([s](const Request& req, Response& res) {
    const std::string id = req.matches[1];
    const auto d = s->dataset(id);
    const Json body = parse_body(req);
    std::vector<Index> checked;
    for (const auto& a : body.value("checked", Json::array())) checked.push_back(attribute_from_json(a, *d));
    const Vector values = coloring_score(*d, checked, s->weights(id));
    send_json(res, {{"ids", d->ids()}, {"values", to_json(values)}, {"min", values.minCoeff()},
                    {"max", values.maxCoeff()}});
  }));

  // -- axes
  server.Post(R"(/datasets/([^/]+)/axes)", guarded([s](const Request& req, Response& res) {
    const std::string id = req.matches[1];
    const Json body = parse_body(req);
    const std::string label = body.value("label", std::string());
    AxisRecord rec;
    if (body.contains("v")) {
      rec = s->create_manual_axis(id, vector_from_json(body["v"]), label);
    } else {
      rec = s->create_axis(id, require<IdList>(body, "target_ids"), require<IdList>(body, "control_ids"),
                           axis_kind_from_string(body.value("kind", std::string("bipolar"))), label);
    }
    send_json(res, axis_payload(*s, rec), 201);
  }));
  server.Get("/axes", guarded([s](const Request&, Response& res) {
    Json out = Json::array();
    for (const auto& rec : s->axes()) out.push_back(s->axis_document(rec));
    send_json(res, out);
  }));
  server.Get(R"(/axes/([^/]+))", guarded([s](const Request& req, Response& res) {
    send_json(res, axis_payload(*s, s->axis(req.matches[1])));
  }));
  server.Patch(R"(/axes/([^/]+))", guarded([s](const Request& req, Response& res) {
    const std::string axis_id = req.matches[1];
    const Json body = parse_body(req);
    const auto current = s->axis(axis_id);
    if (!body.contains("attr")) throw Error(ErrorCode::BadRequest, "missing field 'attr'");
    const Index attr = attribute_from_json(body["attr"], *s->dataset(current.dataset_id));
    send_json(res, axis_payload(*s, s->edit_axis(axis_id, attr, require<double>(body, "value"))));
  }));
  server.Get(R"(/axes/([^/]+)/composite/([^/]+))", guarded([s](const Request& req, Response& res) {
    const std::string a = req.matches[1];
    const std::string b = req.matches[2];
    const Matrix coords = s->composite(a, b);
    const auto rec = s->axis(a);
    send_json(res, {{"x_axis", a},
                    {"y_axis", b},
                    {"x_label", rec.axis.label},
                    {"y_label", s->axis(b).axis.label},
                    {"ids", s->dataset(rec.dataset_id)->ids()},
                    {"coords", to_json(coords)}});
  }));
  server.Post("/slots", guarded([s](const Request& req, Response& res) {
    const Json body = parse_body(req);
    std::optional<std::size_t> slot;
    if (body.contains("slot") && !body["slot"].is_null()) slot = body["slot"].get<std::size_t>();
    const auto at = s->save_axis_slot(require<std::string>(body, "axis_id"), slot, body.value("overwrite", false));
    send_json(res, {{"slot", at}});
  }));
  server.Get("/slots", guarded([s](const Request&, Response& res) {
    Json out = Json::array();
    for (const auto& slot : s->slots()) out.push_back(slot ? Json(*slot) : Json(nullptr));
    send_json(res, {{"slots", out}});
  }));

  // -- ranking rows
  server.Post(R"(/datasets/([^/]+)/filters)", guarded([s](const Request& req, Response& res) {
    const std::string id = req.matches[1];
    const auto d = s->dataset(id);
    const Json body = parse_body(req);
    const ScaleKind kind = scale_kind_from_string(body.value("scale", std::string("local")));
    std::vector<BrushFilter> filters;
    for (const auto& f : body.value("filters", Json::array())) filters.push_back(filter_from_json(f, *d));
    const IdList ids = s->set_filters(id, std::move(filters), kind);
    send_json(res, {{"scale", std::string(to_string(kind))}, {"ids", ids}});
  }));
  server.Put(R"(/datasets/([^/]+)/scale)", guarded([s](const Request& req, Response& res) {
    const Json body = parse_body(req);
    const ScaleKind kind = scale_kind_from_string(require<std::string>(body, "scale"));
    const bool cleared = s->switch_scale(req.matches[1], kind);
    send_json(res, {{"scale", std::string(to_string(kind))}, {"filters_cleared", cleared}});
  }));
  server.Get(R"(/datasets/([^/]+)/ranking)", guarded([s](const Request& req, Response& res) {
    const std::string id = req.matches[1];
    const auto d = s->dataset(id);
    const auto w = s->weights(id);
    const ScaleKind kind = scale_kind_from_string(param(req, "scale", "local"));
    RankingResult r = weighted_ranking(*d, w);
    const std::string period = param(req, "period");
    if (!period.empty()) {
      const auto periods = period == "all" ? std::vector<std::string>{} : split_list(period);
      r.slices = time_sliced_ranking(*d, w, periods);
    }
    if (param(req, "format") == "table") {
      res.set_content(r.slices.empty() ? ranking_table(r) : sliced_ranking_table(r.slices), "text/csv");
      return;
    }
    Json j = to_json(r);
    const auto lo_hi = [](const RankingResult& rr) {
      return std::pair{rr.scores.empty() ? 0.0 : rr.scores.back(), rr.scores.empty() ? 0.0 : rr.scores.front()};
    };
    auto [lo, hi] = lo_hi(r);
    // The global scale spans every slice shown together; the local scale each row alone.
    double glo = lo;
    double ghi = hi;
    for (const auto& sl : r.slices) {
      auto [a, b] = lo_hi(sl.ranking);
      glo = std::min(glo, a);
      ghi = std::max(ghi, b);
    }
    j["positions"] = row_positions(r, kind, kind == ScaleKind::global_value ? glo : lo,
                                   kind == ScaleKind::global_value ? ghi : hi);
    for (std::size_t k = 0; k < r.slices.size(); ++k) {
      auto [a, b] = lo_hi(r.slices[k].ranking);
      j["slices"][k]["ranking"]["positions"] =
          row_positions(r.slices[k].ranking, kind, kind == ScaleKind::global_value ? glo : a,
                        kind == ScaleKind::global_value ? ghi : b);
    }
    send_json(res, {{"scale", std::string(to_string(kind))}, {"ranking", j}});
  }));

  // -- checkpoints
  server.Post("/checkpoints", guarded([s](const Request& req, Response& res) {
    const Json body = parse_body(req);
    const auto regions = body.value("lasso_regions", Json::array());
    if (!regions.is_array() || regions.size() != 2) {
      throw Error(ErrorCode::InvalidPolygon, "lasso_regions must hold two polygons");
    }
    std::optional<std::array<IdList, 2>> ids;
    if (body.contains("target_ids") || body.contains("control_ids")) {
      ids = std::array<IdList, 2>{body.value("target_ids", IdList{}), body.value("control_ids", IdList{})};
    }
    const auto cp = s->save_checkpoint(require<std::string>(body, "axis_id"),
                                       {polygon_from_json(regions[0]), polygon_from_json(regions[1])}, ids);
    send_json(res, checkpoint_json(*s, cp), 201);
  }));
  server.Get("/checkpoints", guarded([s](const Request&, Response& res) {
    Json out = Json::array();
    for (const auto& cp : s->checkpoints()) out.push_back(checkpoint_json(*s, cp));
    send_json(res, out);
  }));
  server.Post(R"(/checkpoints/([^/]+)/restore)", guarded([s](const Request& req, Response& res) {
    const auto restored = s->restore_checkpoint(req.matches[1]);
    const auto& cp = restored.checkpoint;
    send_json(res, {{"checkpoint_id", cp.id},
                    {"axis", to_json(cp.axis)},
                    {"target_ids", cp.target_ids},
                    {"control_ids", cp.control_ids},
                    {"lasso_regions", {to_json(cp.regions[0]), to_json(cp.regions[1])}},
                    {"pin_positions", {{cp.pins[0].x(), cp.pins[0].y()}, {cp.pins[1].x(), cp.pins[1].y()}}},
                    {"projections", to_json(restored.projections)},
                    {"stored_projections", to_json(cp.projections)}});
  }));
}

}  // namespace semaxis
