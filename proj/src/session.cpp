#include "semaxis/session.hpp"

#include "semaxis/hash.hpp"

#include <algorithm>
#include <chrono>
#include <ctime>
#include <fstream>
#include <sstream>
#include <unordered_set>

namespace semaxis {

namespace fs = std::filesystem;

std::string_view to_string(JobState s) {
  switch (s) {
    case JobState::queued: return "queued";
    case JobState::running: return "running";
    case JobState::done: return "done";
    case JobState::failed: return "failed";
  }
  return "failed";
}

std::uint64_t weight_hash(const WeightVector& w) {
  Fnv1a h;
  h.reals(std::span<const double>(w.values().data(), static_cast<std::size_t>(w.size())));
  return h.value();
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(now.time_since_epoch()).count() % 1000;
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[40];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%S", &tm);
  char out[48];
  std::snprintf(out, sizeof out, "%s.%03lldZ", buf, static_cast<long long>(ms));
  return out;
}

namespace {

void write_atomic(const fs::path& path, const std::string& content) {
  fs::create_directories(path.parent_path());
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw Error(ErrorCode::Io, "cannot write " + tmp.string());
    os << content;
    os.flush();
    if (!os) throw Error(ErrorCode::Io, "short write to " + tmp.string());
  }
  fs::rename(tmp, path);
}

std::string read_file(const fs::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error(ErrorCode::Io, "cannot read " + path.string());
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

Json read_json(const fs::path& path) {
  try {
    return Json::parse(read_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Io, path.string() + ": " + e.what());
  }
}

void check_schema(const Json& doc, const fs::path& path) {
  if (doc.value("schema_version", 0) != kSchemaVersion) {
    throw Error(ErrorCode::Io, path.string() + ": unsupported schema_version");
  }
}

Json options_json(const CsvOptions& o) {
  return {{"id_column", o.id_column}, {"delimiter", std::string(1, o.delimiter)}, {"period_column", o.period_column}};
}

CsvOptions options_from_json(const Json& j) {
  CsvOptions o;
  o.id_column = j.value("id_column", std::string());
  const auto delim = j.value("delimiter", std::string(","));
  o.delimiter = delim.empty() ? ',' : delim.front();
  o.period_column = j.value("period_column", std::string());
  return o;
}

Json point_json(const Point2& p) { return {p.x(), p.y()}; }

Point2 point_from_json(const Json& j) { return {j.at(0).get<double>(), j.at(1).get<double>()}; }

}  // namespace

// ---------------------------------------------------------------------------

Session::Session(SessionConfig config) : config_(std::move(config)) {
  if (config_.axis_slots < 2) throw Error(ErrorCode::BadRequest, "need at least two axis slots");
  slots_.assign(config_.axis_slots, std::nullopt);
  if (!config_.data_dir.empty()) load();
  worker_ = std::thread([this] { worker_loop(); });
}

Session::~Session() {
  {
    std::unique_lock lock(mu_);
    stopping_ = true;
  }
  job_cv_.notify_all();
  if (worker_.joinable()) worker_.join();
}

std::string Session::next_id(const char* prefix, std::uint64_t& counter) {
  return std::string(prefix) + std::to_string(++counter);
}

// -- persistence --------------------------------------------------------------

void Session::persist_session() const {
  if (config_.data_dir.empty()) return;
  Json slots = Json::array();
  for (const auto& s : slots_) slots.push_back(s ? Json(*s) : Json(nullptr));
  const Json doc = {{"schema_version", kSchemaVersion},
                    {"counters", {{"dataset", dataset_counter_}, {"axis", axis_counter_}, {"checkpoint", checkpoint_counter_}}},
                    {"slots", slots}};
  write_atomic(config_.data_dir / "session.json", doc.dump(2));
}

void Session::persist_dataset_manifest(const std::string& id, const std::string& csv, const DatasetEntry& e) const {
  if (config_.data_dir.empty()) return;
  const fs::path dir = config_.data_dir / "datasets" / id;
  write_atomic(dir / "data.csv", csv);
  const Json doc = {{"schema_version", kSchemaVersion},
                    {"dataset_id", id},
                    {"csv", "data.csv"},
                    {"options", options_json(e.options)},
                    {"normalization", std::string(to_string(e.data->normalization()))}};
  write_atomic(dir / "manifest.json", doc.dump(2));
}

Json Session::weights_document(const std::string& dataset_id) const {
  const auto& e = entry(dataset_id);
  return {{"schema_version", kSchemaVersion}, {"dataset_id", dataset_id}, {"weights", to_json(e.weights)}};
}

void Session::persist_weights(const std::string& id) const {
  if (config_.data_dir.empty()) return;
  write_atomic(config_.data_dir / "datasets" / id / "weights.json", weights_document(id).dump(2));
}

Json Session::axis_document(const AxisRecord& rec) const {
  Json doc = to_json(rec.axis);
  doc["schema_version"] = kSchemaVersion;
  doc["axis_id"] = rec.id;
  doc["dataset_id"] = rec.dataset_id;
  doc["created_at"] = rec.created_at;
  return doc;
}

void Session::persist_axis(const AxisRecord& rec) const {
  if (config_.data_dir.empty()) return;
  write_atomic(config_.data_dir / "axes" / (rec.id + ".json"), axis_document(rec).dump(2));
}

Json Session::checkpoint_document(const Checkpoint& cp) const {
  return {{"schema_version", kSchemaVersion},
          {"checkpoint_id", cp.id},
          {"dataset_id", cp.dataset_id},
          {"axis_id", cp.axis_id},
          {"axis", to_json(cp.axis)},
          {"lasso_regions", {to_json(cp.regions[0]), to_json(cp.regions[1])}},
          {"target_ids", cp.target_ids},
          {"control_ids", cp.control_ids},
          {"embedding_ref", cp.embedding_ref},
          {"pin_positions", {point_json(cp.pins[0]), point_json(cp.pins[1])}},
          {"projections", to_json(cp.projections)},
          {"created_at", cp.created_at}};
}

void Session::persist_checkpoint(const Checkpoint& cp) const {
  if (config_.data_dir.empty()) return;
  write_atomic(config_.data_dir / "checkpoints" / (cp.id + ".json"), checkpoint_document(cp).dump(2));
}

void Session::load() {
  const fs::path root = config_.data_dir;
  fs::create_directories(root);
  if (fs::exists(root / "session.json")) {
    const Json doc = read_json(root / "session.json");
    check_schema(doc, root / "session.json");
    const auto& c = doc.at("counters");
    dataset_counter_ = c.value("dataset", std::uint64_t{0});
    axis_counter_ = c.value("axis", std::uint64_t{0});
    checkpoint_counter_ = c.value("checkpoint", std::uint64_t{0});
    const auto& slots = doc.at("slots");
    slots_.assign(std::max(config_.axis_slots, slots.size()), std::nullopt);
    for (std::size_t s = 0; s < slots.size(); ++s) {
      if (!slots[s].is_null()) slots_[s] = slots[s].get<std::string>();
    }
  }
  if (fs::exists(root / "datasets")) {
    for (const auto& dir : fs::directory_iterator(root / "datasets")) {
      if (!dir.is_directory() || !fs::exists(dir.path() / "manifest.json")) continue;
      const Json manifest = read_json(dir.path() / "manifest.json");
      check_schema(manifest, dir.path() / "manifest.json");
      const std::string id = manifest.at("dataset_id").get<std::string>();
      DatasetEntry e{nullptr, WeightVector::uniform(1), options_from_json(manifest.at("options")), {}};
      const Dataset raw = load_csv(read_file(dir.path() / manifest.value("csv", std::string("data.csv"))), e.options);
      e.data = std::make_shared<const Dataset>(
          normalize(raw, normalization_from_string(manifest.at("normalization").get<std::string>())));
      e.weights = WeightVector::uniform(e.data->dims());
      if (fs::exists(dir.path() / "weights.json")) {
        const Json w = read_json(dir.path() / "weights.json");
        check_schema(w, dir.path() / "weights.json");
        e.weights = weights_from_json(w.at("weights"));
      }
      datasets_.emplace(id, std::move(e));
    }
  }
  if (fs::exists(root / "axes")) {
    for (const auto& f : fs::directory_iterator(root / "axes")) {
      if (f.path().extension() != ".json") continue;
      const Json doc = read_json(f.path());
      check_schema(doc, f.path());
      AxisRecord rec{doc.at("axis_id").get<std::string>(), doc.at("dataset_id").get<std::string>(),
                     axis_from_json(doc), doc.at("created_at").get<std::string>()};
      axes_.emplace(rec.id, std::move(rec));
    }
  }
  if (fs::exists(root / "checkpoints")) {
    for (const auto& f : fs::directory_iterator(root / "checkpoints")) {
      if (f.path().extension() != ".json") continue;
      const Json doc = read_json(f.path());
      check_schema(doc, f.path());
      Checkpoint cp;
      cp.id = doc.at("checkpoint_id").get<std::string>();
      cp.dataset_id = doc.at("dataset_id").get<std::string>();
      cp.axis_id = doc.at("axis_id").get<std::string>();
      cp.axis = axis_from_json(doc.at("axis"));
      cp.regions = {polygon_from_json(doc.at("lasso_regions").at(0)), polygon_from_json(doc.at("lasso_regions").at(1))};
      cp.target_ids = doc.at("target_ids").get<IdList>();
      cp.control_ids = doc.at("control_ids").get<IdList>();
      cp.embedding_ref = doc.at("embedding_ref").get<std::string>();
      cp.pins = {point_from_json(doc.at("pin_positions").at(0)), point_from_json(doc.at("pin_positions").at(1))};
      cp.projections = vector_from_json(doc.at("projections"));
      cp.created_at = doc.at("created_at").get<std::string>();
      checkpoints_.emplace(cp.id, std::move(cp));
    }
  }
}

// -- lookups ------------------------------------------------------------------

const Session::DatasetEntry& Session::entry(const std::string& id) const {
  auto it = datasets_.find(id);
  if (it == datasets_.end()) throw Error(ErrorCode::UnknownDataset, "unknown dataset '" + id + "'");
  return it->second;
}

Session::DatasetEntry& Session::entry(const std::string& id) {
  auto it = datasets_.find(id);
  if (it == datasets_.end()) throw Error(ErrorCode::UnknownDataset, "unknown dataset '" + id + "'");
  return it->second;
}

const AxisRecord& Session::axis_record(const std::string& id) const {
  auto it = axes_.find(id);
  if (it == axes_.end()) throw Error(ErrorCode::UnknownAxis, "unknown axis '" + id + "'");
  return it->second;
}

namespace {

DatasetInfo make_info(const std::string& id, const Dataset& d) {
  DatasetInfo info{id, d.size(), d.dims(), d.attributes(), d.normalization(), {}};
  for (const auto& s : d.slices()) info.periods.push_back(s.period);
  return info;
}

}  // namespace

// -- datasets -----------------------------------------------------------------

DatasetInfo Session::add_dataset(std::string csv, const CsvOptions& options, Normalization normalization) {
  auto data = std::make_shared<const Dataset>(normalize(load_csv(csv, options), normalization));
  std::unique_lock lock(mu_);
  const std::string id = next_id("d", dataset_counter_);
  DatasetEntry e{data, WeightVector::uniform(data->dims()), options, {}};
  persist_dataset_manifest(id, csv, e);
  datasets_.emplace(id, std::move(e));
  persist_weights(id);
  persist_session();
  return make_info(id, *data);
}

void Session::remove_dataset(const std::string& id) {
  std::unique_lock lock(mu_);
  entry(id);
  if (active_job_.count(id)) throw Error(ErrorCode::JobActive, "an embedding job is running for '" + id + "'");
  if (!config_.data_dir.empty()) fs::remove_all(config_.data_dir / "datasets" / id);
  datasets_.erase(id);
  std::erase_if(cache_, [&](const auto& kv) { return kv.first.dataset_id == id; });
  latest_embedding_.erase(id);
}

std::vector<DatasetInfo> Session::datasets() const {
  std::shared_lock lock(mu_);
  std::vector<DatasetInfo> out;
  for (const auto& [id, e] : datasets_) out.push_back(make_info(id, *e.data));
  return out;
}

DatasetInfo Session::dataset_info(const std::string& id) const {
  std::shared_lock lock(mu_);
  return make_info(id, *entry(id).data);
}

std::shared_ptr<const Dataset> Session::dataset(const std::string& id) const {
  std::shared_lock lock(mu_);
  return entry(id).data;
}

WeightVector Session::weights(const std::string& id) const {
  std::shared_lock lock(mu_);
  return entry(id).weights;
}

WeightVector Session::adjust_weights(const std::string& id, Index attr, double target) {
  std::unique_lock lock(mu_);
  auto& e = entry(id);
  WeightVector next = adjust_weight(e.weights, attr, target);
  if (next == e.weights) return next;
  e.weights = next;
  persist_weights(id);
  std::erase_if(cache_, [&](const auto& kv) { return kv.first.dataset_id == id; });
  latest_embedding_.erase(id);
  return next;
}

// -- embeddings -----------------------------------------------------------------

std::string Session::submit_embedding(const std::string& id, const EmbeddingConfig& cfg) {
  cfg.validate();
  std::unique_lock lock(mu_);
  const auto& e = entry(id);
  if (auto it = active_job_.find(id); it != active_job_.end()) {
    throw Error(ErrorCode::JobActive, "job " + it->second + " is still running for '" + id + "'");
  }
  const CacheKey key{id, weight_hash(e.weights), cfg.hash()};
  const std::string job_id = next_id("j", job_counter_);
  Job job;
  job.status.id = job_id;
  job.status.dataset_id = id;
  job.weight_hash = key.weight_hash;
  job.config = cfg;
  if (auto hit = cache_.find(key); hit != cache_.end()) {
    job.status.state = JobState::done;
    job.status.cached = true;
    job.status.iteration = cfg.iterations;
    if (!hit->second->kl_trace.empty()) job.status.kl = hit->second->kl_trace.back().kl;
    latest_embedding_[id] = key;
    jobs_.emplace(job_id, std::move(job));
    job_cv_.notify_all();
    return job_id;
  }
  jobs_.emplace(job_id, std::move(job));
  active_job_[id] = job_id;
  queue_.push_back(job_id);
  job_cv_.notify_all();
  return job_id;
}

void Session::worker_loop() {
  for (;;) {
    std::string job_id;
    {
      std::unique_lock lock(mu_);
      job_cv_.wait(lock, [&] { return stopping_ || !queue_.empty(); });
      if (stopping_) return;
      job_id = queue_.front();
      queue_.pop_front();
    }
    run_job(job_id);
  }
}

void Session::run_job(const std::string& job_id) {
  Matrix input;
  EmbeddingConfig cfg;
  std::string dataset_id;
  std::uint64_t submitted_weights = 0;
  {
    std::unique_lock lock(mu_);
    auto& job = jobs_.at(job_id);
    dataset_id = job.status.dataset_id;
    cfg = job.config;
    submitted_weights = job.weight_hash;
    auto it = datasets_.find(dataset_id);
    if (it == datasets_.end()) {
      job.status.state = JobState::failed;
      job.status.error = "dataset removed";
      active_job_.erase(dataset_id);
      job_cv_.notify_all();
      return;
    }
    input = weighted_matrix(*it->second.data, it->second.weights);
    submitted_weights = weight_hash(it->second.weights);
    job.status.state = JobState::running;
    job_cv_.notify_all();
  }

  std::shared_ptr<const Embedding> result;
  std::string failure;
  try {
    result = std::make_shared<const Embedding>(embed(input, cfg, [&](int iteration, double kl) {
      std::unique_lock lock(mu_);
      auto& status = jobs_.at(job_id).status;
      status.iteration = iteration;
      status.kl = kl;
    }));
  } catch (const std::exception& ex) {
    failure = ex.what();
  }

  std::unique_lock lock(mu_);
  auto& job = jobs_.at(job_id);
  active_job_.erase(dataset_id);
  if (!result) {
    job.status.state = JobState::failed;
    job.status.error = failure;
  } else {
    job.status.state = JobState::done;
    job.status.iteration = cfg.iterations;
    if (!result->kl_trace.empty()) job.status.kl = result->kl_trace.back().kl;
    ++embeddings_computed_;
    auto it = datasets_.find(dataset_id);
    // Weights may have moved while the job ran; a stale result is not cached.
    if (it != datasets_.end() && weight_hash(it->second.weights) == submitted_weights) {
      const CacheKey key{dataset_id, submitted_weights, cfg.hash()};
      cache_[key] = result;
      latest_embedding_[dataset_id] = key;
    }
  }
  job_cv_.notify_all();
}

JobStatus Session::job(const std::string& job_id) const {
  std::shared_lock lock(mu_);
  auto it = jobs_.find(job_id);
  if (it == jobs_.end()) throw Error(ErrorCode::UnknownJob, "unknown job '" + job_id + "'");
  return it->second.status;
}

JobStatus Session::wait_for_job(const std::string& job_id) const {
  std::shared_lock lock(mu_);
  auto it = jobs_.find(job_id);
  if (it == jobs_.end()) throw Error(ErrorCode::UnknownJob, "unknown job '" + job_id + "'");
  job_cv_.wait(lock, [&] {
    const auto s = it->second.status.state;
    return s == JobState::done || s == JobState::failed;
  });
  return it->second.status;
}

std::shared_ptr<const Embedding> Session::current_embedding(const std::string& id) const {
  std::shared_lock lock(mu_);
  entry(id);
  auto it = latest_embedding_.find(id);
  if (it == latest_embedding_.end()) return nullptr;
  auto hit = cache_.find(it->second);
  return hit == cache_.end() ? nullptr : hit->second;
}

std::size_t Session::embeddings_computed() const {
  std::shared_lock lock(mu_);
  return embeddings_computed_;
}

IdList Session::lasso(const std::string& id, const Polygon& poly) const {
  validate_polygon(poly);
  auto emb = current_embedding(id);
  if (!emb) throw Error(ErrorCode::NoEmbedding, "dataset '" + id + "' has no embedding for its current weights");
  return lasso_select(emb->coords, dataset(id)->ids(), poly);
}

// -- axes -----------------------------------------------------------------------

AxisRecord Session::create_axis(const std::string& dataset_id, const IdList& target, const IdList& control,
                                AxisKind kind, std::string label) {
  std::unique_lock lock(mu_);
  const auto& e = entry(dataset_id);
  AxisRecord rec{next_id("a", axis_counter_), dataset_id,
                 build_axis(*e.data, target, control, e.weights, kind, std::move(label)), utc_timestamp()};
  persist_axis(rec);
  persist_session();
  return axes_.emplace(rec.id, rec).first->second;
}

AxisRecord Session::create_manual_axis(const std::string& dataset_id, const Vector& v, std::string label) {
  std::unique_lock lock(mu_);
  const auto& e = entry(dataset_id);
  if (v.size() != e.data->dims()) throw Error(ErrorCode::DimensionMismatch, "axis does not match dataset");
  AxisRecord rec{next_id("a", axis_counter_), dataset_id, manual_axis(v, e.weights, std::move(label)),
                 utc_timestamp()};
  persist_axis(rec);
  persist_session();
  return axes_.emplace(rec.id, rec).first->second;
}

AxisRecord Session::edit_axis(const std::string& axis_id, Index attr, double value) {
  std::unique_lock lock(mu_);
  auto it = axes_.find(axis_id);
  if (it == axes_.end()) throw Error(ErrorCode::UnknownAxis, "unknown axis '" + axis_id + "'");
  AxisRecord next = it->second;
  next.axis = edit_axis_component(it->second.axis, attr, value);
  persist_axis(next);
  it->second = next;
  return next;
}

AxisRecord Session::axis(const std::string& axis_id) const {
  std::shared_lock lock(mu_);
  return axis_record(axis_id);
}

std::vector<AxisRecord> Session::axes() const {
  std::shared_lock lock(mu_);
  std::vector<AxisRecord> out;
  for (const auto& [id, rec] : axes_) out.push_back(rec);
  return out;
}

std::size_t Session::save_axis_slot(const std::string& axis_id, std::optional<std::size_t> slot, bool overwrite) {
  std::unique_lock lock(mu_);
  axis_record(axis_id);
  std::size_t target = 0;
  if (slot) {
    if (*slot >= slots_.size()) throw Error(ErrorCode::IndexOutOfRange, "slot " + std::to_string(*slot));
    if (slots_[*slot] && *slots_[*slot] != axis_id && !overwrite) {
      throw Error(ErrorCode::SlotsFull, "slot " + std::to_string(*slot) + " is taken");
    }
    target = *slot;
  } else {
    auto same = std::find(slots_.begin(), slots_.end(), std::optional<std::string>(axis_id));
    if (same != slots_.end()) return static_cast<std::size_t>(same - slots_.begin());
    auto free = std::find(slots_.begin(), slots_.end(), std::nullopt);
    if (free == slots_.end()) throw Error(ErrorCode::SlotsFull, "all axis slots are taken");
    target = static_cast<std::size_t>(free - slots_.begin());
  }
  slots_[target] = axis_id;
  persist_session();
  return target;
}

std::vector<std::optional<std::string>> Session::slots() const {
  std::shared_lock lock(mu_);
  return slots_;
}

Matrix Session::composite(const std::string& axis_a, const std::string& axis_b) const {
  std::shared_lock lock(mu_);
  const auto& a = axis_record(axis_a);
  const auto& b = axis_record(axis_b);
  const auto filled = std::count_if(slots_.begin(), slots_.end(), [](const auto& s) { return s.has_value(); });
  auto saved = [&](const std::string& id) {
    return std::find(slots_.begin(), slots_.end(), std::optional<std::string>(id)) != slots_.end();
  };
  if (filled < 2 || !saved(axis_a) || !saved(axis_b)) {
    throw Error(ErrorCode::CompositeLocked, "save both axes (and at least two in total) first");
  }
  if (a.dataset_id != b.dataset_id) throw Error(ErrorCode::DimensionMismatch, "axes belong to different datasets");
  auto it = datasets_.find(a.dataset_id);
  if (it == datasets_.end()) throw Error(ErrorCode::DatasetGone, "dataset '" + a.dataset_id + "' was removed");
  return composite_space(a.axis, b.axis, *it->second.data);
}

// -- ranking rows -----------------------------------------------------------------

IdList Session::set_filters(const std::string& id, std::vector<BrushFilter> filters, ScaleKind kind) {
  std::unique_lock lock(mu_);
  auto& e = entry(id);
  const IdList hits = apply_filters(filters, *e.data, kind);
  e.filters = {kind, std::move(filters)};
  const std::unordered_set<std::string> keep(hits.begin(), hits.end());
  IdList ranked;
  for (const auto& rid : weighted_ranking(*e.data, e.weights).order) {
    if (keep.count(rid)) ranked.push_back(rid);
  }
  return ranked;
}

Session::FilterState Session::filters(const std::string& id) const {
  std::shared_lock lock(mu_);
  return entry(id).filters;
}

bool Session::switch_scale(const std::string& id, ScaleKind kind) {
  std::unique_lock lock(mu_);
  auto& e = entry(id);
  if (e.filters.kind == kind) return false;
  const bool dropped = !e.filters.filters.empty();
  e.filters = {kind, {}};
  return dropped;
}

// -- checkpoints ------------------------------------------------------------------

Checkpoint Session::save_checkpoint(const std::string& axis_id, const std::array<Polygon, 2>& regions,
                                    std::optional<std::array<IdList, 2>> ids) {
  for (const auto& poly : regions) validate_polygon(poly);
  std::unique_lock lock(mu_);
  const auto& rec = axis_record(axis_id);
  auto ds = datasets_.find(rec.dataset_id);
  if (ds == datasets_.end()) throw Error(ErrorCode::DatasetGone, "dataset '" + rec.dataset_id + "' was removed");
  auto latest = latest_embedding_.find(rec.dataset_id);
  if (latest == latest_embedding_.end() || !cache_.count(latest->second)) {
    throw Error(ErrorCode::NoEmbedding, "dataset '" + rec.dataset_id + "' has no current embedding");
  }

  Checkpoint cp;
  cp.id = next_id("c", checkpoint_counter_);
  cp.dataset_id = rec.dataset_id;
  cp.axis_id = axis_id;
  cp.axis = rec.axis;
  cp.regions = regions;
  cp.target_ids = ids ? (*ids)[0] : rec.axis.target_ids;
  cp.control_ids = ids ? (*ids)[1] : rec.axis.control_ids;
  cp.embedding_ref = rec.dataset_id + ":" + to_hex(latest->second.config_hash);
  cp.pins = {vertex_centroid(regions[0]), vertex_centroid(regions[1])};
  cp.projections = project_all(ds->second.data->points(), rec.axis.v);
  cp.created_at = utc_timestamp();
  persist_checkpoint(cp);
  persist_session();
  return checkpoints_.emplace(cp.id, cp).first->second;
}

std::vector<Checkpoint> Session::checkpoints() const {
  std::shared_lock lock(mu_);
  std::vector<Checkpoint> out;
  for (const auto& [id, cp] : checkpoints_) out.push_back(cp);
  return out;
}

RestoredCheckpoint Session::restore_checkpoint(const std::string& id) const {
  std::shared_lock lock(mu_);
  auto it = checkpoints_.find(id);
  if (it == checkpoints_.end()) throw Error(ErrorCode::UnknownCheckpoint, "unknown checkpoint '" + id + "'");
  auto ds = datasets_.find(it->second.dataset_id);
  if (ds == datasets_.end()) {
    throw Error(ErrorCode::DatasetGone, "dataset '" + it->second.dataset_id + "' was removed");
  }
  return {it->second, project_all(ds->second.data->points(), it->second.axis.v)};
}

}  // namespace semaxis
