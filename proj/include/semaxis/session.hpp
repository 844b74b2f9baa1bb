#pragma once

#include "semaxis/dataset.hpp"
#include "semaxis/embedding.hpp"
#include "semaxis/lasso.hpp"
#include "semaxis/ranking.hpp"
#include "semaxis/semantic_axis.hpp"
#include "semaxis/serialization.hpp"

#include <array>
#include <condition_variable>
#include <cstdint>
#include <deque>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <thread>
#include <vector>

namespace semaxis {

struct SessionConfig {
  std::filesystem::path data_dir;
  std::size_t axis_slots = 4;
  /// Width of the projection strip that bead anchors are mapped onto.
  double axis_width = 1000.0;
};

struct DatasetInfo {
  std::string id;
  Index n = 0;
  Index d = 0;
  std::vector<std::string> attributes;
  Normalization normalization = Normalization::raw;
  std::vector<std::string> periods;
};

struct AxisRecord {
  std::string id;
  std::string dataset_id;
  SemanticAxis axis;
  std::string created_at;
};

struct Checkpoint {
  std::string id;
  std::string dataset_id;
  std::string axis_id;
  SemanticAxis axis;
  std::array<Polygon, 2> regions;  // target region, control region
  IdList target_ids;
  IdList control_ids;
  std::string embedding_ref;  // "<dataset id>:<config hash>"
  std::array<Point2, 2> pins;
  Vector projections;  // of every point at save time
  std::string created_at;
};

struct RestoredCheckpoint {
  Checkpoint checkpoint;
  Vector projections;  // recomputed from the stored axis
};

enum class JobState { queued, running, done, failed };
std::string_view to_string(JobState s);

struct JobStatus {
  std::string id;
  std::string dataset_id;
  JobState state = JobState::queued;
  int iteration = 0;
  double kl = 0.0;
  bool cached = false;
  std::string error;
};

/// Everything one analyst session owns. Mutations are serialized and written
/// to disk before they return; reads run concurrently.
class Session {
 public:
  explicit Session(SessionConfig config);
  ~Session();
  Session(const Session&) = delete;
  Session& operator=(const Session&) = delete;

  const SessionConfig& config() const noexcept { return config_; }

  // -- datasets and weights
  DatasetInfo add_dataset(std::string csv, const CsvOptions& options, Normalization normalization);
  void remove_dataset(const std::string& id);
  std::vector<DatasetInfo> datasets() const;
  DatasetInfo dataset_info(const std::string& id) const;
  std::shared_ptr<const Dataset> dataset(const std::string& id) const;
  WeightVector weights(const std::string& id) const;
  WeightVector adjust_weights(const std::string& id, Index attr, double target);

  // -- embeddings
  /// Returns the job id. A cached result yields a job that is already done.
  std::string submit_embedding(const std::string& id, const EmbeddingConfig& cfg);
  JobStatus job(const std::string& job_id) const;
  JobStatus wait_for_job(const std::string& job_id) const;
  /// Most recent embedding computed under the dataset's current weights.
  std::shared_ptr<const Embedding> current_embedding(const std::string& id) const;
  /// Number of embeddings actually computed (cache hits excluded).
  std::size_t embeddings_computed() const;

  IdList lasso(const std::string& id, const Polygon& poly) const;

  // -- axes
  AxisRecord create_axis(const std::string& dataset_id, const IdList& target, const IdList& control, AxisKind kind,
                         std::string label);
  AxisRecord create_manual_axis(const std::string& dataset_id, const Vector& v, std::string label);
  AxisRecord edit_axis(const std::string& axis_id, Index attr, double value);
  AxisRecord axis(const std::string& axis_id) const;
  std::vector<AxisRecord> axes() const;

  /// Stores the axis in the requested slot, or the first free one.
  std::size_t save_axis_slot(const std::string& axis_id, std::optional<std::size_t> slot = std::nullopt,
                             bool overwrite = false);
  std::vector<std::optional<std::string>> slots() const;
  /// Both axes must sit in slots and at least two slots must be filled.
  Matrix composite(const std::string& axis_a, const std::string& axis_b) const;

  // -- ranking rows
  IdList set_filters(const std::string& id, std::vector<BrushFilter> filters, ScaleKind kind);
  /// Scale the active filters were brushed in; switching scales clears them.
  struct FilterState {
    ScaleKind kind = ScaleKind::local_value;
    std::vector<BrushFilter> filters;
  };
  FilterState filters(const std::string& id) const;
  /// Returns true when the active filters had to be dropped.
  bool switch_scale(const std::string& id, ScaleKind kind);

  // -- checkpoints
  Checkpoint save_checkpoint(const std::string& axis_id, const std::array<Polygon, 2>& regions,
                             std::optional<std::array<IdList, 2>> ids = std::nullopt);
  std::vector<Checkpoint> checkpoints() const;
  RestoredCheckpoint restore_checkpoint(const std::string& id) const;

  // -- documents as persisted
  Json axis_document(const AxisRecord& rec) const;
  Json checkpoint_document(const Checkpoint& cp) const;
  Json weights_document(const std::string& dataset_id) const;

 private:
  struct DatasetEntry {
    std::shared_ptr<const Dataset> data;
    WeightVector weights;
    CsvOptions options;
    FilterState filters;
  };
  struct Job {
    JobStatus status;
    std::uint64_t weight_hash = 0;
    EmbeddingConfig config;
  };
  struct CacheKey {
    std::string dataset_id;
    std::uint64_t weight_hash;
    std::uint64_t config_hash;
    auto operator<=>(const CacheKey&) const = default;
  };

  void load();
  void persist_session() const;
  void persist_dataset_manifest(const std::string& id, const std::string& csv, const DatasetEntry& e) const;
  void persist_weights(const std::string& id) const;
  void persist_axis(const AxisRecord& rec) const;
  void persist_checkpoint(const Checkpoint& cp) const;

  const DatasetEntry& entry(const std::string& id) const;
  DatasetEntry& entry(const std::string& id);
  const AxisRecord& axis_record(const std::string& id) const;
  std::string next_id(const char* prefix, std::uint64_t& counter);

  void worker_loop();
  void run_job(const std::string& job_id);

  SessionConfig config_;
  mutable std::shared_mutex mu_;
  std::map<std::string, DatasetEntry> datasets_;
  std::map<std::string, AxisRecord> axes_;
  std::map<std::string, Checkpoint> checkpoints_;
  std::vector<std::optional<std::string>> slots_;
  std::uint64_t dataset_counter_ = 0;
  std::uint64_t axis_counter_ = 0;
  std::uint64_t checkpoint_counter_ = 0;
  std::uint64_t job_counter_ = 0;

  std::map<CacheKey, std::shared_ptr<const Embedding>> cache_;
  std::map<std::string, CacheKey> latest_embedding_;
  std::map<std::string, Job> jobs_;
  std::map<std::string, std::string> active_job_;  // dataset id -> job id
  std::size_t embeddings_computed_ = 0;

  std::deque<std::string> queue_;
  mutable std::condition_variable_any job_cv_;
  bool stopping_ = false;
  std::thread worker_;
};

std::uint64_t weight_hash(const WeightVector& w);
std::string utc_timestamp();

}  // namespace semaxis
