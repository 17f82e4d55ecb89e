#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "haptibench/fitts_analysis.hpp"
#include "haptibench/friction_metrics.hpp"
#include "haptibench/latency_metrics.hpp"
#include "haptibench/swipe_pipeline.hpp"
#include "haptibench/synth_bench.hpp"

namespace haptibench {

/// Which swipes share one trend slope.
enum class TrendScope { dataset, participant, none };
std::string_view to_string(TrendScope s);
TrendScope trend_scope_from_string(std::string_view s);

struct AnalysisConfig {
  double contact_threshold = kContactThresholdN;
  SegmentationOptions segmentation;
  QualityOptions quality;  // force_window is taken from each recording's meta
  OnsetOptions onset;
  double trend_pivot = 50.0;
  TrendScope trend_scope = TrendScope::dataset;
  double max_rejected_fraction = 0.5;  // per participant and condition
  std::optional<Polarity> ridge_polarity;  // inferred from the levels when absent
  int jobs = 1;
  std::optional<std::filesystem::path> dump_swipes_dir;
};

/// Applies `key=value` overrides (dotted names as in `analysis_config_json`).
/// Throws InvalidConfig on unknown keys or bad values.
void apply_override(AnalysisConfig& config, const std::string& key, const std::string& value);
void apply_config_json(AnalysisConfig& config, const nlohmann::json& j);
nlohmann::ordered_json analysis_config_json(const AnalysisConfig& config);

/// Random access to the recordings of one dataset. `load` may be called
/// concurrently and more than once per index.
class RecordingSource {
 public:
  virtual ~RecordingSource() = default;
  virtual std::size_t size() const = 0;
  virtual Recording load(std::size_t i) const = 0;
  virtual std::string name(std::size_t i) const = 0;
};

/// All `*.csv` files with a sidecar in a directory, in name order.
class DirectorySource : public RecordingSource {
 public:
  explicit DirectorySource(const std::filesystem::path& dir);
  std::size_t size() const override { return files_.size(); }
  Recording load(std::size_t i) const override;
  std::string name(std::size_t i) const override;

 private:
  std::vector<std::filesystem::path> files_;
};

/// Recordings generated on demand from a simulated session.
class SessionSource : public RecordingSource {
 public:
  explicit SessionSource(const PhysicalSession& session) : session_(session) {}
  std::size_t size() const override { return session_.jobs.size(); }
  Recording load(std::size_t i) const override;
  std::string name(std::size_t i) const override { return session_.jobs[i].stem; }

 private:
  const PhysicalSession& session_;
};

struct QualityCounts {
  std::size_t recordings = 0;
  std::size_t swipes = 0;
  std::size_t accepted = 0;
  std::map<std::string, std::size_t> rejected;  // by reason
  std::vector<std::string> discarded;           // "participant/condition"
  bool operator==(const QualityCounts&) const = default;
};

struct PhysicalMetrics {
  std::string tablet_id;
  Actuation high_condition = Actuation::constant_max;
  FrictionLevelStats high;
  FrictionLevelStats low;
  FrictionRangeStats range;
  std::optional<LatencyEstimate> latency;
  std::map<std::string, TrendModel> trend;  // "" for the dataset-wide slope
  QualityCounts quality;
  std::vector<std::string> warnings;
};

/// Two passes over the source: slope estimation on swipes passing a
/// preliminary gate, then correction, final gate and metrics. Needs `off`
/// and `constant_max` recordings of one tablet; ridge recordings are
/// optional and feed the latency estimate.
PhysicalMetrics analyze_physical(const RecordingSource& source, const AnalysisConfig& config);

struct ConditionMetrics {
  ConditionKey key;
  PointingMetrics metrics;
};

/// Pointing metrics for every condition present in the trials.
std::vector<ConditionMetrics> analyze_pointing(std::span<const PointingTrial> trials);

/// Content of a `.metrics.json` file.
struct TabletMetrics {
  std::string tablet_id;
  std::optional<PhysicalMetrics> physical;
  std::optional<PointingMetrics> pointing_no_haptic;
  std::optional<PointingMetrics> pointing_haptic;
};

/// Loads every `*.trials.jsonl` in a directory (or a single file).
std::vector<PointingTrial> load_pointing_trials(const std::filesystem::path& path);

/// Physical analysis of a dataset directory plus, when the directory holds
/// pointing logs for the same tablet, its pointing metrics.
TabletMetrics analyze_dataset(const std::filesystem::path& dir, const AnalysisConfig& config);

nlohmann::ordered_json to_json(const PhysicalMetrics& m);
PhysicalMetrics physical_metrics_from_json(const nlohmann::json& j);
nlohmann::ordered_json to_json(const PointingMetrics& m);
PointingMetrics pointing_metrics_from_json(const nlohmann::json& j);
nlohmann::ordered_json to_json(const TabletMetrics& m);
TabletMetrics tablet_metrics_from_json(const nlohmann::json& j);

/// Deterministic text of a metrics file.
std::string serialize_metrics(const TabletMetrics& m);
TabletMetrics parse_metrics(std::string_view text);

inline constexpr const char* kSchemaVersion = "1.0";

}  // namespace haptibench
