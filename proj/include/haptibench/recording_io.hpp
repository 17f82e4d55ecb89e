#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace haptibench {

/// Contact threshold for "finger on screen", newtons.
inline constexpr double kContactThresholdN = 0.1;

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double width() const { return hi - lo; }
  bool contains(double v) const { return v >= lo && v <= hi; }
  bool operator==(const Interval&) const = default;
};

enum class Actuation { off, constant_max, ridge };
enum class Direction { ltr, rtl };

std::string_view to_string(Actuation a);
std::string_view to_string(Direction d);
Actuation actuation_from_string(std::string_view s);
Direction direction_from_string(std::string_view s);

/// One sample of the force/position stream. Forces in newtons, x in mm.
struct ForceSample {
  double t = 0.0;
  double f_n = 0.0;
  double f_t = 0.0;
  double x = 0.0;
  bool operator==(const ForceSample&) const = default;
};

/// Trial metadata stored in the `.meta.json` sidecar next to each recording.
struct RecordingMeta {
  std::string participant_id;
  std::string tablet_id;
  Actuation actuation = Actuation::off;
  std::optional<Interval> ridge_span;  // present iff actuation == ridge
  double nominal_speed = 100.0;        // mm/s
  Interval nominal_force_window{0.5, 1.5};
  double screen_length = 100.0;  // mm
  double sample_rate = 10000.0;  // Hz
  int session_index = 0;
  int trial_index = 0;
  bool operator==(const RecordingMeta&) const = default;
};

/// Throws MalformedMeta when the metadata invariants do not hold.
void check_meta(const RecordingMeta& meta);

struct Recording {
  RecordingMeta meta;
  std::vector<ForceSample> samples;

  double duration() const {
    return samples.empty() ? 0.0 : samples.back().t - samples.front().t;
  }
  bool operator==(const Recording&) const = default;
};

/// Parses the `t,fn,ft,x` CSV body. Row numbers in errors are 1-based data
/// rows (the header is not counted).
Recording parse_recording(std::string_view csv, const RecordingMeta& meta);

/// CSV with header `t,fn,ft,x`; numbers use the shortest representation that
/// parses back to the identical double.
std::string serialize_recording(const Recording& recording);

void to_json(nlohmann::json& j, const RecordingMeta& meta);
void from_json(const nlohmann::json& j, RecordingMeta& meta);
RecordingMeta parse_meta(std::string_view json_text);
std::string serialize_meta(const RecordingMeta& meta);

/// Loads `<stem>.csv` with its `<stem>.meta.json` sidecar.
Recording load_recording(const std::filesystem::path& csv_path);
/// Writes `<dir>/<stem>.csv` and `<dir>/<stem>.meta.json`.
void save_recording(const Recording& recording, const std::filesystem::path& dir,
                    const std::string& stem);

/// Sidecar path for a recording CSV.
std::filesystem::path meta_path_for(const std::filesystem::path& csv_path);

struct ValidationReport {
  std::size_t n_samples = 0;
  double out_of_window_fraction = 0.0;  // f_n outside nominal_force_window
  double below_contact_fraction = 0.0;  // f_n below the contact threshold
  double motion_duty_cycle = 0.0;       // fraction of samples in motion
  double x_out_of_range_fraction = 0.0;
  double duration = 0.0;
  double median_interval = 0.0;
  bool duration_ok = false;         // within [1 s, 60 s]
  bool sample_interval_ok = false;  // median interval within 10% of 1/sample_rate
  std::vector<std::string> warnings;
};

/// Diagnostics only; never rejects. `motion_speed_threshold` in mm/s.
ValidationReport validate_recording(const Recording& recording,
                                    double motion_speed_threshold = 10.0);

/// One drag trial of the pointing task, as logged one-per-line in
/// `.trials.jsonl`. Times are ms since session start, geometry in mm.
struct PointingTrial {
  std::string participant_id;
  std::string tablet_id;
  bool haptic = false;
  double distance_d = 0.0;
  double width_w = 0.0;
  double t_touch = 0.0;
  double t_release = 0.0;
  double release_x = 0.0;
  double target_center = 0.0;
  bool success = false;
  int trial_index = 0;
  Direction direction = Direction::ltr;

  double movement_time() const { return t_release - t_touch; }
  bool operator==(const PointingTrial&) const = default;
};

/// |release_x - target_center| <= width_w / 2
bool release_inside_target(const PointingTrial& trial);

void to_json(nlohmann::ordered_json& j, const PointingTrial& trial);
PointingTrial pointing_trial_from_json(const nlohmann::json& j);

std::vector<PointingTrial> parse_pointing_log(std::string_view jsonl);
std::string serialize_pointing_log(std::span<const PointingTrial> trials);

std::string read_text_file(const std::filesystem::path& path);
/// Writes through a temporary file in the same directory, then renames.
void write_text_file_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace haptibench
