#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "haptibench/recording_io.hpp"

namespace haptibench {

/// mu = |F_T| / F_N per sample. valid_mask marks finger contact
/// (f_n >= contact threshold); mu is NaN where the mask is false.
struct FrictionSeries {
  std::vector<double> t;
  std::vector<double> x;
  std::vector<double> mu;
  std::vector<double> f_n;
  std::vector<bool> valid_mask;
  double screen_length = 100.0;
  double sample_rate = 10000.0;

  std::size_t size() const { return t.size(); }
};

FrictionSeries compute_friction(const Recording& recording,
                                double contact_threshold = kContactThresholdN);

/// One constant-direction pass, canonicalized so x ascends: right-to-left
/// passes are mirrored (x -> screen_length - x), which keeps time ascending
/// for every swipe.
struct Swipe {
  Direction direction = Direction::ltr;
  std::vector<double> x;
  std::vector<double> mu;
  std::vector<double> t;
  std::vector<double> f_n;
  double mean_speed = 0.0;  // mm/s
  bool trend_corrected = false;
  double screen_length = 100.0;
  // Sample range [source_begin, source_end) of the trimmed swipe in the
  // source series.
  std::size_t source_begin = 0;
  std::size_t source_end = 0;
  // Boundaries of the whole monotone-motion segment before trimming.
  double segment_t_begin = 0.0;
  double segment_t_end = 0.0;

  std::size_t size() const { return x.size(); }
  /// Position on the physical screen axis.
  double raw_x(std::size_t i) const {
    return direction == Direction::ltr ? x[i] : screen_length - x[i];
  }
};

struct SegmentationOptions {
  double min_speed_fraction = 0.5;
  std::size_t velocity_window = 51;  // samples, zero-phase moving average
  double motion_threshold = 2.0;     // mm/s; slower samples count as stationary
  std::size_t min_samples = 10;
};

std::vector<Swipe> segment_swipes(const FrictionSeries& series, const SegmentationOptions& options);
std::vector<Swipe> segment_swipes(const FrictionSeries& series, double min_speed_fraction = 0.5);

/// Crosstalk trend epsilon = slope_a * (x - pivot), per mm.
struct TrendModel {
  double slope_a = 0.0;
  double pivot = 50.0;
  bool operator==(const TrendModel&) const = default;
};

/// Mean of per-swipe OLS slopes of mu against canonical x. Swipes with fewer
/// than `min_samples` valid samples are ignored; InsufficientData if none
/// remain.
TrendModel estimate_trend_slope(std::span<const Swipe> swipes, double pivot = 50.0,
                                std::size_t min_samples = 10);

/// OLS slope of mu against canonical x over finite samples; empty when fewer
/// than `min_samples` remain.
std::optional<double> swipe_trend_slope(const Swipe& swipe, std::size_t min_samples = 10);

/// mu' = mu - slope_a * (x - pivot). Throws AlreadyCorrected.
Swipe correct_trend(Swipe swipe, const TrendModel& model);

enum class RejectReason { stick_slip, too_short, force_out_of_window };
std::string_view to_string(RejectReason r);

struct QualityReport {
  double cv = 0.0;  // coefficient of variation of mu
  std::size_t slip_event_count = 0;
  bool accepted = true;
  std::optional<RejectReason> reject_reason;
};

struct QualityOptions {
  double cv_threshold = 0.35;
  double slip_drop_fraction = 0.4;
  double slip_window = 0.020;        // s, a slip is a drop faster than this
  double local_median_window = 0.1;  // s
  std::size_t max_slip_events = 3;
  std::size_t min_samples = 10;
  Interval force_window{0.5, 1.5};
  double max_out_of_window_fraction = 0.2;
};

QualityReport assess_swipe(const Swipe& swipe, const QualityOptions& options);
std::vector<QualityReport> quality_gate(std::span<const Swipe> swipes, const QualityOptions& options);
std::vector<QualityReport> quality_gate(std::span<const Swipe> swipes, double cv_threshold,
                                        double slip_drop_fraction);

/// Debug dump: `x,mu,t` rows.
std::string swipe_debug_csv(const Swipe& swipe);

}  // namespace haptibench
