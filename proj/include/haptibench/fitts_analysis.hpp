#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "haptibench/recording_io.hpp"

namespace haptibench {

struct ConditionKey {
  std::string tablet_id;
  bool haptic = false;
  auto operator<=>(const ConditionKey&) const = default;
};

/// Shannon formulation log2(D / W + 1), in bits. Throws NonPositiveGeometry.
double index_of_difficulty(double d, double w);

struct FittsFit {
  double intercept_a = 0.0;  // ms
  double slope_b = 0.0;      // ms/bit
  double r_squared = 0.0;
  std::size_t n_points = 0;
  bool operator==(const FittsFit&) const = default;
};

/// OLS of MT on ID over (ID, mean MT) points. Throws DegenerateDesign when
/// fewer than two distinct IDs are present.
FittsFit fitts_fit(std::span<const std::pair<double, double>> points);

/// Per participant, per ID: mean movement time (ms) over successful
/// repetitions. Failed trials only count toward the error rate.
struct MovementTimeTable {
  std::map<std::string, std::map<double, double>> mean_mt;
  std::size_t n_trials = 0;
  std::size_t n_errors = 0;
};

/// Filters `trials` to `key`. Throws EmptyCondition when nothing matches.
MovementTimeTable aggregate_movement_times(std::span<const PointingTrial> trials, const ConditionKey& key);

/// failures / total. Throws EmptyCondition on an empty set.
double error_rate(std::span<const PointingTrial> trials);

struct PointingMetrics {
  std::vector<double> per_participant_slopes;  // ms/bit, participant order
  double slope_mean = 0.0;
  double slope_std = 0.0;
  double mt_hardest_mean = 0.0;  // pooled successful trials at the max ID
  double mt_hardest_std = 0.0;
  std::size_t n_hardest = 0;
  double hardest_id = 0.0;
  std::vector<double> mt_hardest_samples;
  double error_rate = 0.0;
  std::size_t n_trials = 0;
  // regression on the across-participant mean MT per ID
  FittsFit condition_fit;
  double mean_participant_r_squared = 0.0;
};

PointingMetrics pointing_metrics(std::span<const PointingTrial> trials, const ConditionKey& key);

/// Distinct conditions present in a log, sorted.
std::vector<ConditionKey> conditions_in(std::span<const PointingTrial> trials);

}  // namespace haptibench
