#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "haptibench/swipe_pipeline.hpp"

namespace haptibench {

/// Accepted, trend-corrected swipes of one participant for one condition.
struct ParticipantSwipes {
  std::string participant_id;
  std::vector<Swipe> swipes;
};

/// One constant friction level (highest or lowest) across participants.
struct FrictionLevelStats {
  double mean_mu = 0.0;                     // grand mean of per-participant means
  double intra_trial_std_delta = 0.0;       // mean within-swipe std of mu
  double inter_participant_std_sigma = 0.0; // sample std of per-participant means
  double intra_trial_std_spread = 0.0;      // sample std of the within-swipe stds
  std::size_t n_swipes = 0;
  std::size_t n_participants = 0;
  std::map<std::string, double> per_participant_mean;
  bool operator==(const FrictionLevelStats&) const = default;
};

FrictionLevelStats friction_level_stats(std::span<const ParticipantSwipes> groups);

/// What friction_level_stats keeps of a swipe.
struct SwipeSummary {
  double mean_mu = 0.0;
  double std_mu = 0.0;
  bool operator==(const SwipeSummary&) const = default;
};
SwipeSummary summarize_swipe(const Swipe& swipe);

/// Same statistics from per-swipe summaries keyed by participant.
FrictionLevelStats friction_level_stats(const std::map<std::string, std::vector<SwipeSummary>>& groups);

/// A repetition is one recording of one participant. The per-repetition
/// friction value is the mean of its accepted swipe means.
struct RepetitionKey {
  std::string participant_id;
  int session_index = 0;
  int trial_index = 0;
  auto operator<=>(const RepetitionKey&) const = default;
};
using RepetitionTable = std::map<RepetitionKey, double>;

struct FrictionRangeStats {
  double delta_mu = 0.0;
  std::optional<double> relative_range;     // mu_H / mu_L, absent when mu_L == 0
  std::optional<double> friction_contrast;  // 1 - mu_L / mu_H, absent when mu_H == 0
  double inter_participant_std = 0.0;       // sample std of per-participant delta mu
  std::vector<double> per_trial_samples;    // paired per-repetition delta mu
  bool division_by_zero = false;
  bool operator==(const FrictionRangeStats&) const = default;
};

/// Repetition k of the high condition is paired with repetition k of the
/// low condition for the same participant; unpaired repetitions are skipped.
/// Throws ParticipantSetMismatch when the two levels cover different
/// participants.
FrictionRangeStats friction_range(const FrictionLevelStats& high, const FrictionLevelStats& low,
                                  const RepetitionTable& high_reps = {},
                                  const RepetitionTable& low_reps = {});

}  // namespace haptibench
