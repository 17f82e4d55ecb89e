#include "haptibench/friction_metrics.hpp"

#include "haptibench/error.hpp"
#include "haptibench/signal.hpp"

namespace haptibench {

SwipeSummary summarize_swipe(const Swipe& swipe) {
  return {signal::mean(swipe.mu), signal::sample_std(swipe.mu)};
}

FrictionLevelStats friction_level_stats(std::span<const ParticipantSwipes> groups) {
  std::map<std::string, std::vector<SwipeSummary>> by_participant;
  for (const auto& g : groups) {
    auto& out = by_participant[g.participant_id];
    for (const auto& sw : g.swipes) out.push_back(summarize_swipe(sw));
  }
  return friction_level_stats(by_participant);
}

FrictionLevelStats friction_level_stats(const std::map<std::string, std::vector<SwipeSummary>>& groups) {
  FrictionLevelStats st;
  std::vector<double> participant_means;
  std::vector<double> swipe_stds;
  for (const auto& [pid, swipes] : groups) {
    if (swipes.empty()) continue;
    std::vector<double> swipe_means;
    swipe_means.reserve(swipes.size());
    for (const auto& sw : swipes) {
      swipe_means.push_back(sw.mean_mu);
      swipe_stds.push_back(sw.std_mu);
    }
    const double m = signal::mean(swipe_means);
    participant_means.push_back(m);
    st.per_participant_mean[pid] = m;
  }
  if (participant_means.empty()) {
    throw Error(ErrorKind::NoAcceptedSwipes, "no participant has an accepted swipe");
  }
  st.n_swipes = swipe_stds.size();
  st.n_participants = participant_means.size();
  st.mean_mu = signal::mean(participant_means);
  st.inter_participant_std_sigma = signal::sample_std(participant_means);
  st.intra_trial_std_delta = signal::mean(swipe_stds);
  st.intra_trial_std_spread = signal::sample_std(swipe_stds);
  return st;
}

FrictionRangeStats friction_range(const FrictionLevelStats& high, const FrictionLevelStats& low,
                                  const RepetitionTable& high_reps, const RepetitionTable& low_reps) {
  if (high.per_participant_mean.size() != low.per_participant_mean.size()) {
    throw Error(ErrorKind::ParticipantSetMismatch, "levels cover different participants");
  }
  std::vector<double> per_participant_delta;
  for (const auto& [pid, mh] : high.per_participant_mean) {
    auto it = low.per_participant_mean.find(pid);
    if (it == low.per_participant_mean.end()) {
      throw Error(ErrorKind::ParticipantSetMismatch, "participant '" + pid + "' missing from low level");
    }
    per_participant_delta.push_back(mh - it->second);
  }

  FrictionRangeStats r;
  r.delta_mu = high.mean_mu - low.mean_mu;
  if (low.mean_mu != 0.0) {
    r.relative_range = high.mean_mu / low.mean_mu;
  } else {
    r.division_by_zero = true;
  }
  if (high.mean_mu != 0.0) {
    r.friction_contrast = 1.0 - low.mean_mu / high.mean_mu;
  } else {
    r.division_by_zero = true;
  }
  r.inter_participant_std = signal::sample_std(per_participant_delta);
  for (const auto& [key, value] : high_reps) {
    auto it = low_reps.find(key);
    if (it != low_reps.end()) r.per_trial_samples.push_back(value - it->second);
  }
  return r;
}

}  // namespace haptibench
