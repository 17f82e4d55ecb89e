#include "haptibench/fitts_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "haptibench/error.hpp"
#include "haptibench/signal.hpp"
#include "haptibench/stats.hpp"

namespace haptibench {

double index_of_difficulty(double d, double w) {
  if (!(d > 0.0) || !(w > 0.0)) {
    throw Error(ErrorKind::NonPositiveGeometry, "distance and width must be positive");
  }
  return std::log2(d / w + 1.0);
}

FittsFit fitts_fit(std::span<const std::pair<double, double>> points) {
  std::vector<double> id, mt;
  std::set<double> distinct;
  for (const auto& [i, m] : points) {
    id.push_back(i);
    mt.push_back(m);
    distinct.insert(i);
  }
  if (distinct.size() < 2) throw Error(ErrorKind::DegenerateDesign, "need at least two distinct IDs");
  const auto reg = stats::linear_regression(id, mt);
  return {reg.intercept, reg.slope, reg.r_squared, reg.n};
}

namespace {

std::vector<PointingTrial> select(std::span<const PointingTrial> trials, const ConditionKey& key) {
  std::vector<PointingTrial> out;
  for (const auto& t : trials) {
    if (t.tablet_id == key.tablet_id && t.haptic == key.haptic) out.push_back(t);
  }
  if (out.empty()) {
    throw Error(ErrorKind::EmptyCondition, "no trials for tablet '" + key.tablet_id + "' haptic=" +
                                               (key.haptic ? "true" : "false"));
  }
  return out;
}

}  // namespace

MovementTimeTable aggregate_movement_times(std::span<const PointingTrial> trials, const ConditionKey& key) {
  const auto sel = select(trials, key);
  MovementTimeTable table;
  std::map<std::string, std::map<double, std::pair<double, std::size_t>>> acc;
  for (const auto& t : sel) {
    ++table.n_trials;
    if (!t.success) {
      ++table.n_errors;
      continue;
    }
    auto& cell = acc[t.participant_id][index_of_difficulty(t.distance_d, t.width_w)];
    cell.first += t.movement_time();
    ++cell.second;
  }
  for (const auto& [pid, by_id] : acc) {
    for (const auto& [id, cell] : by_id) {
      table.mean_mt[pid][id] = cell.first / static_cast<double>(cell.second);
    }
  }
  return table;
}

double error_rate(std::span<const PointingTrial> trials) {
  if (trials.empty()) throw Error(ErrorKind::EmptyCondition, "no trials");
  const auto failures = std::count_if(trials.begin(), trials.end(), [](const auto& t) { return !t.success; });
  return static_cast<double>(failures) / static_cast<double>(trials.size());
}

PointingMetrics pointing_metrics(std::span<const PointingTrial> trials, const ConditionKey& key) {
  const auto sel = select(trials, key);
  const auto table = aggregate_movement_times(sel, key);
  PointingMetrics pm;
  pm.n_trials = sel.size();
  pm.error_rate = error_rate(sel);

  std::vector<double> r2;
  std::map<double, std::vector<double>> by_id;
  for (const auto& [pid, means] : table.mean_mt) {
    std::vector<std::pair<double, double>> pts(means.begin(), means.end());
    const auto fit = fitts_fit(pts);
    pm.per_participant_slopes.push_back(fit.slope_b);
    r2.push_back(fit.r_squared);
    for (const auto& [id, mt] : means) by_id[id].push_back(mt);
  }
  if (pm.per_participant_slopes.empty()) {
    throw Error(ErrorKind::EmptyCondition, "no successful trials in condition");
  }
  pm.slope_mean = signal::mean(pm.per_participant_slopes);
  pm.slope_std = signal::sample_std(pm.per_participant_slopes);
  pm.mean_participant_r_squared = signal::mean(r2);

  std::vector<std::pair<double, double>> grand;
  for (const auto& [id, mts] : by_id) grand.emplace_back(id, signal::mean(mts));
  pm.condition_fit = fitts_fit(grand);

  // hardest ID over the whole condition, pooled raw trials
  double max_id = 0.0;
  for (const auto& t : sel) max_id = std::max(max_id, index_of_difficulty(t.distance_d, t.width_w));
  pm.hardest_id = max_id;
  for (const auto& t : sel) {
    if (t.success && index_of_difficulty(t.distance_d, t.width_w) == max_id) {
      pm.mt_hardest_samples.push_back(t.movement_time());
    }
  }
  pm.n_hardest = pm.mt_hardest_samples.size();
  pm.mt_hardest_mean = signal::mean(pm.mt_hardest_samples);
  pm.mt_hardest_std = signal::sample_std(pm.mt_hardest_samples);
  return pm;
}

std::vector<ConditionKey> conditions_in(std::span<const PointingTrial> trials) {
  std::set<ConditionKey> keys;
  for (const auto& t : trials) keys.insert({t.tablet_id, t.haptic});
  return {keys.begin(), keys.end()};
}

}  // namespace haptibench
