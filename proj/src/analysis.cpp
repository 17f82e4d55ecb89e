#include "haptibench/analysis.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fmt/format.h>
#include <numeric>
#include <set>

#include "haptibench/error.hpp"
#include "haptibench/parallel.hpp"
#include "haptibench/signal.hpp"

namespace haptibench {

std::string_view to_string(TrendScope s) {
  switch (s) {
    case TrendScope::dataset: return "dataset";
    case TrendScope::participant: return "participant";
    case TrendScope::none: return "none";
  }
  return "dataset";
}

TrendScope trend_scope_from_string(std::string_view s) {
  if (s == "dataset") return TrendScope::dataset;
  if (s == "participant") return TrendScope::participant;
  if (s == "none") return TrendScope::none;
  throw Error(ErrorKind::InvalidConfig, fmt::format("unknown trend scope '{}'", s));
}

namespace {

double parse_real(const std::string& key, const std::string& value) {
  double v = 0.0;
  const auto* end = value.data() + value.size();
  auto [p, ec] = std::from_chars(value.data(), end, v);
  if (ec != std::errc{} || p != end || !std::isfinite(v)) {
    throw Error(ErrorKind::InvalidConfig, fmt::format("{}: '{}' is not a number", key, value));
  }
  return v;
}

std::size_t parse_count(const std::string& key, const std::string& value) {
  const double v = parse_real(key, value);
  if (v < 0.0 || v != std::floor(v)) {
    throw Error(ErrorKind::InvalidConfig, fmt::format("{}: '{}' is not a non-negative integer", key, value));
  }
  return static_cast<std::size_t>(v);
}

double positive(const std::string& key, double v) {
  if (!(v > 0.0)) throw Error(ErrorKind::InvalidConfig, fmt::format("{} must be > 0", key));
  return v;
}

}  // namespace

void apply_override(AnalysisConfig& c, const std::string& key, const std::string& value) {
  const auto real = [&] { return parse_real(key, value); };
  const auto count = [&] { return parse_count(key, value); };
  if (key == "contact_threshold") c.contact_threshold = positive(key, real());
  else if (key == "segmentation.min_speed_fraction") c.segmentation.min_speed_fraction = real();
  else if (key == "segmentation.velocity_window") c.segmentation.velocity_window = count();
  else if (key == "segmentation.motion_threshold") c.segmentation.motion_threshold = positive(key, real());
  else if (key == "segmentation.min_samples") c.segmentation.min_samples = count();
  else if (key == "quality.cv_threshold") c.quality.cv_threshold = positive(key, real());
  else if (key == "quality.slip_drop_fraction") c.quality.slip_drop_fraction = positive(key, real());
  else if (key == "quality.slip_window") c.quality.slip_window = positive(key, real());
  else if (key == "quality.local_median_window") c.quality.local_median_window = positive(key, real());
  else if (key == "quality.max_slip_events") c.quality.max_slip_events = count();
  else if (key == "quality.min_samples") c.quality.min_samples = count();
  else if (key == "quality.max_out_of_window_fraction") c.quality.max_out_of_window_fraction = real();
  else if (key == "onset.smoothing_window") c.onset.smoothing_window = real();
  else if (key == "onset.search_window") c.onset.search_window = positive(key, real());
  else if (key == "onset.noise_floor_factor") c.onset.noise_floor_factor = real();
  else if (key == "trend.pivot") c.trend_pivot = real();
  else if (key == "trend.scope") c.trend_scope = trend_scope_from_string(value);
  else if (key == "max_rejected_fraction") c.max_rejected_fraction = real();
  else if (key == "ridge_polarity") {
    if (value == "auto") c.ridge_polarity.reset();
    else if (value == "friction_up") c.ridge_polarity = Polarity::friction_up;
    else if (value == "friction_down") c.ridge_polarity = Polarity::friction_down;
    else throw Error(ErrorKind::InvalidConfig, fmt::format("ridge_polarity: unknown value '{}'", value));
  } else {
    throw Error(ErrorKind::InvalidConfig, fmt::format("unknown setting '{}'", key));
  }
}

namespace {

void flatten(const nlohmann::json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& out) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, out);
  } else if (j.is_string()) {
    out.emplace_back(prefix, j.get<std::string>());
  } else if (j.is_number() || j.is_boolean()) {
    out.emplace_back(prefix, j.dump());
  } else {
    throw Error(ErrorKind::InvalidConfig, fmt::format("{}: unsupported value {}", prefix, j.dump()));
  }
}

}  // namespace

void apply_config_json(AnalysisConfig& config, const nlohmann::json& j) {
  if (!j.is_object()) throw Error(ErrorKind::InvalidConfig, "config must be a JSON object");
  std::vector<std::pair<std::string, std::string>> settings;
  flatten(j, "", settings);
  for (const auto& [k, v] : settings) {
    // simulation and CLI keys may share the file
    if (k == "seed" || k == "jobs" || k.starts_with("simulate.")) continue;
    apply_override(config, k, v);
  }
}

nlohmann::ordered_json analysis_config_json(const AnalysisConfig& c) {
  nlohmann::ordered_json j;
  j["contact_threshold"] = c.contact_threshold;
  j["segmentation"] = {{"min_speed_fraction", c.segmentation.min_speed_fraction},
                       {"velocity_window", c.segmentation.velocity_window},
                       {"motion_threshold", c.segmentation.motion_threshold},
                       {"min_samples", c.segmentation.min_samples}};
  j["quality"] = {{"cv_threshold", c.quality.cv_threshold},
                  {"slip_drop_fraction", c.quality.slip_drop_fraction},
                  {"slip_window", c.quality.slip_window},
                  {"local_median_window", c.quality.local_median_window},
                  {"max_slip_events", c.quality.max_slip_events},
                  {"min_samples", c.quality.min_samples},
                  {"max_out_of_window_fraction", c.quality.max_out_of_window_fraction}};
  j["onset"] = {{"smoothing_window", c.onset.smoothing_window},
                {"search_window", c.onset.search_window},
                {"noise_floor_factor", c.onset.noise_floor_factor}};
  j["trend"] = {{"pivot", c.trend_pivot}, {"scope", to_string(c.trend_scope)}};
  j["max_rejected_fraction"] = c.max_rejected_fraction;
  j["ridge_polarity"] = c.ridge_polarity ? std::string(to_string(*c.ridge_polarity)) : std::string("auto");
  return j;
}

DirectorySource::DirectorySource(const std::filesystem::path& dir) {
  std::error_code ec;
  if (!std::filesystem::is_directory(dir, ec)) {
    throw Error(ErrorKind::Io, fmt::format("'{}' is not a directory", dir.string()));
  }
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    const auto& p = entry.path();
    if (entry.is_regular_file() && p.extension() == ".csv" && std::filesystem::exists(meta_path_for(p))) {
      files_.push_back(p);
    }
  }
  std::sort(files_.begin(), files_.end());
}

Recording DirectorySource::load(std::size_t i) const { return load_recording(files_[i]); }

std::string DirectorySource::name(std::size_t i) const { return files_[i].stem().string(); }

Recording SessionSource::load(std::size_t i) const { return realize(session_.jobs[i]).first; }

namespace {

bool is_level_condition(Actuation a) { return a == Actuation::off || a == Actuation::constant_max; }

struct FirstPass {
  RecordingMeta meta;
  std::vector<double> slopes;
  std::vector<double> raw_means;
  std::string warning;
};

struct SecondPass {
  RecordingMeta meta;
  std::vector<SwipeSummary> accepted;
  std::vector<QualityReport> reports;
  std::vector<Swipe> ridge_swipes;
  std::string warning;
};

std::vector<Swipe> swipes_of(const Recording& rec, const AnalysisConfig& c, std::string& warning,
                             const std::string& name) {
  try {
    return segment_swipes(compute_friction(rec, c.contact_threshold), c.segmentation);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NoSwipesFound && e.kind() != ErrorKind::AllSamplesInvalid) throw;
    warning = fmt::format("{}: {}", name, e.what());
    return {};
  }
}

QualityOptions quality_for(const AnalysisConfig& c, const RecordingMeta& meta) {
  auto q = c.quality;
  q.force_window = meta.nominal_force_window;
  return q;
}

std::string trend_key(const AnalysisConfig& c, const RecordingMeta& meta) {
  return c.trend_scope == TrendScope::participant ? meta.participant_id : std::string();
}

}  // namespace

PhysicalMetrics analyze_physical(const RecordingSource& source, const AnalysisConfig& config) {
  const std::size_t n = source.size();
  if (n == 0) throw Error(ErrorKind::Io, "no recordings found");

  // reduce in name order so sums do not depend on how the source lists recordings
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return source.name(a) < source.name(b); });

  std::vector<FirstPass> first(n);
  parallel_for(n, config.jobs, [&](std::size_t i) {
    const auto rec = source.load(order[i]);
    auto& out = first[i];
    out.meta = rec.meta;
    const auto swipes = swipes_of(rec, config, out.warning, source.name(order[i]));
    const auto reports = quality_gate(swipes, quality_for(config, rec.meta));
    for (std::size_t s = 0; s < swipes.size(); ++s) {
      if (!reports[s].accepted) continue;
      out.raw_means.push_back(signal::mean(swipes[s].mu));
      if (!is_level_condition(rec.meta.actuation)) continue;
      if (auto a = swipe_trend_slope(swipes[s], config.quality.min_samples)) out.slopes.push_back(*a);
    }
  });

  PhysicalMetrics m;
  m.tablet_id = first.front().meta.tablet_id;
  for (const auto& f : first) {
    if (f.meta.tablet_id != m.tablet_id) {
      throw Error(ErrorKind::InvalidConfig,
                  fmt::format("dataset mixes tablets '{}' and '{}'", m.tablet_id, f.meta.tablet_id));
    }
  }

  // trend slopes, one per scope key
  if (config.trend_scope == TrendScope::none) {
    m.trend[""] = TrendModel{0.0, config.trend_pivot};
  } else {
    std::map<std::string, std::vector<double>> slopes;
    for (const auto& f : first) {
      if (!is_level_condition(f.meta.actuation)) continue;
      auto& v = slopes[trend_key(config, f.meta)];
      v.insert(v.end(), f.slopes.begin(), f.slopes.end());
    }
    for (const auto& [key, v] : slopes) {
      if (v.empty()) {
        throw Error(ErrorKind::InsufficientData,
                    fmt::format("no accepted swipe to fit the trend{}", key.empty() ? "" : " of " + key));
      }
      const double a = signal::mean(v);
      if (!(std::abs(a) < 0.1)) {
        throw Error(ErrorKind::InsufficientData, "trend slope implausibly large (|a| >= 0.1 per mm)");
      }
      m.trend[key] = TrendModel{a, config.trend_pivot};
    }
    if (m.trend.empty()) throw Error(ErrorKind::InsufficientData, "no constant-level recordings for the trend fit");
  }
  auto model_for = [&](const RecordingMeta& meta) {
    if (config.trend_scope == TrendScope::none) return m.trend.at("");
    auto it = m.trend.find(trend_key(config, meta));
    if (it == m.trend.end()) {
      throw Error(ErrorKind::InsufficientData, fmt::format("no trend slope for participant '{}'", meta.participant_id));
    }
    return it->second;
  };

  // ridge polarity from the raw constant levels unless configured
  Polarity polarity = Polarity::friction_up;
  if (config.ridge_polarity) {
    polarity = *config.ridge_polarity;
  } else {
    std::vector<double> off, on;
    for (const auto& f : first) {
      if (f.meta.actuation == Actuation::off) off.insert(off.end(), f.raw_means.begin(), f.raw_means.end());
      if (f.meta.actuation == Actuation::constant_max) on.insert(on.end(), f.raw_means.begin(), f.raw_means.end());
    }
    if (!off.empty() && !on.empty() && signal::mean(on) < signal::mean(off)) polarity = Polarity::friction_down;
  }

  if (config.dump_swipes_dir) std::filesystem::create_directories(*config.dump_swipes_dir);

  std::vector<SecondPass> second(n);
  parallel_for(n, config.jobs, [&](std::size_t i) {
    const auto rec = source.load(order[i]);
    auto& out = second[i];
    out.meta = rec.meta;
    const auto name = source.name(order[i]);
    auto swipes = swipes_of(rec, config, out.warning, name);
    const auto model = model_for(rec.meta);
    for (auto& sw : swipes) sw = correct_trend(std::move(sw), model);
    out.reports = quality_gate(swipes, quality_for(config, rec.meta));
    for (std::size_t s = 0; s < swipes.size(); ++s) {
      if (config.dump_swipes_dir) {
        write_text_file_atomic(*config.dump_swipes_dir / fmt::format("{}_s{:02d}.csv", name, s + 1),
                               swipe_debug_csv(swipes[s]));
      }
      if (!out.reports[s].accepted) continue;
      if (rec.meta.actuation == Actuation::ridge) {
        out.ridge_swipes.push_back(std::move(swipes[s]));
      } else {
        out.accepted.push_back(summarize_swipe(swipes[s]));
      }
    }
  });

  // bookkeeping in recording order
  struct Tally {
    std::size_t total = 0;
    std::size_t rejected = 0;
  };
  std::map<std::pair<Actuation, std::string>, Tally> tallies;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& s = second[i];
    ++m.quality.recordings;
    if (!first[i].warning.empty()) m.warnings.push_back(first[i].warning);
    auto& tally = tallies[{s.meta.actuation, s.meta.participant_id}];
    for (const auto& r : s.reports) {
      ++m.quality.swipes;
      ++tally.total;
      if (r.accepted) {
        ++m.quality.accepted;
      } else {
        ++tally.rejected;
        ++m.quality.rejected[std::string(to_string(*r.reject_reason))];
      }
    }
  }

  std::set<std::string> dropped;
  for (const auto& [key, tally] : tallies) {
    if (!is_level_condition(key.first)) continue;
    if (tally.total == 0 ||
        static_cast<double>(tally.rejected) > config.max_rejected_fraction * static_cast<double>(tally.total)) {
      m.quality.discarded.push_back(fmt::format("{}/{}", key.second, to_string(key.first)));
      dropped.insert(key.second);
    }
  }
  for (const auto& pid : dropped) {
    m.warnings.push_back(fmt::format("participant {} discarded from both friction levels", pid));
  }

  std::map<std::string, std::vector<SwipeSummary>> off, on;
  RepetitionTable off_reps, on_reps;
  for (const auto& s : second) {
    if (!is_level_condition(s.meta.actuation) || dropped.count(s.meta.participant_id)) continue;
    auto& level = s.meta.actuation == Actuation::off ? off : on;
    auto& reps = s.meta.actuation == Actuation::off ? off_reps : on_reps;
    auto& dst = level[s.meta.participant_id];
    dst.insert(dst.end(), s.accepted.begin(), s.accepted.end());
    if (!s.accepted.empty()) {
      std::vector<double> means;
      for (const auto& a : s.accepted) means.push_back(a.mean_mu);
      reps[{s.meta.participant_id, s.meta.session_index, s.meta.trial_index}] = signal::mean(means);
    }
  }
  if (off.empty() || on.empty()) {
    throw Error(ErrorKind::NoAcceptedSwipes, "need accepted swipes for both the off and constant_max conditions");
  }
  const auto off_stats = friction_level_stats(off);
  const auto on_stats = friction_level_stats(on);
  const bool on_high = on_stats.mean_mu >= off_stats.mean_mu;
  m.high_condition = on_high ? Actuation::constant_max : Actuation::off;
  m.high = on_high ? on_stats : off_stats;
  m.low = on_high ? off_stats : on_stats;
  m.range = on_high ? friction_range(on_stats, off_stats, on_reps, off_reps)
                    : friction_range(off_stats, on_stats, off_reps, on_reps);

  std::vector<Swipe> ridge_swipes;
  std::optional<Interval> span;
  for (auto& s : second) {
    if (s.meta.actuation != Actuation::ridge) continue;
    if (!span) span = s.meta.ridge_span;
    if (s.meta.ridge_span != span) {
      throw Error(ErrorKind::InvalidConfig, "ridge recordings disagree on the ridge span");
    }
    for (auto& sw : s.ridge_swipes) ridge_swipes.push_back(std::move(sw));
  }
  if (span) {
    const RidgeSpec ridge{span->lo, span->hi, polarity};
    m.latency = estimate_latency(ridge_swipes, ridge, config.onset);
  }
  return m;
}

std::vector<ConditionMetrics> analyze_pointing(std::span<const PointingTrial> trials) {
  std::vector<ConditionMetrics> out;
  for (const auto& key : conditions_in(trials)) out.push_back({key, pointing_metrics(trials, key)});
  return out;
}

std::vector<PointingTrial> load_pointing_trials(const std::filesystem::path& path) {
  std::vector<std::filesystem::path> files;
  if (std::filesystem::is_directory(path)) {
    for (const auto& entry : std::filesystem::directory_iterator(path)) {
      const auto name = entry.path().filename().string();
      if (entry.is_regular_file() && name.ends_with(".trials.jsonl")) files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
  } else {
    files.push_back(path);
  }
  std::vector<PointingTrial> all;
  for (const auto& f : files) {
    auto trials = parse_pointing_log(read_text_file(f));
    all.insert(all.end(), std::make_move_iterator(trials.begin()), std::make_move_iterator(trials.end()));
  }
  return all;
}

TabletMetrics analyze_dataset(const std::filesystem::path& dir, const AnalysisConfig& config) {
  TabletMetrics tm;
  DirectorySource source(dir);
  const auto trials = load_pointing_trials(dir);
  if (source.size() == 0 && trials.empty()) {
    throw Error(ErrorKind::Io, fmt::format("'{}' holds neither recordings nor pointing logs", dir.string()));
  }
  if (source.size() > 0) {
    tm.physical = analyze_physical(source, config);
    tm.tablet_id = tm.physical->tablet_id;
  } else {
    tm.tablet_id = trials.front().tablet_id;
  }
  for (bool haptic : {false, true}) {
    const ConditionKey key{tm.tablet_id, haptic};
    const bool present = std::any_of(trials.begin(), trials.end(),
                                     [&](const auto& t) { return t.tablet_id == key.tablet_id && t.haptic == haptic; });
    if (!present) continue;
    (haptic ? tm.pointing_haptic : tm.pointing_no_haptic) = pointing_metrics(trials, key);
  }
  return tm;
}

namespace {

using ojson = nlohmann::ordered_json;

ojson opt_number(const std::optional<double>& v) { return v ? ojson(*v) : ojson(nullptr); }

std::optional<double> number_or_null(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<double>();
}

ojson level_json(const FrictionLevelStats& s) {
  ojson j;
  j["mean"] = s.mean_mu;
  j["inter_participant_std"] = s.inter_participant_std_sigma;
  j["intra_trial_std"] = s.intra_trial_std_delta;
  j["intra_trial_std_spread"] = s.intra_trial_std_spread;
  j["n_swipes"] = s.n_swipes;
  j["n_participants"] = s.n_participants;
  j["per_participant_mean"] = s.per_participant_mean;
  return j;
}

FrictionLevelStats level_from_json(const nlohmann::json& j) {
  FrictionLevelStats s;
  s.mean_mu = j.at("mean").get<double>();
  s.inter_participant_std_sigma = j.at("inter_participant_std").get<double>();
  s.intra_trial_std_delta = j.at("intra_trial_std").get<double>();
  s.intra_trial_std_spread = j.at("intra_trial_std_spread").get<double>();
  s.n_swipes = j.at("n_swipes").get<std::size_t>();
  s.n_participants = j.at("n_participants").get<std::size_t>();
  s.per_participant_mean = j.at("per_participant_mean").get<std::map<std::string, double>>();
  return s;
}

ojson directional_json(const std::optional<DirectionalLatency>& d) {
  if (!d) return nullptr;
  return ojson{{"mean", d->mean_dt}, {"std", d->std_dt}, {"n", d->n}};
}

std::optional<DirectionalLatency> directional_from_json(const nlohmann::json& j) {
  if (j.is_null()) return std::nullopt;
  return DirectionalLatency{j.at("mean").get<double>(), j.at("std").get<double>(), j.at("n").get<std::size_t>()};
}

}  // namespace

ojson to_json(const PhysicalMetrics& m) {
  ojson j;
  j["tablet_id"] = m.tablet_id;
  j["high_condition"] = to_string(m.high_condition);
  j["mu_high"] = level_json(m.high);
  j["mu_low"] = level_json(m.low);
  ojson r;
  r["mean"] = m.range.delta_mu;
  r["inter_participant_std"] = m.range.inter_participant_std;
  r["relative_range"] = opt_number(m.range.relative_range);
  r["friction_contrast"] = opt_number(m.range.friction_contrast);
  r["division_by_zero"] = m.range.division_by_zero;
  r["n_per_trial"] = m.range.per_trial_samples.size();
  r["per_trial_samples"] = m.range.per_trial_samples;
  j["friction_range"] = r;
  if (m.latency) {
    const auto& l = *m.latency;
    ojson lj;
    lj["mean"] = l.mean_dt;
    lj["std"] = l.std_dt;
    lj["n"] = l.n;
    lj["ltr"] = directional_json(l.ltr);
    lj["rtl"] = directional_json(l.rtl);
    lj["n_not_crossed"] = l.n_not_crossed;
    lj["n_no_actuation"] = l.n_no_actuation;
    ojson cs = ojson::array();
    for (const auto& c : l.per_crossing) {
      cs.push_back({{"t1", c.t1},
                    {"t2", c.t2},
                    {"dt", c.dt},
                    {"direction", to_string(c.direction)},
                    {"onset_x", c.onset_x},
                    {"onset_shift_mm", c.onset_shift_mm}});
    }
    lj["crossings"] = cs;
    j["latency"] = lj;
  } else {
    j["latency"] = nullptr;
  }
  ojson trend = ojson::array();
  for (const auto& [key, t] : m.trend) trend.push_back({{"scope", key}, {"slope_a", t.slope_a}, {"pivot", t.pivot}});
  j["trend"] = trend;
  j["quality"] = {{"recordings", m.quality.recordings},
                  {"swipes", m.quality.swipes},
                  {"accepted", m.quality.accepted},
                  {"rejected", m.quality.rejected},
                  {"discarded", m.quality.discarded}};
  j["warnings"] = m.warnings;
  return j;
}

PhysicalMetrics physical_metrics_from_json(const nlohmann::json& j) {
  PhysicalMetrics m;
  m.tablet_id = j.at("tablet_id").get<std::string>();
  m.high_condition = actuation_from_string(j.at("high_condition").get<std::string>());
  m.high = level_from_json(j.at("mu_high"));
  m.low = level_from_json(j.at("mu_low"));
  const auto& r = j.at("friction_range");
  m.range.delta_mu = r.at("mean").get<double>();
  m.range.inter_participant_std = r.at("inter_participant_std").get<double>();
  m.range.relative_range = number_or_null(r, "relative_range");
  m.range.friction_contrast = number_or_null(r, "friction_contrast");
  m.range.division_by_zero = r.at("division_by_zero").get<bool>();
  m.range.per_trial_samples = r.at("per_trial_samples").get<std::vector<double>>();
  if (!j.at("latency").is_null()) {
    const auto& lj = j.at("latency");
    LatencyEstimate l;
    l.mean_dt = lj.at("mean").get<double>();
    l.std_dt = lj.at("std").get<double>();
    l.n = lj.at("n").get<std::size_t>();
    l.ltr = directional_from_json(lj.at("ltr"));
    l.rtl = directional_from_json(lj.at("rtl"));
    l.n_not_crossed = lj.at("n_not_crossed").get<std::size_t>();
    l.n_no_actuation = lj.at("n_no_actuation").get<std::size_t>();
    for (const auto& c : lj.at("crossings")) {
      Crossing x;
      x.t1 = c.at("t1").get<double>();
      x.t2 = c.at("t2").get<double>();
      x.dt = c.at("dt").get<double>();
      x.direction = direction_from_string(c.at("direction").get<std::string>());
      x.onset_x = c.at("onset_x").get<double>();
      x.onset_shift_mm = c.at("onset_shift_mm").get<double>();
      l.per_crossing.push_back(x);
    }
    m.latency = l;
  }
  for (const auto& t : j.at("trend")) {
    m.trend[t.at("scope").get<std::string>()] = TrendModel{t.at("slope_a").get<double>(), t.at("pivot").get<double>()};
  }
  const auto& q = j.at("quality");
  m.quality.recordings = q.at("recordings").get<std::size_t>();
  m.quality.swipes = q.at("swipes").get<std::size_t>();
  m.quality.accepted = q.at("accepted").get<std::size_t>();
  m.quality.rejected = q.at("rejected").get<std::map<std::string, std::size_t>>();
  m.quality.discarded = q.at("discarded").get<std::vector<std::string>>();
  m.warnings = j.at("warnings").get<std::vector<std::string>>();
  return m;
}

ojson to_json(const PointingMetrics& m) {
  ojson j;
  j["slope_mean"] = m.slope_mean;
  j["slope_std"] = m.slope_std;
  j["n_participants"] = m.per_participant_slopes.size();
  j["per_participant_slopes"] = m.per_participant_slopes;
  j["mean_participant_r_squared"] = m.mean_participant_r_squared;
  j["condition_fit"] = {{"intercept_a", m.condition_fit.intercept_a},
                        {"slope_b", m.condition_fit.slope_b},
                        {"r_squared", m.condition_fit.r_squared},
                        {"n_points", m.condition_fit.n_points}};
  j["hardest_id"] = m.hardest_id;
  j["mt_hardest_mean"] = m.mt_hardest_mean;
  j["mt_hardest_std"] = m.mt_hardest_std;
  j["n_hardest"] = m.n_hardest;
  j["error_rate"] = m.error_rate;
  j["n_trials"] = m.n_trials;
  j["mt_hardest_samples"] = m.mt_hardest_samples;
  return j;
}

PointingMetrics pointing_metrics_from_json(const nlohmann::json& j) {
  PointingMetrics m;
  m.slope_mean = j.at("slope_mean").get<double>();
  m.slope_std = j.at("slope_std").get<double>();
  m.per_participant_slopes = j.at("per_participant_slopes").get<std::vector<double>>();
  m.mean_participant_r_squared = j.at("mean_participant_r_squared").get<double>();
  const auto& f = j.at("condition_fit");
  m.condition_fit = {f.at("intercept_a").get<double>(), f.at("slope_b").get<double>(),
                     f.at("r_squared").get<double>(), f.at("n_points").get<std::size_t>()};
  m.hardest_id = j.at("hardest_id").get<double>();
  m.mt_hardest_mean = j.at("mt_hardest_mean").get<double>();
  m.mt_hardest_std = j.at("mt_hardest_std").get<double>();
  m.n_hardest = j.at("n_hardest").get<std::size_t>();
  m.error_rate = j.at("error_rate").get<double>();
  m.n_trials = j.at("n_trials").get<std::size_t>();
  m.mt_hardest_samples = j.at("mt_hardest_samples").get<std::vector<double>>();
  return m;
}

ojson to_json(const TabletMetrics& m) {
  ojson j;
  j["spec_version"] = kSchemaVersion;
  j["tablet_id"] = m.tablet_id;
  j["physical"] = m.physical ? to_json(*m.physical) : ojson(nullptr);
  j["pointing"] = {{"no_haptic", m.pointing_no_haptic ? to_json(*m.pointing_no_haptic) : ojson(nullptr)},
                   {"haptic", m.pointing_haptic ? to_json(*m.pointing_haptic) : ojson(nullptr)}};
  return j;
}

TabletMetrics tablet_metrics_from_json(const nlohmann::json& j) {
  TabletMetrics m;
  m.tablet_id = j.at("tablet_id").get<std::string>();
  if (!j.at("physical").is_null()) m.physical = physical_metrics_from_json(j.at("physical"));
  const auto& p = j.at("pointing");
  if (!p.at("no_haptic").is_null()) m.pointing_no_haptic = pointing_metrics_from_json(p.at("no_haptic"));
  if (!p.at("haptic").is_null()) m.pointing_haptic = pointing_metrics_from_json(p.at("haptic"));
  return m;
}

std::string serialize_metrics(const TabletMetrics& m) { return to_json(m).dump(2) + "\n"; }

TabletMetrics parse_metrics(std::string_view text) {
  try {
    return tablet_metrics_from_json(nlohmann::json::parse(text));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::MalformedMeta, fmt::format("metrics file: {}", e.what()));
  }
}

}  // namespace haptibench
