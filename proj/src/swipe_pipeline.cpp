#include "haptibench/swipe_pipeline.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <deque>
#include <limits>

#include "haptibench/error.hpp"
#include "haptibench/signal.hpp"
#include "haptibench/stats.hpp"

namespace haptibench {

FrictionSeries compute_friction(const Recording& recording, double contact_threshold) {
  FrictionSeries fs;
  const std::size_t n = recording.samples.size();
  fs.t.resize(n);
  fs.x.resize(n);
  fs.mu.resize(n);
  fs.f_n.resize(n);
  fs.valid_mask.resize(n);
  fs.screen_length = recording.meta.screen_length;
  fs.sample_rate = recording.meta.sample_rate;
  std::size_t valid = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& s = recording.samples[i];
    fs.t[i] = s.t;
    fs.x[i] = s.x;
    fs.f_n[i] = s.f_n;
    const bool ok = s.f_n >= contact_threshold;
    fs.valid_mask[i] = ok;
    // the sensor sign flips with direction; friction magnitude does not
    fs.mu[i] = ok ? std::abs(s.f_t) / s.f_n : std::numeric_limits<double>::quiet_NaN();
    valid += ok ? 1 : 0;
  }
  if (valid == 0) throw Error(ErrorKind::AllSamplesInvalid, "no sample reaches the contact threshold");
  return fs;
}

namespace {

struct Run {
  int sign = 0;
  std::size_t first = 0;  // inclusive
  std::size_t last = 0;   // inclusive
};

std::vector<Run> motion_runs(std::span<const double> v, double threshold) {
  std::vector<Run> runs;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (std::abs(v[i]) < threshold) continue;
    const int s = v[i] > 0 ? 1 : -1;
    // same-direction motion separated only by pauses belongs to one segment
    if (!runs.empty() && runs.back().sign == s) {
      runs.back().last = i;
    } else {
      runs.push_back({s, i, i});
    }
  }
  return runs;
}

}  // namespace

std::vector<Swipe> segment_swipes(const FrictionSeries& series, const SegmentationOptions& options) {
  const std::size_t n = series.size();
  std::vector<Swipe> swipes;
  if (n >= 3) {
    const auto raw_v = signal::central_difference(series.t, series.x);
    const auto v = signal::moving_average(raw_v, options.velocity_window);

    for (const auto& run : motion_runs(v, options.motion_threshold)) {
      std::vector<double> speeds;
      speeds.reserve(run.last - run.first + 1);
      for (std::size_t i = run.first; i <= run.last; ++i) {
        if (std::abs(v[i]) >= options.motion_threshold) speeds.push_back(std::abs(v[i]));
      }
      const double cutoff = options.min_speed_fraction * signal::median(std::move(speeds));
      std::size_t lo = run.first;
      while (lo < run.last && std::abs(v[lo]) < cutoff) ++lo;
      std::size_t hi = run.last;
      while (hi > lo && std::abs(v[hi]) < cutoff) --hi;

      Swipe sw;
      sw.direction = run.sign > 0 ? Direction::ltr : Direction::rtl;
      sw.screen_length = series.screen_length;
      sw.source_begin = lo;
      sw.source_end = hi + 1;
      sw.segment_t_begin = series.t[run.first];
      sw.segment_t_end = series.t[run.last];
      double last_x = -std::numeric_limits<double>::infinity();
      for (std::size_t i = lo; i <= hi; ++i) {
        if (!series.valid_mask[i]) continue;
        const double cx = run.sign > 0 ? series.x[i] : series.screen_length - series.x[i];
        if (!(cx > last_x)) continue;  // keep canonical x strictly increasing
        last_x = cx;
        sw.x.push_back(cx);
        sw.mu.push_back(series.mu[i]);
        sw.t.push_back(series.t[i]);
        sw.f_n.push_back(series.f_n[i]);
      }
      if (sw.size() < options.min_samples) continue;
      const double dt = sw.t.back() - sw.t.front();
      sw.mean_speed = dt > 0.0 ? (sw.x.back() - sw.x.front()) / dt : 0.0;
      if (!(sw.mean_speed > 0.0)) continue;
      swipes.push_back(std::move(sw));
    }
  }
  if (swipes.empty()) throw Error(ErrorKind::NoSwipesFound, "no monotone motion segment found");
  return swipes;
}

std::vector<Swipe> segment_swipes(const FrictionSeries& series, double min_speed_fraction) {
  SegmentationOptions opt;
  opt.min_speed_fraction = min_speed_fraction;
  return segment_swipes(series, opt);
}

std::optional<double> swipe_trend_slope(const Swipe& sw, std::size_t min_samples) {
  std::vector<double> x, mu;
  x.reserve(sw.size());
  mu.reserve(sw.size());
  for (std::size_t i = 0; i < sw.size(); ++i) {
    if (!std::isfinite(sw.mu[i])) continue;
    x.push_back(sw.x[i]);
    mu.push_back(sw.mu[i]);
  }
  if (x.size() < std::max<std::size_t>(min_samples, 2)) return std::nullopt;
  return stats::linear_regression(x, mu).slope;
}

TrendModel estimate_trend_slope(std::span<const Swipe> swipes, double pivot, std::size_t min_samples) {
  std::vector<double> slopes;
  for (const auto& sw : swipes) {
    if (auto a = swipe_trend_slope(sw, min_samples)) slopes.push_back(*a);
  }
  if (slopes.empty()) {
    throw Error(ErrorKind::InsufficientData, "no swipe with enough valid samples for a trend fit");
  }
  TrendModel m;
  m.slope_a = signal::mean(slopes);
  m.pivot = pivot;
  if (!(std::abs(m.slope_a) < 0.1)) {
    throw Error(ErrorKind::InsufficientData, "trend slope implausibly large (|a| >= 0.1 per mm)");
  }
  return m;
}

Swipe correct_trend(Swipe swipe, const TrendModel& model) {
  if (swipe.trend_corrected) throw Error(ErrorKind::AlreadyCorrected, "swipe already trend-corrected");
  for (std::size_t i = 0; i < swipe.size(); ++i) {
    swipe.mu[i] -= model.slope_a * (swipe.x[i] - model.pivot);
  }
  swipe.trend_corrected = true;
  return swipe;
}

std::string_view to_string(RejectReason r) {
  switch (r) {
    case RejectReason::stick_slip: return "stick_slip";
    case RejectReason::too_short: return "too_short";
    case RejectReason::force_out_of_window: return "force_out_of_window";
  }
  return "stick_slip";
}

namespace {

// Local median of mu around each sample, evaluated on blocks of ~10 ms.
std::vector<double> local_medians(std::span<const double> mu, std::size_t block, std::size_t half_window) {
  const std::size_t n = mu.size();
  const std::size_t n_blocks = (n + block - 1) / block;
  std::vector<double> per_block(n_blocks);
  for (std::size_t b = 0; b < n_blocks; ++b) {
    const std::size_t c = std::min(n - 1, b * block + block / 2);
    const std::size_t lo = c > half_window ? c - half_window : 0;
    const std::size_t hi = std::min(n, c + half_window + 1);
    per_block[b] = signal::median(std::vector<double>(mu.begin() + static_cast<std::ptrdiff_t>(lo),
                                                      mu.begin() + static_cast<std::ptrdiff_t>(hi)));
  }
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = per_block[i / block];
  return out;
}

std::size_t count_slip_events(const Swipe& sw, const QualityOptions& opt) {
  const std::size_t n = sw.size();
  if (n < 3) return 0;
  const double dt = signal::median_step(sw.t);
  const double fs = dt > 0.0 ? 1.0 / dt : 1.0;
  const auto window = std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(opt.slip_window * fs)));
  const auto block = std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(0.01 * fs)));
  const auto half = std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(opt.local_median_window * fs / 2)));
  const auto med = local_medians(sw.mu, block, half);

  // monotonic deque: running max of mu over the preceding `window` samples
  std::deque<std::size_t> dq;
  std::size_t events = 0;
  bool in_event = false;
  std::size_t quiet = 0;
  for (std::size_t i = 0; i < n; ++i) {
    while (!dq.empty() && dq.front() + window < i) dq.pop_front();
    bool trig = false;
    if (!dq.empty()) {
      const double drop = sw.mu[dq.front()] - sw.mu[i];
      trig = drop > opt.slip_drop_fraction * med[i];
    }
    if (trig) {
      if (!in_event) ++events;
      in_event = true;
      quiet = 0;
    } else if (in_event && ++quiet >= window / 2 + 1) {
      in_event = false;
    }
    while (!dq.empty() && sw.mu[dq.back()] <= sw.mu[i]) dq.pop_back();
    dq.push_back(i);
  }
  return events;
}

}  // namespace

QualityReport assess_swipe(const Swipe& sw, const QualityOptions& opt) {
  QualityReport rep;
  if (sw.size() > 0) {
    const double m = signal::mean(sw.mu);
    rep.cv = m > 0.0 ? signal::sample_std(sw.mu) / m : std::numeric_limits<double>::infinity();
  }
  if (sw.size() < opt.min_samples) {
    rep.accepted = false;
    rep.reject_reason = RejectReason::too_short;
    return rep;
  }
  rep.slip_event_count = count_slip_events(sw, opt);
  std::size_t outside = 0;
  for (double f : sw.f_n) outside += opt.force_window.contains(f) ? 0 : 1;
  if (static_cast<double>(outside) > opt.max_out_of_window_fraction * static_cast<double>(sw.size())) {
    rep.accepted = false;
    rep.reject_reason = RejectReason::force_out_of_window;
  } else if (rep.cv > opt.cv_threshold || rep.slip_event_count > opt.max_slip_events) {
    rep.accepted = false;
    rep.reject_reason = RejectReason::stick_slip;
  }
  return rep;
}

std::vector<QualityReport> quality_gate(std::span<const Swipe> swipes, const QualityOptions& options) {
  std::vector<QualityReport> out;
  out.reserve(swipes.size());
  for (const auto& sw : swipes) out.push_back(assess_swipe(sw, options));
  return out;
}

std::vector<QualityReport> quality_gate(std::span<const Swipe> swipes, double cv_threshold,
                                        double slip_drop_fraction) {
  QualityOptions opt;
  opt.cv_threshold = cv_threshold;
  opt.slip_drop_fraction = slip_drop_fraction;
  return quality_gate(swipes, opt);
}

std::string swipe_debug_csv(const Swipe& sw) {
  std::string out = "x,mu,t\n";
  char buf[32];
  for (std::size_t i = 0; i < sw.size(); ++i) {
    for (double v : {sw.x[i], sw.mu[i], sw.t[i]}) {
      auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
      out.append(buf, p);
      out += ',';
    }
    out.back() = '\n';
  }
  return out;
}

}  // namespace haptibench
