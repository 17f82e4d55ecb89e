#include "haptibench/latency_metrics.hpp"

#include <algorithm>
#include <cmath>

#include "haptibench/error.hpp"
#include "haptibench/signal.hpp"

namespace haptibench {

std::string_view to_string(Polarity p) {
  return p == Polarity::friction_up ? "friction_up" : "friction_down";
}

namespace {

double leading_edge_canonical(const Swipe& sw, const RidgeSpec& ridge) {
  return sw.direction == Direction::ltr ? ridge.x_lo : sw.screen_length - ridge.x_hi;
}

double leading_edge_raw(const Swipe& sw, const RidgeSpec& ridge) {
  return sw.direction == Direction::ltr ? ridge.x_lo : ridge.x_hi;
}

// Value of `v` at fractional index `pos`.
double at_fraction(std::span<const double> v, double pos) {
  const auto i = static_cast<std::size_t>(std::floor(pos));
  if (i + 1 >= v.size()) return v.back();
  const double f = pos - static_cast<double>(i);
  return v[i] + f * (v[i + 1] - v[i]);
}

// Fractional index of t2.
double onset_index(const Swipe& sw, const RidgeSpec& ridge, double t1, const OnsetOptions& opt) {
  const std::size_t n = sw.size();
  const double step = signal::median_step(sw.t);
  const double fs = step > 0.0 ? 1.0 / step : 1.0;
  const std::size_t window = signal::window_samples(opt.smoothing_window, fs);
  const auto smoothed = signal::moving_average(sw.mu, window);
  auto deriv = signal::central_difference(sw.t, smoothed);
  if (ridge.polarity == Polarity::friction_down) {
    for (auto& d : deriv) d = -d;
  }

  // the average shrinks near the swipe ends, leaving raw noise in the derivative there
  const std::size_t edge = window / 2 + 1;
  if (n <= 2 * edge) throw Error(ErrorKind::NoActuationDetected, "swipe shorter than the smoothing window");
  std::size_t first = n, last = 0;
  std::vector<double> before;
  for (std::size_t i = edge; i < n - edge; ++i) {
    if (sw.t[i] < t1) {
      before.push_back(deriv[i]);
    } else if (sw.t[i] <= t1 + opt.search_window) {
      first = std::min(first, i);
      last = i;
    }
  }
  if (first >= n) throw Error(ErrorKind::NoActuationDetected, "no samples after the crossing");

  std::size_t k = first;
  for (std::size_t i = first; i <= last; ++i) {
    if (deriv[i] > deriv[k]) k = i;
  }
  const double base = before.empty() ? 0.0 : signal::mean(before);
  const double noise = signal::sample_std(before);
  const double rise = deriv[k] - base;
  constexpr double kAbsoluteFloor = 1e-6;  // per second
  if (!(rise > opt.noise_floor_factor * noise) || !(rise > kAbsoluteFloor)) {
    throw Error(ErrorKind::NoActuationDetected, "friction derivative extremum below the noise floor");
  }

  // a flat-topped extremum is located at its center
  const double tol = 1e-9 * std::abs(deriv[k]);
  std::size_t lo = k, hi = k;
  while (lo > first && deriv[lo - 1] >= deriv[k] - tol) --lo;
  while (hi < last && deriv[hi + 1] >= deriv[k] - tol) ++hi;
  if (hi > lo) return 0.5 * static_cast<double>(lo + hi);

  // otherwise refine with a parabola through the neighbours
  if (k > 0 && k + 1 < n) {
    const double a = deriv[k - 1], b = deriv[k], c = deriv[k + 1];
    const double denom = a - 2.0 * b + c;
    if (denom < 0.0) {
      const double off = std::clamp(0.5 * (a - c) / denom, -0.5, 0.5);
      return static_cast<double>(k) + off;
    }
  }
  return static_cast<double>(k);
}

}  // namespace

double detect_ridge_crossing(const Swipe& sw, const RidgeSpec& ridge) {
  const double edge = leading_edge_canonical(sw, ridge);
  if (sw.size() < 2 || !(sw.x.front() < edge)) {
    throw Error(ErrorKind::RidgeNotCrossed, "swipe starts at or past the ridge edge");
  }
  for (std::size_t i = 1; i < sw.size(); ++i) {
    if (sw.x[i] >= edge) {
      return signal::lerp_at(sw.x[i - 1], sw.t[i - 1], sw.x[i], sw.t[i], edge);
    }
  }
  throw Error(ErrorKind::RidgeNotCrossed, "swipe never reaches the ridge edge");
}

double detect_actuation_onset(const Swipe& sw, const RidgeSpec& ridge, const OnsetOptions& options) {
  return measure_crossing(sw, ridge, options).t2;
}

double detect_actuation_onset(const Swipe& sw, const RidgeSpec& ridge, double smoothing_window) {
  OnsetOptions opt;
  opt.smoothing_window = smoothing_window;
  return detect_actuation_onset(sw, ridge, opt);
}

Crossing measure_crossing(const Swipe& sw, const RidgeSpec& ridge, const OnsetOptions& options) {
  Crossing c;
  c.direction = sw.direction;
  c.t1 = detect_ridge_crossing(sw, ridge);
  const double pos = onset_index(sw, ridge, c.t1, options);
  c.t2 = at_fraction(sw.t, pos);
  c.dt = c.t2 - c.t1;
  const double cx = at_fraction(sw.x, pos);
  c.onset_x = sw.direction == Direction::ltr ? cx : sw.screen_length - cx;
  c.onset_shift_mm = c.onset_x - leading_edge_raw(sw, ridge);
  return c;
}

namespace {

DirectionalLatency summarize(std::span<const double> dts) {
  return {signal::mean(dts), signal::sample_std(dts), dts.size()};
}

}  // namespace

LatencyEstimate estimate_latency(std::span<const Swipe> swipes, const RidgeSpec& ridge,
                                 const OnsetOptions& options) {
  LatencyEstimate est;
  for (const auto& sw : swipes) {
    try {
      est.per_crossing.push_back(measure_crossing(sw, ridge, options));
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::RidgeNotCrossed) {
        ++est.n_not_crossed;
      } else if (e.kind() == ErrorKind::NoActuationDetected) {
        ++est.n_no_actuation;
      } else {
        throw;
      }
    }
  }
  if (est.per_crossing.empty() && est.n_no_actuation > 0) {
    throw Error(ErrorKind::NoActuationDetected, "no ridge crossing showed an actuation response");
  }
  if (est.per_crossing.size() < 2) {
    throw Error(ErrorKind::InsufficientCrossings, "need at least 2 measurable ridge crossings");
  }
  std::vector<double> all, ltr, rtl;
  for (const auto& c : est.per_crossing) {
    all.push_back(c.dt);
    (c.direction == Direction::ltr ? ltr : rtl).push_back(c.dt);
  }
  est.n = all.size();
  est.mean_dt = signal::mean(all);
  est.std_dt = signal::sample_std(all);
  if (!ltr.empty()) est.ltr = summarize(ltr);
  if (!rtl.empty()) est.rtl = summarize(rtl);
  return est;
}

double spatial_shift(double dt, double v) { return v * dt; }

}  // namespace haptibench
