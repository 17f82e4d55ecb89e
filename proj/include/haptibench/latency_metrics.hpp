#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "haptibench/swipe_pipeline.hpp"

namespace haptibench {

enum class Polarity { friction_up, friction_down };
std::string_view to_string(Polarity p);

/// Programmed ridge on the physical screen axis.
struct RidgeSpec {
  double x_lo = 49.0;
  double x_hi = 51.0;
  Polarity polarity = Polarity::friction_up;
  double width() const { return x_hi - x_lo; }
};

struct OnsetOptions {
  double smoothing_window = 0.005;  // s, zero-phase moving average on mu(t)
  double search_window = 0.300;     // s after the crossing
  double noise_floor_factor = 5.0;  // x std of the pre-crossing derivative
};

struct Crossing {
  double t1 = 0.0;  // finger reaches the ridge's leading edge
  double t2 = 0.0;  // friction derivative extremum
  double dt = 0.0;
  Direction direction = Direction::ltr;
  double onset_x = 0.0;         // screen-axis position at t2
  double onset_shift_mm = 0.0;  // onset_x minus the leading edge, signed
};

struct DirectionalLatency {
  double mean_dt = 0.0;
  double std_dt = 0.0;
  std::size_t n = 0;
};

struct LatencyEstimate {
  std::vector<Crossing> per_crossing;
  double mean_dt = 0.0;  // pooled over both directions
  double std_dt = 0.0;   // sample std across crossings
  std::size_t n = 0;
  std::optional<DirectionalLatency> ltr;
  std::optional<DirectionalLatency> rtl;
  std::size_t n_not_crossed = 0;
  std::size_t n_no_actuation = 0;
};

/// Time the swipe reaches the ridge's leading edge (x_lo left-to-right,
/// x_hi right-to-left), linearly interpolated. Throws RidgeNotCrossed.
double detect_ridge_crossing(const Swipe& swipe, const RidgeSpec& ridge);

/// Time of the extremum of d(mu)/dt (max for friction_up, min for
/// friction_down) within the search window after the crossing. Throws
/// NoActuationDetected when the extremum does not clear the noise floor.
double detect_actuation_onset(const Swipe& swipe, const RidgeSpec& ridge, const OnsetOptions& options);
double detect_actuation_onset(const Swipe& swipe, const RidgeSpec& ridge, double smoothing_window = 0.005);

/// Full per-crossing detail including the onset position.
Crossing measure_crossing(const Swipe& swipe, const RidgeSpec& ridge, const OnsetOptions& options = {});

/// Pools crossings from both directions. Swipes that miss the ridge or show
/// no actuation are counted and skipped. Throws NoActuationDetected when no
/// crossing showed actuation, InsufficientCrossings for fewer than 2.
LatencyEstimate estimate_latency(std::span<const Swipe> swipes, const RidgeSpec& ridge,
                                 const OnsetOptions& options = {});

/// Haptic shift in mm for sliding speed v (mm/s) and latency dt (s).
double spatial_shift(double dt, double v);

}  // namespace haptibench
