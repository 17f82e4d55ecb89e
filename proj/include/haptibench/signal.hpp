#pragma once

#include <cstddef>
#include <span>
#include <vector>

// Small numeric helpers shared by the recording, swipe and latency code.
namespace haptibench::signal {

/// dy/dt by central differences; one-sided differences at both ends.
/// Handles non-uniform time steps.
std::vector<double> central_difference(std::span<const double> t, std::span<const double> y);

/// Zero-phase centered moving average. `window` is forced odd; near the ends
/// the window shrinks symmetrically so no phase shift is introduced.
std::vector<double> moving_average(std::span<const double> y, std::size_t window);

/// Odd sample count covering `seconds` at `sample_rate` (at least 1).
std::size_t window_samples(double seconds, double sample_rate);

double mean(std::span<const double> v);
/// Sample standard deviation (n - 1 denominator); 0 for fewer than 2 values.
double sample_std(std::span<const double> v);
double median(std::vector<double> v);
/// Median of consecutive differences of a time axis.
double median_step(std::span<const double> t);

/// Linear interpolation of y at `at` on the monotone axis `x` between
/// indices i-1 and i.
double lerp_at(double x0, double y0, double x1, double y1, double at);

}  // namespace haptibench::signal
