#include "haptibench/signal.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace haptibench::signal {

std::vector<double> central_difference(std::span<const double> t, std::span<const double> y) {
  const std::size_t n = y.size();
  std::vector<double> d(n, 0.0);
  if (n < 2) return d;
  d.front() = (y[1] - y[0]) / (t[1] - t[0]);
  d.back() = (y[n - 1] - y[n - 2]) / (t[n - 1] - t[n - 2]);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    d[i] = (y[i + 1] - y[i - 1]) / (t[i + 1] - t[i - 1]);
  }
  return d;
}

std::vector<double> moving_average(std::span<const double> y, std::size_t window) {
  const std::size_t n = y.size();
  if (window <= 1 || n == 0) return {y.begin(), y.end()};
  const std::size_t half = window / 2;
  // long double prefix sums keep window differences accurate on long series
  std::vector<long double> prefix(n + 1, 0.0L);
  for (std::size_t i = 0; i < n; ++i) prefix[i + 1] = prefix[i] + y[i];
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t h = std::min({half, i, n - 1 - i});
    const std::size_t lo = i - h;
    const std::size_t hi = i + h + 1;
    out[i] = static_cast<double>((prefix[hi] - prefix[lo]) / static_cast<long double>(hi - lo));
  }
  return out;
}

std::size_t window_samples(double seconds, double sample_rate) {
  auto n = static_cast<std::size_t>(std::llround(seconds * sample_rate));
  if (n < 1) n = 1;
  if (n % 2 == 0) ++n;
  return n;
}

double mean(std::span<const double> v) {
  if (v.empty()) return 0.0;
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double sample_std(std::span<const double> v) {
  if (v.size() < 2) return 0.0;
  const double m = mean(v);
  double ss = 0.0;
  for (double x : v) ss += (x - m) * (x - m);
  return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  const std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
  const double upper = v[mid];
  if (v.size() % 2 == 1) return upper;
  const double lower = *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid));
  return 0.5 * (lower + upper);
}

double median_step(std::span<const double> t) {
  if (t.size() < 2) return 0.0;
  std::vector<double> dt(t.size() - 1);
  for (std::size_t i = 1; i < t.size(); ++i) dt[i - 1] = t[i] - t[i - 1];
  return median(std::move(dt));
}

double lerp_at(double x0, double y0, double x1, double y1, double at) {
  if (x1 == x0) return y0;
  return y0 + (y1 - y0) * (at - x0) / (x1 - x0);
}

}  // namespace haptibench::signal
