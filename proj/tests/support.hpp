#pragma once

#include <cmath>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "haptibench/recording_io.hpp"
#include "haptibench/swipe_pipeline.hpp"

namespace testsupport {

// Scratch directory removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag);
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

haptibench::RecordingMeta default_meta(haptibench::Actuation a = haptibench::Actuation::off);

// Recording sampled at `rate` over [0, duration) with the given x(t) and mu(x, t),
// f_n fixed at `fn`.
haptibench::Recording make_recording(double duration, double rate, const std::function<double(double)>& x_of_t,
                                     const std::function<double(double, double)>& mu_of_xt, double fn = 1.0);

// Swipe with x = x0 + v t over n samples (canonical, already ascending).
haptibench::Swipe make_swipe(std::size_t n, double rate, double x0, double v,
                             const std::function<double(double, double)>& mu_of_xt,
                             haptibench::Direction dir = haptibench::Direction::ltr);

// Triangle wave between lo and hi with `legs` legs over `duration`.
std::function<double(double)> triangle(double duration, int legs, double lo, double hi);

std::string slurp(const std::filesystem::path& p);

}  // namespace testsupport
