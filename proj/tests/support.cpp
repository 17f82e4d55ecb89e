#include "support.hpp"

#include <atomic>
#include <fstream>
#include <sstream>

#include <unistd.h>

namespace testsupport {

using namespace haptibench;

TempDir::TempDir(const std::string& tag) {
  static std::atomic<int> counter{0};
  path_ = std::filesystem::temp_directory_path() /
          ("haptibench_" + tag + "_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
  std::filesystem::remove_all(path_);
  std::filesystem::create_directories(path_);
}

TempDir::~TempDir() {
  std::error_code ec;
  std::filesystem::remove_all(path_, ec);
}

RecordingMeta default_meta(Actuation a) {
  RecordingMeta m;
  m.participant_id = "P01";
  m.tablet_id = "test";
  m.actuation = a;
  if (a == Actuation::ridge) m.ridge_span = Interval{49, 51};
  return m;
}

Recording make_recording(double duration, double rate, const std::function<double(double)>& x_of_t,
                         const std::function<double(double, double)>& mu_of_xt, double fn) {
  Recording r;
  r.meta = default_meta();
  r.meta.sample_rate = rate;
  const auto n = static_cast<std::size_t>(std::llround(duration * rate));
  r.samples.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = i / rate;
    const double x = x_of_t(t);
    r.samples.push_back({t, fn, mu_of_xt(x, t) * fn, x});
  }
  return r;
}

Swipe make_swipe(std::size_t n, double rate, double x0, double v, const std::function<double(double, double)>& mu_of_xt,
                 Direction dir) {
  Swipe s;
  s.direction = dir;
  s.mean_speed = v;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = i / rate;
    const double x = x0 + v * t;
    s.t.push_back(t);
    s.x.push_back(x);
    s.mu.push_back(mu_of_xt(x, t));
    s.f_n.push_back(1.0);
  }
  s.source_end = n;
  s.segment_t_end = s.t.empty() ? 0.0 : s.t.back();
  return s;
}

std::function<double(double)> triangle(double duration, int legs, double lo, double hi) {
  const double leg = duration / legs;
  return [=](double t) {
    const int k = std::min(legs - 1, static_cast<int>(t / leg));
    const double u = (t - k * leg) / leg;
    return k % 2 == 0 ? lo + (hi - lo) * u : hi - (hi - lo) * u;
  };
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace testsupport
