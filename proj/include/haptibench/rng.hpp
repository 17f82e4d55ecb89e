#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace haptibench {

/// Portable seeded random source.
///
/// Raw bits come from std::mt19937_64, whose output sequence is fixed by the
/// C++ standard, seeded through std::seed_seq (also fully specified). The
/// real-valued draws are computed here rather than with the <random>
/// distributions, whose algorithms differ between standard libraries. Same
/// seed and stream tags give the same numbers on every conforming platform.
class Rng {
 public:
  /// `seed` selects the experiment; `stream` tags select an independent
  /// substream (participant, condition, trial, ...).
  explicit Rng(std::uint64_t seed, std::initializer_list<std::uint64_t> stream = {});

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Standard normal via Box-Muller (pairs are cached).
  double normal();
  double normal(double mean, double stddev) { return mean + stddev * normal(); }

  bool bernoulli(double p) { return uniform() < p; }

  /// Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n);

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace haptibench
