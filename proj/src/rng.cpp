#include "haptibench/rng.hpp"

#include <cmath>
#include <numbers>
#include <vector>

namespace haptibench {

namespace {

std::seed_seq make_seed_seq(std::uint64_t seed, std::initializer_list<std::uint64_t> stream) {
  std::vector<std::uint32_t> words;
  words.reserve(2 + 2 * stream.size());
  auto push = [&words](std::uint64_t v) {
    words.push_back(static_cast<std::uint32_t>(v & 0xffffffffu));
    words.push_back(static_cast<std::uint32_t>(v >> 32));
  };
  push(seed);
  for (auto s : stream) push(s);
  return std::seed_seq(words.begin(), words.end());
}

}  // namespace

Rng::Rng(std::uint64_t seed, std::initializer_list<std::uint64_t> stream) {
  auto seq = make_seed_seq(seed, stream);
  engine_.seed(seq);
}

double Rng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(theta);
  has_spare_ = true;
  return r * std::cos(theta);
}

std::uint64_t Rng::below(std::uint64_t n) {
  if (n == 0) return 0;
  // rejection sampling keeps the draw unbiased
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t v = engine_();
  while (v >= limit) v = engine_();
  return v % n;
}

}  // namespace haptibench
