#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "haptibench/error.hpp"
#include "haptibench/friction_metrics.hpp"
#include "haptibench/rng.hpp"
#include "support.hpp"

using namespace haptibench;
using testsupport::make_swipe;

namespace {

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected haptibench::Error");
  return ErrorKind::Io;
}

Swipe flat(double mu) {
  return make_swipe(200, 1000, 10, 400, [=](double, double) { return mu; });
}

FrictionLevelStats level(std::map<std::string, double> means) {
  std::vector<ParticipantSwipes> g;
  for (const auto& [pid, m] : means) g.push_back({pid, {flat(m)}});
  return friction_level_stats(g);
}

}  // namespace

TEST_CASE("single participant at a constant level") {
  std::vector<ParticipantSwipes> g{{"P01", {flat(0.744), flat(0.744)}}};
  const auto st = friction_level_stats(g);
  CHECK(st.mean_mu == doctest::Approx(0.744).epsilon(1e-14));
  CHECK(st.intra_trial_std_delta < 1e-12);
  CHECK(st.inter_participant_std_sigma == 0);
  CHECK(st.n_swipes == 2);
  CHECK(st.n_participants == 1);
}

TEST_CASE("two participants give the sample std of their means") {
  const auto st = level({{"P01", 0.6}, {"P02", 0.8}});
  CHECK(st.mean_mu == doctest::Approx(0.7));
  CHECK(st.inter_participant_std_sigma == doctest::Approx(std::sqrt(0.02)).epsilon(1e-12));
  CHECK(st.inter_participant_std_sigma == doctest::Approx(0.1414).epsilon(1e-3));
}

TEST_CASE("per-participant mean is the mean of swipe means") {
  // P01 has three swipes, P02 one: the grand mean weights participants equally
  std::vector<ParticipantSwipes> g{{"P01", {flat(0.4), flat(0.5), flat(0.6)}}, {"P02", {flat(0.9)}}};
  const auto st = friction_level_stats(g);
  CHECK(st.per_participant_mean.at("P01") == doctest::Approx(0.5));
  CHECK(st.mean_mu == doctest::Approx(0.7));
  CHECK(st.n_swipes >= st.n_participants);
}

TEST_CASE("sinusoidal actuation gives its RMS as intra-trial std") {
  const double amp = 0.088 * std::numbers::sqrt2;
  auto s = make_swipe(8000, 10000, 10, 100, [=](double x, double) { return 0.55 + amp * std::cos(2 * std::numbers::pi * x / 25); });
  std::vector<ParticipantSwipes> g{{"P01", {s}}};
  const auto st = friction_level_stats(g);
  CHECK(std::abs(st.intra_trial_std_delta - 0.088) < 0.05 * 0.088);
  CHECK(st.mean_mu == doctest::Approx(0.55).epsilon(0.01));
}

TEST_CASE("no accepted swipes") {
  std::vector<ParticipantSwipes> g{{"P01", {}}};
  CHECK(kind_of([&] { friction_level_stats(g); }) == ErrorKind::NoAcceptedSwipes);
  std::vector<ParticipantSwipes> none;
  CHECK(kind_of([&] { friction_level_stats(none); }) == ErrorKind::NoAcceptedSwipes);
}

TEST_CASE("delta is invariant under swipe reordering") {
  Rng rng(1);
  std::vector<Swipe> swipes;
  for (int k = 0; k < 6; ++k) {
    const double sd = 0.01 * (k + 1);
    swipes.push_back(make_swipe(300, 1000, 10, 200, [&](double, double) { return 0.5 + rng.normal(0, sd); }));
  }
  std::vector<ParticipantSwipes> a{{"P01", swipes}};
  std::reverse(swipes.begin(), swipes.end());
  std::rotate(swipes.begin(), swipes.begin() + 2, swipes.end());
  std::vector<ParticipantSwipes> b{{"P01", swipes}};
  CHECK(friction_level_stats(a).intra_trial_std_delta ==
        doctest::Approx(friction_level_stats(b).intra_trial_std_delta).epsilon(1e-14));
}

TEST_CASE("friction range on table means") {
  const auto tpad = friction_range(level({{"P", 0.771}}), level({{"P", 0.620}}));
  CHECK(std::abs(tpad.delta_mu - 0.151) < 1e-12);
  const auto tanvas = friction_range(level({{"P", 0.744}}), level({{"P", 0.443}}));
  CHECK(std::abs(tanvas.delta_mu - 0.301) < 1e-12);
  CHECK(std::abs(*tanvas.relative_range - 1.6795) < 1e-3);
  CHECK(std::abs(*tanvas.friction_contrast - 0.4046) < 1e-3);
  CHECK(std::abs(*tpad.relative_range - 1.2435) < 1e-3);
  CHECK(std::abs(*tpad.friction_contrast - 0.1959) < 1e-3);
}

TEST_CASE("equal levels give zero range") {
  const auto r = friction_range(level({{"P", 0.5}}), level({{"P", 0.5}}));
  CHECK(r.delta_mu == 0);
  CHECK(*r.relative_range == 1);
  CHECK(*r.friction_contrast == 0);
}

TEST_CASE("zero low level flags the division") {
  FrictionLevelStats hi = level({{"P", 0.5}}), lo = level({{"P", 0.5}});
  lo.mean_mu = 0;
  const auto r = friction_range(hi, lo);
  CHECK(r.division_by_zero);
  CHECK_FALSE(r.relative_range);
  CHECK(r.friction_contrast);
}

TEST_CASE("FC equals 1 - 1/r and lies in [0, 1)") {
  Rng rng(5);
  for (int i = 0; i < 200; ++i) {
    const double lo = rng.uniform(0.05, 1.0);
    const double hi = lo + rng.uniform(0, 1.0);
    const auto r = friction_range(level({{"P", hi}}), level({{"P", lo}}));
    CHECK(std::abs(*r.friction_contrast - (1 - 1 / *r.relative_range)) < 1e-12);
    CHECK(*r.friction_contrast >= 0);
    CHECK(*r.friction_contrast < 1);
  }
}

TEST_CASE("participant sets must match") {
  CHECK(kind_of([] { friction_range(level({{"P01", 0.7}}), level({{"P02", 0.4}})); }) ==
        ErrorKind::ParticipantSetMismatch);
  CHECK(kind_of([] { friction_range(level({{"P01", 0.7}, {"P02", 0.7}}), level({{"P01", 0.4}})); }) ==
        ErrorKind::ParticipantSetMismatch);
}

TEST_CASE("per-repetition pairing") {
  RepetitionTable hi, lo;
  for (int k = 1; k <= 3; ++k) {
    hi[{"P01", 0, k}] = 0.7 + 0.01 * k;
    lo[{"P01", 0, k}] = 0.4;
  }
  hi[{"P01", 0, 4}] = 0.9;  // unpaired
  const auto r = friction_range(level({{"P01", 0.72}}), level({{"P01", 0.4}}), hi, lo);
  REQUIRE(r.per_trial_samples.size() == 3);
  CHECK(r.per_trial_samples[0] == doctest::Approx(0.31));
  CHECK(r.per_trial_samples[2] == doctest::Approx(0.33));
}

TEST_CASE("inter-participant std of delta mu") {
  const auto r = friction_range(level({{"A", 0.8}, {"B", 0.9}}), level({{"A", 0.5}, {"B", 0.4}}));
  // per-participant deltas 0.3 and 0.5
  CHECK(r.inter_participant_std == doctest::Approx(std::sqrt(0.02)).epsilon(1e-12));
}

TEST_CASE("scale covariance") {
  auto build = [&](double k, std::uint64_t seed) {
    Rng local(seed);
    std::vector<ParticipantSwipes> hi, lo;
    for (int p = 0; p < 4; ++p) {
      const std::string id = "P0" + std::to_string(p);
      const double base = local.uniform(0.4, 0.5), top = local.uniform(0.7, 0.8);
      std::vector<Swipe> hs, ls;
      for (int s = 0; s < 3; ++s) {
        hs.push_back(make_swipe(100, 1000, 10, 500, [&](double x, double) { return k * (top + 0.01 * std::sin(x + s)); }));
        ls.push_back(make_swipe(100, 1000, 10, 500, [&](double x, double) { return k * (base + 0.02 * std::cos(x * s)); }));
      }
      hi.push_back({id, hs});
      lo.push_back({id, ls});
    }
    return std::pair{friction_level_stats(hi), friction_level_stats(lo)};
  };
  for (double k : {0.5, 2.0, 3.3}) {
    const auto [h1, l1] = build(1.0, 99);
    const auto [hk, lk] = build(k, 99);
    CHECK(hk.mean_mu == doctest::Approx(k * h1.mean_mu).epsilon(1e-12));
    CHECK(hk.intra_trial_std_delta == doctest::Approx(k * h1.intra_trial_std_delta).epsilon(1e-12));
    CHECK(hk.inter_participant_std_sigma == doctest::Approx(k * h1.inter_participant_std_sigma).epsilon(1e-12));
    const auto r1 = friction_range(h1, l1), rk = friction_range(hk, lk);
    CHECK(rk.delta_mu == doctest::Approx(k * r1.delta_mu).epsilon(1e-12));
    CHECK(std::abs(*rk.relative_range - *r1.relative_range) < 1e-12);
    CHECK(std::abs(*rk.friction_contrast - *r1.friction_contrast) < 1e-12);
  }
}

TEST_CASE("sigma is zero exactly when participant means agree") {
  CHECK(level({{"A", 0.6}, {"B", 0.6}, {"C", 0.6}}).inter_participant_std_sigma == 0);
  CHECK(level({{"A", 0.6}, {"B", 0.6}, {"C", 0.6000001}}).inter_participant_std_sigma > 0);
}
