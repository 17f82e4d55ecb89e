#include <doctest.h>

#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>
#include <set>

#include <json.hpp>

#include "haptibench/analysis.hpp"
#include "haptibench/error.hpp"
#include "haptibench/rng.hpp"
#include "haptibench/signal.hpp"
#include "haptibench/synth_bench.hpp"
#include "support.hpp"

using namespace haptibench;

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

SimSwipeParams fast_params(std::uint64_t seed) {
  SimSwipeParams p;
  p.seed = seed;
  p.sample_rate = 2000;
  return p;
}

}  // namespace

TEST_CASE("rng is reproducible and stream-separated") {
  Rng a(7, {1, 2}), b(7, {1, 2}), c(7, {1, 3}), d(8, {1, 2});
  bool differs_c = false, differs_d = false;
  for (int i = 0; i < 100; ++i) {
    const auto x = a.next_u64();
    CHECK(x == b.next_u64());
    differs_c |= x != c.next_u64();
    differs_d |= x != d.next_u64();
  }
  CHECK(differs_c);
  CHECK(differs_d);
}

TEST_CASE("rng draws have the right moments") {
  Rng r(123);
  double su = 0, sn = 0, sn2 = 0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double u = r.uniform();
    REQUIRE(u >= 0);
    REQUIRE(u < 1);
    su += u;
    const double z = r.normal();
    sn += z;
    sn2 += z * z;
  }
  CHECK(su / n == doctest::Approx(0.5).epsilon(0.01));
  CHECK(std::abs(sn / n) < 0.01);
  CHECK(sn2 / n == doctest::Approx(1.0).epsilon(0.01));
  for (int i = 0; i < 1000; ++i) REQUIRE(r.below(7) < 7);
}

TEST_CASE("spec validation") {
  SimTabletSpec s;
  CHECK_NOTHROW(check_spec(s));
  auto bad = s;
  bad.mu_base = 0;
  CHECK(kind_of([&] { check_spec(bad); }) == ErrorKind::InvalidSpec);
  bad = s;
  bad.latency_delay = -0.001;
  CHECK(kind_of([&] { check_spec(bad); }) == ErrorKind::InvalidSpec);
  bad = s;
  bad.spatial_pattern = SpatialPattern{0.1, 0.0, 0.0};
  CHECK(kind_of([&] { check_spec(bad); }) == ErrorKind::InvalidSpec);
  bad = s;
  bad.noise_std = -1;
  CHECK(kind_of([&] { check_spec(bad); }) == ErrorKind::InvalidSpec);

  SimSwipeParams p;
  CHECK_NOTHROW(check_params(p));
  auto bp = p;
  bp.speed = 0;
  CHECK(kind_of([&] { check_params(bp); }) == ErrorKind::InvalidSpec);
  bp = p;
  bp.n_swipes = 0;
  CHECK(kind_of([&] { check_params(bp); }) == ErrorKind::InvalidSpec);
  bp = p;
  bp.speed = 20;  // an 80 mm leg at 20 mm/s does not fit a 1.67 s slot
  CHECK(kind_of([&] { check_params(bp); }) == ErrorKind::InvalidSpec);
  bp = p;
  bp.force_window = {1.5, 0.5};
  CHECK(kind_of([&] { check_params(bp); }) == ErrorKind::InvalidSpec);
}

TEST_CASE("same seed gives byte-identical recordings") {
  SimTabletSpec spec;
  spec.noise_std = 0.01;
  spec.stick_slip.enabled = true;
  SimSwipeParams p;
  p.seed = 99;
  p.time_jitter_s = 0.00002;
  const auto a = simulate_swipe_recording(spec, p, Actuation::constant_max);
  const auto b = simulate_swipe_recording(spec, p, Actuation::constant_max);
  CHECK(serialize_recording(a.first) == serialize_recording(b.first));
  CHECK(a.second == b.second);
  p.seed = 100;
  const auto c = simulate_swipe_recording(spec, p, Actuation::constant_max);
  CHECK(serialize_recording(a.first) != serialize_recording(c.first));
}

TEST_CASE("trajectory geometry") {
  SimSwipeParams p;
  const Trajectory tr(p);
  CHECK(tr.leg_period() == doctest::Approx(10.0 / 6));
  for (int k = 0; k < 6; ++k) {
    const double mid = tr.leg_start(k) + tr.move_time() / 2;
    CHECK(std::abs(tr.v(mid)) == doctest::Approx(100).epsilon(1e-9));
    CHECK(tr.x(mid) == doctest::Approx(50).epsilon(1e-9));
    const auto pass = tr.passage_time(k, 49);
    REQUIRE(pass);
    CHECK(tr.x(*pass) == doctest::Approx(49).epsilon(1e-9));
  }
  CHECK(tr.x(0) == doctest::Approx(10));
  CHECK_FALSE(tr.passage_time(0, 95));
}

TEST_CASE("event log bookkeeping") {
  SimTabletSpec spec;
  spec.latency_delay = 0.02;
  const RidgeSpec ridge{49, 51};
  auto [rec, log] = simulate_swipe_recording(spec, SimSwipeParams{}, ridge);
  CHECK(rec.meta.actuation == Actuation::ridge);
  REQUIRE(rec.meta.ridge_span);
  CHECK(rec.meta.ridge_span->lo == 49);
  CHECK(log.reversal_times.size() == 5);
  REQUIRE(log.ridge_crossing_times.size() == log.actuation_onset_times.size());
  for (std::size_t k = 0; k < log.ridge_crossing_times.size(); ++k) {
    CHECK(log.actuation_onset_times[k] ==
          doctest::Approx(log.ridge_crossing_times[k] + spec.latency_delay + response_midpoint(spec)).epsilon(1e-12));
  }
  // every pass over a leading edge in the sampled trajectory appears exactly once
  std::size_t sampled = 0;
  for (std::size_t i = 1; i < rec.samples.size(); ++i) {
    const double a = rec.samples[i - 1].x, b = rec.samples[i].x;
    if (a < 49 && b >= 49) ++sampled;
    if (a > 51 && b <= 51) ++sampled;
  }
  CHECK(sampled == log.ridge_crossing_times.size());
  CHECK(log.ridge_crossing_times.size() == 6);
  for (std::size_t k = 0; k < log.crossing_directions.size(); ++k) {
    CHECK(log.crossing_directions[k] == (k % 2 ? Direction::rtl : Direction::ltr));
  }
}

TEST_CASE("ridge outside the travel range is rejected") {
  CHECK(kind_of([] { simulate_swipe_recording(SimTabletSpec{}, SimSwipeParams{}, RidgeSpec{95, 97}); }) ==
        ErrorKind::InvalidSpec);
  CHECK(kind_of([] { simulate_swipe_recording(SimTabletSpec{}, SimSwipeParams{}, Actuation::ridge); }) ==
        ErrorKind::InvalidSpec);
}

TEST_CASE("ultrasonic pattern gives its RMS as within-swipe std") {
  SimTabletSpec spec;
  spec.technology = Technology::ultrasonic;
  spec.mu_base = 0.771;
  spec.mu_actuated_mean = 0.620;
  spec.spatial_pattern = SpatialPattern{0.124, 25, 0};
  spec.crosstalk_slope = 0;
  auto [rec, log] = simulate_swipe_recording(spec, fast_params(3), Actuation::constant_max);
  const auto swipes = segment_swipes(compute_friction(rec));
  std::vector<double> stds;
  for (const auto& s : swipes) stds.push_back(summarize_swipe(s).std_mu);
  CHECK(std::abs(signal::mean(stds) - 0.124 / std::sqrt(2.0)) < 0.1 * 0.0877);
}

TEST_CASE("noiseless electroadhesion levels are recovered exactly") {
  SimTabletSpec spec;
  spec.mu_base = 0.443;
  spec.mu_actuated_mean = 0.744;
  PhysicalProtocol proto;
  proto.participants = 2;
  proto.trials_per_participant = 2;
  proto.ridge_trials_per_participant = 0;
  const auto session = simulate_physical_session(spec, proto, fast_params(0), 5);
  const auto m = analyze_physical(SessionSource(session), AnalysisConfig{});
  CHECK(m.high.mean_mu == doctest::Approx(0.744).epsilon(1e-9));
  CHECK(m.low.mean_mu == doctest::Approx(0.443).epsilon(1e-9));
  CHECK(m.trend.at("").slope_a == doctest::Approx(0.0036).epsilon(1e-6));
  CHECK(m.high_condition == Actuation::constant_max);
}

TEST_CASE("session plan sizes") {
  PhysicalProtocol proto;
  const auto s = simulate_physical_session(SimTabletSpec{}, proto, SimSwipeParams{}, 1);
  std::map<Actuation, std::size_t> per;
  std::set<std::string> stems;
  for (const auto& j : s.jobs) {
    ++per[j.meta.actuation];
    stems.insert(j.stem);
  }
  CHECK(per[Actuation::off] == 108);
  CHECK(per[Actuation::constant_max] == 108);
  CHECK(per[Actuation::ridge] == 12);
  CHECK(stems.size() == s.jobs.size());
  CHECK(s.pool.size() == 6);

  proto.participants = 0;
  CHECK(kind_of([&] { simulate_physical_session(SimTabletSpec{}, proto, SimSwipeParams{}, 1); }) ==
        ErrorKind::InvalidSpec);
}

TEST_CASE("inter-participant spread shows up in sigma") {
  PhysicalProtocol proto;
  proto.participants = 6;
  proto.trials_per_participant = 2;
  proto.ridge_trials_per_participant = 0;
  SimTabletSpec spec;
  spec.noise_std = 0.01;

  const auto none = simulate_physical_session(spec, proto, fast_params(0), 3);
  const auto m0 = analyze_physical(SessionSource(none), AnalysisConfig{});
  CHECK(m0.low.inter_participant_std_sigma < 0.005);
  CHECK(m0.high.inter_participant_std_sigma < 0.005);

  proto.inter_participant_mu_std = 0.1;
  const auto spread = simulate_physical_session(spec, proto, fast_params(0), 3);
  const auto m1 = analyze_physical(SessionSource(spread), AnalysisConfig{});
  const auto truth = physical_truth(spread);
  CHECK(std::abs(m1.low.inter_participant_std_sigma - truth.inter_participant_std_off) < 0.005);
  CHECK(std::abs(m1.low.inter_participant_std_sigma - 0.1) < 0.05);
}

TEST_CASE("drawn participant spread follows the sampling distribution of s") {
  // 5 s^2 / sigma^2 is chi-squared with 5 df for n = 6 normal draws
  boost::math::chi_squared chi(5);
  const double expected = boost::math::cdf(chi, 5 * 2.25) - boost::math::cdf(chi, 5 * 0.25);
  PhysicalProtocol proto;
  proto.participants = 6;
  proto.inter_participant_mu_std = 0.1;
  int inside = 0;
  const int runs = 400;
  for (int k = 0; k < runs; ++k) {
    proto.participant_seed = 1000 + k;
    std::vector<double> levels;
    for (const auto& p : draw_participants(proto, 0.443)) levels.push_back(0.443 * p.friction_factor);
    inside += std::abs(signal::sample_std(levels) - 0.1) < 0.05;
  }
  const double se = std::sqrt(expected * (1 - expected) / runs);
  CHECK(std::abs(static_cast<double>(inside) / runs - expected) < 4 * se);
}

TEST_CASE("pointing simulator validation and structure") {
  PointingProtocol proto;
  PointingGroundTruth truth;
  truth.miss_prob = 1.5;
  CHECK(kind_of([&] { simulate_pointing_logs(truth, proto, 1); }) == ErrorKind::InvalidSpec);
  truth = {};
  truth.mt_noise_std = -1;
  CHECK(kind_of([&] { simulate_pointing_logs(truth, proto, 1); }) == ErrorKind::InvalidSpec);
  proto.widths = {};
  CHECK(kind_of([&] { simulate_pointing_logs(PointingGroundTruth{}, proto, 1); }) == ErrorKind::InvalidSpec);

  PointingProtocol p2;
  PointingGroundTruth t2;
  t2.mt_noise_std = 300;
  t2.miss_prob = 0.2;
  const auto logs = simulate_pointing_logs(t2, p2, 5);
  CHECK(logs.size() == 480);
  for (const auto& t : logs) {
    CHECK(t.success == release_inside_target(t));
    CHECK(t.movement_time() >= 100);
  }
  for (std::size_t i = 1; i < logs.size(); ++i) {
    if (logs[i].participant_id == logs[i - 1].participant_id) CHECK(logs[i].direction != logs[i - 1].direction);
  }
  CHECK(serialize_pointing_log(logs) == serialize_pointing_log(simulate_pointing_logs(t2, p2, 5)));
}

TEST_CASE("tablet spec json round-trip") {
  SimTabletSpec s;
  s.tablet_id = "tpad";
  s.technology = Technology::ultrasonic;
  s.spatial_pattern = SpatialPattern{0.1, 20, 0.5};
  s.response_shape = ResponseShape::first_order;
  s.stick_slip = {true, 0.3, 0.05};
  nlohmann::ordered_json j;
  to_json(j, s);
  SimTabletSpec back;
  from_json(nlohmann::json::parse(j.dump()), back);
  CHECK(back == s);
}

TEST_CASE("dataset spec parsing") {
  const auto d = parse_dataset_spec(R"({
    "tablet": {"tablet_id": "tanvas", "mu_base": 0.45, "mu_actuated_mean": 0.75},
    "swipe": {"sample_rate": 2000},
    "physical": {"participants": 3, "trials_per_participant": 4},
    "pointing": {"participants": 2, "haptic": {"b_ms_per_bit": 180}}
  })");
  CHECK(d.tablet.tablet_id == "tanvas");
  CHECK(d.swipe.sample_rate == 2000);
  CHECK(d.physical.participants == 3);
  REQUIRE(d.pointing);
  CHECK(d.pointing->protocol.tablet_id == "tanvas");
  CHECK(d.pointing->haptic.b_ms_per_bit == 180);
  CHECK(kind_of([] { parse_dataset_spec("{"); }) == ErrorKind::InvalidSpec);
  CHECK(kind_of([] { parse_dataset_spec(R"({"tablet": {"technology": "piezo"}})"); }) == ErrorKind::InvalidSpec);
}

TEST_CASE("write_dataset layout and manifest") {
  testsupport::TempDir dir("synth");
  auto d = parse_dataset_spec(R"({
    "tablet": {"tablet_id": "tab", "noise_std": 0.01},
    "swipe": {"sample_rate": 1000},
    "physical": {"participants": 2, "trials_per_participant": 2, "ridge_trials_per_participant": 1},
    "pointing": {"participants": 2, "reps": 2}
  })");
  write_dataset(d, 7, dir.path(), 2);
  std::size_t csv = 0;
  for (const auto& e : std::filesystem::directory_iterator(dir.path())) csv += e.path().extension() == ".csv";
  CHECK(csv == 2 * (2 + 2 + 1));
  const auto gt = nlohmann::json::parse(testsupport::slurp(dir.path() / "ground_truth.json"));
  CHECK(gt.at("seed") == 7);
  CHECK(gt.at("recordings").size() == csv);
  CHECK(gt.at("truth").contains("delta_mu"));
  const auto trials = load_pointing_trials(dir.path() / "tab.trials.jsonl");
  CHECK(trials.size() == 2 * 2 * 8 * 2);

  testsupport::TempDir again("synth2");
  write_dataset(d, 7, again.path(), 1);
  for (const auto& e : std::filesystem::directory_iterator(dir.path())) {
    CHECK(testsupport::slurp(e.path()) == testsupport::slurp(again.path() / e.path().filename()));
  }
}
