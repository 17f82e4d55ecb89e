#include "haptibench/comparison_report.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>

#include "haptibench/error.hpp"

namespace haptibench {

std::string_view to_string(MetricDirection d) {
  switch (d) {
    case MetricDirection::lower_better: return "lower_better";
    case MetricDirection::higher_better: return "higher_better";
    case MetricDirection::informational: return "informational";
  }
  return "informational";
}

MetricDirection metric_direction_from_string(std::string_view s) {
  if (s == "lower_better") return MetricDirection::lower_better;
  if (s == "higher_better") return MetricDirection::higher_better;
  if (s == "informational") return MetricDirection::informational;
  throw Error(ErrorKind::MalformedMeta, fmt::format("unknown metric direction '{}'", s));
}

const MetricDescriptor& TabletProfile::get(const std::string& name) const {
  for (const auto* rows : {&physical, &pointing}) {
    for (const auto& d : *rows) {
      if (d.name == name) return d;
    }
  }
  throw Error(ErrorKind::MissingMetric, name);
}

namespace {

using MD = MetricDirection;

void add_level(std::vector<MetricDescriptor>& rows, const std::string& prefix, const FrictionLevelStats& s) {
  rows.push_back({prefix + ".mean", s.mean_mu, s.inter_participant_std_sigma, s.n_participants, MD::informational});
  rows.push_back({prefix + ".inter_participant_std", s.inter_participant_std_sigma, std::nullopt, s.n_participants,
                  MD::lower_better});
  rows.push_back({prefix + ".intra_trial_std", s.intra_trial_std_delta, s.intra_trial_std_spread, s.n_swipes,
                  MD::lower_better});
}

void add_pointing(std::vector<MetricDescriptor>& rows, const std::string& cond, const PointingMetrics& p) {
  rows.push_back({"fitts_slope." + cond, p.slope_mean, p.slope_std, p.per_participant_slopes.size(), MD::informational});
  rows.push_back({"mt_hardest." + cond + ".mean", p.mt_hardest_mean, p.mt_hardest_std, p.n_hardest, MD::lower_better});
  rows.push_back({"mt_hardest." + cond + ".std", p.mt_hardest_std, std::nullopt, p.n_hardest, MD::lower_better});
  const double n = static_cast<double>(p.n_trials);
  const std::optional<double> sd =
      p.n_trials > 1 ? std::optional<double>(std::sqrt(p.error_rate * (1.0 - p.error_rate) * n / (n - 1.0)))
                     : std::nullopt;
  rows.push_back({"error_rate." + cond, p.error_rate, sd, p.n_trials, MD::lower_better});
}

}  // namespace

TabletProfile build_tablet_profile(const std::string& tablet_id, const std::optional<FrictionLevelStats>& high,
                                   const std::optional<FrictionLevelStats>& low,
                                   const std::optional<FrictionRangeStats>& range,
                                   const std::optional<LatencyEstimate>& latency,
                                   const std::optional<PointingMetrics>& no_haptic,
                                   const std::optional<PointingMetrics>& haptic) {
  if (!high) throw Error(ErrorKind::MissingMetric, "mu_high");
  if (!low) throw Error(ErrorKind::MissingMetric, "mu_low");
  if (!range) throw Error(ErrorKind::MissingMetric, "friction_range");
  if (!latency || latency->n == 0) throw Error(ErrorKind::MissingMetric, "latency");
  if (!no_haptic) throw Error(ErrorKind::MissingMetric, "pointing.no_haptic");
  if (!haptic) throw Error(ErrorKind::MissingMetric, "pointing.haptic");

  TabletProfile p;
  p.tablet_id = tablet_id;
  add_level(p.physical, "mu_high", *high);
  add_level(p.physical, "mu_low", *low);
  const std::size_t n_range = range->per_trial_samples.empty() ? high->n_participants : range->per_trial_samples.size();
  p.physical.push_back({"friction_range.mean", range->delta_mu, range->inter_participant_std, n_range, MD::higher_better});
  p.physical.push_back({"friction_range.inter_participant_std", range->inter_participant_std, std::nullopt,
                        high->n_participants, MD::lower_better});
  if (range->relative_range) {
    p.physical.push_back({"friction_range.relative_range", *range->relative_range, std::nullopt, high->n_participants,
                          MD::informational});
  }
  if (range->friction_contrast) {
    p.physical.push_back({"friction_range.contrast", *range->friction_contrast, std::nullopt, high->n_participants,
                          MD::informational});
  }
  // latency rows in milliseconds
  p.physical.push_back({"latency.mean", latency->mean_dt * 1e3, latency->std_dt * 1e3, latency->n, MD::lower_better});

  add_pointing(p.pointing, "no_haptic", *no_haptic);
  add_pointing(p.pointing, "haptic", *haptic);

  p.delta_mu_samples = range->per_trial_samples;
  p.mt_hardest_no_haptic = no_haptic->mt_hardest_samples;
  p.mt_hardest_haptic = haptic->mt_hardest_samples;
  return p;
}

TabletProfile build_tablet_profile(const TabletMetrics& m) {
  std::optional<FrictionLevelStats> high, low;
  std::optional<FrictionRangeStats> range;
  std::optional<LatencyEstimate> latency;
  if (m.physical) {
    high = m.physical->high;
    low = m.physical->low;
    range = m.physical->range;
    latency = m.physical->latency;
  }
  return build_tablet_profile(m.tablet_id, high, low, range, latency, m.pointing_no_haptic, m.pointing_haptic);
}

namespace {

const MetricDescriptor* find(const std::vector<MetricDescriptor>& rows, const std::string& name) {
  for (const auto& d : rows) {
    if (d.name == name) return &d;
  }
  return nullptr;
}

std::vector<ReportRow> pair_rows(const std::vector<MetricDescriptor>& a, const std::vector<MetricDescriptor>& b) {
  std::vector<ReportRow> rows;
  for (const auto& da : a) {
    if (const auto* db = find(b, da.name)) rows.push_back({da.name, da, *db});
  }
  return rows;
}

// Descriptors kept in the summary, in table order; the last two carry no
// direction.
const std::vector<std::string>& summary_names() {
  static const std::vector<std::string> names{
      "mu_low.intra_trial_std",    "mu_high.intra_trial_std", "friction_range.mean",
      "friction_range.inter_participant_std", "latency.mean",   "mt_hardest.no_haptic.mean",
      "mt_hardest.no_haptic.std",  "mt_hardest.haptic.mean",  "mt_hardest.haptic.std",
      "error_rate.no_haptic",      "error_rate.haptic",       "mu_high.mean",
      "mu_low.mean"};
  return names;
}

}  // namespace

ComparisonReport compare_tablets(const TabletProfile& a, const TabletProfile& b) {
  ComparisonReport r;
  r.tablet_a = a.tablet_id;
  r.tablet_b = b.tablet_id;
  r.physical = pair_rows(a.physical, b.physical);
  r.pointing = pair_rows(a.pointing, b.pointing);

  if (a.delta_mu_samples.size() != b.delta_mu_samples.size()) {
    r.warnings.push_back(fmt::format("SampleSizeMismatch: friction range samples {} vs {}", a.delta_mu_samples.size(),
                                     b.delta_mu_samples.size()));
  }
  r.tests.range_t_test = stats::two_sample_t_test(a.delta_mu_samples, b.delta_mu_samples, true);
  r.tests.range_f_test = stats::f_test_variance(a.delta_mu_samples, b.delta_mu_samples);

  const std::vector<std::vector<double>> groups{a.mt_hardest_no_haptic, a.mt_hardest_haptic, b.mt_hardest_no_haptic,
                                                b.mt_hardest_haptic};
  r.tests.anova_groups = {a.tablet_id + "/no_haptic", a.tablet_id + "/haptic", b.tablet_id + "/no_haptic",
                          b.tablet_id + "/haptic"};
  for (const auto& g : groups) r.tests.anova_group_sizes.push_back(g.size());
  if (std::adjacent_find(r.tests.anova_group_sizes.begin(), r.tests.anova_group_sizes.end(),
                         std::not_equal_to<>()) != r.tests.anova_group_sizes.end()) {
    r.warnings.push_back("SampleSizeMismatch: hardest-ID movement-time groups differ in size");
  }
  r.tests.mt_anova = stats::one_way_anova(groups);

  for (const auto& name : summary_names()) {
    const auto& da = a.get(name);
    const auto& db = b.get(name);
    r.summary.push_back({name, da.direction, da, db, db.value - da.value});
  }
  return r;
}

namespace {

using ojson = nlohmann::ordered_json;

ojson descriptor_json(const MetricDescriptor& d) {
  ojson j;
  j["name"] = d.name;
  j["value"] = d.value;
  j["std"] = d.std ? ojson(*d.std) : ojson(nullptr);
  j["n"] = d.n;
  j["direction"] = to_string(d.direction);
  return j;
}

MetricDescriptor descriptor_from_json(const nlohmann::json& j) {
  MetricDescriptor d;
  d.name = j.at("name").get<std::string>();
  d.value = j.at("value").get<double>();
  if (!j.at("std").is_null()) d.std = j.at("std").get<double>();
  d.n = j.at("n").get<std::size_t>();
  d.direction = metric_direction_from_string(j.at("direction").get<std::string>());
  return d;
}

ojson rows_json(const std::vector<ReportRow>& rows) {
  ojson arr = ojson::array();
  for (const auto& r : rows) arr.push_back({{"name", r.name}, {"a", descriptor_json(r.a)}, {"b", descriptor_json(r.b)}});
  return arr;
}

std::vector<ReportRow> rows_from_json(const nlohmann::json& j) {
  std::vector<ReportRow> rows;
  for (const auto& r : j) {
    rows.push_back({r.at("name").get<std::string>(), descriptor_from_json(r.at("a")), descriptor_from_json(r.at("b"))});
  }
  return rows;
}

}  // namespace

ojson to_json(const ComparisonReport& r) {
  ojson j;
  j["spec_version"] = r.spec_version;
  j["tablet_a"] = r.tablet_a;
  j["tablet_b"] = r.tablet_b;
  j["physical"] = rows_json(r.physical);
  j["pointing"] = rows_json(r.pointing);
  const auto& t = r.tests;
  ojson groups = ojson::array();
  for (std::size_t i = 0; i < t.anova_groups.size(); ++i) {
    groups.push_back({{"name", t.anova_groups[i]}, {"n", t.anova_group_sizes[i]}});
  }
  j["tests"] = {{"range_t_test",
                 {{"t_stat", t.range_t_test.t_stat},
                  {"df", t.range_t_test.df},
                  {"p_value", t.range_t_test.p_value},
                  {"pooled", t.range_t_test.pooled}}},
                {"range_f_test",
                 {{"f_stat", t.range_f_test.f_stat},
                  {"df1", t.range_f_test.df1},
                  {"df2", t.range_f_test.df2},
                  {"p_value", t.range_f_test.p_value}}},
                {"mt_anova",
                 {{"f_stat", t.mt_anova.f_stat},
                  {"df_between", t.mt_anova.df_between},
                  {"df_within", t.mt_anova.df_within},
                  {"p_value", t.mt_anova.p_value},
                  {"groups", groups}}}};
  ojson summary = ojson::array();
  for (const auto& s : r.summary) {
    summary.push_back({{"name", s.name},
                       {"direction", to_string(s.direction)},
                       {"a", descriptor_json(s.a)},
                       {"b", descriptor_json(s.b)},
                       {"delta", s.delta}});
  }
  j["summary"] = summary;
  j["warnings"] = r.warnings;
  return j;
}

ComparisonReport comparison_report_from_json(const nlohmann::json& j) {
  ComparisonReport r;
  r.spec_version = j.at("spec_version").get<std::string>();
  r.tablet_a = j.at("tablet_a").get<std::string>();
  r.tablet_b = j.at("tablet_b").get<std::string>();
  r.physical = rows_from_json(j.at("physical"));
  r.pointing = rows_from_json(j.at("pointing"));
  const auto& t = j.at("tests");
  const auto& tt = t.at("range_t_test");
  r.tests.range_t_test = {tt.at("t_stat").get<double>(), tt.at("df").get<double>(), tt.at("p_value").get<double>(),
                          tt.at("pooled").get<bool>()};
  const auto& ft = t.at("range_f_test");
  r.tests.range_f_test = {ft.at("f_stat").get<double>(), ft.at("df1").get<std::size_t>(),
                          ft.at("df2").get<std::size_t>(), ft.at("p_value").get<double>()};
  const auto& at = t.at("mt_anova");
  r.tests.mt_anova = {at.at("f_stat").get<double>(), at.at("df_between").get<std::size_t>(),
                      at.at("df_within").get<std::size_t>(), at.at("p_value").get<double>()};
  for (const auto& g : at.at("groups")) {
    r.tests.anova_groups.push_back(g.at("name").get<std::string>());
    r.tests.anova_group_sizes.push_back(g.at("n").get<std::size_t>());
  }
  for (const auto& s : j.at("summary")) {
    r.summary.push_back({s.at("name").get<std::string>(),
                         metric_direction_from_string(s.at("direction").get<std::string>()),
                         descriptor_from_json(s.at("a")), descriptor_from_json(s.at("b")), s.at("delta").get<double>()});
  }
  r.warnings = j.at("warnings").get<std::vector<std::string>>();
  return r;
}

ComparisonReport parse_report(std::string_view json_text) {
  try {
    return comparison_report_from_json(nlohmann::json::parse(json_text));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::MalformedMeta, fmt::format("report file: {}", e.what()));
  }
}

namespace {

std::string num(double v) { return fmt::format("{:.4g}", v); }

std::string cell(const MetricDescriptor& d) {
  if (d.std) return fmt::format("{} (sd {}, n={})", num(d.value), num(*d.std), d.n);
  return fmt::format("{} (n={})", num(d.value), d.n);
}

std::string direction_mark(MetricDirection d) {
  switch (d) {
    case MetricDirection::lower_better: return "(-) lower is better";
    case MetricDirection::higher_better: return "(+) higher is better";
    case MetricDirection::informational: return "informational";
  }
  return "informational";
}

void table(std::string& out, const ComparisonReport& r, const std::vector<ReportRow>& rows) {
  out += fmt::format("| Metric | {} | {} |\n|---|---|---|\n", r.tablet_a, r.tablet_b);
  for (const auto& row : rows) out += fmt::format("| {} | {} | {} |\n", row.name, cell(row.a), cell(row.b));
}

std::string render_markdown(const ComparisonReport& r) {
  std::string out;
  out += fmt::format("# Tablet comparison: {} vs {}\n\n", r.tablet_a, r.tablet_b);
  out += fmt::format("Schema version {}. Friction values are dimensionless; latency and movement times in ms.\n\n",
                     r.spec_version);
  out += "## Physical\n\n";
  table(out, r, r.physical);
  out += "\n## Pointing\n\n";
  table(out, r, r.pointing);

  const auto& t = r.tests;
  out += "\n## Statistical tests\n\n";
  out += fmt::format("- Friction range, two-sample t-test ({}): T_{} = {}, p = {:.3g}\n",
                     t.range_t_test.pooled ? "pooled" : "Welch", num(t.range_t_test.df), num(t.range_t_test.t_stat),
                     t.range_t_test.p_value);
  out += fmt::format("- Friction range, F-test for equality of variances: F_{{{},{}}} = {}, p = {:.3g}\n",
                     t.range_f_test.df1, t.range_f_test.df2, num(t.range_f_test.f_stat), t.range_f_test.p_value);
  out += fmt::format("- Movement time at the hardest ID, one-way ANOVA: F_{{{},{}}} = {}, p = {:.3g}\n",
                     t.mt_anova.df_between, t.mt_anova.df_within, num(t.mt_anova.f_stat), t.mt_anova.p_value);
  for (std::size_t i = 0; i < t.anova_groups.size(); ++i) {
    out += fmt::format("  - group {}: n={}\n", t.anova_groups[i], t.anova_group_sizes[i]);
  }

  out += "\n## Summary\n\n";
  out += fmt::format("| Descriptor | Direction | {} | {} | {} - {} |\n|---|---|---|---|---|\n", r.tablet_a, r.tablet_b,
                     r.tablet_b, r.tablet_a);
  for (const auto& s : r.summary) {
    out += fmt::format("| {} | {} | {} | {} | {} |\n", s.name, direction_mark(s.direction), cell(s.a), cell(s.b),
                       num(s.delta));
  }
  if (!r.warnings.empty()) {
    out += "\n## Warnings\n\n";
    for (const auto& w : r.warnings) out += fmt::format("- {}\n", w);
  }
  return out;
}

}  // namespace

std::string render_report(const ComparisonReport& report, ReportFormat format) {
  if (format == ReportFormat::json) return to_json(report).dump(2) + "\n";
  return render_markdown(report);
}

}  // namespace haptibench
