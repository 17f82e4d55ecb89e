#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "haptibench/analysis.hpp"
#include "haptibench/stats.hpp"

namespace haptibench {

enum class MetricDirection { lower_better, higher_better, informational };
std::string_view to_string(MetricDirection d);
MetricDirection metric_direction_from_string(std::string_view s);

struct MetricDescriptor {
  std::string name;
  double value = 0.0;
  std::optional<double> std;
  std::size_t n = 0;
  MetricDirection direction = MetricDirection::informational;
  bool operator==(const MetricDescriptor&) const = default;
};

/// One tablet's rows for the physical and pointing tables plus the raw
/// samples the cross-tablet tests need.
struct TabletProfile {
  std::string tablet_id;
  std::vector<MetricDescriptor> physical;
  std::vector<MetricDescriptor> pointing;
  std::vector<double> delta_mu_samples;
  std::vector<double> mt_hardest_no_haptic;
  std::vector<double> mt_hardest_haptic;

  /// Throws MissingMetric.
  const MetricDescriptor& get(const std::string& name) const;
};

/// Throws MissingMetric naming the first absent component ("mu_high",
/// "mu_low", "friction_range", "latency", "pointing.no_haptic",
/// "pointing.haptic").
TabletProfile build_tablet_profile(const std::string& tablet_id, const std::optional<FrictionLevelStats>& high,
                                   const std::optional<FrictionLevelStats>& low,
                                   const std::optional<FrictionRangeStats>& range,
                                   const std::optional<LatencyEstimate>& latency,
                                   const std::optional<PointingMetrics>& no_haptic,
                                   const std::optional<PointingMetrics>& haptic);
TabletProfile build_tablet_profile(const TabletMetrics& metrics);

struct ReportRow {
  std::string name;
  MetricDescriptor a;
  MetricDescriptor b;
  bool operator==(const ReportRow&) const = default;
};

struct SummaryRow {
  std::string name;
  MetricDirection direction = MetricDirection::informational;
  MetricDescriptor a;
  MetricDescriptor b;
  double delta = 0.0;  // b - a
  bool operator==(const SummaryRow&) const = default;
};

struct ComparisonTests {
  stats::TTestResult range_t_test;
  stats::FTestResult range_f_test;
  stats::AnovaResult mt_anova;
  std::vector<std::string> anova_groups;
  std::vector<std::size_t> anova_group_sizes;
  bool operator==(const ComparisonTests&) const = default;
};

struct ComparisonReport {
  std::string spec_version = kSchemaVersion;
  std::string tablet_a;
  std::string tablet_b;
  std::vector<ReportRow> physical;
  std::vector<ReportRow> pointing;
  ComparisonTests tests;
  std::vector<SummaryRow> summary;
  std::vector<std::string> warnings;
  bool operator==(const ComparisonReport&) const = default;
};

/// Friction-range t-test and variance F-test on the per-repetition samples
/// (a against b), and one-way ANOVA over the four hardest-ID movement-time
/// groups. Unequal sample sizes are reported as warnings.
ComparisonReport compare_tablets(const TabletProfile& a, const TabletProfile& b);

enum class ReportFormat { json, markdown };

std::string render_report(const ComparisonReport& report, ReportFormat format);
nlohmann::ordered_json to_json(const ComparisonReport& report);
ComparisonReport comparison_report_from_json(const nlohmann::json& j);
ComparisonReport parse_report(std::string_view json_text);

}  // namespace haptibench
