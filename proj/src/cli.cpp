#include "haptibench/cli.hpp"

#include <CLI11.hpp>
#include <cstdlib>
#include <fmt/format.h>
#include <ostream>

#include "haptibench/analysis.hpp"
#include "haptibench/comparison_report.hpp"
#include "haptibench/error.hpp"
#include "haptibench/synth_bench.hpp"

namespace haptibench {

namespace {

bool is_input_error(ErrorKind k) {
  switch (k) {
    case ErrorKind::MalformedRow:
    case ErrorKind::NonMonotonicTime:
    case ErrorKind::EmptyRecording:
    case ErrorKind::MalformedLine:
    case ErrorKind::InconsistentSuccessFlag:
    case ErrorKind::MalformedMeta:
    case ErrorKind::InvalidSpec:
    case ErrorKind::Io:
    case ErrorKind::InvalidConfig:
      return true;
    default:
      return false;
  }
}

// Flags shared by the analysis commands.
struct Tunables {
  double cv_threshold = QualityOptions{}.cv_threshold;
  double slip_drop_fraction = QualityOptions{}.slip_drop_fraction;
  double min_speed_fraction = SegmentationOptions{}.min_speed_fraction;
  double smoothing_window = OnsetOptions{}.smoothing_window;
  double search_window = OnsetOptions{}.search_window;
  double pivot = 50.0;
  std::string trend_scope = "dataset";
  std::vector<std::string> sets;
  std::string config_path;
  int jobs = 0;
  std::string dump_swipes;
};

void add_tunables(CLI::App* cmd, Tunables& t) {
  cmd->add_option("--cv-threshold", t.cv_threshold, "Swipe rejection threshold on the CV of mu")->capture_default_str();
  cmd->add_option("--slip-drop-fraction", t.slip_drop_fraction, "Slip event size relative to the local median")
      ->capture_default_str();
  cmd->add_option("--min-speed-fraction", t.min_speed_fraction, "Swipe trim threshold relative to the median speed")
      ->capture_default_str();
  cmd->add_option("--smoothing-window", t.smoothing_window, "Onset smoothing window, s")->capture_default_str();
  cmd->add_option("--search-window", t.search_window, "Onset search window after the crossing, s")
      ->capture_default_str();
  cmd->add_option("--pivot", t.pivot, "Trend pivot, mm")->capture_default_str();
  cmd->add_option("--trend-scope", t.trend_scope, "dataset | participant | none")->capture_default_str();
  cmd->add_option("--set", t.sets, "Override any setting, key=value (repeatable)");
  cmd->add_option("--config", t.config_path, "JSON settings file; overrides flags (fallback: $HAPTIBENCH_CONFIG)");
  cmd->add_option("--jobs", t.jobs, "Worker threads (0 = all cores)")->capture_default_str();
  cmd->add_option("--dump-swipes", t.dump_swipes, "Directory for per-swipe x,mu,t CSV dumps");
}

AnalysisConfig make_config(const Tunables& t) {
  AnalysisConfig c;
  c.quality.cv_threshold = t.cv_threshold;
  c.quality.slip_drop_fraction = t.slip_drop_fraction;
  c.segmentation.min_speed_fraction = t.min_speed_fraction;
  c.onset.smoothing_window = t.smoothing_window;
  c.onset.search_window = t.search_window;
  c.trend_pivot = t.pivot;
  c.trend_scope = trend_scope_from_string(t.trend_scope);
  c.jobs = t.jobs;
  for (const auto& s : t.sets) {
    const auto eq = s.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw Error(ErrorKind::InvalidConfig, fmt::format("--set expects key=value, got '{}'", s));
    }
    apply_override(c, s.substr(0, eq), s.substr(eq + 1));
  }
  std::string path = t.config_path;
  if (path.empty()) {
    if (const char* env = std::getenv("HAPTIBENCH_CONFIG"); env != nullptr) path = env;
  }
  if (!path.empty()) {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(read_text_file(path));
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorKind::InvalidConfig, fmt::format("{}: {}", path, e.what()));
    }
    apply_config_json(c, j);
    if (j.contains("jobs")) c.jobs = j.at("jobs").get<int>();
  }
  if (!t.dump_swipes.empty()) c.dump_swipes_dir = t.dump_swipes;
  return c;
}

void emit(const std::string& path, const std::string& text, bool to_stdout, std::ostream& out) {
  write_text_file_atomic(path, text);
  if (to_stdout) out << text;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Benchmark friction-modulation haptic touchscreens", "haptibench"};
  app.require_subcommand(1);

  // simulate
  auto* sim = app.add_subcommand("simulate", "Generate a synthetic dataset with ground truth");
  std::string spec_path, sim_out;
  std::uint64_t seed = 1;
  int sim_jobs = 0;
  sim->add_option("--spec", spec_path, "Dataset spec JSON")->required();
  sim->add_option("--out", sim_out, "Output directory")->required();
  sim->add_option("--seed", seed, "Random seed")->capture_default_str();
  sim->add_option("--jobs", sim_jobs, "Worker threads (0 = all cores)")->capture_default_str();

  // physical
  auto* phys = app.add_subcommand("physical", "Physical (and pointing) metrics of one dataset");
  std::string phys_in, phys_out;
  bool phys_stdout = false;
  Tunables phys_t;
  phys->add_option("--in", phys_in, "Dataset directory")->required();
  phys->add_option("--out", phys_out, "Metrics JSON")->required();
  phys->add_flag("--stdout", phys_stdout, "Also print the JSON to stdout");
  add_tunables(phys, phys_t);

  // fitts
  auto* fitts = app.add_subcommand("fitts", "Pointing metrics from .trials.jsonl logs");
  std::string fitts_in, fitts_out;
  bool fitts_stdout = false;
  fitts->add_option("--in", fitts_in, "Log file or directory")->required();
  fitts->add_option("--out", fitts_out, "Output JSON")->required();
  fitts->add_flag("--stdout", fitts_stdout, "Also print the JSON to stdout");

  // compare
  auto* cmp = app.add_subcommand("compare", "Compare two tablets");
  std::string metrics_a, metrics_b, raw_a, raw_b, cmp_out, cmp_format;
  bool cmp_stdout = false;
  Tunables cmp_t;
  cmp->add_option("metrics_a", metrics_a, "Metrics JSON of tablet A")->required();
  cmp->add_option("metrics_b", metrics_b, "Metrics JSON of tablet B")->required();
  cmp->add_option("--raw-a", raw_a, "Dataset directory of tablet A (recomputes raw samples)");
  cmp->add_option("--raw-b", raw_b, "Dataset directory of tablet B (recomputes raw samples)");
  cmp->add_option("--out", cmp_out, "Report path (.md or .json)")->required();
  cmp->add_option("--format", cmp_format, "markdown | json (default: from the extension)");
  cmp->add_flag("--stdout", cmp_stdout, "Also print the report to stdout");
  add_tunables(cmp, cmp_t);

  // report
  auto* rep = app.add_subcommand("report", "Render a saved comparison report");
  std::string rep_in, rep_out, rep_format = "markdown";
  bool rep_stdout = false;
  rep->add_option("--in", rep_in, "Report JSON")->required();
  rep->add_option("--format", rep_format, "markdown | json")->capture_default_str();
  rep->add_option("--out", rep_out, "Output path")->required();
  rep->add_flag("--stdout", rep_stdout, "Also print to stdout");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    err << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "haptibench: " << e.what() << "\n\n" << app.help();
    return kExitInputError;
  }

  auto format_of = [](const std::string& name) {
    if (name == "json") return ReportFormat::json;
    if (name == "markdown" || name == "md") return ReportFormat::markdown;
    throw Error(ErrorKind::InvalidConfig, fmt::format("unknown report format '{}'", name));
  };

  try {
    if (sim->parsed()) {
      const auto spec = parse_dataset_spec(read_text_file(spec_path));
      err << fmt::format("haptibench: simulating '{}' (seed {}) into {}\n", spec.tablet.tablet_id, seed, sim_out);
      write_dataset(spec, seed, sim_out, sim_jobs);
    } else if (phys->parsed()) {
      const auto config = make_config(phys_t);
      err << fmt::format("haptibench: analyzing {}\n", phys_in);
      const auto metrics = analyze_dataset(phys_in, config);
      emit(phys_out, serialize_metrics(metrics), phys_stdout, out);
    } else if (fitts->parsed()) {
      const auto trials = load_pointing_trials(fitts_in);
      if (trials.empty()) throw Error(ErrorKind::Io, fmt::format("no pointing trials in '{}'", fitts_in));
      nlohmann::ordered_json j;
      j["spec_version"] = kSchemaVersion;
      nlohmann::ordered_json conds = nlohmann::ordered_json::array();
      for (const auto& c : analyze_pointing(trials)) {
        auto entry = to_json(c.metrics);
        nlohmann::ordered_json row;
        row["tablet_id"] = c.key.tablet_id;
        row["haptic"] = c.key.haptic;
        for (auto& [k, v] : entry.items()) row[k] = v;
        conds.push_back(row);
      }
      j["conditions"] = conds;
      emit(fitts_out, j.dump(2) + "\n", fitts_stdout, out);
    } else if (cmp->parsed()) {
      const auto config = make_config(cmp_t);
      auto ma = parse_metrics(read_text_file(metrics_a));
      auto mb = parse_metrics(read_text_file(metrics_b));
      if (!raw_a.empty()) ma = analyze_dataset(raw_a, config);
      if (!raw_b.empty()) mb = analyze_dataset(raw_b, config);
      const auto report = compare_tablets(build_tablet_profile(ma), build_tablet_profile(mb));
      ReportFormat fmt_out = cmp_out.ends_with(".json") ? ReportFormat::json : ReportFormat::markdown;
      if (!cmp_format.empty()) fmt_out = format_of(cmp_format);
      for (const auto& w : report.warnings) err << "haptibench: warning: " << w << "\n";
      emit(cmp_out, render_report(report, fmt_out), cmp_stdout, out);
    } else if (rep->parsed()) {
      const auto report = parse_report(read_text_file(rep_in));
      emit(rep_out, render_report(report, format_of(rep_format)), rep_stdout, out);
    }
  } catch (const Error& e) {
    err << "haptibench: " << e.what() << "\n";
    return is_input_error(e.kind()) ? kExitInputError : kExitAnalysisFailure;
  } catch (const nlohmann::json::exception& e) {
    err << "haptibench: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "haptibench: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitOk;
}

}  // namespace haptibench
