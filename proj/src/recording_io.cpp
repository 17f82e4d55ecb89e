#include "haptibench/recording_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "haptibench/error.hpp"
#include "haptibench/signal.hpp"

namespace haptibench {

namespace fs = std::filesystem;
using nlohmann::json;

std::string_view to_string(Actuation a) {
  switch (a) {
    case Actuation::off: return "off";
    case Actuation::constant_max: return "constant_max";
    case Actuation::ridge: return "ridge";
  }
  return "off";
}

std::string_view to_string(Direction d) { return d == Direction::ltr ? "ltr" : "rtl"; }

Actuation actuation_from_string(std::string_view s) {
  if (s == "off") return Actuation::off;
  if (s == "constant_max") return Actuation::constant_max;
  if (s == "ridge") return Actuation::ridge;
  throw Error(ErrorKind::MalformedMeta, "unknown actuation '" + std::string(s) + "'");
}

Direction direction_from_string(std::string_view s) {
  if (s == "ltr") return Direction::ltr;
  if (s == "rtl") return Direction::rtl;
  throw Error(ErrorKind::MalformedLine, "unknown direction '" + std::string(s) + "'");
}

void check_meta(const RecordingMeta& meta) {
  if (!(meta.sample_rate > 0.0)) throw Error(ErrorKind::MalformedMeta, "sample_rate must be > 0");
  if (!(meta.nominal_force_window.lo < meta.nominal_force_window.hi)) {
    throw Error(ErrorKind::MalformedMeta, "nominal_force_window lo must be < hi");
  }
  if (!(meta.screen_length > 0.0)) throw Error(ErrorKind::MalformedMeta, "screen_length must be > 0");
  if (meta.ridge_span.has_value() != (meta.actuation == Actuation::ridge)) {
    throw Error(ErrorKind::MalformedMeta, "ridge_span must be present iff actuation is ridge");
  }
  if (meta.ridge_span && !(meta.ridge_span->hi > meta.ridge_span->lo)) {
    throw Error(ErrorKind::MalformedMeta, "ridge_span must have hi > lo");
  }
}

namespace {

std::string_view trim_cr(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  return line;
}

bool parse_double(std::string_view field, double& out) {
  while (!field.empty() && field.front() == ' ') field.remove_prefix(1);
  while (!field.empty() && field.back() == ' ') field.remove_suffix(1);
  if (field.empty()) return false;
  if (field.front() == '+') field.remove_prefix(1);
  const char* end = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(field.data(), end, out);
  return ec == std::errc() && ptr == end && std::isfinite(out);
}

void append_number(std::string& out, double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  out.append(buf, ptr);
}

// Splits `text` into lines, handing each (1-based line number, content) to fn.
template <typename Fn>
void for_each_line(std::string_view text, Fn&& fn) {
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t nl = text.find('\n', pos);
    const std::size_t end = nl == std::string_view::npos ? text.size() : nl;
    ++line_no;
    fn(line_no, trim_cr(text.substr(pos, end - pos)));
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
}

}  // namespace

Recording parse_recording(std::string_view csv, const RecordingMeta& meta) {
  check_meta(meta);
  Recording rec;
  rec.meta = meta;
  bool header_seen = false;
  std::size_t row = 0;
  for_each_line(csv, [&](std::size_t line_no, std::string_view line) {
    if (!header_seen) {
      if (line != "t,fn,ft,x") {
        throw Error(ErrorKind::MalformedRow, "expected header 't,fn,ft,x'", 0);
      }
      header_seen = true;
      return;
    }
    if (line.empty()) return;  // tolerate trailing blank lines
    ++row;
    double v[4];
    std::size_t start = 0;
    for (int k = 0; k < 4; ++k) {
      const std::size_t comma = line.find(',', start);
      const bool last = k == 3;
      if (last != (comma == std::string_view::npos)) {
        throw Error(ErrorKind::MalformedRow, "expected 4 comma-separated fields", row);
      }
      const auto field = line.substr(start, last ? std::string_view::npos : comma - start);
      if (!parse_double(field, v[k])) {
        throw Error(ErrorKind::MalformedRow, "non-numeric field '" + std::string(field) + "'", row);
      }
      start = comma + 1;
    }
    if (!rec.samples.empty() && !(v[0] > rec.samples.back().t)) {
      throw Error(ErrorKind::NonMonotonicTime, "time must be strictly increasing", row);
    }
    rec.samples.push_back({v[0], v[1], v[2], v[3]});
    (void)line_no;
  });
  if (!header_seen) throw Error(ErrorKind::EmptyRecording, "no header");
  if (rec.samples.empty()) throw Error(ErrorKind::EmptyRecording, "no data rows");
  return rec;
}

std::string serialize_recording(const Recording& recording) {
  std::string out;
  out.reserve(16 + recording.samples.size() * 64);
  out += "t,fn,ft,x\n";
  for (const auto& s : recording.samples) {
    append_number(out, s.t);
    out += ',';
    append_number(out, s.f_n);
    out += ',';
    append_number(out, s.f_t);
    out += ',';
    append_number(out, s.x);
    out += '\n';
  }
  return out;
}

void to_json(json& j, const RecordingMeta& m) {
  j = json{{"participant_id", m.participant_id},
           {"tablet_id", m.tablet_id},
           {"actuation", std::string(to_string(m.actuation))},
           {"ridge_span", m.ridge_span ? json::array({m.ridge_span->lo, m.ridge_span->hi}) : json(nullptr)},
           {"nominal_speed", m.nominal_speed},
           {"nominal_force_window", json::array({m.nominal_force_window.lo, m.nominal_force_window.hi})},
           {"screen_length", m.screen_length},
           {"sample_rate", m.sample_rate},
           {"session_index", m.session_index},
           {"trial_index", m.trial_index}};
}

void from_json(const json& j, RecordingMeta& m) {
  try {
    m.participant_id = j.at("participant_id").get<std::string>();
    m.tablet_id = j.at("tablet_id").get<std::string>();
    m.actuation = actuation_from_string(j.at("actuation").get<std::string>());
    const auto& ridge = j.value("ridge_span", json(nullptr));
    if (ridge.is_null()) {
      m.ridge_span.reset();
    } else {
      m.ridge_span = Interval{ridge.at(0).get<double>(), ridge.at(1).get<double>()};
    }
    m.nominal_speed = j.value("nominal_speed", 100.0);
    if (j.contains("nominal_force_window")) {
      const auto& w = j.at("nominal_force_window");
      m.nominal_force_window = {w.at(0).get<double>(), w.at(1).get<double>()};
    }
    m.screen_length = j.value("screen_length", 100.0);
    m.sample_rate = j.value("sample_rate", 10000.0);
    m.session_index = j.value("session_index", 0);
    m.trial_index = j.value("trial_index", 0);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::MalformedMeta, e.what());
  }
  check_meta(m);
}

RecordingMeta parse_meta(std::string_view json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::MalformedMeta, e.what());
  }
  return j.get<RecordingMeta>();
}

std::string serialize_meta(const RecordingMeta& meta) {
  json j = meta;
  return j.dump(2) + "\n";
}

fs::path meta_path_for(const fs::path& csv_path) {
  fs::path p = csv_path;
  p.replace_extension(".meta.json");
  return p;
}

Recording load_recording(const fs::path& csv_path) {
  const auto meta = parse_meta(read_text_file(meta_path_for(csv_path)));
  return parse_recording(read_text_file(csv_path), meta);
}

void save_recording(const Recording& recording, const fs::path& dir, const std::string& stem) {
  write_text_file_atomic(dir / (stem + ".csv"), serialize_recording(recording));
  write_text_file_atomic(dir / (stem + ".meta.json"), serialize_meta(recording.meta));
}

ValidationReport validate_recording(const Recording& recording, double motion_speed_threshold) {
  ValidationReport rep;
  const auto& s = recording.samples;
  const auto& meta = recording.meta;
  rep.n_samples = s.size();
  if (s.empty()) {
    rep.warnings.emplace_back("recording is empty");
    return rep;
  }
  std::vector<double> t(s.size()), x(s.size());
  std::size_t out_window = 0, below_contact = 0, out_range = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    t[i] = s[i].t;
    x[i] = s[i].x;
    if (!meta.nominal_force_window.contains(s[i].f_n)) ++out_window;
    if (s[i].f_n < kContactThresholdN) ++below_contact;
    if (s[i].x < 0.0 || s[i].x > meta.screen_length) ++out_range;
  }
  const auto n = static_cast<double>(s.size());
  rep.out_of_window_fraction = static_cast<double>(out_window) / n;
  rep.below_contact_fraction = static_cast<double>(below_contact) / n;
  rep.x_out_of_range_fraction = static_cast<double>(out_range) / n;

  if (s.size() >= 2) {
    const auto v = signal::central_difference(t, x);
    const auto moving = std::count_if(v.begin(), v.end(), [&](double vi) {
      return std::abs(vi) > motion_speed_threshold;
    });
    rep.motion_duty_cycle = static_cast<double>(moving) / n;
  }

  rep.duration = recording.duration();
  rep.duration_ok = rep.duration >= 1.0 && rep.duration <= 60.0;
  rep.median_interval = signal::median_step(t);
  const double nominal = 1.0 / meta.sample_rate;
  rep.sample_interval_ok = std::abs(rep.median_interval - nominal) <= 0.1 * nominal;

  if (!rep.duration_ok) rep.warnings.emplace_back("duration outside [1 s, 60 s]");
  if (!rep.sample_interval_ok) rep.warnings.emplace_back("median sample interval differs from 1/sample_rate by more than 10%");
  if (out_window > 0) rep.warnings.emplace_back("normal force outside nominal window");
  if (out_range > 0) rep.warnings.emplace_back("position outside [0, screen_length]");
  return rep;
}

bool release_inside_target(const PointingTrial& trial) {
  return std::abs(trial.release_x - trial.target_center) <= trial.width_w / 2.0;
}

void to_json(nlohmann::ordered_json& j, const PointingTrial& tr) {
  j = nlohmann::ordered_json{{"participant_id", tr.participant_id},
                             {"tablet_id", tr.tablet_id},
                             {"haptic", tr.haptic},
                             {"distance_d", tr.distance_d},
                             {"width_w", tr.width_w},
                             {"t_touch", tr.t_touch},
                             {"t_release", tr.t_release},
                             {"release_x", tr.release_x},
                             {"target_center", tr.target_center},
                             {"success", tr.success},
                             {"trial_index", tr.trial_index},
                             {"direction", std::string(to_string(tr.direction))}};
}

PointingTrial pointing_trial_from_json(const json& j) {
  PointingTrial tr;
  tr.participant_id = j.at("participant_id").get<std::string>();
  tr.tablet_id = j.at("tablet_id").get<std::string>();
  tr.haptic = j.at("haptic").get<bool>();
  tr.distance_d = j.at("distance_d").get<double>();
  tr.width_w = j.at("width_w").get<double>();
  tr.t_touch = j.at("t_touch").get<double>();
  tr.t_release = j.at("t_release").get<double>();
  tr.release_x = j.at("release_x").get<double>();
  tr.target_center = j.at("target_center").get<double>();
  tr.success = j.at("success").get<bool>();
  tr.trial_index = j.at("trial_index").get<int>();
  tr.direction = direction_from_string(j.at("direction").get<std::string>());
  return tr;
}

std::vector<PointingTrial> parse_pointing_log(std::string_view jsonl) {
  std::vector<PointingTrial> trials;
  for_each_line(jsonl, [&](std::size_t n, std::string_view line) {
    if (line.find_first_not_of(" \t") == std::string_view::npos) return;
    PointingTrial tr;
    try {
      tr = pointing_trial_from_json(json::parse(line));
    } catch (const json::exception& e) {
      throw Error(ErrorKind::MalformedLine, e.what(), n);
    } catch (const Error& e) {
      throw Error(ErrorKind::MalformedLine, e.what(), n);
    }
    if (!(tr.t_release > tr.t_touch)) {
      throw Error(ErrorKind::MalformedLine, "t_release must be after t_touch", n);
    }
    if (!(tr.width_w > 0.0) || !(tr.distance_d > 0.0)) {
      throw Error(ErrorKind::MalformedLine, "distance_d and width_w must be positive", n);
    }
    if (release_inside_target(tr) != tr.success) {
      throw Error(ErrorKind::InconsistentSuccessFlag,
                  "stored success flag disagrees with release position", n);
    }
    trials.push_back(std::move(tr));
  });
  return trials;
}

std::string serialize_pointing_log(std::span<const PointingTrial> trials) {
  std::string out;
  for (const auto& tr : trials) {
    nlohmann::ordered_json j = tr;
    out += j.dump();
    out += '\n';
  }
  return out;
}

std::string read_text_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return std::move(ss).str();
}

void write_text_file_atomic(const fs::path& path, std::string_view content) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::Io, "cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw Error(ErrorKind::Io, "write failed for " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) throw Error(ErrorKind::Io, "cannot rename " + tmp.string() + ": " + ec.message());
}

}  // namespace haptibench
