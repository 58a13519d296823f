#ifndef BUSBAR_CONFIG_HPP
#define BUSBAR_CONFIG_HPP

// Run configuration (JSON) and its execution.
//
//   {
//     "mode": "adjacent" | "non-adjacent" | "sweep" | "timeseries",
//     "geometry": {"a": 0.005, "b": 0.05, "d": 0.02, "h": 0.11},
//     "currents": {"i1": 1, "i2": 1},
//     "waveform": {"amplitude": 1, "frequency_hz": 50, "phase1_rad": 0,
//                  "phase2_rad": 1.5707963267948966, "samples": 500, "periods": 1},
//     "method": {"name": "closed-form", "order": 32, "max_subdivisions": 6,
//                "rel_tol": 1e-10, "filament_n": 128},
//     "output": {"format": "csv", "path": "out.csv"}
//   }
//
// In sweep mode d and h may be ranges {"start", "stop", "count"}; a sweep with
// h is non-adjacent. "currents" is required by every mode except timeseries,
// which takes "waveform" instead. Unknown keys are rejected.

#include <cmath>
#include <fstream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "busbar/errors.hpp"
#include "busbar/forces.hpp"
#include "busbar/model.hpp"
#include "busbar/output.hpp"
#include "busbar/sweep.hpp"
#include "busbar/version.hpp"

namespace busbar {

enum class RunMode { adjacent, non_adjacent, sweep, timeseries };

inline const char* to_string(RunMode m) noexcept {
  switch (m) {
    case RunMode::adjacent: return "adjacent";
    case RunMode::non_adjacent: return "non-adjacent";
    case RunMode::sweep: return "sweep";
    case RunMode::timeseries: return "timeseries";
  }
  return "?";
}

/// i_k(t) = amplitude sin(2 pi f t + phase_k), t = linspace(0, periods / f, samples).
struct Waveform {
  double amplitude = 1.0;
  double frequency_hz = 50.0;
  double phase1_rad = 0.0;
  double phase2_rad = 0.0;
  int samples = 500;
  double periods = 1.0;
};

struct RunConfig {
  RunMode mode = RunMode::adjacent;
  CrossSection section;
  LinearRange d;                 ///< count == 1 outside sweep mode
  std::optional<LinearRange> h;
  std::optional<CurrentPair> currents;
  std::optional<Waveform> waveform;
  MethodSpec method;
  OutputSpec output;

  bool has_vertical_offset() const noexcept { return h.has_value(); }
};

namespace detail {

using Json = nlohmann::json;

class ConfigReader {
public:
  std::vector<std::string> problems;

  void reject_unknown(const Json& obj, const std::string& where, std::initializer_list<const char*> allowed) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
      bool ok = false;
      for (const char* k : allowed) ok = ok || it.key() == k;
      if (!ok) problems.push_back("unknown key '" + where + it.key() + "'");
    }
  }

  const Json* object(const Json& parent, const char* key, const std::string& where, bool required) {
    if (!parent.contains(key)) {
      if (required) problems.push_back("missing object '" + where + key + "'");
      return nullptr;
    }
    const Json& v = parent.at(key);
    if (!v.is_object()) {
      problems.push_back("'" + where + key + "' must be an object");
      return nullptr;
    }
    return &v;
  }

  std::optional<double> number(const Json& parent, const char* key, const std::string& where, bool required) {
    if (!parent.contains(key)) {
      if (required) problems.push_back("missing number '" + where + key + "'");
      return std::nullopt;
    }
    const Json& v = parent.at(key);
    if (!v.is_number()) {
      problems.push_back("'" + where + key + "' must be a number");
      return std::nullopt;
    }
    const double x = v.get<double>();
    if (!std::isfinite(x)) {
      problems.push_back("'" + where + key + "' must be finite");
      return std::nullopt;
    }
    return x;
  }

  std::optional<int> integer(const Json& parent, const char* key, const std::string& where, bool required) {
    if (!parent.contains(key)) {
      if (required) problems.push_back("missing integer '" + where + key + "'");
      return std::nullopt;
    }
    const Json& v = parent.at(key);
    if (!v.is_number_integer()) {
      problems.push_back("'" + where + key + "' must be an integer");
      return std::nullopt;
    }
    return v.get<int>();
  }

  std::optional<std::string> string(const Json& parent, const char* key, const std::string& where,
                                    bool required) {
    if (!parent.contains(key)) {
      if (required) problems.push_back("missing string '" + where + key + "'");
      return std::nullopt;
    }
    const Json& v = parent.at(key);
    if (!v.is_string()) {
      problems.push_back("'" + where + key + "' must be a string");
      return std::nullopt;
    }
    return v.get<std::string>();
  }

  // A plain number, or a {start, stop, count} range when ranges are allowed.
  std::optional<LinearRange> distance(const Json& geo, const char* key, bool required, bool allow_range) {
    const std::string where = "geometry.";
    if (!geo.contains(key)) {
      if (required) problems.push_back("missing '" + where + key + "'");
      return std::nullopt;
    }
    const Json& v = geo.at(key);
    if (v.is_number()) {
      auto x = number(geo, key, where, true);
      if (!x) return std::nullopt;
      return LinearRange{*x, *x, 1};
    }
    if (v.is_object() && allow_range) {
      const std::string sub = where + key + ".";
      reject_unknown(v, sub, {"start", "stop", "count"});
      auto start = number(v, "start", sub, true);
      auto stop = number(v, "stop", sub, true);
      auto count = integer(v, "count", sub, true);
      if (count && *count < 1) problems.push_back("'" + sub + "count' must be >= 1");
      if (!start || !stop || !count || *count < 1) return std::nullopt;
      return LinearRange{*start, *stop, *count};
    }
    problems.push_back("'" + where + key + "' must be a number" +
                       (allow_range ? std::string(" or a {start, stop, count} range") : std::string()));
    return std::nullopt;
  }
};

}  // namespace detail

/// Schema check and conversion. Collects every schema problem before throwing.
inline RunConfig parse_run_config(const nlohmann::json& doc) {
  detail::ConfigReader rd;
  RunConfig cfg;
  if (!doc.is_object()) throw ConfigError({"configuration must be a JSON object"});
  rd.reject_unknown(doc, "", {"mode", "geometry", "currents", "waveform", "method", "output"});

  const auto mode = rd.string(doc, "mode", "", true);
  bool mode_ok = false;
  if (mode) {
    for (RunMode m : {RunMode::adjacent, RunMode::non_adjacent, RunMode::sweep, RunMode::timeseries}) {
      if (*mode == to_string(m)) {
        cfg.mode = m;
        mode_ok = true;
      }
    }
    if (!mode_ok) {
      rd.problems.push_back("'mode' must be one of adjacent, non-adjacent, sweep, timeseries (got '" + *mode +
                            "')");
    }
  }

  if (const auto* geo = rd.object(doc, "geometry", "", true)) {
    rd.reject_unknown(*geo, "geometry.", {"a", "b", "d", "h"});
    const auto a = rd.number(*geo, "a", "geometry.", true);
    const auto b = rd.number(*geo, "b", "geometry.", true);
    if (a && b) cfg.section = {*a, *b};
    const bool ranges = mode_ok && cfg.mode == RunMode::sweep;
    if (auto d = rd.distance(*geo, "d", true, ranges)) cfg.d = *d;
    cfg.h = rd.distance(*geo, "h", false, ranges);
    if (mode_ok && cfg.mode == RunMode::non_adjacent && !geo->contains("h")) {
      rd.problems.emplace_back("mode non-adjacent requires 'geometry.h'");
    }
    if (mode_ok && cfg.mode == RunMode::adjacent && geo->contains("h")) {
      rd.problems.emplace_back("mode adjacent does not take 'geometry.h' (use non-adjacent)");
    }
  }

  if (const auto* cur = rd.object(doc, "currents", "", false)) {
    rd.reject_unknown(*cur, "currents.", {"i1", "i2"});
    const auto i1 = rd.number(*cur, "i1", "currents.", true);
    const auto i2 = rd.number(*cur, "i2", "currents.", true);
    if (i1 && i2) cfg.currents = CurrentPair{*i1, *i2};
  }
  if (const auto* wf = rd.object(doc, "waveform", "", false)) {
    const std::string w = "waveform.";
    rd.reject_unknown(*wf, w, {"amplitude", "frequency_hz", "phase1_rad", "phase2_rad", "samples", "periods"});
    Waveform form;
    const auto amp = rd.number(*wf, "amplitude", w, true);
    const auto freq = rd.number(*wf, "frequency_hz", w, true);
    const auto p1 = rd.number(*wf, "phase1_rad", w, false);
    const auto p2 = rd.number(*wf, "phase2_rad", w, false);
    const auto n = rd.integer(*wf, "samples", w, true);
    const auto periods = rd.number(*wf, "periods", w, false);
    if (freq && !(*freq > 0.0)) rd.problems.emplace_back("'waveform.frequency_hz' must be > 0");
    if (n && *n < 1) rd.problems.emplace_back("'waveform.samples' must be >= 1");
    if (periods && !(*periods > 0.0)) rd.problems.emplace_back("'waveform.periods' must be > 0");
    if (amp && freq && n) {
      form.amplitude = *amp;
      form.frequency_hz = *freq;
      form.phase1_rad = p1.value_or(0.0);
      form.phase2_rad = p2.value_or(0.0);
      form.samples = *n;
      form.periods = periods.value_or(1.0);
      cfg.waveform = form;
    }
  }
  if (mode_ok) {
    if (cfg.mode == RunMode::timeseries) {
      if (!doc.contains("waveform")) rd.problems.emplace_back("mode timeseries requires 'waveform'");
      if (doc.contains("currents")) rd.problems.emplace_back("mode timeseries takes 'waveform', not 'currents'");
    } else {
      if (!doc.contains("currents")) rd.problems.push_back(std::string("mode ") + to_string(cfg.mode) +
                                                           " requires 'currents'");
      if (doc.contains("waveform")) rd.problems.push_back(std::string("mode ") + to_string(cfg.mode) +
                                                          " does not take 'waveform'");
    }
  }

  if (const auto* m = rd.object(doc, "method", "", false)) {
    const std::string w = "method.";
    rd.reject_unknown(*m, w, {"name", "order", "max_subdivisions", "rel_tol", "filament_n"});
    if (auto name = rd.string(*m, "name", w, true)) {
      if (auto parsed = parse_method(*name)) {
        cfg.method.method = *parsed;
      } else {
        rd.problems.push_back("'method.name' must be one of closed-form, reduced-quadrature, direct-4d, "
                              "filament (got '" + *name + "')");
      }
    }
    if (auto order = rd.integer(*m, "order", w, false)) {
      if (*order < 2) rd.problems.emplace_back("'method.order' must be >= 2");
      cfg.method.quadrature.order = *order;
    }
    if (auto depth = rd.integer(*m, "max_subdivisions", w, false)) {
      if (*depth < 0) rd.problems.emplace_back("'method.max_subdivisions' must be >= 0");
      cfg.method.quadrature.max_subdivisions = *depth;
    }
    if (auto tol = rd.number(*m, "rel_tol", w, false)) {
      if (!(*tol > 0.0)) rd.problems.emplace_back("'method.rel_tol' must be > 0");
      cfg.method.quadrature.rel_tol = *tol;
    }
    if (auto n = rd.integer(*m, "filament_n", w, false)) {
      if (*n < 1) rd.problems.emplace_back("'method.filament_n' must be >= 1");
      cfg.method.filament_n = *n;
    }
  }

  if (const auto* out = rd.object(doc, "output", "", false)) {
    rd.reject_unknown(*out, "output.", {"format", "path"});
    if (auto fmt = rd.string(*out, "format", "output.", false)) {
      if (*fmt == "csv") {
        cfg.output.format = OutputFormat::csv;
      } else if (*fmt == "json") {
        cfg.output.format = OutputFormat::json;
      } else {
        rd.problems.push_back("'output.format' must be csv or json (got '" + *fmt + "')");
      }
    }
    if (auto path = rd.string(*out, "path", "output.", false)) cfg.output.path = *path;
  }

  if (!rd.problems.empty()) throw ConfigError(std::move(rd.problems));
  return cfg;
}

/// Reads and parses a config file. Unreadable file: IoError. Bad JSON or
/// schema: ConfigError.
inline RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(buf.str());
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError({"config file '" + path + "' is not valid JSON: " + e.what()});
  }
  return parse_run_config(doc);
}

inline SweepConfig to_sweep_config(const RunConfig& cfg) {
  SweepConfig s;
  s.kind = cfg.h ? LayoutKind::non_adjacent : LayoutKind::adjacent;
  s.section = cfg.section;
  s.d_range = cfg.d;
  s.h_range = cfg.h;
  s.currents = cfg.currents.value_or(CurrentPair{});
  s.components = {true, cfg.h.has_value()};
  s.method = cfg.method;
  return s;
}

inline Layout layout_of(const RunConfig& cfg) {
  if (cfg.h) return validate_non_adjacent(cfg.section, cfg.d.start, cfg.h->start);
  return validate_adjacent(cfg.section, cfg.d.start);
}

inline CurrentSeries waveform_series(const Waveform& w) {
  CurrentSeries series;
  const double omega = 2.0 * std::numbers::pi * w.frequency_hz;
  series.timestamps = linspace({0.0, w.periods / w.frequency_hz, w.samples});
  series.samples.reserve(series.timestamps.size());
  for (double t : series.timestamps) {
    series.samples.push_back({w.amplitude * std::sin(omega * t + w.phase1_rad),
                              w.amplitude * std::sin(omega * t + w.phase2_rad)});
  }
  return series;
}

/// Domain checks beyond the schema: every geometry point must satisfy the
/// separation constraints. Empty result means the config will run.
inline std::vector<std::string> domain_problems(const RunConfig& cfg) {
  if (cfg.mode == RunMode::sweep) return detail::sweep_problems(to_sweep_config(cfg));
  std::vector<std::string> problems;
  try {
    (void)layout_of(cfg);
  } catch (const DomainError& e) {
    problems.emplace_back(e.what());
  }
  if (cfg.method.quadrature.order < 2 && cfg.method.method != Method::closed_form &&
      cfg.method.method != Method::filament) {
    problems.emplace_back("quadrature order must be >= 2");
  }
  return problems;
}

inline nlohmann::ordered_json run_metadata(const RunConfig& cfg) {
  nlohmann::ordered_json md;
  md["units"] = "N/m";
  md["mode"] = to_string(cfg.mode);
  md["method"] = to_string(cfg.method.method);
  if (cfg.method.method == Method::reduced_quadrature || cfg.method.method == Method::direct_4d) {
    md["order"] = cfg.method.quadrature.order;
    md["max_subdivisions"] = cfg.method.quadrature.max_subdivisions;
    md["rel_tol"] = cfg.method.quadrature.rel_tol;
  }
  if (cfg.method.method == Method::filament) md["filament_n"] = cfg.method.filament_n;
  md["a"] = cfg.section.a;
  md["b"] = cfg.section.b;
  md["version"] = kVersion;
  return md;
}

/// Runs a validated config and returns its output table.
inline Table execute(const RunConfig& cfg) {
  if (auto problems = domain_problems(cfg); !problems.empty()) throw ConfigError(std::move(problems));
  Table table;
  table.metadata = run_metadata(cfg);
  const bool with_y = cfg.h.has_value();

  switch (cfg.mode) {
    case RunMode::adjacent:
    case RunMode::non_adjacent: {
      const Layout layout = layout_of(cfg);
      const CurrentPair c = *cfg.currents;
      table.columns = {"fx"};
      std::vector<double> row{scale_force(geometry_factor(layout, Component::x, cfg.method), c.i1, c.i2)};
      if (with_y) {
        table.columns.emplace_back("fy");
        row.push_back(scale_force(geometry_factor(layout, Component::y, cfg.method), c.i1, c.i2));
      }
      table.rows.push_back(std::move(row));
      break;
    }
    case RunMode::sweep: {
      const SweepResult res = run_sweep(to_sweep_config(cfg));
      table.columns = {"d"};
      if (with_y) table.columns.emplace_back("h");
      table.columns.emplace_back("fx");
      if (with_y) table.columns.emplace_back("fy");
      for (const auto& r : res.rows) {
        std::vector<double> row{r.d};
        if (with_y) row.push_back(*r.h);
        row.push_back(*r.fx);
        if (with_y) row.push_back(*r.fy);
        table.rows.push_back(std::move(row));
      }
      break;
    }
    case RunMode::timeseries: {
      const CurrentSeries series = waveform_series(*cfg.waveform);
      const auto forces = force_series(layout_of(cfg), series, {true, with_y}, cfg.method);
      table.columns = {"t", "i1", "i2", "fx"};
      if (with_y) table.columns.emplace_back("fy");
      for (std::size_t k = 0; k < forces.size(); ++k) {
        std::vector<double> row{series.timestamps[k], series.samples[k].i1, series.samples[k].i2, forces[k].fx};
        if (with_y) row.push_back(forces[k].fy);
        table.rows.push_back(std::move(row));
      }
      break;
    }
  }
  return table;
}

/// Built-in configurations transcribing the three worked examples: a d sweep
/// for side-by-side bars, a 50 Hz quadrature-phase current pair at d = 0.02,
/// and a d x h sweep for offset bars.
inline RunConfig example_config(int which) {
  RunConfig cfg;
  cfg.section = {0.005, 0.05};
  switch (which) {
    case 1:
      cfg.mode = RunMode::sweep;
      cfg.d = {0.011, 0.2, 15};
      cfg.currents = CurrentPair{1.0, 1.0};
      break;
    case 2:
      cfg.mode = RunMode::timeseries;
      cfg.d = {0.02, 0.02, 1};
      cfg.waveform = Waveform{1.0, 50.0, 0.0, std::numbers::pi / 2.0, 500, 1.0};
      break;
    case 3:
      cfg.mode = RunMode::sweep;
      cfg.d = {0.011, 0.2, 15};
      cfg.h = LinearRange{0.11, 0.2, 8};
      cfg.currents = CurrentPair{1.0, 1.0};
      break;
    default:
      throw ConfigError({"unknown example " + std::to_string(which) + " (expected 1, 2 or 3)"});
  }
  return cfg;
}

}  // namespace busbar

#endif  // BUSBAR_CONFIG_HPP
