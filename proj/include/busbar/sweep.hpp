#ifndef BUSBAR_SWEEP_HPP
#define BUSBAR_SWEEP_HPP

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "busbar/errors.hpp"
#include "busbar/forces.hpp"
#include "busbar/model.hpp"
#include "busbar/version.hpp"

namespace busbar {

/// Inclusive linear spacing, MATLAB linspace semantics.
struct LinearRange {
  double start = 0.0;
  double stop = 0.0;
  int count = 1;
};

/// Node k is start + k (stop - start) / (count - 1); the last node is stop
/// exactly. A single-point range yields start.
inline std::vector<double> linspace(const LinearRange& r) {
  if (r.count < 1) throw DomainError("range count must be >= 1, got " + std::to_string(r.count));
  std::vector<double> out(static_cast<std::size_t>(r.count));
  if (r.count == 1) {
    out[0] = r.start;
    return out;
  }
  const double span = r.stop - r.start;
  for (int k = 0; k < r.count; ++k) {
    out[static_cast<std::size_t>(k)] = r.start + k * span / (r.count - 1);
  }
  out.back() = r.stop;
  return out;
}

enum class LayoutKind { adjacent, non_adjacent };

struct SweepConfig {
  LayoutKind kind = LayoutKind::adjacent;
  CrossSection section;
  LinearRange d_range;
  std::optional<LinearRange> h_range;  ///< required for non-adjacent
  CurrentPair currents{1.0, 1.0};
  Components components{};
  MethodSpec method{};
};

struct SweepRow {
  double d = 0.0;
  std::optional<double> h;
  std::optional<double> fx;
  std::optional<double> fy;
};

struct SweepMetadata {
  std::string method;
  QuadratureSpec quadrature;
  int filament_n = 0;
  std::string units = "N/m";
  std::string version = kVersion;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  SweepMetadata metadata;
};

namespace detail {

inline std::vector<std::string> sweep_problems(const SweepConfig& cfg) {
  std::vector<std::string> problems;
  const auto check_count = [&](const LinearRange& r, const char* name) {
    if (r.count < 1) problems.push_back(std::string(name) + " range count must be >= 1");
  };
  check_count(cfg.d_range, "d");
  if (cfg.kind == LayoutKind::non_adjacent && !cfg.h_range) {
    problems.emplace_back("non-adjacent sweep needs an h range");
  }
  if (cfg.kind == LayoutKind::adjacent && cfg.h_range) {
    problems.emplace_back("adjacent sweep must not have an h range");
  }
  if (cfg.h_range) check_count(*cfg.h_range, "h");
  if (!cfg.components.x && !cfg.components.y) problems.emplace_back("no force component requested");
  if (cfg.kind == LayoutKind::adjacent && cfg.components.y) {
    problems.emplace_back("adjacent layouts have no y component (it vanishes by symmetry)");
  }
  if (!std::isfinite(cfg.currents.i1) || !std::isfinite(cfg.currents.i2)) {
    problems.emplace_back("currents must be finite");
  }
  if (!problems.empty()) return problems;

  try {
    detail::check_section(cfg.section);
  } catch (const DomainError& e) {
    problems.emplace_back(e.what());
    return problems;
  }
  for (double d : linspace(cfg.d_range)) {
    try {
      detail::check_gap_x(cfg.section, d);
    } catch (const DomainError& e) {
      problems.push_back("grid point d = " + fmt(d) + ": " + e.what());
    }
  }
  if (cfg.h_range) {
    for (double h : linspace(*cfg.h_range)) {
      try {
        detail::check_gap_y(cfg.section, h);
      } catch (const DomainError& e) {
        problems.push_back("grid point h = " + fmt(h) + ": " + e.what());
      }
    }
  }
  return problems;
}

}  // namespace detail

/// Throws ConfigError listing every invalid grid point; nothing is computed
/// unless the whole grid is valid.
inline void validate_sweep(const SweepConfig& cfg) {
  auto problems = detail::sweep_problems(cfg);
  if (!problems.empty()) throw ConfigError(std::move(problems));
}

/// Rows are d-major for adjacent sweeps. Non-adjacent sweeps are h-major:
/// for each h, every d in order.
inline SweepResult run_sweep(const SweepConfig& cfg) {
  validate_sweep(cfg);
  SweepResult result;
  result.metadata.method = to_string(cfg.method.method);
  result.metadata.quadrature = cfg.method.quadrature;
  result.metadata.filament_n = cfg.method.filament_n;

  const auto ds = linspace(cfg.d_range);
  const auto eval = [&](const Layout& layout, double d, std::optional<double> h) {
    SweepRow row{d, h, std::nullopt, std::nullopt};
    if (cfg.components.x) {
      row.fx = scale_force(geometry_factor(layout, Component::x, cfg.method), cfg.currents.i1, cfg.currents.i2);
    }
    if (cfg.components.y) {
      row.fy = scale_force(geometry_factor(layout, Component::y, cfg.method), cfg.currents.i1, cfg.currents.i2);
    }
    return row;
  };

  if (cfg.kind == LayoutKind::adjacent) {
    result.rows.reserve(ds.size());
    for (double d : ds) result.rows.push_back(eval(validate_adjacent(cfg.section, d), d, std::nullopt));
  } else {
    const auto hs = linspace(*cfg.h_range);
    result.rows.reserve(ds.size() * hs.size());
    for (double h : hs) {
      for (double d : ds) result.rows.push_back(eval(validate_non_adjacent(cfg.section, d, h), d, h));
    }
  }
  return result;
}

}  // namespace busbar

#endif  // BUSBAR_SWEEP_HPP
