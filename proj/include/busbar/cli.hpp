#ifndef BUSBAR_CLI_HPP
#define BUSBAR_CLI_HPP

// Command-line front end. Exit codes: 0 success, 1 domain/config/usage error,
// 2 numeric convergence failure, 3 I/O error.

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "busbar/config.hpp"
#include "busbar/errors.hpp"
#include "busbar/output.hpp"

namespace busbar {

enum ExitCode : int { kExitOk = 0, kExitDomain = 1, kExitConvergence = 2, kExitIo = 3 };

namespace detail {

struct MethodFlags {
  std::string name = "closed-form";
  std::optional<int> order;
  std::optional<int> max_subdivisions;
  std::optional<double> rel_tol;
  std::optional<int> filament_n;
  std::string format;
  std::string output;

  void attach(CLI::App* cmd) {
    cmd->add_option("--method", name, "closed-form | reduced-quadrature | direct-4d | filament");
    cmd->add_option("--order", order, "Gauss-Legendre points per box per dimension");
    cmd->add_option("--max-subdivisions", max_subdivisions, "adaptive bisection depth");
    cmd->add_option("--rel-tol", rel_tol, "quadrature relative tolerance");
    cmd->add_option("--filament-n", filament_n, "filaments per direction (filament method)");
    attach_output(cmd);
  }

  void attach_output(CLI::App* cmd) {
    cmd->add_option("--format", format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--output,-o", output, "output file (default: standard output)");
  }

  // Flags override whatever the config file says.
  void apply(RunConfig& cfg, bool method_given) const {
    if (method_given) {
      auto m = parse_method(name);
      if (!m) throw ConfigError({"unknown method '" + name + "'"});
      cfg.method.method = *m;
    }
    if (order) cfg.method.quadrature.order = *order;
    if (max_subdivisions) cfg.method.quadrature.max_subdivisions = *max_subdivisions;
    if (rel_tol) cfg.method.quadrature.rel_tol = *rel_tol;
    if (filament_n) cfg.method.filament_n = *filament_n;
    if (!format.empty()) cfg.output.format = format == "json" ? OutputFormat::json : OutputFormat::csv;
    if (!output.empty()) cfg.output.path = output;
  }
};

inline void require_mode(const RunConfig& cfg, std::initializer_list<RunMode> modes, const char* command) {
  for (RunMode m : modes) {
    if (cfg.mode == m) return;
  }
  throw ConfigError({std::string("config mode '") + to_string(cfg.mode) + "' cannot be run with '" + command +
                     "'"});
}

}  // namespace detail

/// Runs the CLI. `args` excludes the program name.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Electrodynamic forces between rectangular busbar conductors", "busbar"};
  app.require_subcommand(1);
  app.set_help_flag("--help", "print this help message and exit");
  app.set_version_flag("--version", kVersion);

  detail::MethodFlags flags;

  auto* compute = app.add_subcommand("compute", "force for a single conductor pair");
  double a = 0, b = 0, d = 0, i1 = 0, i2 = 0;
  std::optional<double> h;
  std::string compute_config;
  auto* a_opt = compute->add_option("--a", a, "half-width (m)");
  auto* b_opt = compute->add_option("--b", b, "half-height (m)");
  auto* d_opt = compute->add_option("--d", d, "horizontal center distance (m)");
  compute->add_option("--h", h, "vertical center distance (m); selects the non-adjacent layout");
  auto* i1_opt = compute->add_option("--i1", i1, "current in conductor 1 (A)");
  auto* i2_opt = compute->add_option("--i2", i2, "current in conductor 2 (A)");
  compute->add_option("--config", compute_config, "JSON run config (adjacent/non-adjacent)");
  flags.attach(compute);

  std::string sweep_config;
  auto* sweep = app.add_subcommand("sweep", "parametric sweep over d (and h)");
  sweep->add_option("--config", sweep_config, "JSON run config")->required();
  flags.attach(sweep);

  std::string ts_config;
  auto* timeseries = app.add_subcommand("timeseries", "force for a sinusoidal current waveform");
  timeseries->add_option("--config", ts_config, "JSON run config")->required();
  flags.attach(timeseries);

  int example_id = 0;
  auto* example = app.add_subcommand("example", "run a built-in example (1, 2 or 3)");
  example->add_option("id", example_id, "example number")->required()->check(CLI::Range(1, 3));
  flags.attach(example);

  std::string validate_config;
  auto* validate = app.add_subcommand("validate", "check a config without computing");
  validate->add_option("--config", validate_config, "JSON run config")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomain;
  }

  auto method_given = [](CLI::App* cmd) { return cmd->count("--method") > 0; };

  try {
    RunConfig cfg;
    CLI::App* active = nullptr;
    if (*compute) {
      active = compute;
      if (!compute_config.empty()) {
        if (a_opt->count() || b_opt->count() || d_opt->count() || compute->count("--h") || i1_opt->count() ||
            i2_opt->count()) {
          throw ConfigError({"--config cannot be combined with geometry or current flags"});
        }
        cfg = load_run_config(compute_config);
        detail::require_mode(cfg, {RunMode::adjacent, RunMode::non_adjacent}, "compute");
      } else {
        std::vector<std::string> missing;
        for (auto* opt : {a_opt, b_opt, d_opt, i1_opt, i2_opt}) {
          if (!opt->count()) missing.push_back("missing required flag " + opt->get_name());
        }
        if (!missing.empty()) throw ConfigError(std::move(missing));
        cfg.mode = h ? RunMode::non_adjacent : RunMode::adjacent;
        cfg.section = {a, b};
        cfg.d = {d, d, 1};
        if (h) cfg.h = LinearRange{*h, *h, 1};
        cfg.currents = CurrentPair{i1, i2};
      }
    } else if (*sweep) {
      active = sweep;
      cfg = load_run_config(sweep_config);
      detail::require_mode(cfg, {RunMode::sweep}, "sweep");
    } else if (*timeseries) {
      active = timeseries;
      cfg = load_run_config(ts_config);
      detail::require_mode(cfg, {RunMode::timeseries}, "timeseries");
    } else if (*example) {
      active = example;
      cfg = example_config(example_id);
    } else if (*validate) {
      cfg = load_run_config(validate_config);
      auto problems = domain_problems(cfg);
      if (!problems.empty()) throw ConfigError(std::move(problems));
      out << "valid: mode " << to_string(cfg.mode) << ", method " << to_string(cfg.method.method) << '\n';
      return kExitOk;
    }

    flags.apply(cfg, method_given(active));
    emit(execute(cfg), cfg.output, out);
    return kExitOk;
  } catch (const ConfigError& e) {
    for (const auto& p : e.problems()) err << "error: " << p << '\n';
    return kExitDomain;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const ArgumentError& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const ConvergenceError& e) {
    err << "error: " << e.what() << " (best estimate " << format_number(e.best_estimate())
        << ", estimated error " << format_number(e.achieved_error()) << ")\n";
    return kExitConvergence;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  }
}

}  // namespace busbar

#endif  // BUSBAR_CLI_HPP
