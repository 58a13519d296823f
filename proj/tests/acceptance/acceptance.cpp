// Acceptance checks. One PASS/FAIL line per criterion; the exit status is
// nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "busbar/config.hpp"
#include "busbar/forces.hpp"
#include "busbar/kernels.hpp"
#include "busbar/sweep.hpp"
#include "../oracles.hpp"

using namespace busbar;
using Wide = boost::multiprecision::number<boost::multiprecision::backends::cpp_bin_float<50>,
                                           boost::multiprecision::et_off>;

namespace {

const CrossSection kBar{0.005, 0.05};
const LinearRange kD{0.011, 0.2, 15};
const LinearRange kH{0.11, 0.2, 8};

double rel(double x, double ref) { return std::abs(x - ref) / std::abs(ref); }

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Collects sub-check results; the first few failures are kept for the report.
struct Checker {
  bool pass = true;
  int failures = 0;
  std::string first;

  void expect(bool ok, const std::string& what) {
    if (ok) return;
    if (failures < 3) first += (first.empty() ? "" : "; ") + what;
    ++failures;
    pass = false;
  }

  Outcome outcome(std::string summary) const {
    if (!pass) summary += " | " + std::to_string(failures) + " failed: " + first;
    return {pass, summary};
  }
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

Outcome ac1() {
  double worst = 0.0;
  const auto t0 = std::chrono::steady_clock::now();
  for (double d : linspace(kD)) {
    const auto l = validate_adjacent(kBar, d);
    worst = std::max(worst, rel(stencil_geometry_factor(l, Component::x), integrate_reduced(l, Component::x).value));
  }
  for (double h : linspace(kH)) {
    for (double d : linspace(kD)) {
      const auto l = validate_non_adjacent(kBar, d, h);
      for (Component c : {Component::x, Component::y}) {
        worst = std::max(worst, rel(stencil_geometry_factor(l, c), integrate_reduced(l, c).value));
      }
    }
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  Checker ck;
  ck.expect(worst <= 1e-7, "worst relative gap " + num(worst));
  ck.expect(secs <= 5.0, "runtime " + num(secs) + " s");
  return ck.outcome("closed form vs reduced quadrature, worst rel " + num(worst) + ", " + num(secs) + " s");
}

Outcome ac2() {
  const auto t0 = std::chrono::steady_clock::now();
  Checker ck;
  double worst = 0.0;
  const auto check_point = [&](const Layout& layout, Component c, const std::string& where) {
    const double ref = geometry_factor(layout, c);
    double prev = INFINITY;
    for (int n : {32, 64, 128, 256}) {
      const double err = rel(geometry_factor(layout, c, {Method::filament, {}, n}), ref);
      ck.expect(err < prev, where + " error not decreasing at N=" + std::to_string(n));
      prev = err;
    }
    worst = std::max(worst, prev);
    ck.expect(prev <= 1e-3, where + " N=256 rel " + num(prev));
  };
  for (double d : linspace(kD)) {
    if (d < 0.02) continue;
    check_point(validate_adjacent(kBar, d), Component::x, "d=" + num(d));
  }
  for (double h : linspace(kH)) {
    for (double d : linspace(kD)) {
      const Layout l = validate_non_adjacent(kBar, d, h);
      check_point(l, Component::x, "fx d=" + num(d) + " h=" + num(h));
      check_point(l, Component::y, "fy d=" + num(d) + " h=" + num(h));
    }
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  ck.expect(secs <= 60.0, "runtime " + num(secs) + " s");
  return ck.outcome("filament N=256 vs closed form, worst rel " + num(worst) + ", monotone in N, " + num(secs) +
                    " s");
}

Outcome ac3() {
  constexpr double k = kMu0 / (2.0 * std::numbers::pi);
  Checker ck;
  const double fx = adjacent_fx(0.005, 0.005, 1.0, 1.0, 1.0);
  ck.expect(rel(fx, 2.0e-7) <= 1e-3, "adjacent fx " + num(fx));
  const double nx = non_adjacent_fx(0.005, 0.005, 1.0, 1.0, 1.0, 1.0);
  const double ny = non_adjacent_fy(0.005, 0.005, 1.0, 1.0, 1.0, 1.0);
  ck.expect(rel(nx, k * 0.5) <= 1e-3, "non-adjacent fx " + num(nx));
  ck.expect(rel(ny, k * 0.5) <= 1e-3, "non-adjacent fy " + num(ny));
  return ck.outcome("thin-wire limit, rel errors " + num(rel(fx, 2.0e-7)) + ", " + num(rel(nx, k * 0.5)) + ", " +
                    num(rel(ny, k * 0.5)));
}

Outcome ac4() {
  const RunConfig cfg = example_config(2);
  const Waveform& w = *cfg.waveform;
  const CurrentSeries series = waveform_series(w);
  const auto forces = force_series(layout_of(cfg), series, {true, false}, cfg.method);
  const double g = stencil_geometry_factor(validate_adjacent(cfg.section, cfg.d.start), Component::x);
  const double omega = 2.0 * std::numbers::pi * w.frequency_hz;
  const double peak = kMu0 * g / (4.0 * std::numbers::pi);

  Checker ck;
  double worst = 0.0;
  for (std::size_t k = 0; k < forces.size(); ++k) {
    const double expected = peak * std::sin(2.0 * omega * series.timestamps[k]);
    worst = std::max(worst, std::abs(forces[k].fx - expected));
  }
  ck.expect(worst <= 1e-12 * peak, "max deviation " + num(worst / peak) + " of peak");

  // The sample grid includes both endpoints of the period; dropping the
  // repeated endpoint leaves exactly one period, so DFT bin k is k * f.
  std::vector<double> fx;
  for (std::size_t k = 0; k + 1 < forces.size(); ++k) fx.push_back(forces[k].fx);
  const std::size_t bin = oracle::dominant_bin(fx);
  const double dominant = static_cast<double>(bin) * w.frequency_hz * w.periods / static_cast<double>(w.periods);
  ck.expect(bin == 2 && dominant == 2.0 * w.frequency_hz, "dominant bin " + std::to_string(bin));
  return ck.outcome("series vs (mu0 G / 4pi) sin 2wt, max dev " + num(worst / peak) + " of peak, dominant " +
                    num(dominant) + " Hz");
}

Outcome ac5() {
  Checker ck;
  std::mt19937_64 rng(20261015);
  std::uniform_real_distribution<double> log_mag(std::log(1e-3), 0.0);
  std::bernoulli_distribution neg(0.5);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double u = std::exp(log_mag(rng)) * (neg(rng) ? -1.0 : 1.0);
    const double v = std::exp(log_mag(rng)) * (neg(rng) ? -1.0 : 1.0);
    const Wide step = Wide(1e-4) * Wide(std::max(std::abs(u), std::abs(v)));
    const Wide fd = oracle::mixed_fourth_difference<Wide>([](Wide x, Wide y) { return primitive_P(x, y); },
                                                           Wide(u), Wide(v), step);
    const double e = rel(static_cast<double>(fd), kernel_x(u, v));
    worst = std::max(worst, e);
    ck.expect(e <= 1e-3, "u=" + num(u) + " v=" + num(v) + " rel " + num(e));
  }

  // Gauge invariance is a property of the stencil algebra. In double it is
  // masked by the stencil's own rounding (it cancels about four digits near
  // d = 2a), so it is judged in 50-digit arithmetic; the double figure is
  // reported alongside.
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  double worst_gauge = 0.0;
  double worst_double = 0.0;
  for (double h : {0.0, 0.13}) {
    for (double d : {0.011, 0.05, 0.2}) {
      const auto p = [](Wide x, Wide y) { return primitive_P(x, y); };
      const Wide base = stencil_sum(p, kBar, d, h);
      const double base_d = stencil_sum([](double x, double y) { return primitive_P(x, y); }, kBar, d, h);
      const double scale = std::abs(primitive_P(d, h + 2.0 * kBar.b));
      for (int i = 0; i < 20; ++i) {
        const double c[6] = {coef(rng), coef(rng), coef(rng), coef(rng), coef(rng), coef(rng)};
        // Affine in u for every v and affine in v for every u, plus functions
        // of one variable: all annihilated by the 9-point stencil.
        const auto gauge = [&](auto x, auto y) {
          using std::cos;
          using std::pow;
          return decltype(x)(scale) * (c[0] + c[1] * x + c[2] * y + c[3] * x * y + c[4] * pow(x, 5) +
                                        c[5] * cos(30 * y));
        };
        const Wide perturbed = stencil_sum([&](Wide x, Wide y) { return p(x, y) + gauge(x, y); }, kBar, d, h);
        const double e = static_cast<double>(abs(perturbed - base) / abs(base));
        worst_gauge = std::max(worst_gauge, e);
        ck.expect(e <= 1e-12, "gauge d=" + num(d) + " h=" + num(h) + " rel " + num(e));
        const double perturbed_d = stencil_sum(
            [&](double x, double y) { return primitive_P(x, y) + gauge(x, y); }, kBar, d, h);
        worst_double = std::max(worst_double, std::abs(perturbed_d - base_d) / std::abs(base_d));
      }
    }
  }
  return ck.outcome("fourth difference worst rel " + num(worst) + " (100 points), gauge worst rel " +
                    num(worst_gauge) + " (double: " + num(worst_double) + ")");
}

template <class F>
bool throws_domain(F&& f) {
  try {
    f();
  } catch (const DomainError&) {
    return true;
  }
  return false;
}

Outcome ac6() {
  Checker ck;
  ck.expect(throws_domain([] { (void)validate_adjacent(kBar, 2.0 * kBar.a); }), "d = 2a accepted");
  ck.expect(throws_domain([] { (void)validate_non_adjacent(kBar, 0.05, 2.0 * kBar.b); }), "h = 2b accepted");
  ck.expect(throws_domain([] { (void)adjacent_fx(kBar.a, kBar.b, 2.0 * kBar.a, 1, 1); }), "adjacent_fx at d = 2a");
  ck.expect(throws_domain([] { (void)non_adjacent_fy(kBar.a, kBar.b, 0.05, 2.0 * kBar.b, 1, 1); }),
            "non_adjacent_fy at h = 2b");
  const double d = 2.0 * kBar.a + 1e-9;
  double fx = NAN;
  try {
    fx = adjacent_fx(kBar.a, kBar.b, d, 1.0, 1.0);
  } catch (const std::exception& e) {
    ck.expect(false, std::string("d = 2a + 1e-9 rejected: ") + e.what());
  }
  ck.expect(std::isfinite(fx) && fx > 0.0, "d = 2a + 1e-9 gives " + num(fx));
  return ck.outcome("d = 2a and h = 2b rejected, d = 2a + 1e-9 gives fx " + num(fx) + " N/m");
}

Outcome ac7() {
  Checker ck;
  const MethodSpec filament{Method::filament, {}, 128};
  for (const MethodSpec& m : {MethodSpec{}, filament}) {
    const std::string tag = to_string(m.method);
    const auto ds = linspace(kD);
    double prev = INFINITY;
    for (double d : ds) {
      const double fx = adjacent_fx(kBar.a, kBar.b, d, 1, 1, m);
      ck.expect(fx < prev, tag + " example 1 fx not decreasing at d=" + num(d));
      prev = fx;
    }
    int fx_rises = 0;
    for (double h : linspace(kH)) {
      double prev_fx = INFINITY;
      double prev_fy = INFINITY;
      for (double d : ds) {
        const double fx = non_adjacent_fx(kBar.a, kBar.b, d, h, 1, 1, m);
        const double fy = non_adjacent_fy(kBar.a, kBar.b, d, h, 1, 1, m);
        ck.expect(fx > 0.0 && fy > 0.0, tag + " non-positive force at d=" + num(d) + " h=" + num(h));
        ck.expect(fy < prev_fy, tag + " example 3 fy not decreasing at d=" + num(d) + " h=" + num(h));
        if (!(fx < prev_fx)) ++fx_rises;
        prev_fx = fx;
        prev_fy = fy;
      }
    }
    // fx ~ d / (d^2 + h^2) rises with d while d < h, and every h in this grid
    // exceeds the smallest d values, so this sub-check is expected to fail.
    ck.expect(fx_rises == 0, tag + " example 3 fx rises with d at " + std::to_string(fx_rises) + " of 112 steps");
  }
  return ck.outcome("figure shapes (closed form and filament N=128)");
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome ac8() {
  Checker ck;
  const std::string dir = BUSBAR_BINARY_DIR;
  for (const char* n : {"1", "2", "3"}) {
    for (const char* fmt : {"csv", "json"}) {
      std::string outputs[2];
      for (int run = 0; run < 2; ++run) {
        const std::string path = dir + "/ac8_example" + n + "_" + std::to_string(run) + "." + fmt;
        std::remove(path.c_str());
        const std::string cmd = std::string("\"") + BUSBAR_CLI + "\" example " + n + " --format " + fmt +
                                " --output \"" + path + "\"";
        ck.expect(std::system(cmd.c_str()) == 0, std::string("example ") + n + " exited nonzero");
        outputs[run] = slurp(path);
      }
      ck.expect(!outputs[0].empty(), std::string("example ") + n + " " + fmt + " output empty");
      ck.expect(outputs[0] == outputs[1], std::string("example ") + n + " " + fmt + " differs between runs");
    }
  }
  return ck.outcome("example 1|2|3 output files byte-identical across runs (csv and json)");
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"AC-1", ac1}, {"AC-2", ac2}, {"AC-3", ac3}, {"AC-4", ac4},
      {"AC-5", ac5}, {"AC-6", ac6}, {"AC-7", ac7}, {"AC-8", ac8}};
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("unexpected exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s %s  %s  [%.2f s]\n", name, o.pass ? "PASS" : "FAIL", o.detail.c_str(), secs);
    if (!o.pass) ++failed;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
