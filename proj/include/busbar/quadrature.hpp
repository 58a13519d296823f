#ifndef BUSBAR_QUADRATURE_HPP
#define BUSBAR_QUADRATURE_HPP

// Numerical evaluation of the geometry factor
//
//   G = 1 / (4ab)^2  * int_0^2a int_0^2a int_-b^b int_-b^b K(l, m) dx1 dx2 dy1 dy2
//
// with l = d + x2 - x1, m = h + y2 - y1. The force is (mu0 / 2pi) i1 i2 G.
//
// Two routes are provided. integrate_4d applies a tensor Gauss-Legendre rule to
// the fourfold integral as written. integrate_reduced uses the fact that the
// difference of two uniform variables on [0, 2c] has the triangular density
// w_c(s) = 2c - |s| on [-2c, 2c], which collapses the integral to
//
//   G = 1 / (4ab)^2 * int int w_a(u - d) w_b(v - h) K(u, v) du dv
//
// over [d-2a, d+2a] x [h-2b, h+2b]. The hat weights have kinks at u = d and
// v = h, so that domain is split into four panels there.
//
// Both routes refine adaptively: each box is integrated with an order-n and an
// order-2n tensor rule, and boxes whose two estimates differ by more than
// rel_tol times the global magnitude are bisected in every dimension.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "busbar/errors.hpp"
#include "busbar/kernels.hpp"
#include "busbar/model.hpp"
#include "busbar/numerics.hpp"

namespace busbar {

struct QuadratureSpec {
  int order = 32;             ///< Gauss-Legendre points per box per dimension
  int max_subdivisions = 6;   ///< bisection depth limit
  double rel_tol = 1e-10;     ///< target |Q_2n - Q_n| relative to the integral magnitude

  friend bool operator==(const QuadratureSpec&, const QuadratureSpec&) = default;
};

struct GeometryFactor {
  double value = 0.0;           ///< 1/m
  double error_estimate = 0.0;  ///< sum of |Q_2n - Q_n| over accepted boxes, same units
};

struct GaussLegendreRule {
  std::vector<double> nodes;    ///< ascending, on [-1, 1]
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule by Newton iteration on P_n. Nodes are exactly
/// antisymmetric and weights exactly symmetric about 0.
inline GaussLegendreRule gauss_legendre_rule(int n) {
  if (n < 1) throw ArgumentError("Gauss-Legendre rule needs at least one point, got " + std::to_string(n));
  GaussLegendreRule rule;
  rule.nodes.assign(static_cast<std::size_t>(n), 0.0);
  rule.weights.assign(static_cast<std::size_t>(n), 0.0);
  const auto un = static_cast<std::size_t>(n);
  for (std::size_t i = 0; i < (un + 1) / 2; ++i) {
    // i-th largest root
    double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      const double pn = n == 1 ? x : p1;
      const double pn_1 = n == 1 ? 1.0 : p0;
      dp = n * (x * pn - pn_1) / (x * x - 1.0);
      const double dx = pn / dp;
      x -= dx;
      if (std::abs(dx) <= 1e-16) break;
    }
    // Re-evaluate the derivative at the converged root for the weight.
    {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n == 1 ? 1.0 : n * (x * p1 - p0) / (x * x - 1.0);
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    if (2 * i + 1 == un) {
      rule.nodes[i] = 0.0;
      rule.weights[i] = w;
    } else {
      rule.nodes[i] = -x;
      rule.nodes[un - 1 - i] = x;
      rule.weights[i] = w;
      rule.weights[un - 1 - i] = w;
    }
  }
  return rule;
}

template <std::size_t Dim>
struct Box {
  std::array<double, Dim> lo{};
  std::array<double, Dim> hi{};
};

struct CubatureResult {
  double value = 0.0;
  double error = 0.0;
  bool converged = true;
  std::size_t leaves = 0;
};

namespace detail {

inline void check_spec(const QuadratureSpec& spec) {
  if (spec.order < 2) throw ArgumentError("quadrature order must be >= 2, got " + std::to_string(spec.order));
  if (spec.max_subdivisions < 0) throw ArgumentError("max_subdivisions must be >= 0");
  if (!(spec.rel_tol > 0.0) || !std::isfinite(spec.rel_tol)) {
    throw ArgumentError("rel_tol must be a positive finite number");
  }
}

/// Tensor-product rule over one box.
template <std::size_t Dim, class F>
double tensor_rule(const F& f, const Box<Dim>& box, const GaussLegendreRule& rule) {
  const std::size_t n = rule.nodes.size();
  std::array<std::vector<double>, Dim> pts;
  std::array<std::vector<double>, Dim> wts;
  for (std::size_t k = 0; k < Dim; ++k) {
    const double mid = 0.5 * (box.lo[k] + box.hi[k]);
    const double half = 0.5 * (box.hi[k] - box.lo[k]);
    pts[k].resize(n);
    wts[k].resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      pts[k][i] = mid + half * rule.nodes[i];
      wts[k][i] = half * rule.weights[i];
    }
  }

  CompensatedSum sum;
  std::array<std::size_t, Dim> idx{};
  std::array<double, Dim> x{};
  while (true) {
    double w = 1.0;
    for (std::size_t k = 0; k < Dim; ++k) {
      x[k] = pts[k][idx[k]];
      w *= wts[k][idx[k]];
    }
    sum.add(w * f(x));
    std::size_t k = Dim;
    while (k > 0) {
      --k;
      if (++idx[k] < n) break;
      idx[k] = 0;
      if (k == 0) return sum.value();
    }
  }
}

template <std::size_t Dim, class F>
class AdaptiveCubature {
public:
  AdaptiveCubature(const F& f, const QuadratureSpec& spec)
      : f_(f), spec_(spec), coarse_(gauss_legendre_rule(spec.order)),
        fine_(gauss_legendre_rule(2 * spec.order)) {}

  CubatureResult run(std::span<const Box<Dim>> boxes) {
    std::vector<std::array<double, 2>> first;
    first.reserve(boxes.size());
    double scale = 0.0;
    for (const auto& box : boxes) {
      const double c = tensor_rule(f_, box, coarse_);
      const double fn = tensor_rule(f_, box, fine_);
      first.push_back({c, fn});
      scale += std::abs(fn);
    }
    tol_ = spec_.rel_tol * std::max(scale, 1e-300);

    CubatureResult result;
    CompensatedSum value;
    CompensatedSum error;
    for (std::size_t i = 0; i < boxes.size(); ++i) {
      refine(boxes[i], first[i][0], first[i][1], 0, value, error, result);
    }
    result.value = value.value();
    result.error = error.value();
    return result;
  }

private:
  void refine(const Box<Dim>& box, double coarse, double fine, int depth, CompensatedSum& value,
              CompensatedSum& error, CubatureResult& result) const {
    const double err = std::abs(fine - coarse);
    if (err <= tol_ || depth >= spec_.max_subdivisions) {
      if (err > tol_) result.converged = false;
      value.add(fine);
      error.add(err);
      ++result.leaves;
      return;
    }
    for (std::size_t child = 0; child < (std::size_t{1} << Dim); ++child) {
      Box<Dim> sub;
      for (std::size_t k = 0; k < Dim; ++k) {
        const double mid = 0.5 * (box.lo[k] + box.hi[k]);
        const bool upper = (child >> (Dim - 1 - k)) & 1U;
        sub.lo[k] = upper ? mid : box.lo[k];
        sub.hi[k] = upper ? box.hi[k] : mid;
      }
      refine(sub, tensor_rule(f_, sub, coarse_), tensor_rule(f_, sub, fine_), depth + 1, value, error,
             result);
    }
  }

  const F& f_;
  QuadratureSpec spec_;
  GaussLegendreRule coarse_;
  GaussLegendreRule fine_;
  double tol_ = 0.0;
};

}  // namespace detail

/// Adaptive tensor Gauss-Legendre over a union of boxes. Never throws on
/// non-convergence; inspect `converged`.
template <std::size_t Dim, class F>
CubatureResult adaptive_cubature(const F& f, std::span<const Box<Dim>> boxes, const QuadratureSpec& spec) {
  detail::check_spec(spec);
  return detail::AdaptiveCubature<Dim, F>(f, spec).run(boxes);
}

/// The hat-weighted 2D form of the geometry-factor integral.
struct ReducedIntegral {
  CrossSection section;
  double d = 0.0;
  double h = 0.0;
  std::array<Box<2>, 4> panels;  ///< split at the hat kinks u = d, v = h
  double normalization = 0.0;    ///< 1 / (4ab)^2

  static double hat(double s, double c) noexcept { return std::max(2.0 * c - std::abs(s), 0.0); }

  double weight(double u, double v) const noexcept {
    return hat(u - d, section.a) * hat(v - h, section.b);
  }
};

namespace detail {

// Accepts any h, including h <= 0, so symmetry properties can be probed
// outside the validated layouts.
inline ReducedIntegral make_reduced(CrossSection s, double d, double h) {
  ReducedIntegral r;
  r.section = s;
  r.d = d;
  r.h = h;
  const double u0 = d - 2.0 * s.a;
  const double u1 = d + 2.0 * s.a;
  const double v0 = h - 2.0 * s.b;
  const double v1 = h + 2.0 * s.b;
  r.panels = {Box<2>{{u0, v0}, {d, h}}, Box<2>{{u0, h}, {d, v1}}, Box<2>{{d, v0}, {u1, h}},
              Box<2>{{d, h}, {u1, v1}}};
  r.normalization = 1.0 / (s.area() * s.area());
  return r;
}

template <class K>
GeometryFactor integrate_reduced_kernel(const ReducedIntegral& r, const K& kern, const QuadratureSpec& spec) {
  const auto integrand = [&](const std::array<double, 2>& p) { return r.weight(p[0], p[1]) * kern(p[0], p[1]); };
  const auto res = adaptive_cubature<2>(integrand, std::span<const Box<2>>(r.panels), spec);
  const GeometryFactor g{res.value * r.normalization, res.error * r.normalization};
  if (!res.converged) {
    throw ConvergenceError("reduced quadrature did not reach rel_tol = " + fmt(spec.rel_tol) + " within " +
                               std::to_string(spec.max_subdivisions) + " subdivisions",
                           g.value, g.error_estimate);
  }
  return g;
}

inline GeometryFactor integrate_reduced_raw(CrossSection s, double d, double h, Component c,
                                            const QuadratureSpec& spec) {
  const auto r = make_reduced(s, d, h);
  if (c == Component::x) return integrate_reduced_kernel(r, kernel_x, spec);
  return integrate_reduced_kernel(r, kernel_y, spec);
}

}  // namespace detail

template <ConductorLayout L>
ReducedIntegral reduce_to_2d(const L& layout) {
  return detail::make_reduced(layout.section(), layout.d(), layout.h());
}

template <ConductorLayout L>
GeometryFactor integrate_reduced(const L& layout, Component c, const QuadratureSpec& spec = {}) {
  return detail::integrate_reduced_raw(layout.section(), layout.d(), layout.h(), c, spec);
}

/// The reduced integral with an arbitrary kernel in place of K; used to check
/// the hat-weight normalization.
template <class K>
GeometryFactor integrate_reduced_with(const ReducedIntegral& r, const K& kern, const QuadratureSpec& spec = {}) {
  return detail::integrate_reduced_kernel(r, kern, spec);
}

/// Fourfold integral over (x1, x2, y1, y2) without the hat reduction.
/// Cost grows as order^4; meant for cross-checks.
template <ConductorLayout L>
GeometryFactor integrate_4d(const L& layout, Component c, const QuadratureSpec& spec = {}) {
  const CrossSection s = layout.section();
  const auto integrand = [&](const std::array<double, 4>& p) {
    const DiffCoords dc = diff_coords(p[0], p[1], p[2], p[3], layout);
    return kernel(c, dc.l, dc.m);
  };
  const std::array<Box<4>, 1> box{Box<4>{{0.0, 0.0, -s.b, -s.b}, {2.0 * s.a, 2.0 * s.a, s.b, s.b}}};
  const auto res = adaptive_cubature<4>(integrand, std::span<const Box<4>>(box), spec);
  const double norm = 1.0 / (s.area() * s.area());
  const GeometryFactor g{res.value * norm, res.error * norm};
  if (!res.converged) {
    throw ConvergenceError("4D quadrature did not reach rel_tol = " + detail::fmt(spec.rel_tol) + " within " +
                               std::to_string(spec.max_subdivisions) + " subdivisions",
                           g.value, g.error_estimate);
  }
  return g;
}

/// |Q_2n - Q_n| of the un-refined four-panel reduced rule, normalized like G.
/// Convergence diagnostic only.
template <ConductorLayout L>
double reduced_order_discrepancy(const L& layout, Component c, int order) {
  const auto r = reduce_to_2d(layout);
  const auto coarse = gauss_legendre_rule(order);
  const auto fine = gauss_legendre_rule(2 * order);
  const auto integrand = [&](const std::array<double, 2>& p) {
    return r.weight(p[0], p[1]) * kernel(c, p[0], p[1]);
  };
  CompensatedSum qc;
  CompensatedSum qf;
  for (const auto& panel : r.panels) {
    qc.add(detail::tensor_rule(integrand, panel, coarse));
    qf.add(detail::tensor_rule(integrand, panel, fine));
  }
  return std::abs(qf.value() - qc.value()) * r.normalization;
}

}  // namespace busbar

#endif  // BUSBAR_QUADRATURE_HPP
