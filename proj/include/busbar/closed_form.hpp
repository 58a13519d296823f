#ifndef BUSBAR_CLOSED_FORM_HPP
#define BUSBAR_CLOSED_FORM_HPP

// Closed-form geometry factor.
//
// The hat weight w_c has second derivative delta(s + 2c) - 2 delta(s) + delta(s - 2c).
// Integrating the reduced integral by parts twice in u and twice in v moves all
// derivatives onto a primitive P with d^4 P / du^2 dv^2 = K, leaving a 9-point
// stencil of P around (d, h):
//
//   G = 1 / (4ab)^2 * sum_{i,j in {-1,0,1}} c_i c_j P(d + 2a i, h + 2b j),  c = (1, -2, 1)
//
// With z = u + iv, K_x = u / |z|^2 = Re(1/z), and Re(z^3 log z) / 6 has fourth
// complex derivative 1/z. Since d^2/du^2 d^2/dv^2 acts on analytic functions as
// -d^4/dz^4,
//
//   P(u, v) = -( (u^3 - 3 u v^2) log r - (3 u^2 v - v^3) theta ) / 6,  theta = atan2(v, u).
//
// theta jumps across the negative u-axis, which is fine because every knot of
// a valid layout has u > 0 (x component) or, after the swap P_y(u, v) = P(v, u),
// a positive second argument.

#include <array>
#include <cmath>
#include <numbers>
#include <type_traits>

#include "busbar/errors.hpp"
#include "busbar/model.hpp"
#include "busbar/numerics.hpp"

namespace busbar {

/// Second-difference coefficients of the triangular hat, at offsets -2c, 0, +2c.
struct StencilCoefficients {
  static constexpr std::array<double, 3> c{1.0, -2.0, 1.0};
};

/// Fourth antiderivative (twice in u, twice in v) of u / (u^2 + v^2).
/// Templated on the scalar so tests can evaluate it in extended precision.
template <class T>
T primitive_P(T u, T v) {
  using std::atan2;
  using std::log;
  const T zero(0);
  if (u == zero && v == zero) throw DomainError("primitive evaluated at the origin");
  if (v == zero) {
    // theta term vanishes with its v factor, and v^2 log r -> 0.
    return -(u * u * u) * log(u < zero ? T(-u) : u) / T(6);
  }
  if (u == zero) {
    // Only -(-v^3) * theta survives, theta = sign(v) pi/2.
    const T quarter_turn = T(std::numbers::pi) / T(2);
    return -(v * v * v) * (v > zero ? quarter_turn : -quarter_turn) / T(6);
  }
  const T u2 = u * u;
  const T v2 = v * v;
  const T log_r = log(u2 + v2) / T(2);
  const T theta = atan2(v, u);
  return -((u * (u2 - T(3) * v2)) * log_r - (v * (T(3) * u2 - v2)) * theta) / T(6);
}

/// 9-point stencil of an arbitrary primitive around (d, h) with knot spacing
/// (2a, 2b), summed with compensation. Not normalized. The result has the
/// primitive's scalar type.
template <class Prim>
auto stencil_sum(const Prim& prim, CrossSection s, double d, double h) {
  using T = std::invoke_result_t<const Prim&, double, double>;
  constexpr auto& c = StencilCoefficients::c;
  BasicCompensatedSum<T> sum;
  for (int i = 0; i < 3; ++i) {
    const double u = d + 2.0 * s.a * (i - 1);
    for (int j = 0; j < 3; ++j) {
      const double v = h + 2.0 * s.b * (j - 1);
      sum.add(T(c[static_cast<std::size_t>(i)] * c[static_cast<std::size_t>(j)]) * prim(u, v));
    }
  }
  return sum.value();
}

namespace detail {

inline double stencil_raw(CrossSection s, double d, double h, Component comp) {
  const double norm = 1.0 / (s.area() * s.area());
  if (comp == Component::x) {
    return stencil_sum([](double u, double v) { return primitive_P(u, v); }, s, d, h) * norm;
  }
  return stencil_sum([](double u, double v) { return primitive_P(v, u); }, s, d, h) * norm;
}

}  // namespace detail

template <ConductorLayout L>
double stencil_geometry_factor(const L& layout, Component comp) {
  return detail::stencil_raw(layout.section(), layout.d(), layout.h(), comp);
}

}  // namespace busbar

#endif  // BUSBAR_CLOSED_FORM_HPP
