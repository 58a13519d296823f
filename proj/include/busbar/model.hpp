#ifndef BUSBAR_MODEL_HPP
#define BUSBAR_MODEL_HPP

// Geometry of a pair of parallel, infinitely long rectangular conductors.
//
// Both conductors have the same cross-section, 2a wide and 2b high, and carry
// a homogeneous current density J = i / (4ab). Conductor 1 sits at the origin;
// conductor 2 is displaced by (d, h) measured center to center. Forces are
// reported on conductor 1, exerted by conductor 2, so same-sign currents give
// components pointing toward (+d, +h).
//
// The force integrals only hold for separated conductors: d > 2a and, for the
// non-adjacent layout, h > 2b. Both comparisons are strict.

#include <cmath>
#include <concepts>
#include <cstdio>
#include <string>
#include <variant>

#include "busbar/errors.hpp"

namespace busbar {

struct CrossSection {
  double a = 0.0;  ///< half-width (m)
  double b = 0.0;  ///< half-height (m)

  double area() const noexcept { return 4.0 * a * b; }
};

enum class Component { x, y };

inline const char* to_string(Component c) noexcept { return c == Component::x ? "x" : "y"; }

struct CurrentPair {
  double i1 = 0.0;  ///< A
  double i2 = 0.0;  ///< A
};

/// Force per unit length on conductor 1 by conductor 2, N/m.
struct ForcePerLength {
  double fx = 0.0;
  double fy = 0.0;
};

class AdjacentLayout;
class NonAdjacentLayout;

AdjacentLayout validate_adjacent(CrossSection section, double d);
NonAdjacentLayout validate_non_adjacent(CrossSection section, double d, double h);

/// Conductors side by side: horizontal offset only.
class AdjacentLayout {
public:
  const CrossSection& section() const noexcept { return section_; }
  double d() const noexcept { return d_; }
  double h() const noexcept { return 0.0; }

  friend bool operator==(const AdjacentLayout&, const AdjacentLayout&) = default;

private:
  AdjacentLayout(CrossSection s, double d) : section_(s), d_(d) {}
  friend AdjacentLayout validate_adjacent(CrossSection, double);

  CrossSection section_;
  double d_;
};

/// Conductors offset both horizontally and vertically.
class NonAdjacentLayout {
public:
  const CrossSection& section() const noexcept { return section_; }
  double d() const noexcept { return d_; }
  double h() const noexcept { return h_; }

  friend bool operator==(const NonAdjacentLayout&, const NonAdjacentLayout&) = default;

private:
  NonAdjacentLayout(CrossSection s, double d, double h) : section_(s), d_(d), h_(h) {}
  friend NonAdjacentLayout validate_non_adjacent(CrossSection, double, double);

  CrossSection section_;
  double d_;
  double h_;
};

template <class L>
concept ConductorLayout = requires(const L& layout) {
  { layout.section() } -> std::convertible_to<CrossSection>;
  { layout.d() } -> std::convertible_to<double>;
  { layout.h() } -> std::convertible_to<double>;
};

/// Either layout, for code paths that pick one at run time.
using Layout = std::variant<AdjacentLayout, NonAdjacentLayout>;

inline CrossSection section_of(const Layout& layout) {
  return std::visit([](const auto& l) { return l.section(); }, layout);
}
inline double d_of(const Layout& layout) {
  return std::visit([](const auto& l) { return l.d(); }, layout);
}
inline double h_of(const Layout& layout) {
  return std::visit([](const auto& l) { return l.h(); }, layout);
}

namespace detail {

inline std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

inline void check_section(const CrossSection& s) {
  if (!std::isfinite(s.a) || !std::isfinite(s.b)) {
    throw DomainError("cross-section dimensions must be finite");
  }
  if (!(s.a > 0.0)) throw DomainError("half-width a must be > 0, got a = " + fmt(s.a));
  if (!(s.b > 0.0)) throw DomainError("half-height b must be > 0, got b = " + fmt(s.b));
}

inline void check_gap_x(const CrossSection& s, double d) {
  if (!std::isfinite(d)) throw DomainError("distance d must be finite");
  if (!(d - 2.0 * s.a > 0.0)) {
    throw DomainError("constraint d > 2a violated: d = " + fmt(d) + ", 2a = " + fmt(2.0 * s.a) +
                      " (conductors touch or overlap horizontally)");
  }
}

inline void check_gap_y(const CrossSection& s, double h) {
  if (!std::isfinite(h)) throw DomainError("distance h must be finite");
  if (!(h - 2.0 * s.b > 0.0)) {
    throw DomainError("constraint h > 2b violated: h = " + fmt(h) + ", 2b = " + fmt(2.0 * s.b) +
                      " (conductors touch or overlap vertically)");
  }
}

}  // namespace detail

inline AdjacentLayout validate_adjacent(CrossSection section, double d) {
  detail::check_section(section);
  detail::check_gap_x(section, d);
  return AdjacentLayout(section, d);
}

inline NonAdjacentLayout validate_non_adjacent(CrossSection section, double d, double h) {
  detail::check_section(section);
  detail::check_gap_x(section, d);
  detail::check_gap_y(section, h);
  return NonAdjacentLayout(section, d, h);
}

}  // namespace busbar

#endif  // BUSBAR_MODEL_HPP
