#ifndef BUSBAR_FORCES_HPP
#define BUSBAR_FORCES_HPP

// Public force API. Every method reduces to a current-independent geometry
// factor G and the force is (mu0 / 2pi) i1 i2 G.

#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "busbar/closed_form.hpp"
#include "busbar/errors.hpp"
#include "busbar/filament.hpp"
#include "busbar/model.hpp"
#include "busbar/numerics.hpp"
#include "busbar/quadrature.hpp"

namespace busbar {

enum class Method { closed_form, reduced_quadrature, direct_4d, filament };

inline const char* to_string(Method m) noexcept {
  switch (m) {
    case Method::closed_form: return "closed-form";
    case Method::reduced_quadrature: return "reduced-quadrature";
    case Method::direct_4d: return "direct-4d";
    case Method::filament: return "filament";
  }
  return "?";
}

inline std::optional<Method> parse_method(std::string_view name) {
  for (Method m : {Method::closed_form, Method::reduced_quadrature, Method::direct_4d, Method::filament}) {
    if (name == to_string(m)) return m;
  }
  return std::nullopt;
}

struct MethodSpec {
  Method method = Method::closed_form;
  QuadratureSpec quadrature{};
  int filament_n = 128;  ///< filaments per direction, per conductor

  friend bool operator==(const MethodSpec&, const MethodSpec&) = default;
};

struct Components {
  bool x = true;
  bool y = false;
};

struct CurrentSeries {
  std::vector<CurrentPair> samples;
  std::vector<double> timestamps;  ///< s; empty or one per sample
};

/// The one place currents enter. Shared by scalar and series paths so both
/// perform identical floating-point operations.
inline double scale_force(double geometry_factor, double i1, double i2) noexcept {
  return kMu0Over2Pi * i1 * i2 * geometry_factor;
}

template <ConductorLayout L>
double geometry_factor(const L& layout, Component c, const MethodSpec& spec = {}) {
  switch (spec.method) {
    case Method::closed_form: return stencil_geometry_factor(layout, c);
    case Method::reduced_quadrature: return integrate_reduced(layout, c, spec.quadrature).value;
    case Method::direct_4d: return integrate_4d(layout, c, spec.quadrature).value;
    case Method::filament: {
      const ForcePerLength g = filament_geometry_factors(layout, spec.filament_n, spec.filament_n);
      return c == Component::x ? g.fx : g.fy;
    }
  }
  throw ArgumentError("unknown method");
}

inline double geometry_factor(const Layout& layout, Component c, const MethodSpec& spec = {}) {
  return std::visit([&](const auto& l) { return geometry_factor(l, c, spec); }, layout);
}

namespace detail {

inline void check_currents(double i1, double i2) {
  if (!std::isfinite(i1) || !std::isfinite(i2)) throw DomainError("currents must be finite");
}

}  // namespace detail

/// Horizontal force between side-by-side conductors. The vertical component
/// vanishes by symmetry.
inline double adjacent_fx(double a, double b, double d, double i1, double i2, const MethodSpec& spec = {}) {
  const auto layout = validate_adjacent({a, b}, d);
  detail::check_currents(i1, i2);
  return scale_force(geometry_factor(layout, Component::x, spec), i1, i2);
}

inline double non_adjacent_fx(double a, double b, double d, double h, double i1, double i2,
                              const MethodSpec& spec = {}) {
  const auto layout = validate_non_adjacent({a, b}, d, h);
  detail::check_currents(i1, i2);
  return scale_force(geometry_factor(layout, Component::x, spec), i1, i2);
}

inline double non_adjacent_fy(double a, double b, double d, double h, double i1, double i2,
                              const MethodSpec& spec = {}) {
  const auto layout = validate_non_adjacent({a, b}, d, h);
  detail::check_currents(i1, i2);
  return scale_force(geometry_factor(layout, Component::y, spec), i1, i2);
}

/// Force for every sample of a current waveform. Each requested geometry
/// factor is evaluated once; unrequested components are left at zero.
inline std::vector<ForcePerLength> force_series(const Layout& layout, const CurrentSeries& series,
                                                Components components, const MethodSpec& spec = {}) {
  if (series.samples.empty()) throw DomainError("current series is empty");
  if (!series.timestamps.empty() && series.timestamps.size() != series.samples.size()) {
    throw DomainError("current series has " + std::to_string(series.samples.size()) + " samples but " +
                      std::to_string(series.timestamps.size()) + " timestamps");
  }
  for (const auto& s : series.samples) detail::check_currents(s.i1, s.i2);

  const double gx = components.x ? geometry_factor(layout, Component::x, spec) : 0.0;
  const double gy = components.y ? geometry_factor(layout, Component::y, spec) : 0.0;
  std::vector<ForcePerLength> out;
  out.reserve(series.samples.size());
  for (const auto& s : series.samples) {
    out.push_back({components.x ? scale_force(gx, s.i1, s.i2) : 0.0,
                   components.y ? scale_force(gy, s.i1, s.i2) : 0.0});
  }
  return out;
}

}  // namespace busbar

#endif  // BUSBAR_FORCES_HPP
