#ifndef BUSBAR_KERNELS_HPP
#define BUSBAR_KERNELS_HPP

// Filament-pair force kernels.
//
// Two parallel filaments separated by (l, m) attract (same-sign currents) with
// force per length mu0 i1 i2 / (2 pi r) along the separation. Splitting into
// components and dropping mu0 i1 i2 / (2 pi) leaves l / r^2 and m / r^2.

#include "busbar/errors.hpp"
#include "busbar/model.hpp"

namespace busbar {

/// Separation of a filament in conductor 2 from one in conductor 1.
struct DiffCoords {
  double l = 0.0;
  double m = 0.0;
};

inline double kernel_x(double l, double m) {
  const double r2 = l * l + m * m;
  if (r2 == 0.0) throw DomainError("kernel evaluated at coincident filaments (l = m = 0)");
  return l / r2;
}

inline double kernel_y(double l, double m) {
  const double r2 = l * l + m * m;
  if (r2 == 0.0) throw DomainError("kernel evaluated at coincident filaments (l = m = 0)");
  return m / r2;
}

inline double kernel(Component c, double l, double m) {
  return c == Component::x ? kernel_x(l, m) : kernel_y(l, m);
}

/// Maps conductor-local coordinates (x in [0, 2a], y in [-b, b]) to the
/// filament separation.
template <ConductorLayout L>
DiffCoords diff_coords(double x1, double x2, double y1, double y2, const L& layout) {
  return {layout.d() + x2 - x1, layout.h() + y2 - y1};
}

}  // namespace busbar

#endif  // BUSBAR_KERNELS_HPP
