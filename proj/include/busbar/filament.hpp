#ifndef BUSBAR_FILAMENT_HPP
#define BUSBAR_FILAMENT_HPP

// Filament discretization: each conductor is cut into nx * ny equal cells and
// each cell is replaced by a thin wire at its center carrying i / (nx ny).
// The force is then the sum of pairwise thin-wire forces. This path shares no
// code with the quadrature or closed-form routes beyond the kernel itself.

#include <cstdlib>
#include <string>
#include <vector>

#include "busbar/errors.hpp"
#include "busbar/kernels.hpp"
#include "busbar/model.hpp"
#include "busbar/numerics.hpp"

namespace busbar {

struct Filament {
  double x = 0.0;  ///< conductor-local, in [0, 2a]
  double y = 0.0;  ///< conductor-local, in [-b, b]
  double current = 0.0;
};

class FilamentGrid {
public:
  FilamentGrid(CrossSection section, int nx, int ny, double total_current)
      : section_(section), nx_(nx), ny_(ny), total_current_(total_current) {
    if (nx < 1 || ny < 1) {
      throw ArgumentError("filament grid needs nx, ny >= 1, got " + std::to_string(nx) + " x " +
                          std::to_string(ny));
    }
  }

  int nx() const noexcept { return nx_; }
  int ny() const noexcept { return ny_; }
  double dx() const noexcept { return 2.0 * section_.a / nx_; }
  double dy() const noexcept { return 2.0 * section_.b / ny_; }
  double filament_current() const noexcept { return total_current_ / (static_cast<double>(nx_) * ny_); }

  /// Cell-center filaments, x-major.
  std::vector<Filament> filaments() const {
    std::vector<Filament> out;
    out.reserve(static_cast<std::size_t>(nx_) * static_cast<std::size_t>(ny_));
    for (int p = 0; p < nx_; ++p) {
      for (int q = 0; q < ny_; ++q) {
        out.push_back({(p + 0.5) * dx(), -section_.b + (q + 0.5) * dy(), filament_current()});
      }
    }
    return out;
  }

private:
  CrossSection section_;
  int nx_;
  int ny_;
  double total_current_;
};

/// Geometry factors (Gx, Gy) of the filament model, so that
/// F = (mu0 / 2pi) i1 i2 G.
///
/// On identical regular grids the filament separation only depends on the
/// index differences (di, dj), which occur (nx - |di|)(ny - |dj|) times. The
/// pair sum is grouped accordingly, costing O(nx ny) instead of O(nx^2 ny^2).
template <ConductorLayout L>
ForcePerLength filament_geometry_factors(const L& layout, int nx, int ny) {
  const CrossSection s = layout.section();
  const FilamentGrid grid(s, nx, ny, 1.0);
  const double dx = grid.dx();
  const double dy = grid.dy();
  CompensatedSum gx;
  CompensatedSum gy;
  for (int di = -(nx - 1); di <= nx - 1; ++di) {
    const double l = layout.d() + di * dx;
    const double cx = nx - std::abs(di);
    for (int dj = -(ny - 1); dj <= ny - 1; ++dj) {
      const double m = layout.h() + dj * dy;
      const double mult = cx * (ny - std::abs(dj));
      gx.add(mult * kernel_x(l, m));
      gy.add(mult * kernel_y(l, m));
    }
  }
  const double n2 = static_cast<double>(nx) * ny * static_cast<double>(nx) * ny;
  return {gx.value() / n2, gy.value() / n2};
}

template <ConductorLayout L>
ForcePerLength filament_force(const L& layout, CurrentPair currents, int nx, int ny) {
  const ForcePerLength g = filament_geometry_factors(layout, nx, ny);
  return {kMu0Over2Pi * currents.i1 * currents.i2 * g.fx, kMu0Over2Pi * currents.i1 * currents.i2 * g.fy};
}

/// Literal double loop over all filament pairs. O(nx^2 ny^2); reference for
/// the grouped sum at small grids. `offset` is where conductor 2's frame sits
/// relative to conductor 1's and may be any non-overlapping displacement.
inline ForcePerLength filament_force_pairwise(CrossSection s, double offset_x, double offset_y,
                                              CurrentPair currents, int nx, int ny) {
  const auto g1 = FilamentGrid(s, nx, ny, currents.i1).filaments();
  const auto g2 = FilamentGrid(s, nx, ny, currents.i2).filaments();
  CompensatedSum fx;
  CompensatedSum fy;
  for (const auto& p : g1) {
    for (const auto& q : g2) {
      const double l = offset_x + q.x - p.x;
      const double m = offset_y + q.y - p.y;
      const double scale = kMu0Over2Pi * p.current * q.current;
      fx.add(scale * kernel_x(l, m));
      fy.add(scale * kernel_y(l, m));
    }
  }
  return {fx.value(), fy.value()};
}

template <ConductorLayout L>
ForcePerLength filament_force_pairwise(const L& layout, CurrentPair currents, int nx, int ny) {
  return filament_force_pairwise(layout.section(), layout.d(), layout.h(), currents, nx, ny);
}

}  // namespace busbar

#endif  // BUSBAR_FILAMENT_HPP
