#pragma once

#include <cstddef>
#include <stdexcept>

namespace relaxlab {

/// Uniform cell-centered grid on [xi_min, xi_max] with two ghost cells per side.
/// Array index i (0 <= i < n_cells + 2 ghost) has center xi_min + (i - ghost + 1/2) dx.
struct Grid1D {
  static constexpr std::size_t ghost = 2;

  double xi_min = 0.0;
  double xi_max = 0.0;
  std::size_t n_cells = 0;
  double dx = 0.0;

  Grid1D() = default;
  Grid1D(double lo, double hi, double dx_target) : xi_min(lo), xi_max(hi) {
    if (!(hi > lo) || !(dx_target > 0.0)) throw std::invalid_argument("Grid1D: need xi_max > xi_min and dx > 0");
    n_cells = static_cast<std::size_t>((hi - lo) / dx_target + 0.5);
    if (n_cells < 5) throw std::invalid_argument("Grid1D: fewer than 5 cells");
    dx = (hi - lo) / static_cast<double>(n_cells);
  }

  std::size_t size() const noexcept { return n_cells + 2 * ghost; }
  /// Center of array slot i (ghosts included).
  double center(std::size_t i) const noexcept {
    return xi_min + (static_cast<double>(i) - static_cast<double>(ghost) + 0.5) * dx;
  }
  /// Center of interior cell j.
  double interior_center(std::size_t j) const noexcept {
    return xi_min + (static_cast<double>(j) + 0.5) * dx;
  }
};

}  // namespace relaxlab
