#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "relaxlab/grid.hpp"
#include "relaxlab/report.hpp"
#include "relaxlab/shock_profile.hpp"

namespace relaxlab {

/// w and its u-derivatives w' = dw/du, w'' = d^2w/du^2.
struct WeightFn {
  double w;
  double dw;
  double d2w;
};

/// Piecewise weight on [-2 u_m, u_m] with breakpoints 0 and u_m/2; u_s is
/// clamped to that interval.
WeightFn weight_eval(double u_s, double u_m) noexcept;

/// C^2 junction mismatches at 0 and u_m/2 and range checks of w, w', w''
/// at uniformly drawn states in (-2 u_m, u_m].
Report verify_weight(double u_m, std::size_t n_samples = 10000, std::uint64_t seed = 20240611);

/// Closed form of the integral of w over (-2 u_m, u_m): 383 u_m^3 / 32.
double weight_integral(double u_m) noexcept;

/// Per-cell factor (32/(25 u_m^2)) w(u^S(xi_j + X)) u^S_xi(xi_j + X) dx over
/// the interior cells, so that shift_rhs is a plain dot product.
std::vector<double> shift_density(const ShockProfile& profile, const Grid1D& grid, double X);

/// Shift rate from phi on the interior cells; deterministic pairwise sum.
double shift_rhs(std::span<const double> phi, std::span<const double> density);
double shift_rhs(std::span<const double> phi, const ShockProfile& profile, double X, const Grid1D& grid);

struct ShiftSample {
  double t;
  double X;
  double Xdot;
};

struct ShiftState {
  double t = 0.0;
  double X = 0.0;
  double Xdot = 0.0;
  std::vector<ShiftSample> history{{0.0, 0.0, 0.0}};
};

/// Forward Euler: X += dt rhs, Xdot = rhs, t += dt; appends to history.
/// Throws std::invalid_argument for dt <= 0.
void advance_shift(ShiftState& state, double rhs, double dt);

}  // namespace relaxlab
