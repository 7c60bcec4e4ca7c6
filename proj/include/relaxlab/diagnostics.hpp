#pragma once

#include <array>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "relaxlab/ansatz.hpp"
#include "relaxlab/grid.hpp"
#include "relaxlab/shock_profile.hpp"
#include "relaxlab/state.hpp"

namespace relaxlab {

/// L2 norms of a field and of its first and second discrete derivatives
/// (second-order central stencils, second-order one-sided at the ends).
struct SobolevParts {
  double l2 = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
};

SobolevParts sobolev_parts(std::span<const double> field, double dx);

/// sqrt of the sum of squared parts up to `order` (0..2). Requires >= 5 cells.
double sobolev_norm(std::span<const double> field, double dx, int order);

/// sum_j w(u^S(xi_j + X)) (phi_j^2 + tau r_j^2) / 2 dx over the interior cells.
double relative_entropy(std::span<const double> phi, std::span<const double> r, double X,
                        const ShockProfile& profile, const Grid1D& grid);

struct SupDistance {
  double sup_u = 0.0;
  double sup_q = 0.0;
};

/// Distance of the state to u^S(xi + X) + u^r((xi + sigma t)/t) - u_m and to
/// q^S(xi + X). Throws for t <= 0 unless allow_initial_limit is set, in which
/// case t = 0 uses the t -> 0+ limit of the fan (u_m for xi <= 0, u_plus after).
SupDistance sup_distance_composite(const SimState& state, const ShockProfile& profile,
                                   const Grid1D& grid, bool allow_initial_limit = false);

/// The six wave-interaction integrals, split at 0 and L = (f'(u_plus) - sigma)(1 + t):
///   I1 = int_{-inf}^0 |u^S - u_m| u^R_xi      I2 = int_0^inf |u^S - u_m| u^R_xi
///   I3 = int_{-inf}^0 |u^R - u_m| u^S_xi      I4 = int_0^L |u^R - u^r| u^S_xi
///   I5 = int_0^L |u^r - u_m| u^S_xi           I6 = int_L^inf |u^R - u_m| u^S_xi
/// with u^S(xi + X), u^R(1 + t, xi + sigma t + X), u^r((xi + X + sigma (1 + t))/(1 + t)).
std::array<double, 6> interaction_integrals(double t, double X, const ShockProfile& profile);

/// int |d^k F / dxi^k|^2 dxi for k = 0, 1, 2 and int |F| dxi at one time.
struct FNorms {
  std::array<double, 3> l2_sq{};
  double l1 = 0.0;
};

FNorms f_norms(double t, double X, const ShockProfile& profile);

struct FNormSeries {
  std::vector<double> t;
  std::vector<FNorms> norms;
  /// Trapezoid running integral of (int |F| dxi)^{4/3} from times[0].
  std::vector<double> running_l1_43;
};

/// X_series may be empty (X = 0) or match times in length.
FNormSeries f_norm_series(std::span<const double> times, std::span<const double> X_series,
                          const ShockProfile& profile);

struct DecayFit {
  double slope = 0.0;
  double r_squared = 0.0;
  std::size_t points = 0;
};

/// Least-squares slope of log y against log(1 + t) over t in [t_lo, t_hi].
/// Throws std::invalid_argument for fewer than 5 points or y <= 0 in the window.
DecayFit fit_decay(std::span<const double> t, std::span<const double> y, double t_lo, double t_hi);

/// One diagnostics CSV row.
struct DiagnosticsRecord {
  double t = 0.0;
  double E_w = 0.0;
  double phi_L2 = 0.0, phi_H1 = 0.0, phi_H2 = 0.0;
  double r_L2 = 0.0, r_H1 = 0.0, r_H2 = 0.0;
  double phi_sup = 0.0;
  double sup_u = 0.0, sup_q = 0.0;
  double X = 0.0, Xdot = 0.0;
  std::array<double, 6> I{};
  std::array<double, 3> F_L2_sq{};
};

/// Builds a record from the current state. Xdot is the shift rate for the
/// current perturbation.
DiagnosticsRecord make_record(const SimState& state, const ShockProfile& profile, const Grid1D& grid);

std::string diagnostics_csv_header();
std::string diagnostics_csv_row(const DiagnosticsRecord& r);

}  // namespace relaxlab
