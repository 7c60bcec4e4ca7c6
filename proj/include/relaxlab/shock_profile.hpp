#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "relaxlab/report.hpp"
#include "relaxlab/wave_model.hpp"

namespace relaxlab {

/// One tabulation node of the degenerate shock profile.
///
/// The table is parameterized by distance to the nearer far-field state so the
/// tails stay resolved below double-precision spacing of u itself. Both
/// parameters are monotone in xi over the whole table:
///   p_left  = log(u - u_minus)   (integration variable for u <= anchor)
///   p_right = -log(u_m - u)      (integration variable for u >  anchor)
/// g_left, g_right are dxi/dp in the respective parameter.
struct ProfileNode {
  double xi;
  double p_left;
  double p_right;
  double g_left;
  double g_right;
  double d_left;   // u - u_minus
  double d_right;  // u_m - u
  double u;
  bool right_branch;
};

struct ProfileSample {
  double u;
  double u_xi;
  double q;
  double q_xi;
};

/// u^S and its xi-derivatives up to third order, plus q^S, q^S_xi.
struct ProfileJet {
  double u;
  double d_left;
  double d_right;
  double u_xi;
  double u_xixi;
  double u_xixixi;
  double q;
  double q_xi;
};

/// Monotone tabulation of the degenerate viscous shock (u^S, q^S)(xi) from
/// u_minus to u_m, normalized so u^S(0) = (u_minus + u_m)/2.
///
/// xi(u) is tabulated by Gauss-Legendre quadrature of dxi/du in the branch
/// parameter; u^S(xi) is recovered by Hermite prediction and a Newton
/// correction against the same quadrature. u^S_xi comes straight from the
/// first-order profile ODE, q^S from its closed form. Outside
/// [trunc_left, trunc_right] the profile is extended by constants.
/// Immutable after build.
class ShockProfile {
 public:
  static constexpr std::size_t kDefaultTableSize = 2000;
  static constexpr double kDefaultClearance = 1e-6;

  /// Requires tau below the profile bound, n_table >= 100 and
  /// u_clearance in (0, 0.5). Throws std::invalid_argument otherwise, and
  /// std::runtime_error if the tabulation is not strictly increasing.
  static ShockProfile build(const WaveConfig& cfg, std::size_t n_table = kDefaultTableSize,
                            double u_clearance = kDefaultClearance);

  const WaveConfig& config() const noexcept { return cfg_; }
  std::span<const ProfileNode> table() const noexcept { return nodes_; }
  double trunc_left() const noexcept { return nodes_.front().xi; }
  double trunc_right() const noexcept { return nodes_.back().xi; }
  double anchor_u() const noexcept { return 0.5 * (cfg_.u_minus() + cfg_.u_m()); }
  double u_clearance() const noexcept { return clearance_; }

  ProfileSample eval(double xi) const;
  ProfileJet jet(double xi) const;

  /// Inverse map; throws std::out_of_range outside the tabulated u-range.
  double xi_of_u(double u) const;

  /// Jet at a state given by its offsets from both far-field values.
  ProfileJet jet_from_offsets(double d_left, double d_right) const noexcept;

  /// 1 + 3 tau sigma (u^2 - u_m^2).
  double denominator(double u) const noexcept;

 private:
  ShockProfile(const WaveConfig& cfg, double clearance) : cfg_(cfg), clearance_(clearance) {}

  struct Offsets {
    double d_left;
    double d_right;
  };
  Offsets offsets_at(double param, bool right_branch) const noexcept;
  double dxi_dparam(double param, bool right_branch) const noexcept;
  double integrate_param(double p0, double p1, bool right_branch) const noexcept;
  ProfileNode make_node(double xi, double param, bool right_branch) const noexcept;
  /// Offsets of u^S(xi) for xi strictly inside the table.
  Offsets offsets_at_xi(double xi) const;

  WaveConfig cfg_;
  double clearance_;
  std::vector<ProfileNode> nodes_;
  std::vector<double> xi_;  // copy of node xi for searching
};

struct ShockBoundsOptions {
  double left_window_lo = -40.0;
  double left_window_hi = -10.0;
  double right_window_lo = 50.0;
  double right_window_hi = 500.0;
  double min_left_r_squared = 0.999;
  double max_right_relative_residual = 1e-2;
  /// Pinned constant C in |d^k u^S| <= C delta_S^2 |d^{k-1} u^S| (k = 2, 3).
  double derivative_ratio_constant = 2.0;
};

/// Pointwise checks of the profile against the decay and derivative bounds
/// of the degenerate viscous shock. Fitted constants are stored as report
/// values. The left-tail window must lie inside the table; build with a
/// small u_clearance (e.g. 1e-40) to reach xi = -40.
Report verify_shock_bounds(const ShockProfile& profile, const ShockBoundsOptions& opts = {});

/// Closed-form q^S identity, u^S(0) normalization and u/xi round trips at
/// n_samples evenly spaced points.
Report verify_profile_consistency(const ShockProfile& profile, std::size_t n_samples = 2001);

}  // namespace relaxlab
