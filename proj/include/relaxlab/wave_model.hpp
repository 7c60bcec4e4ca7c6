#pragma once

#include <cmath>
#include <string_view>

namespace relaxlab {

/// f(u) = u^3 and its derivatives.
struct FluxDerivs {
  double f;
  double df;
  double d2f;
  double d3f;
};

constexpr FluxDerivs flux_and_derivs(double u) noexcept {
  return {u * u * u, 3.0 * u * u, 6.0 * u, 6.0};
}

/// Physical scenario for the composite wave: a degenerate Oleinik shock from
/// u_minus to u_m = -u_minus/2 followed by a rarefaction from u_m to u_plus.
///
/// The constructor enforces u_minus < 0 < u_m <= u_plus and tau > 0. A u_plus
/// within 1e-12 (relative) of u_m is snapped to u_m, giving a pure shock.
/// The profile and theorem tau bounds are exposed but not enforced here;
/// callers decide which regime they need.
class WaveConfig {
 public:
  WaveConfig(double u_minus, double u_plus, double tau);

  double u_minus() const noexcept { return u_minus_; }
  double u_plus() const noexcept { return u_plus_; }
  double tau() const noexcept { return tau_; }
  double mu() const noexcept { return 1.0; }

  double u_m() const noexcept { return -0.5 * u_minus_; }
  /// sigma = f'(u_m) = 3 u_m^2.
  double sigma() const noexcept { return 3.0 * u_m() * u_m(); }
  double delta_s() const noexcept { return u_m() - u_minus_; }
  double delta_r() const noexcept { return u_plus_ - u_m(); }
  bool pure_shock() const noexcept { return u_plus_ == u_m(); }

  /// tau < 4 / (9 sigma u_minus^2): the profile ODE denominator stays in (2/3, 2).
  double profile_tau_bound() const noexcept;
  /// tau <= min{1 / (63 sigma u_minus^2), 8/7785}.
  double theorem_tau_bound() const noexcept;
  bool satisfies_profile_bound() const noexcept { return tau_ < profile_tau_bound(); }
  bool satisfies_theorem_bound() const noexcept { return tau_ <= theorem_tau_bound(); }

 private:
  double u_minus_;
  double u_plus_;
  double tau_;
};

enum class Frame { lab, shifted };

struct CharSpeeds {
  double minus;
  double plus;
};

/// Eigenvalues of [[f'(u) - s, -1], [-1/tau, -s]], s = 0 (lab) or sigma (shifted).
/// Throws std::invalid_argument for tau <= 0.
CharSpeeds char_speeds(double u, double tau, double frame_speed);
CharSpeeds char_speeds(double u, const WaveConfig& cfg, Frame frame);

/// max(|lambda_-|, |lambda_+|) without the argument checks; used by the kernels.
/// The SIMD kernels replicate this exact operation sequence.
inline double spectral_radius(double u, double inv_tau, double frame_speed) noexcept {
  const double fp = 3.0 * u * u;
  const double disc = std::sqrt(fp * fp + 4.0 * inv_tau);
  const double c = fp - 2.0 * frame_speed;
  const double am = std::fabs(0.5 * (c - disc));
  const double ap = std::fabs(0.5 * (c + disc));
  return am > ap ? am : ap;
}

enum class RiemannPattern { shock, degenerate_shock, rarefaction, composite, constant };

std::string_view to_string(RiemannPattern p) noexcept;

/// Wave pattern of the inviscid Riemann problem for f(u) = u^3.
RiemannPattern classify_riemann(double u_l, double u_r) noexcept;

/// Chord slope (f(b) - f(a)) / (b - a).
double chord_speed(double a, double b) noexcept;

}  // namespace relaxlab
