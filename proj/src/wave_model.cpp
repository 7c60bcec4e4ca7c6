#include "relaxlab/wave_model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace relaxlab {

namespace {

constexpr double kDegeneracyTol = 1e-12;

}  // namespace

WaveConfig::WaveConfig(double u_minus, double u_plus, double tau)
    : u_minus_(u_minus), u_plus_(u_plus), tau_(tau) {
  if (!std::isfinite(u_minus) || !std::isfinite(u_plus) || !std::isfinite(tau)) {
    throw std::invalid_argument("WaveConfig: non-finite input");
  }
  if (!(u_minus < 0.0)) {
    throw std::invalid_argument("WaveConfig: u_minus must be negative");
  }
  if (!(tau > 0.0)) {
    throw std::invalid_argument("WaveConfig: tau must be positive");
  }
  const double um = u_m();
  if (std::fabs(u_plus - um) <= kDegeneracyTol * um) {
    u_plus_ = um;
  } else if (u_plus < um) {
    std::ostringstream msg;
    msg << "WaveConfig: u_plus = " << u_plus << " must be >= u_m = -u_minus/2 = " << um
        << " (composite-wave configuration)";
    throw std::invalid_argument(msg.str());
  }
}

double WaveConfig::profile_tau_bound() const noexcept {
  return 4.0 / (9.0 * sigma() * u_minus_ * u_minus_);
}

double WaveConfig::theorem_tau_bound() const noexcept {
  return std::min(1.0 / (63.0 * sigma() * u_minus_ * u_minus_), 8.0 / 7785.0);
}

CharSpeeds char_speeds(double u, double tau, double frame_speed) {
  if (!(tau > 0.0)) {
    throw std::invalid_argument("char_speeds: tau must be positive");
  }
  // lambda^2 - (f' - 2s) lambda + (-(f' - s) s - 1/tau) = 0
  const double fp = 3.0 * u * u;
  const double disc = std::sqrt(fp * fp + 4.0 / tau);
  const double c = fp - 2.0 * frame_speed;
  return {0.5 * (c - disc), 0.5 * (c + disc)};
}

CharSpeeds char_speeds(double u, const WaveConfig& cfg, Frame frame) {
  return char_speeds(u, cfg.tau(), frame == Frame::shifted ? cfg.sigma() : 0.0);
}

std::string_view to_string(RiemannPattern p) noexcept {
  switch (p) {
    case RiemannPattern::shock: return "shock";
    case RiemannPattern::degenerate_shock: return "degenerate_shock";
    case RiemannPattern::rarefaction: return "rarefaction";
    case RiemannPattern::composite: return "composite";
    case RiemannPattern::constant: return "constant";
  }
  return "unknown";
}

RiemannPattern classify_riemann(double u_l, double u_r) noexcept {
  if (u_l == u_r) return RiemannPattern::constant;
  // f is odd, so (u_l, u_r) and (-u_l, -u_r) share a pattern.
  if (u_l > 0.0) {
    u_l = -u_l;
    u_r = -u_r;
  }
  if (u_l == 0.0) return RiemannPattern::rarefaction;
  // u_l < 0: f is concave on u < 0, so decreasing data fans out.
  if (u_r < u_l) return RiemannPattern::rarefaction;
  const double tangent_state = -0.5 * u_l;
  if (std::fabs(u_r - tangent_state) <= kDegeneracyTol * std::fabs(u_l)) {
    return RiemannPattern::degenerate_shock;
  }
  return u_r < tangent_state ? RiemannPattern::shock : RiemannPattern::composite;
}

double chord_speed(double a, double b) noexcept {
  // (b^3 - a^3) / (b - a) without the cancellation.
  return a * a + a * b + b * b;
}

}  // namespace relaxlab
