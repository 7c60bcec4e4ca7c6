#pragma once

#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

#include "relaxlab/report.hpp"
#include "relaxlab/shock_profile.hpp"

namespace relaxlab::testing {

inline const WaveConfig& default_wave() {
  static const WaveConfig cfg(-1.0, 0.75, 0.001);
  return cfg;
}

inline const WaveConfig& shock_wave() {
  static const WaveConfig cfg(-1.0, 0.5, 0.001);
  return cfg;
}

inline const ShockProfile& default_profile() {
  static const ShockProfile p = ShockProfile::build(default_wave());
  return p;
}

inline const ShockProfile& shock_profile() {
  static const ShockProfile p = ShockProfile::build(shock_wave());
  return p;
}

/// Default wave tabulated far enough to reach the tail-fit windows.
inline const ShockProfile& deep_profile() {
  static const ShockProfile p = ShockProfile::build(default_wave(), ShockProfile::kDefaultTableSize, 1e-40);
  return p;
}

inline const CheckResult& find_check(const Report& rep, const std::string& name) {
  for (const auto& c : rep.checks())
    if (c.name == name) return c;
  throw std::out_of_range("no check named " + name);
}

/// u^R from a TOMS 748 solve of the foot-point relation.
inline double oracle_rarefaction_u(double t, double x, const WaveConfig& c) {
  const double lm = 3.0 * c.u_m() * c.u_m(), lp = 3.0 * c.u_plus() * c.u_plus();
  auto W = [&](double y) { return 0.5 * (lp + lm) + 0.5 * (lp - lm) * std::tanh(y); };
  auto h = [&](double y) { return y + t * W(y) - x; };
  const double lo = x - t * lp, hi = x - t * lm;
  if (t == 0.0) return std::sqrt(W(x) / 3.0);
  if (h(lo) >= 0.0) return std::sqrt(W(lo) / 3.0);
  if (h(hi) <= 0.0) return std::sqrt(W(hi) / 3.0);
  std::uintmax_t iters = 200;
  const auto r = boost::math::tools::toms748_solve(h, lo, hi, boost::math::tools::eps_tolerance<double>(52), iters);
  return std::sqrt(W(0.5 * (r.first + r.second)) / 3.0);
}

}  // namespace relaxlab::testing
