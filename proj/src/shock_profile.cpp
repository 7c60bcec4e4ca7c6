#include "relaxlab/shock_profile.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "relaxlab/numerics.hpp"

namespace relaxlab {

ShockProfile ShockProfile::build(const WaveConfig& cfg, std::size_t n_table, double u_clearance) {
  if (!cfg.satisfies_profile_bound()) {
    std::ostringstream msg;
    msg << "shock profile: tau = " << cfg.tau() << " violates tau < 4/(9 sigma u_minus^2) = "
        << cfg.profile_tau_bound();
    throw std::invalid_argument(msg.str());
  }
  if (n_table < 100) throw std::invalid_argument("shock profile: n_table must be >= 100");
  if (!(u_clearance > 0.0 && u_clearance < 0.5)) {
    throw std::invalid_argument("shock profile: u_clearance must lie in (0, 0.5)");
  }

  ShockProfile sp(cfg, u_clearance);
  const double ds = cfg.delta_s();
  const std::size_t n_half = n_table / 2;

  // Left branch, walking outward from the anchor (xi = 0, d_left = delta_S/2).
  const double pl_anchor = std::log(0.5 * ds);
  const double pl_end = std::log(u_clearance * ds);
  const double hl = (pl_anchor - pl_end) / static_cast<double>(n_half);
  std::vector<ProfileNode> left;
  left.reserve(n_half + 1);
  left.push_back(sp.make_node(0.0, pl_anchor, false));
  double xi = 0.0;
  for (std::size_t j = 1; j <= n_half; ++j) {
    const double p_hi = pl_anchor - hl * static_cast<double>(j - 1);
    const double p_lo = j == n_half ? pl_end : pl_anchor - hl * static_cast<double>(j);
    xi -= sp.integrate_param(p_lo, p_hi, false);
    left.push_back(sp.make_node(xi, p_lo, false));
  }

  // Right branch in p = -log(d_right).
  const double pr_anchor = -std::log(0.5 * ds);
  const double pr_end = -std::log(u_clearance * ds);
  const double hr = (pr_end - pr_anchor) / static_cast<double>(n_half);
  std::vector<ProfileNode> right;
  right.reserve(n_half);
  xi = 0.0;
  for (std::size_t j = 1; j <= n_half; ++j) {
    const double p_lo = pr_anchor + hr * static_cast<double>(j - 1);
    const double p_hi = j == n_half ? pr_end : pr_anchor + hr * static_cast<double>(j);
    xi += sp.integrate_param(p_lo, p_hi, true);
    right.push_back(sp.make_node(xi, p_hi, true));
  }

  sp.nodes_.assign(left.rbegin(), left.rend());
  sp.nodes_.insert(sp.nodes_.end(), right.begin(), right.end());
  sp.xi_.reserve(sp.nodes_.size());
  for (std::size_t i = 0; i < sp.nodes_.size(); ++i) {
    const auto& nd = sp.nodes_[i];
    if (!std::isfinite(nd.xi) || (i > 0 && !(nd.xi > sp.nodes_[i - 1].xi))) {
      std::ostringstream msg;
      msg << "shock profile: tabulation not strictly increasing at node " << i << " (xi = " << nd.xi
          << ")";
      throw std::runtime_error(msg.str());
    }
    sp.xi_.push_back(nd.xi);
  }
  return sp;
}

ShockProfile::Offsets ShockProfile::offsets_at(double param, bool right_branch) const noexcept {
  const double ds = cfg_.delta_s();
  if (right_branch) {
    const double dr = std::exp(-param);
    return {ds - dr, dr};
  }
  const double dl = std::exp(param);
  return {dl, ds - dl};
}

double ShockProfile::dxi_dparam(double param, bool right_branch) const noexcept {
  const auto [dl, dr] = offsets_at(param, right_branch);
  const double u = dl <= dr ? cfg_.u_minus() + dl : cfg_.u_m() - dr;
  const double d = 1.0 - 3.0 * cfg_.tau() * cfg_.sigma() * dr * (u + cfg_.u_m());
  // dxi/du = D / (d_left d_right^2); du/dp = d_left (left) or d_right (right).
  return right_branch ? d / (dl * dr) : d / (dr * dr);
}

double ShockProfile::integrate_param(double p0, double p1, bool right_branch) const noexcept {
  return numerics::gauss_legendre8([&](double p) { return dxi_dparam(p, right_branch); }, p0, p1);
}

ProfileNode ShockProfile::make_node(double xi, double param, bool right_branch) const noexcept {
  const auto [dl, dr] = offsets_at(param, right_branch);
  ProfileNode n{};
  n.xi = xi;
  n.d_left = dl;
  n.d_right = dr;
  n.u = dl <= dr ? cfg_.u_minus() + dl : cfg_.u_m() - dr;
  n.p_left = right_branch ? std::log(dl) : param;
  n.p_right = right_branch ? param : -std::log(dr);
  n.g_left = dxi_dparam(n.p_left, false);
  n.g_right = dxi_dparam(n.p_right, true);
  n.right_branch = right_branch;
  return n;
}

double ShockProfile::denominator(double u) const noexcept {
  const double um = cfg_.u_m();
  return 1.0 + 3.0 * cfg_.tau() * cfg_.sigma() * (u - um) * (u + um);
}

ShockProfile::Offsets ShockProfile::offsets_at_xi(double xi) const {
  auto it = std::upper_bound(xi_.begin(), xi_.end(), xi);
  std::size_t i = it == xi_.begin() ? 0 : static_cast<std::size_t>(it - xi_.begin()) - 1;
  i = std::min(i, nodes_.size() - 2);
  const ProfileNode& a = nodes_[i];
  const ProfileNode& b = nodes_[i + 1];
  const bool right = b.right_branch;
  const double p0 = right ? a.p_right : a.p_left;
  const double p1 = right ? b.p_right : b.p_left;
  const double g0 = right ? a.g_right : a.g_left;
  const double g1 = right ? b.g_right : b.g_left;

  // Cubic Hermite prediction of p(xi) with dp/dxi = 1/g at both nodes.
  const double h = b.xi - a.xi;
  const double s = (xi - a.xi) / h;
  const double s2 = s * s;
  const double s3 = s2 * s;
  double p = (2 * s3 - 3 * s2 + 1) * p0 + (s3 - 2 * s2 + s) * h / g0 + (-2 * s3 + 3 * s2) * p1 +
             (s3 - s2) * h / g1;
  const double p_lo = std::min(p0, p1);
  const double p_hi = std::max(p0, p1);
  p = std::clamp(p, p_lo, p_hi);

  // Newton on xi(p) = xi, same quadrature as the table.
  for (int iter = 0; iter < 4; ++iter) {
    const double r = a.xi + integrate_param(p0, p, right) - xi;
    const double step = r / dxi_dparam(p, right);
    p = std::clamp(p - step, p_lo, p_hi);
    if (std::fabs(step) <= 4e-16 * std::max(1.0, std::fabs(p))) break;
  }
  const auto off = offsets_at(p, right);
  return {off.d_left, off.d_right};
}

ProfileJet ShockProfile::jet_from_offsets(double dl, double dr) const noexcept {
  const double um = cfg_.u_m();
  const double u = dl <= dr ? cfg_.u_minus() + dl : um - dr;
  const double k = 3.0 * cfg_.tau() * cfg_.sigma();
  const double u2m2 = -dr * (u + um);  // u^2 - u_m^2

  const double d = 1.0 + k * u2m2;
  const double d1 = 2.0 * k * u;
  const double d2 = 2.0 * k;
  const double n = dl * dr * dr;
  const double n1 = dr * dr - 2.0 * dl * dr;
  const double n2 = 2.0 * dl - 4.0 * dr;

  // u_xi = G(u) = N/D; chain rule for the higher xi-derivatives.
  const double g = n / d;
  const double num1 = n1 * d - n * d1;
  const double g1 = num1 / (d * d);
  const double g2 = (n2 * d - n * d2) / (d * d) - 2.0 * d1 * num1 / (d * d * d);

  ProfileJet j{};
  j.u = u;
  j.d_left = dl;
  j.d_right = dr;
  j.u_xi = g;
  j.u_xixi = g1 * g;
  j.u_xixixi = (g2 * g + g1 * g1) * g;
  // f(u) - f(u_-) - sigma (u - u_-) factors as (u - u_-)(u - u_m)^2 for the degenerate pair.
  j.q = n;
  j.q_xi = 3.0 * u2m2 * g;
  return j;
}

ProfileJet ShockProfile::jet(double xi) const {
  if (xi < trunc_left()) {
    return {cfg_.u_minus(), 0.0, cfg_.delta_s(), 0.0, 0.0, 0.0, 0.0, 0.0};
  }
  if (xi > trunc_right()) {
    return {cfg_.u_m(), cfg_.delta_s(), 0.0, 0.0, 0.0, 0.0, 0.0, 0.0};
  }
  const auto off = offsets_at_xi(xi);
  return jet_from_offsets(off.d_left, off.d_right);
}

ProfileSample ShockProfile::eval(double xi) const {
  const auto j = jet(xi);
  return {j.u, j.u_xi, j.q, j.q_xi};
}

double ShockProfile::xi_of_u(double u) const {
  const double dl = u - cfg_.u_minus();
  const double dr = cfg_.u_m() - u;
  if (!(dl > 0.0 && dr > 0.0)) throw std::out_of_range("xi_of_u: u outside (u_minus, u_m)");
  const double pl = std::log(dl);
  if (pl < nodes_.front().p_left || -std::log(dr) > nodes_.back().p_right) {
    throw std::out_of_range("xi_of_u: u beyond the table truncation");
  }
  auto it = std::upper_bound(nodes_.begin(), nodes_.end(), pl,
                             [](double v, const ProfileNode& n) { return v < n.p_left; });
  std::size_t i = it == nodes_.begin() ? 0 : static_cast<std::size_t>(it - nodes_.begin()) - 1;
  i = std::min(i, nodes_.size() - 2);
  const bool right = nodes_[i + 1].right_branch;
  const double p0 = right ? nodes_[i].p_right : nodes_[i].p_left;
  const double p = right ? -std::log(dr) : pl;
  return nodes_[i].xi + integrate_param(p0, p, right);
}

Report verify_shock_bounds(const ShockProfile& profile, const ShockBoundsOptions& opts) {
  Report rep("shock_bounds");
  const WaveConfig& cfg = profile.config();
  const double ds = cfg.delta_s();
  const double ds2 = ds * ds;
  const double ts = cfg.tau() * cfg.sigma();
  const auto table = profile.table();

  double min_slope = INFINITY;
  double min_slope_xi = 0.0;
  double d_min = INFINITY, d_max = -INFINITY;
  double res1 = 0.0, res2 = 0.0;
  double ratio2 = 0.0, ratio_q = 0.0;
  double ratio2_xi = 0.0, ratio_q_xi = 0.0;
  for (const auto& nd : table) {
    const auto j = profile.jet_from_offsets(nd.d_left, nd.d_right);
    if (j.u_xi < min_slope) {
      min_slope = j.u_xi;
      min_slope_xi = nd.xi;
    }
    const double d = profile.denominator(j.u);
    d_min = std::min(d_min, d);
    d_max = std::max(d_max, d);
    // Traveling-wave equations, scaled by the size of their terms.
    const double fp = 3.0 * j.u * j.u;
    const double scale1 = std::max({std::fabs(cfg.sigma() * j.u_xi), std::fabs(fp * j.u_xi),
                                    std::fabs(j.q_xi), 1e-300});
    res1 = std::max(res1, std::fabs(-cfg.sigma() * j.u_xi + fp * j.u_xi - j.q_xi) / scale1);
    const double scale2 =
        std::max({std::fabs(ts * j.q_xi), std::fabs(j.q), std::fabs(j.u_xi), 1e-300});
    res2 = std::max(res2, std::fabs(-ts * j.q_xi + j.q - j.u_xi) / scale2);
    if (j.u_xi > 0.0) {
      const double r2 = std::fabs(j.u_xixi) / j.u_xi;
      if (r2 > ratio2) {
        ratio2 = r2;
        ratio2_xi = nd.xi;
      }
      const double rq = std::fabs(j.q_xi) / j.u_xi;
      if (rq > ratio_q) {
        ratio_q = rq;
        ratio_q_xi = nd.xi;
      }
    }
  }

  rep.check("slope_positive", min_slope > 0.0, min_slope, 0.0,
            "min u^S_xi over table at xi = " + std::to_string(min_slope_xi));
  rep.check("denominator_lower", d_min > 2.0 / 3.0, d_min, 2.0 / 3.0);
  rep.check("denominator_upper", d_max < 2.0, d_max, 2.0);
  rep.check("ode_residual_u", res1 <= 1e-10, res1, 1e-10);
  rep.check("ode_residual_q", res2 <= 1e-10, res2, 1e-10);

  // Left tail: log(u^S - u_minus) linear in xi.
  if (profile.trunc_left() > opts.left_window_lo) {
    rep.check("left_tail_window", false, profile.trunc_left(), opts.left_window_lo,
              "table does not reach the left fit window; rebuild with a smaller u_clearance");
  } else {
    std::vector<double> xs, ys;
    for (const auto& nd : table) {
      if (nd.xi >= opts.left_window_lo && nd.xi <= opts.left_window_hi) {
        xs.push_back(nd.xi);
        ys.push_back(std::log(nd.d_left));
      }
    }
    if (xs.size() < 5) {
      rep.check("left_tail_window", false, static_cast<double>(xs.size()), 5.0,
                "too few table nodes in the left fit window");
    } else {
      const auto fit = numerics::fit_line(xs, ys);
      rep.set_value("c_left", fit.slope);
      rep.set_value("c_left_over_delta_s2", fit.slope / ds2);
      rep.set_value("left_r_squared", fit.r_squared);
      // Linearization of the profile ODE at u_minus.
      rep.set_value("c_left_linearized", ds2 / profile.denominator(cfg.u_minus()));
      rep.check("left_tail_rate_positive", fit.slope > 0.0, fit.slope, 0.0);
      rep.check("left_tail_log_linear", fit.r_squared >= opts.min_left_r_squared, fit.r_squared,
                opts.min_left_r_squared);
    }
  }

  // Right tail: u_m - u^S ~ a / (1 + b xi), i.e. 1/(u_m - u^S) linear in xi.
  if (profile.trunc_right() < opts.right_window_hi) {
    rep.check("right_tail_window", false, profile.trunc_right(), opts.right_window_hi,
              "table does not reach the right fit window");
  } else {
    std::vector<double> xs, ys, drs;
    for (const auto& nd : table) {
      if (nd.xi >= opts.right_window_lo && nd.xi <= opts.right_window_hi) {
        xs.push_back(nd.xi);
        ys.push_back(1.0 / nd.d_right);
        drs.push_back(nd.d_right);
      }
    }
    if (xs.size() < 5) {
      rep.check("right_tail_window", false, static_cast<double>(xs.size()), 5.0,
                "too few table nodes in the right fit window");
    } else {
      const auto fit = numerics::fit_line(xs, ys);
      double worst = 0.0;
      for (std::size_t i = 0; i < xs.size(); ++i) {
        worst = std::max(worst, std::fabs(drs[i] * (fit.intercept + fit.slope * xs[i]) - 1.0));
      }
      rep.set_value("right_a", 1.0 / fit.intercept);
      rep.set_value("right_b", fit.slope / fit.intercept);
      rep.set_value("right_b_over_delta_s2", fit.slope / fit.intercept / ds2);
      rep.check("right_tail_algebraic", worst <= opts.max_right_relative_residual, worst,
                opts.max_right_relative_residual);
    }
  }

  rep.set_value("ratio_uxixi_over_delta_s2", ratio2 / ds2);
  rep.set_value("ratio_qxi_over_delta_s2", ratio_q / ds2);
  rep.check("second_derivative_ratio", ratio2 <= opts.derivative_ratio_constant * ds2, ratio2,
            opts.derivative_ratio_constant * ds2,
            "max |u^S_xixi|/|u^S_xi| at xi = " + std::to_string(ratio2_xi));
  // |q_xi / u_xi| = 3 |u - u_m| |u + u_m| <= 3 delta_S (2 delta_S / 3).
  rep.check("q_slope_ratio", ratio_q <= 2.0 * ds2, ratio_q, 2.0 * ds2,
            "max |q^S_xi|/|u^S_xi| at xi = " + std::to_string(ratio_q_xi));
  return rep;
}

Report verify_profile_consistency(const ShockProfile& profile, std::size_t n_samples) {
  Report rep("profile_consistency");
  const WaveConfig& cfg = profile.config();
  const double um = cfg.u_m();
  const double ul = cfg.u_minus();
  const double sigma = cfg.sigma();
  const auto closed_q = [&](double u) { return u * u * u - ul * ul * ul - sigma * (u - ul); };

  double q_gap = 0.0;
  for (const auto& nd : profile.table()) {
    const auto j = profile.jet_from_offsets(nd.d_left, nd.d_right);
    q_gap = std::max(q_gap, std::fabs(j.q - closed_q(j.u)));
  }
  const double lo = profile.trunc_left();
  const double hi = profile.trunc_right();
  const std::size_t n = std::max<std::size_t>(n_samples, 2);
  for (std::size_t i = 0; i < n; ++i) {
    const double xi = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    const auto s = profile.eval(xi);
    q_gap = std::max(q_gap, std::fabs(s.q - closed_q(s.u)));
  }
  rep.check("q_closed_form", q_gap <= 1e-12, q_gap, 1e-12);

  const double anchor_gap = std::fabs(profile.eval(0.0).u - profile.anchor_u());
  rep.check("normalization", anchor_gap <= 1e-12, anchor_gap, 1e-12);

  // u -> xi -> u over the tabulated u-range.
  const double floor_d = 1e-12 * cfg.delta_s();
  const double u_lo = ul + std::max(profile.table().front().d_left * (1.0 + 1e-6), floor_d);
  const double u_hi = um - std::max(profile.table().back().d_right * (1.0 + 1e-6), floor_d);
  double u_gap = 0.0;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double u = u_lo + (u_hi - u_lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    u_gap = std::max(u_gap, std::fabs(profile.eval(profile.xi_of_u(u)).u - u));
  }
  rep.check("round_trip_u", u_gap <= 1e-9, u_gap, 1e-9);

  // xi -> u -> xi where u still resolves xi.
  const double resolved = 1e-6 * cfg.delta_s();
  const double a = std::max(profile.xi_of_u(std::max(u_lo, ul + resolved)), -50.0);
  const double b = std::min(profile.xi_of_u(std::min(u_hi, um - resolved)), 50.0);
  double xi_gap = 0.0;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double xi = a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
    const double back = profile.xi_of_u(profile.eval(xi).u);
    xi_gap = std::max(xi_gap, std::fabs(back - xi) / std::max(1.0, std::fabs(xi)));
  }
  rep.check("round_trip_xi", xi_gap <= 1e-9, xi_gap, 1e-9);
  return rep;
}

}  // namespace relaxlab
