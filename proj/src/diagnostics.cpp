#include "relaxlab/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "relaxlab/numerics.hpp"
#include "relaxlab/weight_shift.hpp"

namespace relaxlab {

namespace {

constexpr double kPanel = 0.25;
constexpr double kLeftReach = 50.0;
constexpr double kRightReach = 40.0;

double l2_of(const std::vector<double>& v, double dx) {
  std::vector<double> sq(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) sq[i] = v[i] * v[i];
  return std::sqrt(numerics::pairwise_sum(sq) * dx);
}

// Integral over [xi_end, inf) where u^S is on its algebraic tail and u^R has
// reached u_plus: change variables to p = -log(u_m - u^S), dxi = d_right / u^S_xi dp.
template <class Integrand>
double right_tail(const ShockProfile& profile, double xi_end, Integrand&& h) {
  const auto S0 = profile.jet(xi_end);
  if (S0.d_right <= 0.0 || S0.u_xi <= 0.0) return 0.0;
  const double ds = profile.config().delta_s();
  const double p0 = -std::log(S0.d_right);
  auto f = [&](double p) {
    const double dr = std::exp(-p);
    const auto S = profile.jet_from_offsets(ds - dr, dr);
    return h(S) * dr / S.u_xi;
  };
  return numerics::composite_gauss5(f, p0, p0 + 60.0, 0.5);
}

}  // namespace

SobolevParts sobolev_parts(std::span<const double> f, double dx) {
  const std::size_t n = f.size();
  if (n < 5) throw std::invalid_argument("sobolev_parts: need at least 5 cells");
  std::vector<double> d1(n), d2(n), f0(f.begin(), f.end());
  const double inv2 = 1.0 / (2.0 * dx);
  const double invsq = 1.0 / (dx * dx);
  d1[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) * inv2;
  d1[n - 1] = (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) * inv2;
  d2[0] = (2.0 * f[0] - 5.0 * f[1] + 4.0 * f[2] - f[3]) * invsq;
  d2[n - 1] = (2.0 * f[n - 1] - 5.0 * f[n - 2] + 4.0 * f[n - 3] - f[n - 4]) * invsq;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    d1[i] = (f[i + 1] - f[i - 1]) * inv2;
    d2[i] = (f[i + 1] - 2.0 * f[i] + f[i - 1]) * invsq;
  }
  return {l2_of(f0, dx), l2_of(d1, dx), l2_of(d2, dx)};
}

double sobolev_norm(std::span<const double> field, double dx, int order) {
  if (order < 0 || order > 2) throw std::invalid_argument("sobolev_norm: order must be 0..2");
  const auto p = sobolev_parts(field, dx);
  double s = p.l2 * p.l2;
  if (order >= 1) s += p.d1 * p.d1;
  if (order >= 2) s += p.d2 * p.d2;
  return std::sqrt(s);
}

double relative_entropy(std::span<const double> phi, std::span<const double> r, double X,
                        const ShockProfile& profile, const Grid1D& grid) {
  if (phi.size() != grid.n_cells || r.size() != grid.n_cells) {
    throw std::invalid_argument("relative_entropy: field size does not match grid");
  }
  const double m = profile.config().u_m();
  const double tau = profile.config().tau();
  std::vector<double> terms(grid.n_cells);
  for (std::size_t j = 0; j < grid.n_cells; ++j) {
    const double us = profile.eval(grid.interior_center(j) + X).u;
    terms[j] = weight_eval(us, m).w * 0.5 * (phi[j] * phi[j] + tau * r[j] * r[j]);
  }
  return numerics::pairwise_sum(terms) * grid.dx;
}

SupDistance sup_distance_composite(const SimState& state, const ShockProfile& profile,
                                   const Grid1D& grid, bool allow_initial_limit) {
  const WaveConfig& cfg = profile.config();
  const double t = state.t;
  if (!(t > 0.0) && !(allow_initial_limit && t == 0.0)) {
    throw std::invalid_argument("sup_distance_composite: the fan is undefined at t = 0");
  }
  const double X = state.shift.X;
  SupDistance d;
  for (std::size_t j = 0; j < grid.n_cells; ++j) {
    const double xi = grid.interior_center(j);
    const auto s = profile.eval(xi + X);
    const double fan = t > 0.0 ? rarefaction_fan((xi + cfg.sigma() * t) / t, cfg)
                               : (xi <= 0.0 ? cfg.u_m() : cfg.u_plus());
    const std::size_t i = j + Grid1D::ghost;
    d.sup_u = std::max(d.sup_u, std::fabs(state.u[i] - (s.u + fan - cfg.u_m())));
    d.sup_q = std::max(d.sup_q, std::fabs(state.q[i] - s.q));
  }
  return d;
}

std::array<double, 6> interaction_integrals(double t, double X, const ShockProfile& profile) {
  std::array<double, 6> I{};
  const WaveConfig& cfg = profile.config();
  if (cfg.pure_shock()) return I;
  const double m = cfg.u_m();
  const double sigma = cfg.sigma();
  const double lp = 3.0 * cfg.u_plus() * cfg.u_plus();
  const double L = (lp - sigma) * (1.0 + t);
  const double xi_lo = -kLeftReach - std::max(0.0, X);
  const double xi_hi = L + sigma + kRightReach + std::max(0.0, -X);

  struct Point {
    ProfileJet S;
    RarefactionEval R;
    double r;
  };
  auto at = [&](double xi) {
    Point p{profile.jet(xi + X), rarefaction_smooth(1.0 + t, xi + sigma * t + X, cfg, 1), 0.0};
    p.r = rarefaction_fan((xi + X + sigma * (1.0 + t)) / (1.0 + t), cfg);
    return p;
  };
  auto integrate = [&](double a, double b, auto&& g) {
    return numerics::composite_gauss5([&](double xi) { return g(at(xi)); }, a, b, kPanel);
  };

  I[0] = integrate(xi_lo, 0.0, [](const Point& p) { return p.S.d_right * p.R.du_dx; });
  I[1] = integrate(0.0, xi_hi, [](const Point& p) { return p.S.d_right * p.R.du_dx; });
  I[2] = integrate(xi_lo, 0.0, [](const Point& p) { return p.R.dev_left * p.S.u_xi; });
  I[3] = integrate(0.0, L, [&](const Point& p) { return std::fabs(p.R.dev_left - (p.r - m)) * p.S.u_xi; });
  I[4] = integrate(0.0, L, [&](const Point& p) { return (p.r - m) * p.S.u_xi; });
  // Beyond xi_hi, u^R = u_plus to double precision and the rest of u^S_xi
  // integrates to u_m - u^S(xi_hi).
  I[5] = integrate(L, xi_hi, [](const Point& p) { return p.R.dev_left * p.S.u_xi; }) +
         cfg.delta_r() * profile.jet(xi_hi + X).d_right;
  return I;
}

FNorms f_norms(double t, double X, const ShockProfile& profile) {
  FNorms out;
  const WaveConfig& cfg = profile.config();
  if (cfg.pure_shock()) return out;
  const double m = cfg.u_m();
  const double sigma = cfg.sigma();
  const double lp = 3.0 * cfg.u_plus() * cfg.u_plus();
  const double L = (lp - sigma) * (1.0 + t);
  const double xi_lo = -kLeftReach - std::max(0.0, X);
  const double xi_hi = L + sigma + kRightReach + std::max(0.0, -X);

  // One pass of composite 5-point Gauss panels accumulates all four integrals.
  auto accumulate = [&](double a, double b) {
    const auto n = static_cast<std::size_t>((b - a) / kPanel) + 1;
    const double h = (b - a) / static_cast<double>(n);
    for (std::size_t p = 0; p < n; ++p) {
      const double mid = a + h * (static_cast<double>(p) + 0.5);
      for (std::size_t k = 0; k < numerics::kGL5Nodes.size(); ++k) {
        const auto f = error_term_F(t, mid + 0.5 * h * numerics::kGL5Nodes[k], X, profile, 2);
        const double wgt = 0.5 * h * numerics::kGL5Weights[k];
        out.l2_sq[0] += wgt * f.F * f.F;
        out.l2_sq[1] += wgt * f.F_xi * f.F_xi;
        out.l2_sq[2] += wgt * f.F_xixi * f.F_xixi;
        out.l1 += wgt * std::fabs(f.F);
      }
    }
  };
  accumulate(xi_lo, 0.0);
  accumulate(0.0, xi_hi);

  // Right of xi_hi only the profile tail remains, with u^R frozen at u_plus.
  RarefactionEval R_far;
  R_far.u = cfg.u_plus();
  R_far.dev_left = cfg.delta_r();
  for (int k = 0; k < 3; ++k) {
    out.l2_sq[k] += right_tail(profile, xi_hi + X, [&](const ProfileJet& S) {
      const auto f = error_term_F(S, R_far, m, 2);
      const double v = k == 0 ? f.F : (k == 1 ? f.F_xi : f.F_xixi);
      return v * v;
    });
  }
  out.l1 += right_tail(profile, xi_hi + X,
                       [&](const ProfileJet& S) { return std::fabs(error_term_F(S, R_far, m, 0).F); });
  return out;
}

FNormSeries f_norm_series(std::span<const double> times, std::span<const double> X_series,
                          const ShockProfile& profile) {
  if (!X_series.empty() && X_series.size() != times.size()) {
    throw std::invalid_argument("f_norm_series: X_series length does not match times");
  }
  FNormSeries s;
  s.t.assign(times.begin(), times.end());
  double running = 0.0;
  double prev_v = 0.0;
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (i > 0 && !(times[i] > times[i - 1])) {
      throw std::invalid_argument("f_norm_series: times must be strictly increasing");
    }
    const double X = X_series.empty() ? 0.0 : X_series[i];
    s.norms.push_back(f_norms(times[i], X, profile));
    const double v = std::pow(s.norms.back().l1, 4.0 / 3.0);
    if (i > 0) running += 0.5 * (times[i] - times[i - 1]) * (v + prev_v);
    prev_v = v;
    s.running_l1_43.push_back(running);
  }
  return s;
}

DecayFit fit_decay(std::span<const double> t, std::span<const double> y, double t_lo, double t_hi) {
  if (t.size() != y.size()) throw std::invalid_argument("fit_decay: t and y lengths differ");
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] < t_lo || t[i] > t_hi) continue;
    if (!(y[i] > 0.0)) {
      throw std::invalid_argument("fit_decay: non-positive value at t = " + std::to_string(t[i]));
    }
    lx.push_back(std::log1p(t[i]));
    ly.push_back(std::log(y[i]));
  }
  if (lx.size() < 5) throw std::invalid_argument("fit_decay: fewer than 5 points in the window");
  const auto fit = numerics::fit_line(lx, ly);
  return {fit.slope, fit.r_squared, lx.size()};
}

DiagnosticsRecord make_record(const SimState& state, const ShockProfile& profile, const Grid1D& grid) {
  DiagnosticsRecord rec;
  rec.t = state.t;
  rec.X = state.shift.X;
  const auto pr = perturbation(state, profile, grid);
  rec.E_w = relative_entropy(pr.phi, pr.r, rec.X, profile, grid);
  const auto pp = sobolev_parts(pr.phi, grid.dx);
  const auto rp = sobolev_parts(pr.r, grid.dx);
  rec.phi_L2 = pp.l2;
  rec.phi_H1 = std::hypot(pp.l2, pp.d1);
  rec.phi_H2 = std::sqrt(pp.l2 * pp.l2 + pp.d1 * pp.d1 + pp.d2 * pp.d2);
  rec.r_L2 = rp.l2;
  rec.r_H1 = std::hypot(rp.l2, rp.d1);
  rec.r_H2 = std::sqrt(rp.l2 * rp.l2 + rp.d1 * rp.d1 + rp.d2 * rp.d2);
  for (double v : pr.phi) rec.phi_sup = std::max(rec.phi_sup, std::fabs(v));
  const auto sd = sup_distance_composite(state, profile, grid, true);
  rec.sup_u = sd.sup_u;
  rec.sup_q = sd.sup_q;
  rec.Xdot = shift_rhs(pr.phi, profile, rec.X, grid);
  rec.I = interaction_integrals(state.t, rec.X, profile);
  rec.F_L2_sq = f_norms(state.t, rec.X, profile).l2_sq;
  return rec;
}

std::string diagnostics_csv_header() {
  return "t,E_w,phi_L2,phi_H1,phi_H2,r_L2,r_H1,r_H2,phi_sup,sup_u,sup_q,X,Xdot,"
         "I1,I2,I3,I4,I5,I6,F0_L2_sq,F1_L2_sq,F2_L2_sq";
}

std::string diagnostics_csv_row(const DiagnosticsRecord& r) {
  const double v[] = {r.t,      r.E_w,    r.phi_L2, r.phi_H1, r.phi_H2,   r.r_L2,     r.r_H1,     r.r_H2,
                      r.phi_sup, r.sup_u, r.sup_q,  r.X,      r.Xdot,     r.I[0],     r.I[1],     r.I[2],
                      r.I[3],   r.I[4],   r.I[5],   r.F_L2_sq[0], r.F_L2_sq[1], r.F_L2_sq[2]};
  std::string out;
  char buf[40];
  for (std::size_t k = 0; k < std::size(v); ++k) {
    std::snprintf(buf, sizeof buf, k == 0 ? "%.10g" : ",%.12e", v[k]);
    out += buf;
  }
  return out;
}

}  // namespace relaxlab
