#include "relaxlab/ansatz.hpp"

#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

#include "relaxlab/diagnostics.hpp"

namespace relaxlab {

FJet error_term_F(const ProfileJet& S, const RarefactionEval& R, double u_m, int order) {
  const double m = u_m;
  const double ps = -S.d_right;  // u^S - u_m
  const double pr = R.dev_left;  // u^R - u_m
  const double S1 = S.u_xi, S2 = S.u_xixi, S3 = S.u_xixixi;
  const double R1 = R.du_dx, R2 = R.d2u_dx2, R3 = R.d3u_dx3, R4 = R.d4u_dx4;

  // Partial derivatives of g(S, R) = (S + R - m)^3 - S^3 - R^3.
  const double alpha = 3.0 * pr * (2.0 * ps + pr + 2.0 * m);
  const double beta = 3.0 * ps * (ps + 2.0 * pr + 2.0 * m);

  FJet out;
  out.F = alpha * S1 + beta * R1 - R2;
  if (order < 1) return out;

  const double a_s = 6.0 * pr;
  const double a_r = 6.0 * (ps + pr + m);
  const double b_s = a_r;
  const double b_r = 6.0 * ps;
  const double alpha_xi = a_s * S1 + a_r * R1;
  const double beta_xi = b_s * S1 + b_r * R1;
  out.F_xi = alpha_xi * S1 + alpha * S2 + beta_xi * R1 + beta * R2 - R3;
  if (order < 2) return out;

  const double alpha_xixi = 12.0 * S1 * R1 + 6.0 * R1 * R1 + a_s * S2 + a_r * R2;
  const double beta_xixi = 6.0 * S1 * S1 + 12.0 * S1 * R1 + b_s * S2 + b_r * R2;
  out.F_xixi = alpha_xixi * S1 + 2.0 * alpha_xi * S2 + alpha * S3 + beta_xixi * R1 +
               2.0 * beta_xi * R2 + beta * R3 - R4;
  return out;
}

FJet error_term_F(double t, double xi, double X, const ShockProfile& profile, int order) {
  if (order < 0 || order > 2) throw std::invalid_argument("error_term_F: order must be 0..2");
  const WaveConfig& cfg = profile.config();
  const auto S = profile.jet(xi + X);
  const auto R = rarefaction_smooth(1.0 + t, xi + cfg.sigma() * t + X, cfg, order + 2);
  return error_term_F(S, R, cfg.u_m(), order);
}

AnsatzEval ansatz_eval(double t, double xi, double X, const ShockProfile& profile) {
  const WaveConfig& cfg = profile.config();
  const auto S = profile.jet(xi + X);
  const auto R = rarefaction_smooth(1.0 + t, xi + cfg.sigma() * t + X, cfg, 2);
  AnsatzEval a;
  a.u_tilde = S.u + R.dev_left;
  a.q_tilde = S.q + R.du_dx;
  a.u_tilde_xi = S.u_xi + R.du_dx;
  a.q_tilde_xi = S.q_xi + R.d2u_dx2;
  a.F = error_term_F(S, R, cfg.u_m(), 0).F;
  return a;
}

Perturbation perturbation(const SimState& state, const ShockProfile& profile, const Grid1D& grid) {
  Perturbation p;
  p.phi.resize(grid.n_cells);
  p.r.resize(grid.n_cells);
  for (std::size_t j = 0; j < grid.n_cells; ++j) {
    const auto a = ansatz_eval(state.t, grid.interior_center(j), state.shift.X, profile);
    p.phi[j] = state.u[j + Grid1D::ghost] - a.u_tilde;
    p.r[j] = state.q[j + Grid1D::ghost] - a.q_tilde;
  }
  return p;
}

std::string to_string(PerturbationFamily f) {
  switch (f) {
    case PerturbationFamily::none: return "none";
    case PerturbationFamily::gaussian: return "gaussian";
    case PerturbationFamily::multi_gaussian: return "multi_gaussian";
  }
  return "unknown";
}

PerturbationFamily parse_perturbation_family(const std::string& s) {
  if (s == "none") return PerturbationFamily::none;
  if (s == "gaussian") return PerturbationFamily::gaussian;
  if (s == "multi_gaussian") return PerturbationFamily::multi_gaussian;
  throw std::invalid_argument("unknown perturbation family '" + s + "'");
}

SimState initial_data(const Scenario& sc, const Grid1D& grid, const ShockProfile& profile,
                      InitialDataInfo* info) {
  const WaveConfig& cfg = profile.config();
  if (!(sc.width > 0.0)) throw std::invalid_argument("scenario.width must be positive");

  struct Bump {
    double amp, center;
  };
  std::vector<Bump> bumps;
  if (sc.family == PerturbationFamily::gaussian) {
    bumps.push_back({sc.amplitude, sc.center});
  } else if (sc.family == PerturbationFamily::multi_gaussian) {
    if (sc.bumps < 1) throw std::invalid_argument("scenario.bumps must be >= 1");
    std::mt19937_64 rng(sc.seed);
    std::uniform_real_distribution<double> pos(sc.center - sc.spread, sc.center + sc.spread);
    std::uniform_real_distribution<double> amp(-sc.amplitude, sc.amplitude);
    for (int k = 0; k < sc.bumps; ++k) {
      const double c = pos(rng);
      bumps.push_back({amp(rng), c});
    }
  }
  auto shape = [&](double xi, double scale) {
    double s = 0.0;
    for (const auto& b : bumps) {
      const double z = (xi - b.center) / sc.width;
      s += b.amp * std::exp(-z * z);
    }
    return s * scale;
  };
  const double q_scale = sc.amplitude == 0.0 ? 0.0 : sc.q_amplitude / sc.amplitude;

  SimState st(grid);
  const double lo = cfg.u_minus() - sc.safety_margin;
  const double hi = cfg.u_plus() + sc.safety_margin;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double xi = grid.center(i);
    const auto a = ansatz_eval(0.0, xi, 0.0, profile);
    st.u[i] = a.u_tilde + shape(xi, 1.0);
    st.q[i] = a.q_tilde + shape(xi, q_scale);
    if (!(st.u[i] >= lo && st.u[i] <= hi)) {
      std::ostringstream msg;
      msg << "initial data: u_0 = " << st.u[i] << " at xi = " << xi << " leaves the safety band ["
          << lo << ", " << hi << "]";
      throw std::invalid_argument(msg.str());
    }
  }

  std::vector<double> phi0(grid.n_cells), r0(grid.n_cells), g(grid.n_cells), q0(grid.n_cells);
  std::vector<double> far_left, far_right;
  for (std::size_t j = 0; j < grid.n_cells; ++j) {
    const double xi = grid.interior_center(j);
    const std::size_t i = j + Grid1D::ghost;
    const auto a = ansatz_eval(0.0, xi, 0.0, profile);
    phi0[j] = st.u[i] - a.u_tilde;
    r0[j] = st.q[i] - a.q_tilde;
    const double us = profile.eval(xi).u;
    if (xi < 0.0) {
      far_left.push_back(st.u[i] - us);
    } else {
      far_right.push_back(st.u[i] - (us + cfg.delta_r()));
    }
    g[j] = st.u[i] - us;
    q0[j] = st.q[i];
  }
  InitialDataInfo inf;
  inf.phi0_h2 = sobolev_norm(phi0, grid.dx, 2);
  inf.r0_h2 = sobolev_norm(r0, grid.dx, 2);
  const auto gp = sobolev_parts(g, grid.dx);
  auto l2 = [&](const std::vector<double>& v) { return v.empty() ? 0.0 : sobolev_norm(v, grid.dx, 0); };
  inf.c1_norm = l2(far_left) + l2(far_right) + std::hypot(gp.d1, gp.d2) +
                std::sqrt(cfg.tau()) * sobolev_norm(q0, grid.dx, 2);
  if (sc.epsilon > 0.0 && !(inf.c1_norm < sc.epsilon)) {
    std::ostringstream msg;
    msg << "initial data: norm " << inf.c1_norm << " is not below scenario.epsilon = " << sc.epsilon;
    throw std::invalid_argument(msg.str());
  }
  if (info) *info = inf;
  return st;
}

}  // namespace relaxlab
