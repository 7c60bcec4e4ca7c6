#include "relaxlab/solver.hpp"

#include <cmath>
#include <sstream>

#include "relaxlab/ansatz.hpp"
#include "relaxlab/numerics.hpp"
#include "relaxlab/weight_shift.hpp"

namespace relaxlab {

namespace {

// Largest |X - cache_X| served from the Taylor-advanced profile cache.
constexpr double kCacheReach = 2e-4;

double interior_mass(const std::vector<double>& u, const Grid1D& g) {
  return numerics::pairwise_sum(std::span<const double>(u).subspan(Grid1D::ghost, g.n_cells)) * g.dx;
}

}  // namespace

std::string to_string(BoundaryMode m) {
  return m == BoundaryMode::ansatz ? "ansatz" : "extrapolate";
}

BoundaryMode parse_boundary_mode(const std::string& s) {
  if (s == "ansatz") return BoundaryMode::ansatz;
  if (s == "extrapolate") return BoundaryMode::extrapolate;
  throw std::invalid_argument("unknown boundary mode '" + s + "' (expected ansatz or extrapolate)");
}

double cfl_dt(const SimState& state, const WaveConfig& cfg, const Grid1D& grid, double cfl) {
  if (!(cfl > 0.0 && cfl <= 1.0)) throw std::invalid_argument("cfl must lie in (0, 1]");
  const FluxParams p{cfg.sigma(), 1.0 / cfg.tau()};
  return cfl * grid.dx / scalar_kernels().max_speed(state.u.data(), state.u.size(), p);
}

void fill_boundary(std::vector<double>& u, std::vector<double>& q, const ShockProfile& profile,
                   const Grid1D& grid, BoundaryMode mode, double t, double X) {
  const std::size_t g = Grid1D::ghost;
  const std::size_t n = grid.size();
  for (std::size_t k = 0; k < g; ++k) {
    const std::size_t left = k;
    const std::size_t right = n - 1 - k;
    if (mode == BoundaryMode::ansatz) {
      const auto a = ansatz_eval(t, grid.center(left), X, profile);
      u[left] = a.u_tilde;
      q[left] = a.q_tilde;
      const auto b = ansatz_eval(t, grid.center(right), X, profile);
      u[right] = b.u_tilde;
      q[right] = b.q_tilde;
    } else {
      u[left] = u[g];
      q[left] = q[g];
      u[right] = u[n - 1 - g];
      q[right] = q[n - 1 - g];
    }
  }
}

void fill_boundary(SimState& state, const ShockProfile& profile, const Grid1D& grid, BoundaryMode mode) {
  fill_boundary(state.u, state.q, profile, grid, mode, state.t, state.shift.X);
}

ImexSolver::ImexSolver(const ShockProfile& profile, const Grid1D& grid, SolverOptions opts)
    : profile_(profile), grid_(grid), opts_(opts), kernels_(&select_kernels(opts.kernel)) {
  if (!(opts_.cfl > 0.0 && opts_.cfl <= 1.0)) throw std::invalid_argument("solver.cfl must lie in (0, 1]");
  const std::size_t N = grid_.size();
  const std::size_t n = grid_.n_cells;
  su_.assign(N, 0.0);
  sq_.assign(N, 0.0);
  fu_.assign(n + 1, 0.0);
  fq_.assign(n + 1, 0.0);
  ru_.assign(n, 0.0);
  rq_.assign(n, 0.0);
  u1_.assign(N, 0.0);
  q1_.assign(N, 0.0);
  s0_.assign(n, 0.0);
  s1_.assign(n, 0.0);
  s2_.assign(n, 0.0);
  s3_.assign(n, 0.0);
  foot_.assign(n, 0.0);
  work_.assign(n, 0.0);
}

double ImexSolver::cfl_dt(const SimState& state) const {
  const WaveConfig& cfg = profile_.config();
  const FluxParams p{cfg.sigma(), 1.0 / cfg.tau()};
  return opts_.cfl * grid_.dx / kernels_->max_speed(state.u.data(), state.u.size(), p);
}

void ImexSolver::refresh_profile_cache(double X) {
  for (std::size_t j = 0; j < grid_.n_cells; ++j) {
    const auto s = profile_.jet(grid_.interior_center(j) + X);
    s0_[j] = s.u;
    s1_[j] = s.u_xi;
    s2_[j] = s.u_xixi;
    s3_[j] = s.u_xixixi;
  }
  cache_X_ = X;
  cache_valid_ = true;
}

double ImexSolver::shift_rate(const SimState& state) {
  const WaveConfig& cfg = profile_.config();
  const double X = state.shift.X;
  if (!cache_valid_ || std::fabs(X - cache_X_) > kCacheReach) refresh_profile_cache(X);
  const double d = X - cache_X_;
  const double m = cfg.u_m();
  const double scale = 32.0 / (25.0 * m * m) * grid_.dx;
  const double t_r = 1.0 + state.t;
  const double shift_arg = cfg.sigma() * state.t + X;
  for (std::size_t j = 0; j < grid_.n_cells; ++j) {
    const double us = s0_[j] + d * (s1_[j] + d * (0.5 * s2_[j] + d * s3_[j] / 6.0));
    const double us_xi = s1_[j] + d * (s2_[j] + 0.5 * d * s3_[j]);
    if (us_xi == 0.0) {
      work_[j] = 0.0;
      continue;
    }
    const double xi = grid_.interior_center(j);
    const auto R = rarefaction_smooth(t_r, xi + shift_arg, cfg, 0, foot_valid_ ? &foot_[j] : nullptr);
    foot_[j] = R.x0;
    const double phi = state.u[j + Grid1D::ghost] - (us + R.dev_left);
    work_[j] = phi * scale * weight_eval(us, m).w * us_xi;
  }
  foot_valid_ = true;
  return numerics::pairwise_sum(work_);
}

void ImexSolver::explicit_rhs(const std::vector<double>& u, const std::vector<double>& q) {
  const WaveConfig& cfg = profile_.config();
  const std::size_t N = grid_.size();
  const std::size_t n = grid_.n_cells;
  const FluxParams p{cfg.sigma(), 1.0 / cfg.tau()};
  kernels_->slopes(u.data(), su_.data(), N);
  kernels_->slopes(q.data(), sq_.data(), N);
  kernels_->fluxes(u.data(), q.data(), su_.data(), sq_.data(), Grid1D::ghost - 1, n + 1, p, fu_.data(),
                   fq_.data());
  const double inv_dx = 1.0 / grid_.dx;
  kernels_->divergence(fu_.data(), ru_.data(), n, inv_dx);
  kernels_->divergence(fq_.data(), rq_.data(), n, inv_dx);
}

void ImexSolver::check_state(const SimState& s) const {
  const WaveConfig& cfg = profile_.config();
  const double lo = cfg.u_minus() - opts_.safety_margin;
  const double hi = cfg.u_plus() + opts_.safety_margin;
  for (std::size_t j = 0; j < grid_.n_cells; ++j) {
    const double u = s.u[j + Grid1D::ghost];
    const double q = s.q[j + Grid1D::ghost];
    if (!std::isfinite(u) || !std::isfinite(q)) {
      std::ostringstream msg;
      msg << "non-finite state in cell " << j << " (xi = " << grid_.interior_center(j) << ") at t = " << s.t;
      throw SolverError(msg.str(), j, s.t);
    }
    if (u < lo || u > hi) {
      std::ostringstream msg;
      msg << "u = " << u << " left the band [" << lo << ", " << hi << "] in cell " << j
          << " (xi = " << grid_.interior_center(j) << ") at t = " << s.t;
      throw SolverError(msg.str(), j, s.t);
    }
  }
}

StepInfo ImexSolver::step(SimState& s, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("step: dt must be positive");
  const WaveConfig& cfg = profile_.config();
  const std::size_t g = Grid1D::ghost;
  const std::size_t n = grid_.n_cells;
  StepInfo info;
  info.dt = dt;
  info.shift_rate = opts_.couple_shift ? shift_rate(s) : 0.0;
  const double X = s.shift.X;
  const double mass0 = opts_.check_conservation ? interior_mass(s.u, grid_) : 0.0;

  const double k = dt / cfg.tau();
  fill_boundary(s.u, s.q, profile_, grid_, opts_.boundary, s.t, X);
  explicit_rhs(s.u, s.q);
  const double flux_out1 = fu_[0] - fu_[n];
  kernels_->stage1(s.u.data() + g, s.q.data() + g, ru_.data(), rq_.data(), u1_.data() + g, q1_.data() + g,
                   n, dt, 1.0 / (1.0 + k));

  fill_boundary(u1_, q1_, profile_, grid_, opts_.boundary, s.t + dt, X);
  explicit_rhs(u1_, q1_);
  const double flux_out2 = fu_[0] - fu_[n];
  kernels_->stage2(s.u.data() + g, s.q.data() + g, u1_.data() + g, q1_.data() + g, ru_.data(), rq_.data(),
                   n, dt, 1.0 / (1.0 + 0.5 * k));

  s.t += dt;
  if (opts_.couple_shift) {
    advance_shift(s.shift, info.shift_rate, dt);
  } else {
    advance_shift(s.shift, 0.0, dt);
  }
  s.shift.t = s.t;
  check_state(s);

  if (opts_.check_conservation) {
    const double mass1 = interior_mass(s.u, grid_);
    info.conservation_residual = std::fabs(mass1 - mass0 - 0.5 * dt * (flux_out1 + flux_out2));
    if (info.conservation_residual > opts_.conservation_tol) {
      std::ostringstream msg;
      msg << "conservation defect " << info.conservation_residual << " exceeds " << opts_.conservation_tol
          << " at t = " << s.t;
      throw SolverError(msg.str(), 0, s.t);
    }
  }
  return info;
}

}  // namespace relaxlab
