#include "relaxlab/weight_shift.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "relaxlab/numerics.hpp"

namespace relaxlab {

namespace {

// Branch k = 0 on u < 0, 1 on [0, u_m/2), 2 on [u_m/2, u_m]; no clamping.
WeightFn weight_branch(int k, double u, double m) noexcept {
  if (k == 0) return {2.5 * m * (m - u), -2.5 * m, 0.0};
  if (k == 1) {
    const double c = 2.5 / (m * m);
    return {c * (m - u) * (4.0 * u * u * u + m * m * m),
            c * (12.0 * m * u * u - 16.0 * u * u * u - m * m * m),
            c * (24.0 * m * u - 48.0 * u * u)};
  }
  return {1.875 * m * m, 0.0, 0.0};
}

}  // namespace

WeightFn weight_eval(double u_s, double u_m) noexcept {
  const double m = u_m;
  const double u = std::clamp(u_s, -2.0 * m, m);
  return weight_branch(u < 0.0 ? 0 : (u < 0.5 * m ? 1 : 2), u, m);
}

Report verify_weight(double u_m, std::size_t n_samples, std::uint64_t seed) {
  Report rep("weight");
  const double m = u_m;
  const double tol = 1e-10;
  const double scale[3] = {m * m, m, 1.0};
  const char* names[3] = {"w", "dw", "d2w"};
  const double junctions[2] = {0.0, 0.5 * m};
  for (int j = 0; j < 2; ++j) {
    const WeightFn a = weight_branch(j, junctions[j], m);
    const WeightFn b = weight_branch(j + 1, junctions[j], m);
    const double da[3] = {a.w, a.dw, a.d2w};
    const double db[3] = {b.w, b.dw, b.d2w};
    for (int k = 0; k < 3; ++k) {
      const double gap = std::fabs(da[k] - db[k]);
      rep.check(std::string("junction_") + (j == 0 ? "zero_" : "half_um_") + names[k], gap <= tol * scale[k], gap,
                tol * scale[k]);
    }
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-2.0 * m, m);
  double w_min = std::numeric_limits<double>::infinity(), w_max = -w_min;
  double dw_min = w_min, dw_max = -w_min, d2w_min = w_min, d2w_max = -w_min;
  for (std::size_t i = 0; i < n_samples; ++i) {
    double u = dist(rng);
    if (u == -2.0 * m) u = std::nextafter(u, 0.0);
    const WeightFn f = weight_eval(u, m);
    w_min = std::min(w_min, f.w);
    w_max = std::max(w_max, f.w);
    dw_min = std::min(dw_min, f.dw);
    dw_max = std::max(dw_max, f.dw);
    d2w_min = std::min(d2w_min, f.d2w);
    d2w_max = std::max(d2w_max, f.d2w);
  }
  rep.check("w_lower", w_min >= 1.875 * m * m, w_min, 1.875 * m * m);
  rep.check("w_upper", w_max < 7.5 * m * m, w_max, 7.5 * m * m);
  rep.check("dw_lower", dw_min >= -2.5 * m, dw_min, -2.5 * m);
  rep.check("dw_upper", dw_max <= 0.0, dw_max, 0.0);
  rep.check("d2w_lower", d2w_min >= 0.0, d2w_min, 0.0);
  rep.check("d2w_upper", d2w_max <= 7.5, d2w_max, 7.5);
  rep.set_value("samples", static_cast<double>(n_samples));
  return rep;
}

double weight_integral(double u_m) noexcept { return 383.0 * u_m * u_m * u_m / 32.0; }

std::vector<double> shift_density(const ShockProfile& profile, const Grid1D& grid, double X) {
  const double m = profile.config().u_m();
  const double scale = 32.0 / (25.0 * m * m) * grid.dx;
  std::vector<double> dens(grid.n_cells);
  for (std::size_t j = 0; j < grid.n_cells; ++j) {
    const auto s = profile.eval(grid.interior_center(j) + X);
    dens[j] = s.u_xi == 0.0 ? 0.0 : scale * weight_eval(s.u, m).w * s.u_xi;
  }
  return dens;
}

double shift_rhs(std::span<const double> phi, std::span<const double> density) {
  if (phi.size() != density.size()) throw std::invalid_argument("shift_rhs: size mismatch");
  std::vector<double> prod(phi.size());
  for (std::size_t j = 0; j < phi.size(); ++j) prod[j] = phi[j] * density[j];
  return numerics::pairwise_sum(prod);
}

double shift_rhs(std::span<const double> phi, const ShockProfile& profile, double X, const Grid1D& grid) {
  const auto dens = shift_density(profile, grid, X);
  return shift_rhs(phi, dens);
}

void advance_shift(ShiftState& state, double rhs, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("advance_shift: dt must be positive");
  state.X += dt * rhs;
  state.Xdot = rhs;
  state.t += dt;
  state.history.push_back({state.t, state.X, state.Xdot});
}

}  // namespace relaxlab
