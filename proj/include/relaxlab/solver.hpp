#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "relaxlab/grid.hpp"
#include "relaxlab/kernels.hpp"
#include "relaxlab/shock_profile.hpp"
#include "relaxlab/state.hpp"

namespace relaxlab {

enum class BoundaryMode { ansatz, extrapolate };

std::string to_string(BoundaryMode m);
BoundaryMode parse_boundary_mode(const std::string& s);

struct SolverOptions {
  double cfl = 0.45;
  BoundaryMode boundary = BoundaryMode::ansatz;
  KernelChoice kernel = KernelChoice::automatic;
  /// Blow-up band [u_minus - margin, u_plus + margin].
  double safety_margin = 0.5;
  bool check_conservation = true;
  double conservation_tol = 1e-10;
  /// When false the shift stays at zero.
  bool couple_shift = true;
};

/// Non-finite value, band violation or conservation defect.
class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, std::size_t cell, double t)
      : std::runtime_error(what), cell_(cell), t_(t) {}
  std::size_t cell() const noexcept { return cell_; }
  double time() const noexcept { return t_; }

 private:
  std::size_t cell_;
  double t_;
};

/// cfl dx / max over all cells of the shifted-frame spectral radius.
/// Requires 0 < cfl <= 1.
double cfl_dt(const SimState& state, const WaveConfig& cfg, const Grid1D& grid, double cfl);

/// Ghost cells from the ansatz at (t, X) or by zero-gradient extrapolation.
void fill_boundary(std::vector<double>& u, std::vector<double>& q, const ShockProfile& profile,
                   const Grid1D& grid, BoundaryMode mode, double t, double X);
void fill_boundary(SimState& state, const ShockProfile& profile, const Grid1D& grid, BoundaryMode mode);

struct StepInfo {
  double dt = 0.0;
  double shift_rate = 0.0;
  double conservation_residual = 0.0;
};

/// Two-stage SSP IMEX finite-volume scheme in the shifted frame:
///   u_t + (-sigma u + u^3 - q)_xi = 0
///   q_t + (-sigma q - u/tau)_xi = -q/tau
/// MUSCL-minmod reconstruction, Rusanov fluxes, relaxation solved exactly
/// per stage, shift advanced by forward Euler once per step.
class ImexSolver {
 public:
  ImexSolver(const ShockProfile& profile, const Grid1D& grid, SolverOptions opts = {});

  const KernelTable& kernels() const noexcept { return *kernels_; }
  const SolverOptions& options() const noexcept { return opts_; }
  const Grid1D& grid() const noexcept { return grid_; }

  double cfl_dt(const SimState& state) const;

  /// Shift rate for the state's current perturbation.
  double shift_rate(const SimState& state);

  /// Advances state by dt. Throws SolverError on failure; state is then undefined.
  StepInfo step(SimState& state, double dt);

 private:
  void explicit_rhs(const std::vector<double>& u, const std::vector<double>& q);
  void refresh_profile_cache(double X);
  void check_state(const SimState& state) const;

  const ShockProfile& profile_;
  Grid1D grid_;
  SolverOptions opts_;
  const KernelTable* kernels_;

  std::vector<double> su_, sq_, fu_, fq_, ru_, rq_, u1_, q1_;

  // u^S jets at xi_j + cache_X_, advanced by Taylor expansion in X.
  double cache_X_ = 0.0;
  bool cache_valid_ = false;
  std::vector<double> s0_, s1_, s2_, s3_;
  std::vector<double> foot_;  // last rarefaction foot point per cell
  bool foot_valid_ = false;
  std::vector<double> work_;
};

}  // namespace relaxlab
