#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "relaxlab/grid.hpp"
#include "relaxlab/rarefaction.hpp"
#include "relaxlab/shock_profile.hpp"
#include "relaxlab/state.hpp"

namespace relaxlab {

/// Composite ansatz at one point of the shifted frame.
///   u~ = u^S(xi + X) + u^R(1 + t, xi + sigma t + X) - u_m
///   q~ = q^S(xi + X) + u^R_x(1 + t, xi + sigma t + X)
struct AnsatzEval {
  double u_tilde = 0.0;
  double q_tilde = 0.0;
  double u_tilde_xi = 0.0;
  double q_tilde_xi = 0.0;
  double F = 0.0;
};

AnsatzEval ansatz_eval(double t, double xi, double X, const ShockProfile& profile);

/// F and its first two xi-derivatives.
struct FJet {
  double F = 0.0;
  double F_xi = 0.0;
  double F_xixi = 0.0;
};

/// F = d/dxi [f(u~) - f(u^S) - f(u^R)] - u^R_xixi, expanded analytically.
/// `order` (0..2) selects how many derivatives are filled.
FJet error_term_F(double t, double xi, double X, const ShockProfile& profile, int order = 0);

/// Same expansion from given jets; S at xi + X, R at (1 + t, xi + sigma t + X).
FJet error_term_F(const ProfileJet& S, const RarefactionEval& R, double u_m, int order);

/// phi = u - u~, r = q - q~ on the interior cells.
struct Perturbation {
  std::vector<double> phi;
  std::vector<double> r;
};

Perturbation perturbation(const SimState& state, const ShockProfile& profile, const Grid1D& grid);

enum class PerturbationFamily { none, gaussian, multi_gaussian };

std::string to_string(PerturbationFamily f);
PerturbationFamily parse_perturbation_family(const std::string& s);

/// Initial perturbation. phi_0 = a exp(-((xi - c)/s)^2); r_0 = q_amplitude
/// times the same shape. multi_gaussian draws `bumps` centers uniformly in
/// [center - spread, center + spread] and amplitudes uniformly in
/// [-amplitude, amplitude] from a seeded generator.
struct Scenario {
  PerturbationFamily family = PerturbationFamily::gaussian;
  double amplitude = 0.05;
  double center = 0.0;
  double width = 2.0;
  double q_amplitude = 0.0;
  int bumps = 3;
  double spread = 10.0;
  std::uint64_t seed = 12345;
  /// Upper limit on the discrete initial-data norm; <= 0 disables the check.
  double epsilon = 0.0;
  double safety_margin = 0.5;
  bool operator==(const Scenario&) const = default;
};

struct InitialDataInfo {
  double phi0_h2 = 0.0;
  double r0_h2 = 0.0;
  double c1_norm = 0.0;
};

/// Ansatz at t = 0, X = 0 plus the scenario perturbation, ghosts included.
/// Throws std::invalid_argument if u_0 leaves [u_minus - margin, u_plus + margin]
/// or the initial-data norm reaches epsilon.
SimState initial_data(const Scenario& sc, const Grid1D& grid, const ShockProfile& profile,
                      InitialDataInfo* info = nullptr);

}  // namespace relaxlab
