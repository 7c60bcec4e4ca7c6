#pragma once

#include <span>
#include <vector>

#include "relaxlab/report.hpp"
#include "relaxlab/wave_model.hpp"

namespace relaxlab {

/// Smooth approximate rarefaction u^R(t, x) and its x-derivatives.
///
/// dev_left = u - u_m and dev_right = u_plus - u are computed without
/// cancellation, so they stay meaningful far out in the tanh tails where u
/// itself rounds to a far-field value.
struct RarefactionEval {
  double u = 0.0;
  double du_dx = 0.0;
  double d2u_dx2 = 0.0;
  double d3u_dx3 = 0.0;
  double d4u_dx4 = 0.0;
  double x0 = 0.0;  // characteristic foot point
  double dev_left = 0.0;
  double dev_right = 0.0;
};

/// Exact centered fan u^r(x/t) from u_m to u_plus. Throws for t <= 0.
double rarefaction_exact(double t, double x, const WaveConfig& cfg);

/// Fan as a function of the self-similar variable lambda = x/t.
double rarefaction_fan(double lambda, const WaveConfig& cfg) noexcept;

/// Burgers-type solution w_t + w w_x = 0 with w(0, x) = mid + half tanh(x),
/// mapped back through w = 3u^2. Derivatives are filled up to `order` (0..4).
/// With delta_R = 0 returns u = u_m and zero derivatives. A foot-point guess
/// (e.g. from a nearby earlier evaluation) only changes the iteration count.
RarefactionEval rarefaction_smooth(double t, double x, const WaveConfig& cfg, int order = 3,
                                   const double* x0_guess = nullptr);

struct RarefactionCheckOptions {
  double margin = 30.0;  // sample [lambda_- t - margin, lambda_+ t + margin]
  std::size_t n_samples = 4001;
  std::vector<double> tail_offsets = {0.5, 1.0, 2.0, 5.0, 10.0};
  double max_sup_ratio = 0.2;  // sup|u^R - u^r| at last time vs first
};

/// Property checks of u^R over the given times (each >= 1). Skips everything
/// with a "degenerate" note when delta_R = 0.
Report verify_rarefaction_props(const WaveConfig& cfg, std::span<const double> sample_times,
                                const RarefactionCheckOptions& opts = {});

}  // namespace relaxlab
