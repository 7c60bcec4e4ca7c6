#include "relaxlab/rarefaction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace relaxlab {

double rarefaction_fan(double lambda, const WaveConfig& cfg) noexcept {
  const double lm = 3.0 * cfg.u_m() * cfg.u_m();
  const double lp = 3.0 * cfg.u_plus() * cfg.u_plus();
  if (lambda <= lm) return cfg.u_m();
  if (lambda >= lp) return cfg.u_plus();
  return std::sqrt(lambda / 3.0);
}

double rarefaction_exact(double t, double x, const WaveConfig& cfg) {
  if (!(t > 0.0)) throw std::invalid_argument("rarefaction_exact: t must be positive");
  return rarefaction_fan(x / t, cfg);
}

namespace {

struct TanhParts {
  double tanh;
  double one_plus;   // 1 + tanh(x0)
  double one_minus;  // 1 - tanh(x0)
  double sech2;
};

TanhParts tanh_parts(double x0) noexcept {
  const double e = std::exp(-2.0 * std::fabs(x0));
  const double small = 2.0 * e / (1.0 + e);
  const double big = 2.0 / (1.0 + e);
  TanhParts p{};
  if (x0 >= 0.0) {
    p.one_minus = small;
    p.one_plus = big;
    p.tanh = big - 1.0;
  } else {
    p.one_plus = small;
    p.one_minus = big;
    p.tanh = 1.0 - big;
  }
  p.sech2 = 4.0 * e / ((1.0 + e) * (1.0 + e));
  return p;
}

}  // namespace

RarefactionEval rarefaction_smooth(double t, double x, const WaveConfig& cfg, int order,
                                   const double* x0_guess) {
  if (order < 0 || order > 4) throw std::invalid_argument("rarefaction_smooth: order must be 0..4");
  if (t < 0.0) throw std::invalid_argument("rarefaction_smooth: t must be non-negative");
  RarefactionEval r;
  const double um = cfg.u_m();
  const double up = cfg.u_plus();
  if (cfg.pure_shock()) {
    r.u = um;
    r.x0 = x;
    return r;
  }
  const double lm = 3.0 * um * um;
  const double lp = 3.0 * up * up;
  const double mid = 0.5 * (lp + lm);
  const double b = 0.5 * (lp - lm);

  // Foot point: h(x0) = x0 + t W(x0) - x is increasing with h' >= 1, and the
  // root lies in [x - t lp, x - t lm]. Newton, falling back to bisection.
  double x0 = x;
  if (t > 0.0) {
    double lo = x - t * lp;
    double hi = x - t * lm;
    x0 = std::clamp(x0_guess ? *x0_guess : x - t * mid, lo, hi);
    double h_prev = std::numeric_limits<double>::infinity();
    for (int iter = 0; iter < 200; ++iter) {
      const auto tp = tanh_parts(x0);
      const double h = x0 + t * (mid + b * tp.tanh) - x;
      const double h_tol = 4.0 * std::numeric_limits<double>::epsilon() * (std::fabs(x0) + std::fabs(x) + t * lp);
      if (std::fabs(h) <= h_tol) break;
      if (h > 0.0) hi = x0; else lo = x0;
      double next = x0 - h / (1.0 + t * b * tp.sech2);
      // Bisect when Newton leaves the bracket or stops making progress.
      if (!(next >= lo && next <= hi) || std::fabs(h) > 0.5 * h_prev) next = 0.5 * (lo + hi);
      h_prev = std::fabs(h);
      const double step = std::fabs(next - x0);
      x0 = next;
      if (step <= 1e-15 * std::max(1.0, std::fabs(x0)) || hi - lo <= 1e-15 * std::max(1.0, std::fabs(x0))) {
        break;
      }
    }
  }
  r.x0 = x0;

  const auto tp = tanh_parts(x0);
  const double w = mid + b * tp.tanh;
  r.u = std::sqrt(w / 3.0);
  r.dev_left = b * tp.one_plus / (3.0 * (r.u + um));
  r.dev_right = b * tp.one_minus / (3.0 * (r.u + up));
  if (order == 0) return r;

  // d^k W / dx0^k.
  const double T = tp.tanh;
  const double s = tp.sech2;
  const double W1 = b * s;
  const double W2 = -2.0 * b * T * s;
  const double W3 = b * (-2.0 * s * s + 4.0 * T * T * s);
  const double W4 = b * (16.0 * T * s * s - 8.0 * T * T * T * s);

  // Derivatives of the inverse map x -> x0.
  const double h1 = 1.0 + t * W1;
  const double h2 = t * W2;
  const double h3 = t * W3;
  const double h4 = t * W4;
  const double a1 = 1.0 / h1;
  const double a2 = -h2 * a1 * a1 * a1;
  const double a3 = (3.0 * h2 * h2 - h1 * h3) * std::pow(a1, 5);
  const double a4 = (-15.0 * h2 * h2 * h2 + 10.0 * h1 * h2 * h3 - h1 * h1 * h4) * std::pow(a1, 7);

  // w(x) = W(x0(x)).
  const double w1 = W1 * a1;
  const double w2 = W2 * a1 * a1 + W1 * a2;
  const double w3 = W3 * a1 * a1 * a1 + 3.0 * W2 * a1 * a2 + W1 * a3;
  const double w4 = W4 * a1 * a1 * a1 * a1 + 6.0 * W3 * a1 * a1 * a2 +
                    W2 * (3.0 * a2 * a2 + 4.0 * a1 * a3) + W1 * a4;

  // u = sqrt(w/3).
  const double u = r.u;
  const double g1 = 1.0 / (6.0 * u);
  const double g2 = -1.0 / (36.0 * u * u * u);
  const double g3 = 1.0 / (72.0 * std::pow(u, 5));
  const double g4 = -5.0 / (432.0 * std::pow(u, 7));

  r.du_dx = g1 * w1;
  if (order >= 2) r.d2u_dx2 = g2 * w1 * w1 + g1 * w2;
  if (order >= 3) r.d3u_dx3 = g3 * w1 * w1 * w1 + 3.0 * g2 * w1 * w2 + g1 * w3;
  if (order >= 4) {
    r.d4u_dx4 = g4 * w1 * w1 * w1 * w1 + 6.0 * g3 * w1 * w1 * w2 +
                g2 * (3.0 * w2 * w2 + 4.0 * w1 * w3) + g1 * w4;
  }
  return r;
}

Report verify_rarefaction_props(const WaveConfig& cfg, std::span<const double> sample_times,
                                const RarefactionCheckOptions& opts) {
  Report rep("rarefaction");
  if (cfg.pure_shock()) {
    for (const char* name : {"bounds", "slope_positive", "slope_time_bound", "slope_strength_bound",
                             "right_tail", "left_tail", "sup_distance_decreasing", "max_slope_nonincreasing",
                             "sup_distance_ratio"}) {
      rep.skip(name, "degenerate: delta_R = 0");
    }
    return rep;
  }
  if (sample_times.empty()) throw std::invalid_argument("verify_rarefaction_props: no sample times");
  for (double t : sample_times) {
    if (!(t >= 1.0)) throw std::invalid_argument("verify_rarefaction_props: sample times must be >= 1");
  }

  const double um = cfg.u_m();
  const double up = cfg.u_plus();
  const double dr = cfg.delta_r();
  const double lm = 3.0 * um * um;
  const double lp = 3.0 * up * up;

  // Analytic ceilings: w_x < min(1/t, half-jump of w0), u_x = w_x / (6u).
  const double slope_time_const = 1.0 / (6.0 * um);
  const double slope_strength_const = dr * (up + um) / (4.0 * um);
  const double left_tail_const = (up + um) / (2.0 * um);

  bool bounds_ok = true, slope_ok = true;
  double worst_time = 0.0, worst_strength = 0.0;
  double worst_right = 0.0, worst_left = 0.0;
  std::vector<double> sup_dist, max_slope;
  std::string bounds_where, slope_where;

  for (double t : sample_times) {
    const double x_lo = lm * t - opts.margin;
    const double x_hi = lp * t + opts.margin;
    std::vector<double> xs(opts.n_samples);
    for (std::size_t i = 0; i < xs.size(); ++i) {
      xs[i] = x_lo + (x_hi - x_lo) * static_cast<double>(i) / static_cast<double>(xs.size() - 1);
    }
    xs.push_back(lm * t);
    xs.push_back(lp * t);

    double sup = 0.0, smax = 0.0;
    for (double x : xs) {
      const auto e = rarefaction_smooth(t, x, cfg, 1);
      if (!(e.dev_left > 0.0 && e.dev_right > 0.0) && bounds_ok) {
        bounds_ok = false;
        std::ostringstream os;
        os << "t = " << t << ", x = " << x;
        bounds_where = os.str();
      }
      if (!(e.du_dx > 0.0) && slope_ok) {
        slope_ok = false;
        std::ostringstream os;
        os << "t = " << t << ", x = " << x;
        slope_where = os.str();
      }
      smax = std::max(smax, e.du_dx);
      sup = std::max(sup, std::fabs(e.u - rarefaction_exact(t, x, cfg)));
    }
    worst_time = std::max(worst_time, smax * t / slope_time_const);
    worst_strength = std::max(worst_strength, smax / slope_strength_const);
    sup_dist.push_back(sup);
    max_slope.push_back(smax);

    for (double d : opts.tail_offsets) {
      const auto er = rarefaction_smooth(t, lp * t + d, cfg, 0);
      worst_right = std::max(worst_right, er.dev_right / (dr * std::exp(-2.0 * d)));
      const auto el = rarefaction_smooth(t, lm * t - d, cfg, 0);
      worst_left = std::max(worst_left, el.dev_left / (dr * std::exp(-2.0 * d)));
    }
  }

  rep.check("bounds", bounds_ok, bounds_ok ? 0.0 : 1.0, 0.0, bounds_where);
  rep.check("slope_positive", slope_ok, slope_ok ? 0.0 : 1.0, 0.0, slope_where);
  rep.check("slope_time_bound", worst_time <= 1.0, worst_time, 1.0,
            "max t |u^R_x| relative to 1/(6 u_m)");
  rep.check("slope_strength_bound", worst_strength <= 1.0, worst_strength, 1.0,
            "max |u^R_x| relative to delta_R (u_plus + u_m)/(4 u_m)");
  rep.set_value("right_tail_constant", worst_right);
  rep.set_value("left_tail_constant", worst_left);
  // The tail constants are sharp; allow rounding only.
  rep.check("right_tail", worst_right <= 1.0 + 1e-9, worst_right, 1.0);
  rep.check("left_tail", worst_left <= left_tail_const * (1.0 + 1e-9), worst_left, left_tail_const);

  bool decreasing = true;
  for (std::size_t i = 1; i < sup_dist.size(); ++i) {
    if (!(sup_dist[i] < sup_dist[i - 1])) decreasing = false;
  }
  for (std::size_t i = 0; i < sample_times.size(); ++i) {
    std::ostringstream key;
    key << "sup_distance_t" << sample_times[i];
    rep.set_value(key.str(), sup_dist[i]);
    std::ostringstream key2;
    key2 << "max_slope_t" << sample_times[i];
    rep.set_value(key2.str(), max_slope[i]);
  }
  bool slope_decreasing = true;
  for (std::size_t i = 1; i < max_slope.size(); ++i) {
    if (!(max_slope[i] <= max_slope[i - 1])) slope_decreasing = false;
  }
  rep.check("sup_distance_decreasing", decreasing, sup_dist.back(), sup_dist.front());
  rep.check("max_slope_nonincreasing", slope_decreasing, max_slope.back(), max_slope.front());
  const double ratio = sup_dist.back() / sup_dist.front();
  rep.check("sup_distance_ratio", ratio <= opts.max_sup_ratio, ratio, opts.max_sup_ratio);
  return rep;
}

}  // namespace relaxlab
