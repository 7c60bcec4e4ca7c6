#include "relaxlab/runner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <future>
#include <ostream>

#include "relaxlab/ansatz.hpp"
#include "relaxlab/checkpoint.hpp"
#include "relaxlab/rarefaction.hpp"
#include "relaxlab/solver.hpp"

namespace relaxlab {

namespace {

constexpr double kVerifyClearance = 1e-40;
constexpr const char* kDegenerate = "degenerate: delta_R = 0";

// Tolerances of the steady-shock summary checks.
constexpr double kSteadySupTol = 2e-3;
constexpr double kSteadyShiftTol = 5e-3;

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  return out;
}

void finish_output(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw std::runtime_error("write to '" + path.string() + "' failed");
}

std::filesystem::path prepare_dir(const std::string& dir) {
  std::filesystem::path p(dir);
  std::error_code ec;
  std::filesystem::create_directories(p, ec);
  if (ec) throw std::runtime_error("cannot create output directory '" + dir + "': " + ec.message());
  return p;
}

bool record_finite(const DiagnosticsRecord& r) {
  const double v[] = {r.t, r.E_w, r.phi_L2, r.phi_H1, r.phi_H2, r.r_L2, r.r_H1, r.r_H2, r.phi_sup,
                      r.sup_u, r.sup_q, r.X, r.Xdot};
  for (double x : v) {
    if (!std::isfinite(x)) return false;
  }
  for (double x : r.I) {
    if (!std::isfinite(x)) return false;
  }
  for (double x : r.F_L2_sq) {
    if (!std::isfinite(x)) return false;
  }
  return true;
}

const DiagnosticsRecord& nearest_record(const std::vector<DiagnosticsRecord>& recs, double t) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < recs.size(); ++i) {
    if (std::fabs(recs[i].t - t) < std::fabs(recs[best].t - t)) best = i;
  }
  return recs[best];
}

// max |Xdot| over [a, b] from records and per-step rates. A step's rate is
// evaluated at the start of the step.
double max_rate(const SimulationResult& res, double a, double b) {
  double m = 0.0;
  for (const auto& r : res.records) {
    if (r.t >= a && r.t <= b) m = std::max(m, std::fabs(r.Xdot));
  }
  for (std::size_t i = 1; i < res.shift.size(); ++i) {
    const double t0 = res.shift[i - 1].t;
    if (t0 >= a && t0 <= b) m = std::max(m, std::fabs(res.shift[i].Xdot));
  }
  return m;
}

void add_fit(Report& rep, const std::string& key, const std::vector<double>& t, const std::vector<double>& y,
             double lo, double hi) {
  std::vector<double> tt, yy;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] >= lo && t[i] <= hi && y[i] > 0.0) {
      tt.push_back(t[i]);
      yy.push_back(y[i]);
    }
  }
  if (tt.size() < 5) return;
  const auto fit = fit_decay(tt, yy, lo, hi);
  rep.set_value(key + "_slope", fit.slope);
  rep.set_value(key + "_r_squared", fit.r_squared);
}

nlohmann::ordered_json record_json(const DiagnosticsRecord& r) {
  nlohmann::ordered_json j;
  j["t"] = r.t;
  j["E_w"] = r.E_w;
  j["phi_L2"] = r.phi_L2;
  j["phi_H1"] = r.phi_H1;
  j["phi_H2"] = r.phi_H2;
  j["r_L2"] = r.r_L2;
  j["r_H1"] = r.r_H1;
  j["r_H2"] = r.r_H2;
  j["phi_sup"] = r.phi_sup;
  j["sup_u"] = r.sup_u;
  j["sup_q"] = r.sup_q;
  j["X"] = r.X;
  j["Xdot"] = r.Xdot;
  j["I"] = r.I;
  j["F_L2_sq"] = r.F_L2_sq;
  return j;
}

std::vector<double> uniform_times(double t0, double t1, double step) {
  std::vector<double> out;
  const auto n = static_cast<std::size_t>(std::floor((t1 - t0) / step + 1e-9));
  for (std::size_t i = 0; i <= n; ++i) out.push_back(t0 + step * static_cast<double>(i));
  return out;
}

}  // namespace

SimulationResult simulate(const RunConfig& cfg, const ShockProfile& profile, std::ostream* log) {
  validate_config(cfg);
  SimulationResult res;
  const Grid1D grid(cfg.grid.xi_min, cfg.grid.xi_max, cfg.grid.dx);
  res.n_cells = grid.n_cells;

  SimState st;
  try {
    st = initial_data(cfg.scenario, grid, profile, &res.initial);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("scenario: ") + e.what());
  }
  ImexSolver solver(profile, grid, cfg.solver_options());
  res.kernel = solver.kernels().name;

  const double T = cfg.time.t_final;
  const double interval = cfg.time.output_interval;
  const double dt0 = solver.cfl_dt(st);
  if (interval < dt0) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "time.output_interval: %.6g is below the initial time step dt = %.6g", interval,
                  dt0);
    throw ConfigError(buf);
  }

  const double t_eps = 1e-12 * std::max(1.0, T);
  std::size_t k_out = 0;
  double next_log = 0.0;
  try {
    while (true) {
      const bool done = T - st.t <= t_eps;
      double dt = done ? 0.0 : std::min(solver.cfl_dt(st), T - st.t);
      // Record at the step time nearest to each output target.
      bool due = false;
      while (static_cast<double>(k_out) * interval <= T + t_eps &&
             (done || st.t >= static_cast<double>(k_out) * interval - 0.5 * dt)) {
        due = true;
        ++k_out;
      }
      if (due || (done && (res.records.empty() || res.records.back().t < st.t))) {
        res.records.push_back(make_record(st, profile, grid));
      }
      if (done) break;
      if (log && st.t >= next_log) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "  t = %8.3f  X = %+.6e  steps = %zu\n", st.t, st.shift.X, res.steps);
        *log << buf << std::flush;
        next_log += 0.1 * T;
      }
      // Snap the last step onto t_final.
      if (T - (st.t + dt) <= t_eps) dt = T - st.t;
      solver.step(st, dt);
      ++res.steps;
    }
  } catch (const SolverError& e) {
    res.hard_failure = true;
    res.failure = e.what();
  }
  res.shift = st.shift.history;
  res.final_state = std::move(st);
  res.checks = evaluate_invariants(cfg, res);
  return res;
}

Report evaluate_invariants(const RunConfig& cfg, const SimulationResult& res) {
  Report rep("invariants");
  const WaveConfig w = cfg.wave_config();
  const double m = w.u_m();
  const double tau = w.tau();
  const auto& recs = res.records;
  if (recs.empty()) {
    rep.skip("records", "no output records");
    return rep;
  }

  bool finite = true;
  for (const auto& r : recs) finite = finite && record_finite(r);
  rep.check("records_finite", finite, finite ? 1.0 : 0.0, 1.0);

  // (15/16) m^2 N <= E_w <= (15/4) m^2 N with N = |phi|^2 + tau |r|^2.
  double sandwich = 0.0;
  double shift_ratio = 0.0;
  for (const auto& r : recs) {
    const double N = r.phi_L2 * r.phi_L2 + tau * r.r_L2 * r.r_L2;
    const double lo = 15.0 / 16.0 * m * m * N;
    const double hi = 15.0 / 4.0 * m * m * N;
    const double excess = std::max(lo - r.E_w, r.E_w - hi);
    if (hi > 0.0) sandwich = std::max(sandwich, excess / hi);
    const double bound = 9.6 * w.delta_s() * r.phi_sup;
    if (bound > 0.0) {
      shift_ratio = std::max(shift_ratio, std::fabs(r.Xdot) / bound);
    } else if (r.Xdot != 0.0) {
      shift_ratio = INFINITY;
    }
  }
  rep.check("entropy_sandwich", sandwich <= 1e-12, sandwich, 1e-12,
            "largest relative excess over [(15/16) u_m^2 N, (15/4) u_m^2 N]");
  rep.check("shift_bound", shift_ratio <= 1.0, shift_ratio, 1.0, "max |Xdot| / (9.6 delta_S |phi|_inf)");

  const double t_end = recs.back().t;
  const bool perturbed = cfg.scenario.family != PerturbationFamily::none && cfg.scenario.amplitude != 0.0;

  if (w.pure_shock() && !perturbed) {
    double sup = 0.0, drift = 0.0;
    for (const auto& r : recs) {
      sup = std::max(sup, r.sup_u);
      drift = std::max(drift, std::fabs(r.X));
    }
    rep.check("steady_sup_u", sup <= kSteadySupTol, sup, kSteadySupTol, "max sup|u - u^S(. + X)| over records");
    rep.check("steady_shift_drift", drift <= kSteadyShiftTol, drift, kSteadyShiftTol, "max |X| over records");
  } else {
    if (t_end >= 2.0) {
      const auto& r1 = nearest_record(recs, 1.0);
      const double ratio = r1.sup_u > 0.0 ? recs.back().sup_u / r1.sup_u : 0.0;
      rep.check("sup_u_decay", ratio <= 0.25, ratio, 0.25, "sup_u(t_final) / sup_u(1)");
    } else {
      rep.skip("sup_u_decay", "t_final < 2");
    }
    if (t_end > 5.0) {
      double early = 0.0;
      for (const auto& r : recs) {
        if (r.t <= 5.0) early = std::max(early, r.phi_sup);
      }
      if (early > 0.0) {
        const double ratio = recs.back().phi_sup / early;
        rep.check("phi_sup_decay", ratio <= 0.5, ratio, 0.5, "|phi(t_final)|_inf / max over [0, 5]");
      } else {
        rep.skip("phi_sup_decay", "phi vanishes on [0, 5]");
      }
    } else {
      rep.skip("phi_sup_decay", "t_final <= 5");
    }
    if (t_end >= 20.0) {
      const double early = max_rate(res, 0.0, 10.0);
      const double late = max_rate(res, t_end - 10.0, t_end);
      if (early > 0.0) {
        rep.check("shift_rate_decay", late <= 0.25 * early, late / early, 0.25,
                  "max |Xdot| over the last 10 time units / max over [0, 10]");
      } else {
        rep.skip("shift_rate_decay", "Xdot vanishes on [0, 10]");
      }
    } else {
      rep.skip("shift_rate_decay", "t_final < 20");
    }
    double e_max = 0.0;
    for (const auto& r : recs) e_max = std::max(e_max, r.E_w);
    const double bound = 5.0 * (recs.front().E_w + m * m * std::pow(w.delta_r(), 8.0 / 33.0));
    rep.check("entropy_bounded", e_max <= bound, e_max, bound, "sup E_w <= 5 (E_w(0) + u_m^2 delta_R^(8/33))");
  }

  std::vector<double> t, sup_u, phi_sup, xdot, phi_l2, i1, i2, f0;
  for (const auto& r : recs) {
    t.push_back(r.t);
    sup_u.push_back(r.sup_u);
    phi_sup.push_back(r.phi_sup);
    xdot.push_back(std::fabs(r.Xdot));
    phi_l2.push_back(r.phi_L2);
    i1.push_back(r.I[0]);
    i2.push_back(r.I[1]);
    f0.push_back(r.F_L2_sq[0]);
  }
  add_fit(rep, "sup_u", t, sup_u, 1.0, t_end);
  add_fit(rep, "phi_sup", t, phi_sup, 1.0, t_end);
  add_fit(rep, "abs_Xdot", t, xdot, 1.0, t_end);
  add_fit(rep, "phi_L2", t, phi_l2, 1.0, t_end);
  add_fit(rep, "I1", t, i1, 1.0, t_end);
  add_fit(rep, "I2", t, i2, 1.0, t_end);
  add_fit(rep, "F0_L2_sq", t, f0, 1.0, t_end);
  double e_max = 0.0;
  for (const auto& r : recs) e_max = std::max(e_max, r.E_w);
  rep.set_value("E_w_initial", recs.front().E_w);
  rep.set_value("E_w_max", e_max);
  return rep;
}

nlohmann::ordered_json config_to_json(const RunConfig& c) {
  nlohmann::ordered_json j;
  j["wave"] = {{"u_minus", c.wave.u_minus}, {"u_plus", c.wave.u_plus}, {"tau", c.wave.tau},
               {"mode", to_string(c.wave.mode)}};
  j["profile"] = {{"n_table", c.profile.n_table}, {"u_clearance", c.profile.u_clearance}};
  j["grid"] = {{"xi_min", c.grid.xi_min}, {"xi_max", c.grid.xi_max}, {"dx", c.grid.dx}};
  j["time"] = {{"t_final", c.time.t_final}, {"cfl", c.time.cfl}, {"output_interval", c.time.output_interval}};
  j["scenario"] = {{"family", to_string(c.scenario.family)},
                   {"amplitude", c.scenario.amplitude},
                   {"center", c.scenario.center},
                   {"width", c.scenario.width},
                   {"q_amplitude", c.scenario.q_amplitude},
                   {"bumps", c.scenario.bumps},
                   {"spread", c.scenario.spread},
                   {"seed", c.scenario.seed},
                   {"epsilon", c.scenario.epsilon},
                   {"safety_margin", c.scenario.safety_margin}};
  j["solver"] = {{"kernel", to_string(c.solver.kernel)},
                 {"boundary", to_string(c.solver.boundary)},
                 {"check_conservation", c.solver.check_conservation},
                 {"couple_shift", c.solver.couple_shift}};
  j["output"] = {{"dir", c.output.dir}, {"shift_stride", c.output.shift_stride}, {"checkpoint", c.output.checkpoint}};
  return j;
}

nlohmann::ordered_json simulation_summary(const RunConfig& cfg, const SimulationResult& res) {
  const WaveConfig w = cfg.wave_config();
  nlohmann::ordered_json j;
  j["schema_version"] = kSummarySchemaVersion;
  j["command"] = "simulate";
  j["config"] = config_to_json(cfg);
  j["derived"] = {{"u_m", w.u_m()},
                  {"sigma", w.sigma()},
                  {"delta_S", w.delta_s()},
                  {"delta_R", w.delta_r()},
                  {"profile_tau_bound", w.profile_tau_bound()},
                  {"theorem_tau_bound", w.theorem_tau_bound()},
                  {"pattern", std::string(to_string(classify_riemann(w.u_minus(), w.u_plus())))},
                  {"n_cells", res.n_cells},
                  {"kernel", res.kernel}};
  j["initial_data"] = {{"phi0_H2", res.initial.phi0_h2},
                       {"r0_H2", res.initial.r0_h2},
                       {"c1_norm", res.initial.c1_norm}};
  j["run"] = {{"steps", res.steps},
              {"records", res.records.size()},
              {"t_reached", res.final_state.t},
              {"X_final", res.final_state.shift.X},
              {"hard_failure", res.hard_failure},
              {"failure", res.failure}};
  if (!res.records.empty()) j["final_record"] = record_json(res.records.back());
  j["checks"] = res.checks.to_json();
  return j;
}

int run_simulate(const RunConfig& cfg, std::ostream& log) {
  validate_config(cfg);
  const auto profile = ShockProfile::build(cfg.wave_config(), static_cast<std::size_t>(cfg.profile.n_table),
                                           cfg.profile.u_clearance);
  const auto dir = prepare_dir(cfg.output.dir);
  log << "simulate: t_final = " << cfg.time.t_final << ", output -> " << dir.string() << "\n";
  const auto res = simulate(cfg, profile, &log);

  {
    const auto path = dir / "diagnostics.csv";
    auto out = open_output(path);
    out << diagnostics_csv_header() << '\n';
    for (const auto& r : res.records) out << diagnostics_csv_row(r) << '\n';
    finish_output(out, path);
  }
  {
    const auto path = dir / "shift.csv";
    auto out = open_output(path);
    out << "t,X,Xdot\n";
    const auto stride = static_cast<std::size_t>(cfg.output.shift_stride);
    char buf[96];
    for (std::size_t i = 0; i < res.shift.size(); ++i) {
      if (i % stride != 0 && i + 1 != res.shift.size()) continue;
      const auto& s = res.shift[i];
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", s.t, s.X, s.Xdot);
      out << buf;
    }
    finish_output(out, path);
  }
  if (cfg.output.checkpoint && !res.hard_failure) {
    write_checkpoint((dir / "checkpoint.csv").string(), res.final_state,
                     Grid1D(cfg.grid.xi_min, cfg.grid.xi_max, cfg.grid.dx));
  }
  {
    const auto path = dir / "summary.json";
    auto out = open_output(path);
    out << simulation_summary(cfg, res).dump(2) << '\n';
    finish_output(out, path);
  }

  for (const auto& c : res.checks.checks()) {
    log << "  [" << to_string(c.status) << "] " << c.name;
    if (c.status != CheckStatus::skipped) log << " = " << c.value << " (limit " << c.threshold << ")";
    log << "\n";
  }
  if (res.hard_failure) {
    log << "simulate: hard failure: " << res.failure << "\n";
    return kExitHardFailure;
  }
  log << "simulate: " << res.steps << " steps, " << res.records.size() << " records\n";
  return kExitOk;
}

Report verify_profile_report(const RunConfig& cfg) {
  Report rep("profile");
  const auto profile =
      ShockProfile::build(cfg.wave_config(), static_cast<std::size_t>(cfg.profile.n_table), kVerifyClearance);
  rep.merge(verify_shock_bounds(profile));
  rep.merge(verify_profile_consistency(profile));
  return rep;
}

Report verify_rarefaction_report(const RunConfig& cfg, double horizon) {
  const double times[] = {1.0, std::sqrt(horizon), horizon};
  return verify_rarefaction_props(cfg.wave_config(), times);
}

Report verify_f_norms_report(const RunConfig& cfg, double horizon) {
  Report rep("f_norms");
  const WaveConfig w = cfg.wave_config();
  if (w.pure_shock()) {
    for (const char* n : {"k0_decay", "k1_decay", "k2_decay", "running_integral_saturation"}) rep.skip(n, kDegenerate);
    return rep;
  }
  const auto profile =
      ShockProfile::build(w, static_cast<std::size_t>(cfg.profile.n_table), cfg.profile.u_clearance);
  const auto times = uniform_times(0.0, horizon, 0.5);
  const auto series = f_norm_series(times, {}, profile);
  const double lo = std::min(5.0, 0.05 * horizon);
  const double limits[3] = {-1.0, -0.9, -0.9};
  for (int k = 0; k < 3; ++k) {
    std::vector<double> y;
    for (const auto& n : series.norms) y.push_back(n.l2_sq[k]);
    const auto fit = fit_decay(series.t, y, lo, horizon);
    const auto late = fit_decay(series.t, y, 0.5 * horizon, horizon);
    const std::string key = "k" + std::to_string(k);
    rep.check(key + "_decay", fit.slope <= limits[k], fit.slope, limits[k], "slope of log int|d^k F|^2 vs log(1+t)");
    rep.set_value(key + "_r_squared", fit.r_squared);
    rep.set_value(key + "_late_slope", late.slope);
  }
  // Running integral at the horizon against its value at half the horizon.
  const double v_end = series.running_l1_43.back();
  double v_half = 0.0;
  for (std::size_t i = 0; i < series.t.size(); ++i) {
    if (series.t[i] <= 0.5 * horizon + 1e-9) v_half = series.running_l1_43[i];
  }
  const double ratio = v_half > 0.0 ? v_end / v_half : INFINITY;
  rep.check("running_integral_saturation", ratio <= 1.1, ratio, 1.1,
            "int_0^T (int|F|)^(4/3) at T = horizon over T = horizon/2");
  rep.set_value("running_integral_end", v_end);
  rep.set_value("l1_at_horizon", series.norms.back().l1);
  return rep;
}

Report verify_interaction_report(const RunConfig& cfg, double horizon) {
  Report rep("interaction");
  const WaveConfig w = cfg.wave_config();
  if (w.pure_shock()) {
    for (const char* n : {"I1_decay", "I2_decay", "I6_monotone"}) rep.skip(n, kDegenerate);
    return rep;
  }
  const auto profile =
      ShockProfile::build(w, static_cast<std::size_t>(cfg.profile.n_table), cfg.profile.u_clearance);
  const auto times = uniform_times(1.0, horizon, 1.0);
  std::array<std::vector<double>, 6> I;
  for (double t : times) {
    const auto v = interaction_integrals(t, 0.0, profile);
    for (int k = 0; k < 6; ++k) I[k].push_back(v[k]);
  }
  for (int k = 0; k < 6; ++k) {
    const std::string key = "I" + std::to_string(k + 1);
    const auto fit = fit_decay(times, I[k], 1.0, horizon);
    const auto late = fit_decay(times, I[k], 0.1 * horizon, horizon);
    if (k < 2) {
      rep.check(key + "_decay", -fit.slope >= 0.6, -fit.slope, 0.6, "decay exponent over [1, horizon]");
    }
    rep.set_value(key + "_exponent", -fit.slope);
    rep.set_value(key + "_late_exponent", -late.slope);
    if (I[k].front() > 0.0 && I[k].back() > 0.0) {
      rep.set_value(key + "_endpoint_exponent",
                    std::log(I[k].front() / I[k].back()) / std::log((1.0 + horizon) / 2.0));
    }
  }
  double worst_rise = 0.0;
  for (std::size_t i = 1; i < I[5].size(); ++i) worst_rise = std::max(worst_rise, I[5][i] - I[5][i - 1]);
  rep.check("I6_monotone", worst_rise <= 0.0, worst_rise, 0.0, "largest increase between samples");
  return rep;
}

Report verify_all(const RunConfig& cfg, const VerifyOptions& opts) {
  validate_config(cfg);
  const double H = opts.horizon;
  std::vector<std::function<Report()>> tasks = {
      [&] { return verify_weight(cfg.wave_config().u_m()); },
      [&] { return verify_profile_report(cfg); },
      [&] { return verify_rarefaction_report(cfg, H); },
      [&] { return verify_f_norms_report(cfg, H); },
      [&] { return verify_interaction_report(cfg, H); },
  };
  std::vector<Report> parts(tasks.size());
  const std::size_t jobs = std::max(1u, opts.jobs);
  for (std::size_t first = 0; first < tasks.size(); first += jobs) {
    const std::size_t last = std::min(tasks.size(), first + jobs);
    if (jobs == 1) {
      parts[first] = tasks[first]();
      continue;
    }
    std::vector<std::future<Report>> running;
    for (std::size_t i = first; i < last; ++i) running.push_back(std::async(std::launch::async, tasks[i]));
    for (std::size_t i = first; i < last; ++i) parts[i] = running[i - first].get();
  }
  Report all("verify");
  for (const auto& p : parts) all.merge(p);
  return all;
}

int run_verify(const RunConfig& cfg, const VerifyOptions& opts, std::ostream& log) {
  const Report rep = verify_all(cfg, opts);
  const auto dir = prepare_dir(cfg.output.dir);
  nlohmann::ordered_json j;
  j["schema_version"] = kSummarySchemaVersion;
  j["command"] = "verify";
  j["config"] = config_to_json(cfg);
  j["horizon"] = opts.horizon;
  j["report"] = rep.to_json();
  const auto path = dir / "verify.json";
  auto out = open_output(path);
  out << j.dump(2) << '\n';
  finish_output(out, path);

  for (const auto& c : rep.checks()) {
    log << "  [" << to_string(c.status) << "] " << c.name;
    if (c.status == CheckStatus::skipped) {
      log << " (" << c.detail << ")";
    } else {
      log << " = " << c.value << " (limit " << c.threshold << ")";
    }
    log << "\n";
  }
  const auto failed = rep.failures();
  if (failed.empty()) {
    log << "verify: all checks passed\n";
    return kExitOk;
  }
  log << "verify: " << failed.size() << " check(s) failed:";
  for (const auto& c : failed) log << " " << c.name;
  log << "\n";
  return kExitChecksFailed;
}

void write_profile_csv(std::ostream& out, const ShockProfile& profile) {
  out << "xi,uS,uS_xi,qS,qS_xi\n";
  char buf[160];
  for (const auto& nd : profile.table()) {
    const auto j = profile.jet_from_offsets(nd.d_left, nd.d_right);
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g\n", nd.xi, j.u, j.u_xi, j.q, j.q_xi);
    out << buf;
  }
}

void write_rarefaction_csv(std::ostream& out, const WaveConfig& cfg, std::span<const double> times, double x_lo,
                           double x_hi, std::size_t n_points) {
  if (n_points < 2 || !(x_hi > x_lo)) throw std::invalid_argument("write_rarefaction_csv: bad sampling range");
  out << "t,x,uR,uR_x,ur_exact\n";
  char buf[160];
  for (double t : times) {
    for (std::size_t i = 0; i < n_points; ++i) {
      const double x = x_lo + (x_hi - x_lo) * static_cast<double>(i) / static_cast<double>(n_points - 1);
      const auto R = rarefaction_smooth(t, x, cfg, 1);
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g\n", t, x, R.u, R.du_dx,
                    rarefaction_exact(t, x, cfg));
      out << buf;
    }
  }
}

int run_profile_dump(const RunConfig& cfg, std::ostream& log) {
  validate_config(cfg);
  const auto profile = ShockProfile::build(cfg.wave_config(), static_cast<std::size_t>(cfg.profile.n_table),
                                           cfg.profile.u_clearance);
  const auto path = prepare_dir(cfg.output.dir) / "profile.csv";
  auto out = open_output(path);
  write_profile_csv(out, profile);
  finish_output(out, path);
  log << "profile: " << profile.table().size() << " nodes on [" << profile.trunc_left() << ", "
      << profile.trunc_right() << "] -> " << path.string() << "\n";
  return kExitOk;
}

int run_rarefaction_dump(const RunConfig& cfg, std::ostream& log) {
  validate_config(cfg);
  const WaveConfig w = cfg.wave_config();
  const double t_end = std::max(1.0, cfg.time.t_final);
  const double times[] = {1.0, std::sqrt(t_end), t_end};
  const double lm = 3.0 * w.u_m() * w.u_m();
  const double lp = 3.0 * w.u_plus() * w.u_plus();
  const double x_lo = lm - 20.0;
  const double x_hi = lp * t_end + 20.0;
  const auto path = prepare_dir(cfg.output.dir) / "rarefaction.csv";
  auto out = open_output(path);
  write_rarefaction_csv(out, w, times, x_lo, x_hi, 2001);
  finish_output(out, path);
  log << "rarefaction: 3 times x 2001 points on [" << x_lo << ", " << x_hi << "] -> " << path.string() << "\n";
  return kExitOk;
}

}  // namespace relaxlab
