#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "relaxlab/config.hpp"
#include "relaxlab/diagnostics.hpp"
#include "relaxlab/report.hpp"
#include "relaxlab/shock_profile.hpp"
#include "relaxlab/weight_shift.hpp"

namespace relaxlab {

/// Process exit codes shared by all subcommands.
enum ExitCode : int {
  kExitOk = 0,
  kExitChecksFailed = 1,
  kExitUsage = 2,
  kExitHardFailure = 3,
};

inline constexpr int kSummarySchemaVersion = 1;

struct SimulationResult {
  std::vector<DiagnosticsRecord> records;
  std::vector<ShiftSample> shift;
  InitialDataInfo initial;
  std::string kernel;
  std::size_t n_cells = 0;
  std::size_t steps = 0;
  /// Soft invariants; they never change the exit status.
  Report checks{"invariants"};
  bool hard_failure = false;
  std::string failure;
  SimState final_state;
};

/// Runs one simulation in memory. Solver failures (non-finite values, band
/// exit, conservation defect) end the run and set hard_failure; config
/// problems throw ConfigError.
SimulationResult simulate(const RunConfig& cfg, const ShockProfile& profile, std::ostream* log = nullptr);

/// Soft invariant checks and decay fits over a finished run.
Report evaluate_invariants(const RunConfig& cfg, const SimulationResult& res);

nlohmann::ordered_json config_to_json(const RunConfig& cfg);
nlohmann::ordered_json simulation_summary(const RunConfig& cfg, const SimulationResult& res);

/// Writes diagnostics.csv, shift.csv, checkpoint.csv (optional) and
/// summary.json into cfg.output.dir. Returns kExitHardFailure on a hard
/// invariant failure, kExitOk otherwise.
int run_simulate(const RunConfig& cfg, std::ostream& log);

struct VerifyOptions {
  unsigned jobs = 1;
  /// Last sample time of the F-norm and interaction series.
  double horizon = 100.0;
};

/// Simulation-free checks: weight, profile, rarefaction, F norms and
/// interaction integrals, merged into one report.
Report verify_all(const RunConfig& cfg, const VerifyOptions& opts = {});

/// verify_all plus verify.json in cfg.output.dir; kExitChecksFailed if any
/// check failed.
int run_verify(const RunConfig& cfg, const VerifyOptions& opts, std::ostream& log);

/// Individual verification reports used by verify_all.
Report verify_profile_report(const RunConfig& cfg);
Report verify_rarefaction_report(const RunConfig& cfg, double horizon);
Report verify_f_norms_report(const RunConfig& cfg, double horizon);
Report verify_interaction_report(const RunConfig& cfg, double horizon);

/// Profile table as CSV: xi,uS,uS_xi,qS,qS_xi.
void write_profile_csv(std::ostream& out, const ShockProfile& profile);

/// u^R samples as CSV: t,x,uR,uR_x,ur_exact over [x_lo, x_hi] at each time.
void write_rarefaction_csv(std::ostream& out, const WaveConfig& cfg, std::span<const double> times,
                           double x_lo, double x_hi, std::size_t n_points);

int run_profile_dump(const RunConfig& cfg, std::ostream& log);
int run_rarefaction_dump(const RunConfig& cfg, std::ostream& log);

}  // namespace relaxlab
