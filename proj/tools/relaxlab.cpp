#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "relaxlab/checkpoint.hpp"
#include "relaxlab/config.hpp"
#include "relaxlab/runner.hpp"

namespace {

struct CommonArgs {
  std::string config_path;
  std::string out_dir;
  std::vector<std::string> overrides;
};

void add_common(CLI::App* cmd, CommonArgs& a) {
  cmd->add_option("--config", a.config_path, "Run configuration (TOML subset)")->check(CLI::ExistingFile);
  cmd->add_option("--out", a.out_dir, "Output directory (overrides output.dir)");
  cmd->add_option("--override", a.overrides, "section.key=value, repeatable")->take_all();
}

relaxlab::RunConfig load(const CommonArgs& a) {
  auto cfg = a.config_path.empty() ? relaxlab::parse_config("", a.overrides)
                                   : relaxlab::load_config(a.config_path, a.overrides);
  if (!a.out_dir.empty()) cfg.output.dir = a.out_dir;
  relaxlab::validate_config(cfg);
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"relaxlab: composite-wave stability experiments for the hyperbolic Burgers-Cattaneo system"};
  app.require_subcommand(1);

  CommonArgs profile_args, rare_args, sim_args, verify_args, print_args;
  unsigned jobs = 1;
  double horizon = 100.0;

  auto* profile_cmd = app.add_subcommand("profile", "Dump the shock profile table as CSV");
  add_common(profile_cmd, profile_args);
  auto* rare_cmd = app.add_subcommand("rarefaction", "Dump smooth and exact rarefaction samples as CSV");
  add_common(rare_cmd, rare_args);
  auto* sim_cmd = app.add_subcommand("simulate", "Run the finite-volume simulation");
  add_common(sim_cmd, sim_args);
  auto* verify_cmd = app.add_subcommand("verify", "Run the simulation-free checks");
  add_common(verify_cmd, verify_args);
  verify_cmd->add_option("--jobs", jobs, "Concurrent sub-checks")->check(CLI::Range(1u, 64u));
  verify_cmd->add_option("--horizon", horizon, "Last time of the F and interaction series")
      ->check(CLI::Range(10.0, 1e4));
  auto* print_cmd = app.add_subcommand("print-config", "Print the effective configuration");
  add_common(print_cmd, print_args);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*profile_cmd) return relaxlab::run_profile_dump(load(profile_args), std::cerr);
    if (*rare_cmd) return relaxlab::run_rarefaction_dump(load(rare_args), std::cerr);
    if (*sim_cmd) return relaxlab::run_simulate(load(sim_args), std::cerr);
    if (*verify_cmd) return relaxlab::run_verify(load(verify_args), {jobs, horizon}, std::cerr);
    if (*print_cmd) {
      std::cout << relaxlab::serialize_config(load(print_args));
      return relaxlab::kExitOk;
    }
  } catch (const relaxlab::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return relaxlab::kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return relaxlab::kExitUsage;
  }
  return relaxlab::kExitUsage;
}
