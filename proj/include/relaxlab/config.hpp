#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "relaxlab/ansatz.hpp"
#include "relaxlab/kernels.hpp"
#include "relaxlab/solver.hpp"
#include "relaxlab/wave_model.hpp"

namespace relaxlab {

enum class TauMode { theorem, profile };

std::string to_string(TauMode m);

/// Everything a run needs. Defaults are the desk-scale composite scenario.
struct RunConfig {
  struct Wave {
    double u_minus = -1.0;
    double u_plus = 0.75;
    double tau = 0.001;
    TauMode mode = TauMode::theorem;
    bool operator==(const Wave&) const = default;
  } wave;

  struct Profile {
    std::int64_t n_table = 2000;
    double u_clearance = 1e-6;
    bool operator==(const Profile&) const = default;
  } profile;

  struct Grid {
    double xi_min = -100.0;
    double xi_max = 300.0;
    double dx = 0.05;
    bool operator==(const Grid&) const = default;
  } grid;

  struct Time {
    double t_final = 100.0;
    double cfl = 0.45;
    double output_interval = 1.0;
    bool operator==(const Time&) const = default;
  } time;

  Scenario scenario;

  struct Solver {
    KernelChoice kernel = KernelChoice::automatic;
    BoundaryMode boundary = BoundaryMode::ansatz;
    bool check_conservation = true;
    bool couple_shift = true;
    bool operator==(const Solver&) const = default;
  } solver;

  struct Output {
    std::string dir = "out";
    std::int64_t shift_stride = 10;
    bool checkpoint = true;
    bool operator==(const Output&) const = default;
  } output;

  bool operator==(const RunConfig&) const = default;

  WaveConfig wave_config() const { return {wave.u_minus, wave.u_plus, wave.tau}; }
  SolverOptions solver_options() const;
};

/// Thrown for malformed text, unknown keys and out-of-range values; the
/// message starts with the offending field path.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Flat "section.key" -> raw value text, in file order of first appearance.
using ConfigEntries = std::vector<std::pair<std::string, std::string>>;

/// Parses the TOML subset used here: [section] headers, key = value lines,
/// numbers, booleans and double-quoted strings, '#' comments.
ConfigEntries parse_config_text(const std::string& text);

/// Applies "section.key=value" overrides.
void apply_overrides(ConfigEntries& entries, const std::vector<std::string>& overrides);

/// Builds a config from entries on top of the defaults.
RunConfig config_from_entries(const ConfigEntries& entries);

RunConfig load_config(const std::string& path, const std::vector<std::string>& overrides = {});
RunConfig parse_config(const std::string& text, const std::vector<std::string>& overrides = {});

/// Canonical text form; parse(serialize(c)) == c.
std::string serialize_config(const RunConfig& c);

/// Checks all invariants; throws ConfigError naming the field and bound.
void validate_config(const RunConfig& c);

}  // namespace relaxlab
