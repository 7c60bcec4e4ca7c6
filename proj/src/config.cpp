#include "relaxlab/config.hpp"

#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>

namespace relaxlab {

std::string to_string(TauMode m) { return m == TauMode::theorem ? "theorem" : "profile"; }

SolverOptions RunConfig::solver_options() const {
  SolverOptions o;
  o.cfl = time.cfl;
  o.boundary = solver.boundary;
  o.kernel = solver.kernel;
  o.safety_margin = scenario.safety_margin;
  o.check_conservation = solver.check_conservation;
  o.couple_shift = solver.couple_shift;
  return o;
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// Strips a trailing comment that is not inside a quoted string.
std::string strip_comment(const std::string& line) {
  bool in_str = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (c == '\\' && in_str) {
      ++i;
    } else if (c == '"') {
      in_str = !in_str;
    } else if (c == '#' && !in_str) {
      return line.substr(0, i);
    }
  }
  return line;
}

void set_entry(ConfigEntries& entries, const std::string& key, const std::string& value) {
  for (auto& [k, v] : entries) {
    if (k == key) {
      v = value;
      return;
    }
  }
  entries.emplace_back(key, value);
}

double as_double(const std::string& key, const std::string& raw) {
  const char* b = raw.c_str();
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(b, &end);
  if (end == b || *end != '\0' || errno == ERANGE || !std::isfinite(v)) {
    throw ConfigError(key + ": expected a finite number, got '" + raw + "'");
  }
  return v;
}

std::int64_t as_int(const std::string& key, const std::string& raw) {
  const char* b = raw.c_str();
  char* end = nullptr;
  errno = 0;
  const long long v = std::strtoll(b, &end, 10);
  if (end == b || *end != '\0' || errno == ERANGE) {
    throw ConfigError(key + ": expected an integer, got '" + raw + "'");
  }
  return v;
}

bool as_bool(const std::string& key, const std::string& raw) {
  if (raw == "true") return true;
  if (raw == "false") return false;
  throw ConfigError(key + ": expected true or false, got '" + raw + "'");
}

std::string as_string(const std::string& key, const std::string& raw) {
  if (raw.empty() || raw.front() != '"') {
    // Bare words are accepted for convenience on the command line.
    if (raw.empty() || raw.find_first_of("\" \t\\") != std::string::npos) {
      throw ConfigError(key + ": expected a string, got '" + raw + "'");
    }
    return raw;
  }
  if (raw.size() < 2 || raw.back() != '"') {
    throw ConfigError(key + ": unterminated string '" + raw + "'");
  }
  std::string out;
  for (std::size_t i = 1; i + 1 < raw.size(); ++i) {
    if (raw[i] == '\\' && i + 2 < raw.size()) {
      out += raw[++i];
    } else {
      out += raw[i];
    }
  }
  return out;
}

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

// Shortest text that parses back to the same double.
std::string num(double v) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  std::string s(buf, res.ptr);
  // Keep integral doubles recognisable as floats.
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

// Enum-valued keys are written as strings; accept bare words too.
std::string word(const std::string& raw) {
  return (!raw.empty() && raw.front() == '"') ? as_string("", raw) : raw;
}

template <class Fn>
auto wrap(const std::string& key, Fn&& fn) {
  try {
    return fn();
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(key + ": " + e.what());
  }
}

}  // namespace

ConfigEntries parse_config_text(const std::string& text) {
  ConfigEntries entries;
  std::istringstream in(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string s = trim(strip_comment(line));
    if (s.empty()) continue;
    if (s.front() == '[') {
      if (s.back() != ']') throw ConfigError("line " + std::to_string(lineno) + ": malformed section header");
      section = trim(s.substr(1, s.size() - 2));
      if (section.empty()) throw ConfigError("line " + std::to_string(lineno) + ": empty section name");
      continue;
    }
    const auto eq = s.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    }
    const std::string key = trim(s.substr(0, eq));
    const std::string value = trim(s.substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    }
    if (section.empty()) throw ConfigError("line " + std::to_string(lineno) + ": key '" + key + "' outside a section");
    set_entry(entries, section + "." + key, value);
  }
  return entries;
}

void apply_overrides(ConfigEntries& entries, const std::vector<std::string>& overrides) {
  for (const auto& o : overrides) {
    const auto eq = o.find('=');
    if (eq == std::string::npos || o.find('.') > eq) {
      throw ConfigError("override '" + o + "': expected section.key=value");
    }
    set_entry(entries, trim(o.substr(0, eq)), trim(o.substr(eq + 1)));
  }
}

RunConfig config_from_entries(const ConfigEntries& entries) {
  RunConfig c;
  using Setter = std::function<void(const std::string&, const std::string&)>;
  const std::map<std::string, Setter> setters = {
      {"wave.u_minus", [&](auto& k, auto& v) { c.wave.u_minus = as_double(k, v); }},
      {"wave.u_plus", [&](auto& k, auto& v) { c.wave.u_plus = as_double(k, v); }},
      {"wave.tau", [&](auto& k, auto& v) { c.wave.tau = as_double(k, v); }},
      {"wave.mode",
       [&](auto& k, auto& v) {
         const auto w = word(v);
         if (w == "theorem") c.wave.mode = TauMode::theorem;
         else if (w == "profile") c.wave.mode = TauMode::profile;
         else throw ConfigError(k + ": expected \"theorem\" or \"profile\", got '" + v + "'");
       }},
      {"profile.n_table", [&](auto& k, auto& v) { c.profile.n_table = as_int(k, v); }},
      {"profile.u_clearance", [&](auto& k, auto& v) { c.profile.u_clearance = as_double(k, v); }},
      {"grid.xi_min", [&](auto& k, auto& v) { c.grid.xi_min = as_double(k, v); }},
      {"grid.xi_max", [&](auto& k, auto& v) { c.grid.xi_max = as_double(k, v); }},
      {"grid.dx", [&](auto& k, auto& v) { c.grid.dx = as_double(k, v); }},
      {"time.t_final", [&](auto& k, auto& v) { c.time.t_final = as_double(k, v); }},
      {"time.cfl", [&](auto& k, auto& v) { c.time.cfl = as_double(k, v); }},
      {"time.output_interval", [&](auto& k, auto& v) { c.time.output_interval = as_double(k, v); }},
      {"scenario.family",
       [&](auto& k, auto& v) { c.scenario.family = wrap(k, [&] { return parse_perturbation_family(word(v)); }); }},
      {"scenario.amplitude", [&](auto& k, auto& v) { c.scenario.amplitude = as_double(k, v); }},
      {"scenario.center", [&](auto& k, auto& v) { c.scenario.center = as_double(k, v); }},
      {"scenario.width", [&](auto& k, auto& v) { c.scenario.width = as_double(k, v); }},
      {"scenario.q_amplitude", [&](auto& k, auto& v) { c.scenario.q_amplitude = as_double(k, v); }},
      {"scenario.bumps", [&](auto& k, auto& v) { c.scenario.bumps = static_cast<int>(as_int(k, v)); }},
      {"scenario.spread", [&](auto& k, auto& v) { c.scenario.spread = as_double(k, v); }},
      {"scenario.seed",
       [&](auto& k, auto& v) {
         const auto s = as_int(k, v);
         if (s < 0) throw ConfigError(k + ": must be non-negative");
         c.scenario.seed = static_cast<std::uint64_t>(s);
       }},
      {"scenario.epsilon", [&](auto& k, auto& v) { c.scenario.epsilon = as_double(k, v); }},
      {"scenario.safety_margin", [&](auto& k, auto& v) { c.scenario.safety_margin = as_double(k, v); }},
      {"solver.kernel",
       [&](auto& k, auto& v) { c.solver.kernel = wrap(k, [&] { return parse_kernel_choice(word(v)); }); }},
      {"solver.boundary",
       [&](auto& k, auto& v) { c.solver.boundary = wrap(k, [&] { return parse_boundary_mode(word(v)); }); }},
      {"solver.check_conservation", [&](auto& k, auto& v) { c.solver.check_conservation = as_bool(k, v); }},
      {"solver.couple_shift", [&](auto& k, auto& v) { c.solver.couple_shift = as_bool(k, v); }},
      {"output.dir", [&](auto& k, auto& v) { c.output.dir = as_string(k, v); }},
      {"output.shift_stride", [&](auto& k, auto& v) { c.output.shift_stride = as_int(k, v); }},
      {"output.checkpoint", [&](auto& k, auto& v) { c.output.checkpoint = as_bool(k, v); }},
  };
  for (const auto& [key, value] : entries) {
    auto it = setters.find(key);
    if (it == setters.end()) throw ConfigError(key + ": unknown key");
    it->second(key, value);
  }
  return c;
}

RunConfig parse_config(const std::string& text, const std::vector<std::string>& overrides) {
  auto entries = parse_config_text(text);
  apply_overrides(entries, overrides);
  return config_from_entries(entries);
}

RunConfig load_config(const std::string& path, const std::vector<std::string>& overrides) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), overrides);
}

std::string serialize_config(const RunConfig& c) {
  std::ostringstream o;
  o << "[wave]\n"
    << "u_minus = " << num(c.wave.u_minus) << "\n"
    << "u_plus = " << num(c.wave.u_plus) << "\n"
    << "tau = " << num(c.wave.tau) << "\n"
    << "mode = " << quote(to_string(c.wave.mode)) << "\n\n"
    << "[profile]\n"
    << "n_table = " << c.profile.n_table << "\n"
    << "u_clearance = " << num(c.profile.u_clearance) << "\n\n"
    << "[grid]\n"
    << "xi_min = " << num(c.grid.xi_min) << "\n"
    << "xi_max = " << num(c.grid.xi_max) << "\n"
    << "dx = " << num(c.grid.dx) << "\n\n"
    << "[time]\n"
    << "t_final = " << num(c.time.t_final) << "\n"
    << "cfl = " << num(c.time.cfl) << "\n"
    << "output_interval = " << num(c.time.output_interval) << "\n\n"
    << "[scenario]\n"
    << "family = " << quote(to_string(c.scenario.family)) << "\n"
    << "amplitude = " << num(c.scenario.amplitude) << "\n"
    << "center = " << num(c.scenario.center) << "\n"
    << "width = " << num(c.scenario.width) << "\n"
    << "q_amplitude = " << num(c.scenario.q_amplitude) << "\n"
    << "bumps = " << c.scenario.bumps << "\n"
    << "spread = " << num(c.scenario.spread) << "\n"
    << "seed = " << c.scenario.seed << "\n"
    << "epsilon = " << num(c.scenario.epsilon) << "\n"
    << "safety_margin = " << num(c.scenario.safety_margin) << "\n\n"
    << "[solver]\n"
    << "kernel = " << quote(to_string(c.solver.kernel)) << "\n"
    << "boundary = " << quote(to_string(c.solver.boundary)) << "\n"
    << "check_conservation = " << (c.solver.check_conservation ? "true" : "false") << "\n"
    << "couple_shift = " << (c.solver.couple_shift ? "true" : "false") << "\n\n"
    << "[output]\n"
    << "dir = " << quote(c.output.dir) << "\n"
    << "shift_stride = " << c.output.shift_stride << "\n"
    << "checkpoint = " << (c.output.checkpoint ? "true" : "false") << "\n";
  return o.str();
}

void validate_config(const RunConfig& c) {
  const auto fail = [](const std::string& msg) { throw ConfigError(msg); };
  if (!(c.wave.u_minus < 0.0)) fail("wave.u_minus: must be negative");
  if (!(c.wave.tau > 0.0)) fail("wave.tau: must be positive");
  if (!(c.wave.u_plus >= -0.5 * c.wave.u_minus * (1.0 - 1e-12))) {
    fail("wave.u_plus: must be >= u_m = -u_minus/2 = " + num(-0.5 * c.wave.u_minus));
  }
  const WaveConfig w = c.wave_config();
  if (!w.satisfies_profile_bound()) {
    fail("wave.tau = " + num(c.wave.tau) + " violates the profile bound tau < 4/(9 sigma u_minus^2) = " +
         num(w.profile_tau_bound()));
  }
  if (c.wave.mode == TauMode::theorem && !w.satisfies_theorem_bound()) {
    fail("wave.tau = " + num(c.wave.tau) +
         " exceeds the theorem bound min{1/(63 sigma u_minus^2), 8/7785} = " + num(w.theorem_tau_bound()) +
         " (set wave.mode = \"profile\" to relax)");
  }
  if (c.profile.n_table < 100) fail("profile.n_table: must be >= 100");
  if (!(c.profile.u_clearance > 0.0 && c.profile.u_clearance < 0.5)) fail("profile.u_clearance: must lie in (0, 0.5)");
  if (!(c.grid.xi_max > c.grid.xi_min)) fail("grid.xi_max: must exceed grid.xi_min");
  if (!(c.grid.dx > 0.0)) fail("grid.dx: must be positive");
  if ((c.grid.xi_max - c.grid.xi_min) / c.grid.dx < 5.0) fail("grid.dx: fewer than 5 cells in the domain");
  if (!(c.time.t_final > 0.0)) fail("time.t_final: must be positive");
  if (!(c.time.cfl > 0.0 && c.time.cfl <= 1.0)) fail("time.cfl: must lie in (0, 1]");
  if (!(c.time.output_interval > 0.0)) fail("time.output_interval: must be positive");
  if (!(c.scenario.width > 0.0)) fail("scenario.width: must be positive");
  if (c.scenario.bumps < 1) fail("scenario.bumps: must be >= 1");
  if (!(c.scenario.spread >= 0.0)) fail("scenario.spread: must be non-negative");
  if (!(c.scenario.safety_margin > 0.0)) fail("scenario.safety_margin: must be positive");
  if (c.output.shift_stride < 1) fail("output.shift_stride: must be >= 1");
  if (c.output.dir.empty()) fail("output.dir: must not be empty");
}

}  // namespace relaxlab
