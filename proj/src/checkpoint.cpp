#include "relaxlab/checkpoint.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

namespace relaxlab {

namespace {

constexpr const char* kMagic = "# relaxlab checkpoint v1";
constexpr const char* kMetaHeader = "t,X,Xdot,xi_min,xi_max,n_cells";
constexpr const char* kRowHeader = "xi,u,q";

std::vector<double> split_numbers(const std::string& line, std::size_t expect, int lineno) {
  std::vector<double> out;
  std::stringstream ss(line);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    char* end = nullptr;
    const double v = std::strtod(tok.c_str(), &end);
    if (end == tok.c_str() || *end != '\0') {
      throw CheckpointError("checkpoint line " + std::to_string(lineno) + ": bad number '" + tok + "'");
    }
    out.push_back(v);
  }
  if (out.size() != expect) {
    throw CheckpointError("checkpoint line " + std::to_string(lineno) + ": expected " + std::to_string(expect) +
                          " fields, got " + std::to_string(out.size()));
  }
  return out;
}

void expect_line(std::istream& in, const char* want, int lineno) {
  std::string line;
  if (!std::getline(in, line) || line != want) {
    throw CheckpointError("checkpoint line " + std::to_string(lineno) + ": expected '" + want + "'");
  }
}

}  // namespace

void write_checkpoint(std::ostream& out, const SimState& state, const Grid1D& grid) {
  char buf[128];
  out << kMagic << '\n' << kMetaHeader << '\n';
  std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%zu\n", state.t, state.shift.X, state.shift.Xdot,
                grid.xi_min, grid.xi_max, grid.n_cells);
  out << buf << kRowHeader << '\n';
  for (std::size_t j = 0; j < grid.n_cells; ++j) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", grid.interior_center(j), state.u[j + Grid1D::ghost],
                  state.q[j + Grid1D::ghost]);
    out << buf;
  }
}

void write_checkpoint(const std::string& path, const SimState& state, const Grid1D& grid) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw CheckpointError("cannot open '" + path + "' for writing");
  write_checkpoint(out, state, grid);
  if (!out) throw CheckpointError("write to '" + path + "' failed");
}

Checkpoint read_checkpoint(std::istream& in) {
  expect_line(in, kMagic, 1);
  expect_line(in, kMetaHeader, 2);
  std::string line;
  if (!std::getline(in, line)) throw CheckpointError("checkpoint line 3: missing metadata");
  const auto meta = split_numbers(line, 6, 3);
  const double n_real = meta[5];
  if (!(n_real >= 5.0) || n_real != std::floor(n_real)) throw CheckpointError("checkpoint: bad n_cells");
  const auto n = static_cast<std::size_t>(n_real);

  Checkpoint cp;
  try {
    cp.grid = Grid1D(meta[3], meta[4], (meta[4] - meta[3]) / n_real);
  } catch (const std::invalid_argument& e) {
    throw CheckpointError(std::string("checkpoint: ") + e.what());
  }
  if (cp.grid.n_cells != n) throw CheckpointError("checkpoint: inconsistent grid");
  cp.state = SimState(cp.grid);
  cp.state.t = meta[0];
  cp.state.shift.t = meta[0];
  cp.state.shift.X = meta[1];
  cp.state.shift.Xdot = meta[2];
  cp.state.shift.history = {{meta[0], meta[1], meta[2]}};

  expect_line(in, kRowHeader, 4);
  for (std::size_t j = 0; j < n; ++j) {
    const int lineno = static_cast<int>(j) + 5;
    if (!std::getline(in, line)) throw CheckpointError("checkpoint: truncated at line " + std::to_string(lineno));
    const auto row = split_numbers(line, 3, lineno);
    const double xi = cp.grid.interior_center(j);
    if (std::fabs(row[0] - xi) > 1e-9 * std::max(1.0, std::fabs(xi))) {
      throw CheckpointError("checkpoint line " + std::to_string(lineno) + ": xi does not match the grid");
    }
    cp.state.u[j + Grid1D::ghost] = row[1];
    cp.state.q[j + Grid1D::ghost] = row[2];
  }
  while (std::getline(in, line)) {
    if (!line.empty()) throw CheckpointError("checkpoint: trailing data after the last cell");
  }
  return cp;
}

Checkpoint read_checkpoint(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CheckpointError("cannot open checkpoint '" + path + "'");
  return read_checkpoint(in);
}

}  // namespace relaxlab
