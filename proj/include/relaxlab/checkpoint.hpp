#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "relaxlab/grid.hpp"
#include "relaxlab/state.hpp"

namespace relaxlab {

/// Text checkpoint, format version 1:
///
///   # relaxlab checkpoint v1
///   t,X,Xdot,xi_min,xi_max,n_cells
///   <one line of values>
///   xi,u,q
///   <one line per interior cell>
///
/// Reals are written with 17 significant digits, so a restore is exact.
/// Ghost cells are not stored; the shift history restarts at (t, X, Xdot).
inline constexpr int kCheckpointVersion = 1;

class CheckpointError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Checkpoint {
  Grid1D grid;
  SimState state;
};

void write_checkpoint(std::ostream& out, const SimState& state, const Grid1D& grid);
void write_checkpoint(const std::string& path, const SimState& state, const Grid1D& grid);

Checkpoint read_checkpoint(std::istream& in);
Checkpoint read_checkpoint(const std::string& path);

}  // namespace relaxlab
