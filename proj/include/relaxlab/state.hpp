#pragma once

#include <vector>

#include "relaxlab/grid.hpp"
#include "relaxlab/weight_shift.hpp"

namespace relaxlab {

/// Cell averages of (u, q) including ghost cells, plus time and shift.
struct SimState {
  std::vector<double> u;
  std::vector<double> q;
  double t = 0.0;
  ShiftState shift;

  SimState() = default;
  explicit SimState(const Grid1D& g) : u(g.size(), 0.0), q(g.size(), 0.0) {}
};

}  // namespace relaxlab
