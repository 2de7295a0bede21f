#pragma once

#include "surge/patch.hpp"

namespace surge {

struct SweepParams {
  double g = 9.81;
  double dry_tolerance = 1e-3;
  double dt = 0.0;
  bool second_order = true;
};

struct SweepStats {
  double max_courant = 0.0;
  double max_speed = 0.0;
  double min_depth = 0.0;  // most negative updated depth, 0 if none
};

enum class SweepMode { Reference, Parallel };

/// One x sweep over rows [j_lo, j_hi) of the frame, updating interior
/// columns only. When `record` is set, face contributions of interior rows
/// are added to patch.fluxes (step and cycle accumulators).
SweepStats sweep_x(Patch& patch, const SweepParams& params, int j_lo, int j_hi, bool record, SweepMode mode);

/// One y sweep over columns [i_lo, i_hi), updating interior rows only.
SweepStats sweep_y(Patch& patch, const SweepParams& params, int i_lo, int i_hi, bool record, SweepMode mode);

/// Stateless 1D kernel on a line of n cells with two ghosts on each side.
/// h, hn, ht, b hold n + 4 values (index 0 is cell -2); length holds n + 3
/// face lengths (index 0 is the face left of cell -1); area holds n + 4.
/// Updates cells 0..n-1 in place. `left` / `right`, when non-null, receive
/// the (n + 1) face contributions of faces 0..n in the line's normal frame.
SweepStats sweep_line(int n, double* h, double* hn, double* ht, const double* b, const double* length,
                      const double* area, int normal, const SweepParams& params, double* left, double* right);

}  // namespace surge
