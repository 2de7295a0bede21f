#pragma once

#include <vector>

#include "surge/array2d.hpp"
#include "surge/geometry.hpp"

namespace surge {

/// Time-integrated interface contributions for the three components. For a
/// face between cells L and R the sweep applies dQ_L = -left / A_L and
/// dQ_R = -right / A_R with
///   left  = dt L (A^-dQ + F~) + (dt L hn_L, 0, 0)
///   right = dt L (A^+dQ - F~) - (dt L hn_R, 0, 0)
/// so the mass entries are the flux dt L G of the face (left = -right up to
/// rounding) and the momentum entries stay in fluctuation form, which keeps
/// the lake at rest exactly in place under refluxing.
struct FaceFluxes {
  int nx = 0;
  int ny = 0;
  // x faces: (nx+1) * ny, y faces: nx * (ny+1); 3 components interleaved.
  std::vector<double> x_left, x_right, y_left, y_right;
  // Outside-cell view along each patch edge (west: left, east: right, south:
  // left, north: right), accumulated over the sub-cycle of this level within
  // one step of its parent.
  std::vector<double> west, east, south, north;

  void resize(int nx_, int ny_);
  void clear_step();
  void clear_cycle();
  size_t xf(int i, int j) const { return 3 * (static_cast<size_t>(j) * (nx + 1) + i); }
  size_t yf(int i, int j) const { return 3 * (static_cast<size_t>(j) * nx + i); }
};

/// One logically rectangular grid at one refinement level.
class Patch {
 public:
  Patch() = default;
  Patch(int level, IndexBox box, const LevelGeometry& geometry);

  int level() const { return level_; }
  const IndexBox& box() const { return box_; }
  const LevelGeometry& geometry() const { return geometry_; }
  int nx() const { return box_.nx(); }
  int ny() const { return box_.ny(); }

  /// Local -> global index helpers.
  int gi(int i) const { return box_.i0 + i; }
  int gj(int j) const { return box_.j0 + j; }
  double lon(int i) const { return geometry_.lon_center(gi(i)); }
  double lat(int j) const { return geometry_.lat_center(gj(j)); }
  double cell_area(int j) const { return geometry_.cell_area(gj(j)); }
  StateVector state(int i, int j) const { return {h(i, j), hu(i, j), hv(i, j)}; }
  void set_state(int i, int j, const StateVector& q) {
    h(i, j) = q.h;
    hu(i, j) = q.hu;
    hv(i, j) = q.hv;
  }

  /// Copies the current state into the previous-time slot used for temporal
  /// interpolation of finer-level ghost cells.
  void save_old_state();

  /// Area-weighted water volume of the interior (m^3).
  double mass() const;

  Array2D h, hu, hv;
  Array2D b;        // cell-averaged bathymetry, ghost frame included
  Array2D manning;  // Manning n per cell
  Array2D h_old, hu_old, hv_old;
  FaceFluxes fluxes;

 private:
  int level_ = 1;
  IndexBox box_{};
  LevelGeometry geometry_{};
};

/// Sea-surface elevation: h + b for wet cells, sea_level for dry cells.
double surface_elevation(const Patch& patch, int i, int j, double dry_tolerance, double sea_level);

/// Sets h = max(0, sea_level - b) and zero momentum on the whole frame.
void initialize_lake_at_rest(Patch& patch, double sea_level);

/// Zeroes momentum in cells shallower than dry_tolerance; clamps rounding-level
/// negative depths to zero. Returns the number of negative depths clamped.
int clean_dry_cells(Patch& patch, double dry_tolerance);

}  // namespace surge
