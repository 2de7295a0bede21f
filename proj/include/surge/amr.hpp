#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <vector>

#include "surge/bathymetry.hpp"
#include "surge/patch.hpp"
#include "surge/solver.hpp"
#include "surge/sources.hpp"
#include "surge/storm.hpp"

namespace surge {

enum class BoundaryKind { Outflow, Wall };

struct BoundaryConditions {
  BoundaryKind west = BoundaryKind::Outflow;
  BoundaryKind east = BoundaryKind::Outflow;
  BoundaryKind south = BoundaryKind::Outflow;
  BoundaryKind north = BoundaryKind::Outflow;
};

/// Level window over a lon/lat rectangle and time interval.
struct RegionConstraint {
  int min_level = 1;
  int max_level = 1;
  double lon_min = 0.0, lon_max = 0.0, lat_min = 0.0, lat_max = 0.0;
  double t_start = -std::numeric_limits<double>::infinity();
  double t_end = std::numeric_limits<double>::infinity();
  bool active(double lon, double lat, double t) const {
    return t >= t_start && t <= t_end && lon >= lon_min && lon <= lon_max && lat >= lat_min && lat <= lat_max;
  }
};

struct RefinementCriteria {
  double wave_tolerance = 1.0;
  /// Speed thresholds; a level-l cell (1-based) is tested against entry l.
  std::vector<double> speed_tolerance;
  /// Eye-distance and wind thresholds; a level-l cell uses entry l - 1.
  std::vector<double> eye_radius;
  std::vector<double> wind_tolerance;
  std::vector<RegionConstraint> regions;
  std::optional<double> max_refine_depth;
};

struct AmrConfig {
  int max_levels = 1;
  std::vector<int> ratio_x;  // max_levels - 1 entries
  std::vector<int> ratio_y;
  int regrid_interval = 4;
  double min_fill = 0.7;
  int flag_buffer = 3;
  int nesting_buffer = 2;
  bool reflux = true;
  bool reflux_momentum = true;
  double courant = 0.9;
  double dt_max = std::numeric_limits<double>::infinity();
  RefinementCriteria criteria;
  BoundaryConditions bc;
};

// ---- flagging --------------------------------------------------------------

/// Cell values the physics criteria look at.
struct FlagInputs {
  double eta_deviation = 0.0;  // |eta - sea_level|
  double speed = 0.0;          // water speed, m/s
  double eye_distance = std::numeric_limits<double>::infinity();
  double wind_speed = 0.0;
};

/// Union of the wave, speed, eye-distance and wind criteria for a level.
bool physics_flag(int level, const FlagInputs& in, const RefinementCriteria& c);

/// +1 force refine, -1 forbid refine, 0 no constraint. Overlapping regions
/// combine by taking the largest min_level and the largest max_level.
int region_override(double lon, double lat, double t, int level, const std::vector<RegionConstraint>& regions);

struct FlagContext {
  const RefinementCriteria* criteria = nullptr;
  const StormState* storm = nullptr;  // null: storm criteria inactive
  const StormParams* storm_params = nullptr;
  double sea_level = 0.0;
  double dry_tolerance = 1e-3;
  double t = 0.0;
};

/// Interior flags of one patch (row-major nx * ny).
std::vector<uint8_t> flag_cells(const Patch& patch, const FlagContext& ctx);

// ---- clustering ------------------------------------------------------------

/// Flags over an index box of one level; `nestable` may be empty (all cells allowed).
struct FlagGrid {
  IndexBox box;
  std::vector<uint8_t> flags;
  std::vector<uint8_t> nestable;
  explicit FlagGrid(IndexBox b = {}) : box(b), flags(static_cast<size_t>(std::max<long long>(b.size(), 0)), 0) {}
  size_t index(int i, int j) const { return static_cast<size_t>(j - box.j0) * box.nx() + (i - box.i0); }
  void set(int i, int j) { if (box.contains(i, j)) flags[index(i, j)] = 1; }
  bool flagged(int i, int j) const { return box.contains(i, j) && flags[index(i, j)]; }
  bool allowed(int i, int j) const { return nestable.empty() || nestable[index(i, j)]; }
};

/// Dilates flags by `buffer` cells (clipped to the grid box and the nestable
/// mask) and covers them with rectangles by signature splitting. Every box
/// has fill >= min_fill or could not be split further, and every box lies in
/// the nestable region. Output is sorted by (j0, i0).
std::vector<IndexBox> cluster_flags(const FlagGrid& grid, double min_fill, int buffer);

// ---- interpolation ---------------------------------------------------------

/// Coarse data around a region with a validity mask, used as the source of
/// refinement interpolation (ghost filling and regridding).
struct CoarseScratch {
  Patch patch;
  Array2D valid;
};

inline double minmod(double a, double b) {
  if (a * b <= 0.0) return 0.0;
  return std::abs(a) < std::abs(b) ? a : b;
}

/// Fills the listed fine cells (local indices, ghost frame allowed) from the
/// coarse scratch by sea-surface interpolation with minmod-limited slopes.
void interpolate_refine(const CoarseScratch& coarse, Patch& fine, const std::vector<std::pair<int, int>>& cells,
                        int rx, int ry, double sea_level, double dry_tolerance);

/// Overwrites coarse cells covered by `fine` with averages of their children.
void coarsen(const Patch& fine, Patch& coarse, int rx, int ry, double dry_tolerance);

/// Maps an index outside [0, n) into the domain for the given boundary kind.
/// Sets `flip` for wall reflections.
int boundary_source_index(int i, int n, BoundaryKind kind, bool& flip);

/// Fills ghost b beyond the domain edge from the mirrored / extrapolated cell.
void extend_bathymetry(Patch& patch, const BoundaryConditions& bc);

/// Applies physical boundary conditions to frame cells outside the domain.
void apply_physical_bc(Patch& patch, const BoundaryConditions& bc);

// ---- hierarchy -------------------------------------------------------------

struct Level {
  LevelGeometry geometry;
  std::vector<Patch> patches;
  double t = 0.0;
  double t_old = 0.0;
  long long steps = 0;
  long long cell_steps = 0;
};

using InitialCondition = std::function<void(Patch&)>;

/// Everything the hierarchy reads but never owns.
struct HierarchyInputs {
  GeoDomain domain;
  PhysConfig phys;
  AmrConfig amr;
  const Bathymetry* bathymetry = nullptr;
  const FrictionConfig* friction = nullptr;
  const StormModel* storm = nullptr;
  SourceToggles toggles{};
  SolverOptions solver{};
};

struct MassLog {
  double regrid_change = 0.0;      // signed sum of composite-mass jumps at regrids
  double regrid_change_abs = 0.0;  // sum of their magnitudes
  double skipped_reflux = 0.0;     // |mass| of corrections skipped at dry coarse cells
  long long regrids = 0;
};

class LevelHierarchy {
 public:
  LevelHierarchy() = default;
  explicit LevelHierarchy(HierarchyInputs inputs);

  /// Builds level 1 and refines level by level with the initial condition
  /// evaluated directly on every new patch.
  void initialize(double t0, const InitialCondition& ic);

  /// One level-1 step of size dt with sub-cycling, synchronisation and
  /// regridding. Throws CflViolation; the caller restores a snapshot.
  void advance(double dt);

  /// Stable level-1 step at the configured Courant number.
  double stable_dt() const;

  /// Number of existing levels (levels are contiguous from 1).
  int num_levels() const;
  int max_levels() const { return static_cast<int>(levels_.size()); }
  const Level& level(int l) const { return levels_[l - 1]; }
  Level& level(int l) { return levels_[l - 1]; }
  double time() const { return levels_.empty() ? 0.0 : levels_[0].t; }
  const HierarchyInputs& inputs() const { return in_; }
  const MassLog& mass_log() const { return mass_log_; }
  std::vector<int> time_ratios() const { return time_ratios_; }

  /// Sum of h * area over cells not covered by a finer level.
  double composite_mass() const;
  /// Finest level / patch / local cell holding a point, or level 0.
  struct Location {
    int level = 0;
    int patch = -1;
    int i = 0, j = 0;
  };
  Location locate(double lon, double lat) const;

  /// Hook called after every step of every level (level, time after step).
  std::function<void(int, double)> on_level_step;

  // exposed for tests
  void fill_ghosts(int l, Patch& patch, double t) const;
  void regrid(int base);
  /// Sub-steps of level l + 1 inside one level-l step of size dt.
  int choose_time_ratio(int l, double dt) const;
  void set_level_patches(int l, const std::vector<IndexBox>& boxes, const InitialCondition* ic);
  bool covered_by_level(int l, int gi, int gj) const;

 private:
  void advance_level(int l, double dt, double t_end);
  void reflux_level(int l);
  void coarsen_level(int l);
  Patch make_patch(int l, const IndexBox& box) const;
  CoarseScratch make_scratch(int coarse_l, IndexBox box, double t) const;
  std::vector<uint8_t> nestable_mask(int l, const IndexBox& grid_box) const;
  int ratio_x(int l) const { return in_.amr.ratio_x[l - 1]; }
  int ratio_y(int l) const { return in_.amr.ratio_y[l - 1]; }

  HierarchyInputs in_;
  std::vector<Level> levels_;
  std::vector<int> time_ratios_;
  MassLog mass_log_;
  std::optional<StormState> storm_at(double t) const;
};

}  // namespace surge
