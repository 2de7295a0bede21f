#pragma once

#include <functional>

#include "surge/patch.hpp"
#include "surge/sources.hpp"
#include "surge/storm.hpp"
#include "surge/sweep.hpp"

namespace surge {

struct SolverOptions {
  double g = 9.81;
  double dry_tolerance = 1e-3;
  bool second_order = true;
  double courant_max = 1.0;
  SweepMode mode = SweepMode::Parallel;
};

struct StepReport {
  double dt_used = 0.0;
  double max_courant = 0.0;
  double max_speed = 0.0;
  double mass_before = 0.0;
  double mass_after = 0.0;
  int clamped_cells = 0;  // negative depths reset to zero
};

/// Dimensional-sweep update of one patch whose ghost frame is filled. The
/// first sweep also advances the ghost lines so the second sweep sees
/// consistent neighbours. Throws CflViolation (state restored) when the
/// Courant number exceeds options.courant_max. `between_sweeps` (optional)
/// refreshes ghost cells beyond the physical boundary after the first sweep.
StepReport step_hyperbolic(Patch& patch, double dt, const SolverOptions& options, bool x_first,
                           bool record_fluxes = false, const std::function<void(Patch&)>& between_sweeps = {});

/// courant * min over wet cells of min(dx_m, dy_m) / (max(|u|, |v|) + sqrt(g h)).
/// Wet cells next to a dry cell lying below their surface use the dry-front
/// speed 2 sqrt(g h). Returns +infinity for an all-dry patch.
double compute_stable_dt(const Patch& patch, double courant, double g, double dry_tolerance);

struct SourceContext {
  const PhysConfig* phys = nullptr;
  const FrictionConfig* friction = nullptr;
  const StormState* storm = nullptr;  // null: no atmospheric forcing
  const StormParams* storm_params = nullptr;
  SourceToggles toggles{};
};

/// Godunov splitting: friction, Coriolis, wind, pressure, each over the full dt.
void apply_source_split(Patch& patch, double dt, const SourceContext& ctx);

}  // namespace surge
