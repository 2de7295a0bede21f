#include "surge/solver.hpp"

#include <cmath>
#include <limits>

namespace surge {

StepReport step_hyperbolic(Patch& patch, double dt, const SolverOptions& options, bool x_first, bool record_fluxes,
                           const std::function<void(Patch&)>& between_sweeps) {
  StepReport rep;
  rep.dt_used = dt;
  rep.mass_before = patch.mass();
  const Array2D h0 = patch.h, hu0 = patch.hu, hv0 = patch.hv;

  SweepParams sp{options.g, options.dry_tolerance, dt, options.second_order};
  const int gw = kGhostWidth;
  const int nx = patch.nx(), ny = patch.ny();
  // a rejected step must leave the flux accumulators untouched
  const FaceFluxes saved = record_fluxes ? patch.fluxes : FaceFluxes{};
  auto reject = [&](double courant) {
    patch.h = h0;
    patch.hu = hu0;
    patch.hv = hv0;
    if (record_fluxes) patch.fluxes = saved;
    throw CflViolation(courant, patch.level());
  };
  // the wave-propagation update is not strictly positive near dry fronts
  auto check_depth = [&](const SweepStats& s) {
    if (s.min_depth < 0.0) rep.clamped_cells += clean_dry_cells(patch, options.dry_tolerance);
  };
  SweepStats a, b;
  if (x_first) {
    a = sweep_x(patch, sp, -gw, ny + gw, record_fluxes, options.mode);
    check_depth(a);
    if (between_sweeps) between_sweeps(patch);
    b = sweep_y(patch, sp, 0, nx, record_fluxes, options.mode);
  } else {
    a = sweep_y(patch, sp, -gw, nx + gw, record_fluxes, options.mode);
    check_depth(a);
    if (between_sweeps) between_sweeps(patch);
    b = sweep_x(patch, sp, 0, ny, record_fluxes, options.mode);
  }
  rep.max_courant = std::max(a.max_courant, b.max_courant);
  rep.max_speed = std::max(a.max_speed, b.max_speed);
  if (rep.max_courant > options.courant_max) reject(rep.max_courant);
  check_depth(b);
  clean_dry_cells(patch, options.dry_tolerance);
  rep.mass_after = patch.mass();
  return rep;
}

double compute_stable_dt(const Patch& patch, double courant, double g, double dry_tolerance) {
  const LevelGeometry& geo = patch.geometry();
  double best = std::numeric_limits<double>::infinity();
  for (int j = 0; j < patch.ny(); ++j) {
    const auto m = cell_size_meters(patch.lat(j), geo.dlon(), geo.dlat(), geo.earth_radius());
    const double size = std::min(m.dx_m, m.dy_m);
    for (int i = 0; i < patch.nx(); ++i) {
      const double h = patch.h(i, j);
      if (h < dry_tolerance) continue;
      const double u = std::max(std::abs(patch.hu(i, j)), std::abs(patch.hv(i, j))) / h;
      const double c = std::sqrt(g * h);
      double speed = u + c;
      const double eta = h + patch.b(i, j);
      const int di[4] = {-1, 1, 0, 0}, dj[4] = {0, 0, -1, 1};
      for (int k = 0; k < 4; ++k) {
        const int ii = i + di[k], jj = j + dj[k];
        if (patch.h(ii, jj) < dry_tolerance && patch.b(ii, jj) < eta) {
          speed = u + 2.0 * c;
          break;
        }
      }
      best = std::min(best, size / speed);
    }
  }
  return courant * best;
}

void apply_source_split(Patch& patch, double dt, const SourceContext& ctx) {
  const PhysConfig& phys = *ctx.phys;
  if (ctx.toggles.friction && ctx.friction) apply_friction(patch, dt, *ctx.friction, phys);
  if (ctx.toggles.coriolis) apply_coriolis(patch, dt, phys);
  if (ctx.storm && ctx.storm_params && (ctx.toggles.wind || ctx.toggles.pressure)) {
    const StormFields fields = evaluate_fields(patch, *ctx.storm, *ctx.storm_params);
    if (ctx.toggles.wind) apply_wind(patch, dt, fields, phys);
    if (ctx.toggles.pressure) apply_pressure(patch, dt, fields, phys);
  }
  for (int j = 0; j < patch.ny(); ++j)
    for (int i = 0; i < patch.nx(); ++i)
      if (patch.h(i, j) < phys.dry_tolerance) {
        patch.hu(i, j) = 0.0;
        patch.hv(i, j) = 0.0;
      }
}

}  // namespace surge
