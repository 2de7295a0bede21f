#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

#include "surge/amr.hpp"

namespace surge {

namespace {

IndexBox bounding_box(const std::vector<Patch>& patches) {
  IndexBox bb{std::numeric_limits<int>::max(), std::numeric_limits<int>::max(), std::numeric_limits<int>::min(),
              std::numeric_limits<int>::min()};
  for (const auto& p : patches) {
    bb.i0 = std::min(bb.i0, p.box().i0);
    bb.j0 = std::min(bb.j0, p.box().j0);
    bb.i1 = std::max(bb.i1, p.box().i1);
    bb.j1 = std::max(bb.j1, p.box().j1);
  }
  return bb;
}

double blend(double old_v, double new_v, double alpha) {
  return old_v == new_v ? new_v : (1.0 - alpha) * old_v + alpha * new_v;
}

}  // namespace

LevelHierarchy::LevelHierarchy(HierarchyInputs inputs) : in_(std::move(inputs)) {
  in_.domain.validate();
  in_.phys.validate();
  AmrConfig& a = in_.amr;
  if (a.max_levels < 1) throw ConfigError("amr.max_levels must be >= 1");
  if (static_cast<int>(a.ratio_x.size()) < a.max_levels - 1 || static_cast<int>(a.ratio_y.size()) < a.max_levels - 1)
    throw ConfigError("amr.ratios need max_levels - 1 entries");
  for (int k = 0; k < a.max_levels - 1; ++k)
    if (a.ratio_x[k] < 1 || a.ratio_y[k] < 1) throw ConfigError("amr.ratios must be positive integers");
  in_.solver.g = in_.phys.g;
  in_.solver.dry_tolerance = in_.phys.dry_tolerance;

  levels_.resize(a.max_levels);
  int cx = in_.domain.n_cells_x, cy = in_.domain.n_cells_y;
  for (int l = 1; l <= a.max_levels; ++l) {
    levels_[l - 1].geometry = LevelGeometry(in_.domain, in_.phys.earth_radius, cx, cy);
    if (l < a.max_levels) {
      cx *= a.ratio_x[l - 1];
      cy *= a.ratio_y[l - 1];
    }
  }
  time_ratios_.assign(std::max(0, a.max_levels - 1), 1);
}

int LevelHierarchy::num_levels() const {
  int n = 0;
  while (n < static_cast<int>(levels_.size()) && !levels_[n].patches.empty()) ++n;
  return n;
}

std::optional<StormState> LevelHierarchy::storm_at(double t) const {
  if (!in_.storm || !in_.storm->enabled()) return std::nullopt;
  return in_.storm->at(t);
}

Patch LevelHierarchy::make_patch(int l, const IndexBox& box) const {
  Patch p(l, box, levels_[l - 1].geometry);
  if (in_.bathymetry && !in_.bathymetry->empty()) sample_bathymetry(*in_.bathymetry, p);
  extend_bathymetry(p, in_.amr.bc);
  if (in_.friction) manning_field(p, *in_.friction, in_.phys.sea_level);
  return p;
}

bool LevelHierarchy::covered_by_level(int l, int gi, int gj) const {
  if (l < 1 || l > static_cast<int>(levels_.size())) return false;
  for (const auto& p : levels_[l - 1].patches)
    if (p.box().contains(gi, gj)) return true;
  return false;
}

// ---- initial build ---------------------------------------------------------

void LevelHierarchy::initialize(double t0, const InitialCondition& ic) {
  for (auto& L : levels_) {
    L.patches.clear();
    L.t = L.t_old = t0;
    L.steps = L.cell_steps = 0;
  }
  mass_log_ = {};
  Patch root = make_patch(1, levels_[0].geometry.domain_box());
  ic(root);
  root.save_old_state();
  levels_[0].patches.push_back(std::move(root));

  const auto storm = storm_at(t0);
  for (int l = 1; l < max_levels(); ++l) {
    const auto& patches = levels_[l - 1].patches;
    FlagGrid grid(bounding_box(patches));
    grid.nestable = nestable_mask(l, grid.box);
    FlagContext ctx{&in_.amr.criteria, storm ? &*storm : nullptr, in_.storm ? &in_.storm->params() : nullptr,
                    in_.phys.sea_level, in_.phys.dry_tolerance, t0};
    for (const auto& p : patches) {
      const auto f = flag_cells(p, ctx);
      for (int j = 0; j < p.ny(); ++j)
        for (int i = 0; i < p.nx(); ++i)
          if (f[static_cast<size_t>(j) * p.nx() + i]) grid.set(p.gi(i), p.gj(j));
    }
    auto boxes = cluster_flags(grid, in_.amr.min_fill, in_.amr.flag_buffer);
    if (boxes.empty()) break;
    for (auto& b : boxes) b = b.refine(ratio_x(l), ratio_y(l));
    set_level_patches(l + 1, boxes, &ic);
  }
}

// ---- ghost filling -----------------------------------------------------------

CoarseScratch LevelHierarchy::make_scratch(int coarse_l, IndexBox box, double t) const {
  const Level& L = levels_[coarse_l - 1];
  box = box.intersect(L.geometry.domain_box());
  CoarseScratch s{Patch(coarse_l, box, L.geometry), Array2D(box.nx(), box.ny(), kGhostWidth, 0.0)};
  Patch& sp = s.patch;
  const double span = L.t - L.t_old;
  const double alpha = span > 0.0 ? std::clamp((t - L.t_old) / span, 0.0, 1.0) : 1.0;

  bool any_missing = false;
  for (const auto& p : L.patches) {
    const IndexBox ov = box.intersect(p.box());
    if (ov.empty()) continue;
    for (int gj = ov.j0; gj < ov.j1; ++gj)
      for (int gi = ov.i0; gi < ov.i1; ++gi) {
        const int pi = gi - p.box().i0, pj = gj - p.box().j0;
        const int si = gi - box.i0, sj = gj - box.j0;
        sp.h(si, sj) = blend(p.h_old(pi, pj), p.h(pi, pj), alpha);
        sp.hu(si, sj) = blend(p.hu_old(pi, pj), p.hu(pi, pj), alpha);
        sp.hv(si, sj) = blend(p.hv_old(pi, pj), p.hv(pi, pj), alpha);
        sp.b(si, sj) = p.b(pi, pj);
        s.valid(si, sj) = 1.0;
      }
  }
  std::vector<std::pair<int, int>> missing;
  for (int j = 0; j < sp.ny(); ++j)
    for (int i = 0; i < sp.nx(); ++i)
      if (s.valid(i, j) == 0.0) missing.emplace_back(i, j);
  any_missing = !missing.empty();

  if (any_missing && coarse_l > 1) {
    if (in_.bathymetry && !in_.bathymetry->empty()) {
      Patch tmp(coarse_l, box, L.geometry);
      sample_bathymetry(*in_.bathymetry, tmp);
      for (const auto& [i, j] : missing) sp.b(i, j) = tmp.b(i, j);
    }
    const int rx = ratio_x(coarse_l - 1), ry = ratio_y(coarse_l - 1);
    IndexBox need{std::numeric_limits<int>::max(), std::numeric_limits<int>::max(), std::numeric_limits<int>::min(),
                  std::numeric_limits<int>::min()};
    for (const auto& [i, j] : missing) {
      need.i0 = std::min(need.i0, sp.gi(i));
      need.j0 = std::min(need.j0, sp.gj(j));
      need.i1 = std::max(need.i1, sp.gi(i) + 1);
      need.j1 = std::max(need.j1, sp.gj(j) + 1);
    }
    const CoarseScratch parent = make_scratch(coarse_l - 1, need.coarsen(rx, ry).grow(1), t);
    interpolate_refine(parent, sp, missing, rx, ry, in_.phys.sea_level, in_.phys.dry_tolerance);
    for (const auto& [i, j] : missing) s.valid(i, j) = 1.0;
  }

  // frame cells beyond the domain edge take their boundary image
  extend_bathymetry(sp, in_.amr.bc);
  apply_physical_bc(sp, in_.amr.bc);
  const IndexBox dom = L.geometry.domain_box();
  const int gw = kGhostWidth;
  for (int j = -gw; j < sp.ny() + gw; ++j)
    for (int i = -gw; i < sp.nx() + gw; ++i) {
      const int gi = sp.gi(i), gj = sp.gj(j);
      if (dom.contains(gi, gj)) continue;
      bool fx, fy;
      const int mi = boundary_source_index(gi, dom.i1, gi < 0 ? in_.amr.bc.west : in_.amr.bc.east, fx) - box.i0;
      const int mj = boundary_source_index(gj, dom.j1, gj < 0 ? in_.amr.bc.south : in_.amr.bc.north, fy) - box.j0;
      if (mi >= -gw && mi < sp.nx() + gw && mj >= -gw && mj < sp.ny() + gw) s.valid(i, j) = s.valid(mi, mj);
    }
  return s;
}

void LevelHierarchy::fill_ghosts(int l, Patch& patch, double t) const {
  const IndexBox dom = levels_[l - 1].geometry.domain_box();
  const IndexBox frame = patch.box().grow(kGhostWidth);
  const int gw = kGhostWidth;
  Array2D done(patch.nx(), patch.ny(), gw, 0.0);

  for (const auto& q : levels_[l - 1].patches) {
    if (q.box() == patch.box()) continue;
    const IndexBox ov = frame.intersect(q.box());
    if (ov.empty()) continue;
    for (int gj = ov.j0; gj < ov.j1; ++gj)
      for (int gi = ov.i0; gi < ov.i1; ++gi) {
        if (patch.box().contains(gi, gj)) continue;
        const int i = gi - patch.box().i0, j = gj - patch.box().j0;
        const int qi = gi - q.box().i0, qj = gj - q.box().j0;
        patch.h(i, j) = q.h(qi, qj);
        patch.hu(i, j) = q.hu(qi, qj);
        patch.hv(i, j) = q.hv(qi, qj);
        done(i, j) = 1.0;
      }
  }

  std::vector<std::pair<int, int>> cells;
  for (int j = -gw; j < patch.ny() + gw; ++j)
    for (int i = -gw; i < patch.nx() + gw; ++i) {
      if (i >= 0 && i < patch.nx() && j >= 0 && j < patch.ny()) continue;
      if (done(i, j) != 0.0 || !dom.contains(patch.gi(i), patch.gj(j))) continue;
      cells.emplace_back(i, j);
    }
  if (!cells.empty()) {
    if (l == 1) {
      std::ostringstream os;
      os << "level 1 patch has uncovered in-domain ghost cells";
      throw NestingError(os.str());
    }
    const int rx = ratio_x(l - 1), ry = ratio_y(l - 1);
    IndexBox need{std::numeric_limits<int>::max(), std::numeric_limits<int>::max(), std::numeric_limits<int>::min(),
                  std::numeric_limits<int>::min()};
    for (const auto& [i, j] : cells) {
      need.i0 = std::min(need.i0, patch.gi(i));
      need.j0 = std::min(need.j0, patch.gj(j));
      need.i1 = std::max(need.i1, patch.gi(i) + 1);
      need.j1 = std::max(need.j1, patch.gj(j) + 1);
    }
    const CoarseScratch scratch = make_scratch(l - 1, need.coarsen(rx, ry).grow(1), t);
    interpolate_refine(scratch, patch, cells, rx, ry, in_.phys.sea_level, in_.phys.dry_tolerance);
  }
  apply_physical_bc(patch, in_.amr.bc);
}

// ---- time stepping -----------------------------------------------------------

double LevelHierarchy::stable_dt() const {
  double dt = std::numeric_limits<double>::infinity();
  for (const auto& p : levels_[0].patches)
    dt = std::min(dt, compute_stable_dt(p, in_.amr.courant, in_.phys.g, in_.phys.dry_tolerance));
  return dt;
}

int LevelHierarchy::choose_time_ratio(int l, double dt) const {
  double fine = std::numeric_limits<double>::infinity();
  for (const auto& p : levels_[l].patches)
    fine = std::min(fine, compute_stable_dt(p, in_.amr.courant, in_.phys.g, in_.phys.dry_tolerance));
  if (!std::isfinite(fine)) return 1;
  return std::max(1, static_cast<int>(std::ceil(dt / fine * (1.0 - 1e-12))));
}

void LevelHierarchy::advance(double dt) {
  if (num_levels() == 0) throw std::logic_error("hierarchy not initialized");
  advance_level(1, dt, levels_[0].t + dt);
}

void LevelHierarchy::advance_level(int l, double dt, double t_end) {
  Level& L = levels_[l - 1];
  for (auto& p : L.patches) fill_ghosts(l, p, L.t);
  for (auto& p : L.patches) {
    p.save_old_state();
    p.fluxes.clear_step();
  }
  const bool x_first = L.steps % 2 == 0;
  long long cells = 0;
  const BoundaryConditions bc = in_.amr.bc;
  // mirrored ghosts sit at other latitudes, so refresh them after the first sweep
  const auto refresh = [bc](Patch& p) { apply_physical_bc(p, bc); };
  for (auto& p : L.patches) {
    step_hyperbolic(p, dt, in_.solver, x_first, true, refresh);
    cells += p.box().size();
  }

  const auto storm = storm_at(L.t);
  SourceContext sctx{&in_.phys, in_.friction, storm ? &*storm : nullptr, in_.storm ? &in_.storm->params() : nullptr,
                     in_.toggles};
  for (auto& p : L.patches) apply_source_split(p, dt, sctx);

  L.t_old = L.t;
  L.t = t_end;
  ++L.steps;
  L.cell_steps += cells;
  if (on_level_step) on_level_step(l, L.t);

  if (l < max_levels() && !levels_[l].patches.empty()) {
    const int r = choose_time_ratio(l, dt);
    time_ratios_[l - 1] = r;
    Level& F = levels_[l];
    for (auto& p : F.patches) p.fluxes.clear_cycle();
    const double dt_f = dt / r;
    for (int k = 0; k < r; ++k) {
      const double target = k == r - 1 ? L.t : F.t + dt_f;
      advance_level(l + 1, dt_f, target);
    }
    coarsen_level(l + 1);
    if (in_.amr.reflux) reflux_level(l + 1);
  }
  if (l < max_levels() && in_.amr.regrid_interval > 0 && L.steps % in_.amr.regrid_interval == 0) regrid(l);
}

void LevelHierarchy::coarsen_level(int lf) {
  const int rx = ratio_x(lf - 1), ry = ratio_y(lf - 1);
  for (const auto& f : levels_[lf - 1].patches)
    for (auto& c : levels_[lf - 2].patches) {
      if (f.box().coarsen(rx, ry).intersect(c.box()).empty()) continue;
      coarsen(f, c, rx, ry, in_.phys.dry_tolerance);
    }
}

void LevelHierarchy::reflux_level(int lf) {
  const int lc = lf - 1;
  const int rx = ratio_x(lc), ry = ratio_y(lc);
  Level& C = levels_[lc - 1];
  const IndexBox dom = C.geometry.domain_box();
  // correction per coarse cell: sum of fine contributions minus coarse ones
  std::map<std::pair<int, int>, Vec3> corr;
  auto owner = [&](int ci, int cj) -> Patch* {
    for (auto& p : C.patches)
      if (p.box().contains(ci, cj)) return &p;
    return nullptr;
  };
  auto eligible = [&](int ci, int cj) {
    return dom.contains(ci, cj) && !covered_by_level(lf, ci * rx, cj * ry) && owner(ci, cj) != nullptr;
  };
  auto add = [&](int ci, int cj, const double* w, double sign) {
    Vec3& v = corr[{ci, cj}];
    for (int k = 0; k < 3; ++k) v[k] += sign * w[k];
  };

  for (const auto& f : levels_[lf - 1].patches) {
    const IndexBox fb = f.box();
    const FaceFluxes& ff = f.fluxes;
    const IndexBox cbx = fb.coarsen(rx, ry);
    // west / east
    for (int side = 0; side < 2; ++side) {
      const int ci = side == 0 ? cbx.i0 - 1 : cbx.i1;
      const std::vector<double>& acc = side == 0 ? ff.west : ff.east;
      for (int j = 0; j < f.ny(); ++j) {
        const int cj = floor_div(fb.j0 + j, ry);
        if (eligible(ci, cj)) add(ci, cj, &acc[3 * static_cast<size_t>(j)], 1.0);
      }
      for (int cj = cbx.j0; cj < cbx.j1; ++cj) {
        if (!eligible(ci, cj)) continue;
        const Patch* p = owner(ci, cj);
        const int li = ci - p->box().i0, lj = cj - p->box().j0;
        const size_t k = side == 0 ? p->fluxes.xf(li + 1, lj) : p->fluxes.xf(li, lj);
        add(ci, cj, side == 0 ? &p->fluxes.x_left[k] : &p->fluxes.x_right[k], -1.0);
      }
    }
    // south / north
    for (int side = 0; side < 2; ++side) {
      const int cj = side == 0 ? cbx.j0 - 1 : cbx.j1;
      const std::vector<double>& acc = side == 0 ? ff.south : ff.north;
      for (int i = 0; i < f.nx(); ++i) {
        const int ci = floor_div(fb.i0 + i, rx);
        if (eligible(ci, cj)) add(ci, cj, &acc[3 * static_cast<size_t>(i)], 1.0);
      }
      for (int ci = cbx.i0; ci < cbx.i1; ++ci) {
        if (!eligible(ci, cj)) continue;
        const Patch* p = owner(ci, cj);
        const int li = ci - p->box().i0, lj = cj - p->box().j0;
        const size_t k = side == 0 ? p->fluxes.yf(li, lj + 1) : p->fluxes.yf(li, lj);
        add(ci, cj, side == 0 ? &p->fluxes.y_left[k] : &p->fluxes.y_right[k], -1.0);
      }
    }
  }

  const double tol = in_.phys.dry_tolerance;
  for (const auto& [key, w] : corr) {
    Patch* p = owner(key.first, key.second);
    const int i = key.first - p->box().i0, j = key.second - p->box().j0;
    if (p->h(i, j) < tol) {
      mass_log_.skipped_reflux += std::abs(w[0]);
      continue;
    }
    const double area = p->cell_area(j);
    double h = p->h(i, j) - w[0] / area;
    if (h < 0.0) {
      mass_log_.skipped_reflux += -h * area;
      h = 0.0;
    }
    p->h(i, j) = h;
    if (in_.amr.reflux_momentum) {
      p->hu(i, j) -= w[1] / area;
      p->hv(i, j) -= w[2] / area;
    }
    if (h < tol) {
      p->hu(i, j) = 0.0;
      p->hv(i, j) = 0.0;
    }
  }
}

// ---- regridding --------------------------------------------------------------

std::vector<uint8_t> LevelHierarchy::nestable_mask(int l, const IndexBox& grid_box) const {
  const int nb = in_.amr.nesting_buffer;
  const IndexBox dom = levels_[l - 1].geometry.domain_box();
  const IndexBox ext = grid_box.grow(nb);
  // coverage of the level union over the extended box
  std::vector<uint8_t> cov(static_cast<size_t>(ext.size()), 0);
  for (const auto& p : levels_[l - 1].patches) {
    const IndexBox ov = ext.intersect(p.box());
    for (int j = ov.j0; j < ov.j1; ++j)
      for (int i = ov.i0; i < ov.i1; ++i) cov[static_cast<size_t>(j - ext.j0) * ext.nx() + (i - ext.i0)] = 1;
  }
  auto ok = [&](int i, int j) {
    return !dom.contains(i, j) || cov[static_cast<size_t>(j - ext.j0) * ext.nx() + (i - ext.i0)];
  };
  std::vector<uint8_t> mask(static_cast<size_t>(grid_box.size()), 0);
  for (int j = grid_box.j0; j < grid_box.j1; ++j)
    for (int i = grid_box.i0; i < grid_box.i1; ++i) {
      bool good = dom.contains(i, j);
      for (int dj = -nb; dj <= nb && good; ++dj)
        for (int di = -nb; di <= nb; ++di)
          if (!ok(i + di, j + dj)) {
            good = false;
            break;
          }
      mask[static_cast<size_t>(j - grid_box.j0) * grid_box.nx() + (i - grid_box.i0)] = good;
    }
  return mask;
}

void LevelHierarchy::set_level_patches(int l, const std::vector<IndexBox>& boxes, const InitialCondition* ic) {
  Level& L = levels_[l - 1];
  if (boxes.empty()) {
    for (int k = l; k <= max_levels(); ++k) levels_[k - 1].patches.clear();
    return;
  }
  const bool existed = !L.patches.empty();
  const double t = levels_[l - 2].t;
  std::vector<Patch> old = std::move(L.patches);
  L.patches.clear();
  for (const auto& box : boxes) {
    Patch p = make_patch(l, box);
    if (ic) {
      (*ic)(p);
    } else {
      Array2D done(p.nx(), p.ny(), kGhostWidth, 0.0);
      for (const auto& q : old) {
        const IndexBox ov = box.intersect(q.box());
        for (int gj = ov.j0; gj < ov.j1; ++gj)
          for (int gi = ov.i0; gi < ov.i1; ++gi) {
            const int i = gi - box.i0, j = gj - box.j0;
            const int qi = gi - q.box().i0, qj = gj - q.box().j0;
            p.h(i, j) = q.h(qi, qj);
            p.hu(i, j) = q.hu(qi, qj);
            p.hv(i, j) = q.hv(qi, qj);
            done(i, j) = 1.0;
          }
      }
      std::vector<std::pair<int, int>> cells;
      for (int j = 0; j < p.ny(); ++j)
        for (int i = 0; i < p.nx(); ++i)
          if (done(i, j) == 0.0) cells.emplace_back(i, j);
      if (!cells.empty()) {
        const int rx = ratio_x(l - 1), ry = ratio_y(l - 1);
        const CoarseScratch s = make_scratch(l - 1, box.coarsen(rx, ry).grow(1), t);
        interpolate_refine(s, p, cells, rx, ry, in_.phys.sea_level, in_.phys.dry_tolerance);
      }
    }
    p.save_old_state();
    L.patches.push_back(std::move(p));
  }
  if (!existed) {
    L.steps = 0;
  }
  L.t = L.t_old = t;
}

void LevelHierarchy::regrid(int base) {
  const int finest = num_levels();
  if (base < 1 || base > finest || base >= max_levels()) return;
  const double before = composite_mass();
  const double t = levels_[base - 1].t;
  const auto storm = storm_at(t);
  const FlagContext ctx{&in_.amr.criteria, storm ? &*storm : nullptr, in_.storm ? &in_.storm->params() : nullptr,
                        in_.phys.sea_level, in_.phys.dry_tolerance, t};

  // new_boxes[l] holds the new boxes of level l (index space of level l)
  std::vector<std::vector<IndexBox>> new_boxes(max_levels() + 2);
  for (int lev = std::min(finest, max_levels() - 1); lev >= base; --lev) {
    const auto& patches = levels_[lev - 1].patches;
    FlagGrid grid(bounding_box(patches));
    grid.nestable = nestable_mask(lev, grid.box);
    for (const auto& p : patches) {
      const auto f = flag_cells(p, ctx);
      for (int j = 0; j < p.ny(); ++j)
        for (int i = 0; i < p.nx(); ++i)
          if (f[static_cast<size_t>(j) * p.nx() + i]) grid.set(p.gi(i), p.gj(j));
    }
    // keep room for the new grids two levels up
    if (lev + 2 <= max_levels()) {
      for (const auto& b2 : new_boxes[lev + 2]) {
        const IndexBox b1 = b2.coarsen(ratio_x(lev + 1), ratio_y(lev + 1)).grow(in_.amr.nesting_buffer);
        const IndexBox b0 = b1.coarsen(ratio_x(lev), ratio_y(lev)).intersect(grid.box);
        for (int j = b0.j0; j < b0.j1; ++j)
          for (int i = b0.i0; i < b0.i1; ++i) grid.set(i, j);
      }
    }
    auto boxes = cluster_flags(grid, in_.amr.min_fill, in_.amr.flag_buffer);
    for (auto& b : boxes) b = b.refine(ratio_x(lev), ratio_y(lev));
    new_boxes[lev + 1] = std::move(boxes);
  }

  for (int lev = base + 1; lev <= max_levels(); ++lev) {
    if (lev > std::min(finest, max_levels() - 1) + 1 || new_boxes[lev].empty()) {
      set_level_patches(lev, {}, nullptr);
      break;
    }
    set_level_patches(lev, new_boxes[lev], nullptr);
  }

  const double change = composite_mass() - before;
  mass_log_.regrid_change += change;
  mass_log_.regrid_change_abs += std::abs(change);
  ++mass_log_.regrids;
}

// ---- diagnostics -------------------------------------------------------------

double LevelHierarchy::composite_mass() const {
  double total = 0.0;
  const int n = num_levels();
  for (int l = 1; l <= n; ++l) {
    const bool has_fine = l < n;
    const int rx = has_fine ? ratio_x(l) : 1, ry = has_fine ? ratio_y(l) : 1;
    for (const auto& p : levels_[l - 1].patches)
      for (int j = 0; j < p.ny(); ++j) {
        double row = 0.0;
        for (int i = 0; i < p.nx(); ++i)
          if (!has_fine || !covered_by_level(l + 1, p.gi(i) * rx, p.gj(j) * ry)) row += p.h(i, j);
        total += row * p.cell_area(j);
      }
  }
  return total;
}

LevelHierarchy::Location LevelHierarchy::locate(double lon, double lat) const {
  for (int l = num_levels(); l >= 1; --l) {
    const Level& L = levels_[l - 1];
    const int gi = L.geometry.col_of(lon), gj = L.geometry.row_of(lat);
    for (size_t k = 0; k < L.patches.size(); ++k)
      if (L.patches[k].box().contains(gi, gj))
        return {l, static_cast<int>(k), gi - L.patches[k].box().i0, gj - L.patches[k].box().j0};
  }
  return {};
}

}  // namespace surge
