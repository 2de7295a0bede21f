#include <cmath>
#include <sstream>

#include "surge/amr.hpp"

namespace surge {

int boundary_source_index(int i, int n, BoundaryKind kind, bool& flip) {
  flip = false;
  if (i >= 0 && i < n) return i;
  if (kind == BoundaryKind::Outflow) return i < 0 ? 0 : n - 1;
  flip = true;
  const int m = i < 0 ? -1 - i : 2 * n - 1 - i;
  return std::clamp(m, 0, n - 1);
}

namespace {

// Local frame index of the in-domain cell feeding frame cell (i, j).
bool map_to_domain(const Patch& p, const BoundaryConditions& bc, int i, int j, int& si, int& sj, bool& fx, bool& fy) {
  const IndexBox dom = p.geometry().domain_box();
  const int gi = p.gi(i), gj = p.gj(j);
  const BoundaryKind kx = gi < 0 ? bc.west : bc.east;
  const BoundaryKind ky = gj < 0 ? bc.south : bc.north;
  const int mi = boundary_source_index(gi, dom.i1, kx, fx);
  const int mj = boundary_source_index(gj, dom.j1, ky, fy);
  si = mi - p.box().i0;
  sj = mj - p.box().j0;
  const int gw = p.h.ghost();
  return si >= -gw && si < p.nx() + gw && sj >= -gw && sj < p.ny() + gw;
}

bool outside_domain(const Patch& p, int i, int j) {
  const IndexBox dom = p.geometry().domain_box();
  return !dom.contains(p.gi(i), p.gj(j));
}

}  // namespace

void extend_bathymetry(Patch& patch, const BoundaryConditions& bc) {
  const int gw = patch.b.ghost();
  for (int j = -gw; j < patch.ny() + gw; ++j)
    for (int i = -gw; i < patch.nx() + gw; ++i) {
      if (!outside_domain(patch, i, j)) continue;
      int si, sj;
      bool fx, fy;
      if (map_to_domain(patch, bc, i, j, si, sj, fx, fy)) patch.b(i, j) = patch.b(si, sj);
    }
}

void apply_physical_bc(Patch& patch, const BoundaryConditions& bc) {
  const int gw = patch.h.ghost();
  for (int j = -gw; j < patch.ny() + gw; ++j)
    for (int i = -gw; i < patch.nx() + gw; ++i) {
      if (!outside_domain(patch, i, j)) continue;
      int si, sj;
      bool fx, fy;
      if (!map_to_domain(patch, bc, i, j, si, sj, fx, fy)) continue;
      patch.h(i, j) = patch.h(si, sj);
      patch.hu(i, j) = fx ? -patch.hu(si, sj) : patch.hu(si, sj);
      patch.hv(i, j) = fy ? -patch.hv(si, sj) : patch.hv(si, sj);
    }
}

void interpolate_refine(const CoarseScratch& coarse, Patch& fine, const std::vector<std::pair<int, int>>& cells,
                        int rx, int ry, double sea_level, double dry_tolerance) {
  const Patch& cp = coarse.patch;
  const IndexBox cb = cp.box();
  const int cg = cp.h.ghost();
  const LevelGeometry& fg = fine.geometry();
  auto in_frame = [&](int li, int lj) { return li >= -cg && li < cp.nx() + cg && lj >= -cg && lj < cp.ny() + cg; };
  auto valid = [&](int li, int lj) { return in_frame(li, lj) && coarse.valid(li, lj) != 0.0; };
  auto eta = [&](int li, int lj) {
    const double h = cp.h(li, lj);
    return h >= dry_tolerance ? h + cp.b(li, lj) : sea_level;
  };
  auto vel = [&](const Array2D& m, int li, int lj) {
    const double h = cp.h(li, lj);
    return h >= dry_tolerance ? m(li, lj) / h : 0.0;
  };
  auto slope = [&](auto&& f, int li, int lj, int di, int dj) {
    if (!valid(li - di, lj - dj) || !valid(li + di, lj + dj)) return 0.0;
    const double c = f(li, lj);
    return minmod(c - f(li - di, lj - dj), f(li + di, lj + dj) - c);
  };

  for (const auto& [i, j] : cells) {
    const int gi = fine.gi(i), gj = fine.gj(j);
    const int ci = floor_div(gi, rx), cj = floor_div(gj, ry);
    const int li = ci - cb.i0, lj = cj - cb.j0;
    if (!valid(li, lj)) {
      std::ostringstream os;
      os << "no coarse data for level " << fine.level() << " cell (" << gi << ", " << gj << ")";
      throw NestingError(os.str());
    }
    // offsets from the area-weighted centroid of the children, in coarse-cell units
    const double ox = ((gi - ci * rx) + 0.5) / rx - 0.5;
    double wsum = 0.0, ysum = 0.0;
    for (int k = 0; k < ry; ++k) {
      const double a = fg.cell_area(cj * ry + k);
      wsum += a;
      ysum += a * ((k + 0.5) / ry - 0.5);
    }
    const double oy = ((gj - cj * ry) + 0.5) / ry - 0.5 - ysum / wsum;

    auto eta_f = [&](int a, int b) { return eta(a, b); };
    const double e = eta(li, lj) + slope(eta_f, li, lj, 1, 0) * ox + slope(eta_f, li, lj, 0, 1) * oy;
    const double h = std::max(0.0, e - fine.b(i, j));
    fine.h(i, j) = h;
    if (h < dry_tolerance) {
      fine.hu(i, j) = 0.0;
      fine.hv(i, j) = 0.0;
      continue;
    }
    auto u_f = [&](int a, int b) { return vel(cp.hu, a, b); };
    auto v_f = [&](int a, int b) { return vel(cp.hv, a, b); };
    const double u = vel(cp.hu, li, lj) + slope(u_f, li, lj, 1, 0) * ox + slope(u_f, li, lj, 0, 1) * oy;
    const double v = vel(cp.hv, li, lj) + slope(v_f, li, lj, 1, 0) * ox + slope(v_f, li, lj, 0, 1) * oy;
    fine.hu(i, j) = h * u;
    fine.hv(i, j) = h * v;
  }
}

void coarsen(const Patch& fine, Patch& coarse, int rx, int ry, double dry_tolerance) {
  const IndexBox region = fine.box().coarsen(rx, ry).intersect(coarse.box());
  if (region.empty()) return;
  for (int cj = region.j0; cj < region.j1; ++cj) {
    const int lj = cj - coarse.box().j0;
    const double area_c = coarse.cell_area(lj);
    for (int ci = region.i0; ci < region.i1; ++ci) {
      const int li = ci - coarse.box().i0;
      double mass = 0.0, mx = 0.0, my = 0.0;
      double wet_area = 0.0, wet_dev = 0.0, wet_u = 0.0, wet_v = 0.0;
      bool all_wet = true, have_ref = false;
      double ref = 0.0;
      for (int kj = 0; kj < ry; ++kj) {
        const int fj = cj * ry + kj - fine.box().j0;
        const double a = fine.cell_area(fj);
        for (int ki = 0; ki < rx; ++ki) {
          const int fi = ci * rx + ki - fine.box().i0;
          const double h = fine.h(fi, fj);
          mass += a * h;
          mx += a * fine.hu(fi, fj);
          my += a * fine.hv(fi, fj);
          if (h >= dry_tolerance) {
            // surface deviations from the first wet child keep a flat surface exactly flat
            const double eta = h + fine.b(fi, fj);
            if (!have_ref) {
              ref = eta;
              have_ref = true;
            }
            wet_area += a;
            wet_dev += a * (eta - ref);
            wet_u += a * fine.hu(fi, fj) / h;
            wet_v += a * fine.hv(fi, fj) / h;
          } else {
            all_wet = false;
          }
        }
      }
      if (all_wet) {
        coarse.h(li, lj) = std::max(0.0, ref + wet_dev / wet_area - coarse.b(li, lj));
        coarse.hu(li, lj) = mx / area_c;
        coarse.hv(li, lj) = my / area_c;
      } else if (wet_area > 0.0) {
        const double h = std::max(0.0, ref + wet_dev / wet_area - coarse.b(li, lj));
        coarse.h(li, lj) = h;
        if (h >= dry_tolerance) {
          coarse.hu(li, lj) = h * wet_u / wet_area;
          coarse.hv(li, lj) = h * wet_v / wet_area;
        } else {
          coarse.hu(li, lj) = 0.0;
          coarse.hv(li, lj) = 0.0;
        }
      } else {
        coarse.h(li, lj) = mass / area_c;
        coarse.hu(li, lj) = 0.0;
        coarse.hv(li, lj) = 0.0;
      }
    }
  }
}

}  // namespace surge
