#include <algorithm>
#include <cmath>

#include "surge/amr.hpp"

namespace surge {

bool physics_flag(int level, const FlagInputs& in, const RefinementCriteria& c) {
  if (in.eta_deviation > c.wave_tolerance) return true;
  const size_t ls = static_cast<size_t>(level);
  const size_t lm = static_cast<size_t>(level - 1);
  if (ls < c.speed_tolerance.size() && in.speed > c.speed_tolerance[ls]) return true;
  if (lm < c.eye_radius.size() && in.eye_distance < c.eye_radius[lm]) return true;
  if (lm < c.wind_tolerance.size() && in.wind_speed > c.wind_tolerance[lm]) return true;
  return false;
}

int region_override(double lon, double lat, double t, int level, const std::vector<RegionConstraint>& regions) {
  int min_level = 0, max_level = 0;
  bool any = false;
  for (const auto& r : regions) {
    if (!r.active(lon, lat, t)) continue;
    any = true;
    min_level = std::max(min_level, r.min_level);
    max_level = std::max(max_level, r.max_level);
  }
  if (!any) return 0;
  if (level < min_level) return 1;
  if (level >= max_level) return -1;
  return 0;
}

std::vector<uint8_t> flag_cells(const Patch& patch, const FlagContext& ctx) {
  const RefinementCriteria& c = *ctx.criteria;
  const int level = patch.level();
  const int nx = patch.nx(), ny = patch.ny();
  std::vector<uint8_t> mask(static_cast<size_t>(nx) * ny, 0);
  const size_t lm = static_cast<size_t>(level - 1);
  const bool storm_terms =
      ctx.storm && ctx.storm_params && (lm < c.eye_radius.size() || lm < c.wind_tolerance.size());
  for (int j = 0; j < ny; ++j) {
    const double lat = patch.lat(j);
    for (int i = 0; i < nx; ++i) {
      const double lon = patch.lon(i);
      FlagInputs in;
      const double h = patch.h(i, j);
      if (h >= ctx.dry_tolerance) {
        in.eta_deviation = std::abs(h + patch.b(i, j) - ctx.sea_level);
        in.speed = std::hypot(patch.hu(i, j), patch.hv(i, j)) / h;
      }
      if (storm_terms) {
        const StormPoint p = evaluate_point(lon, lat, *ctx.storm, *ctx.storm_params);
        in.eye_distance = eye_distance(lon, lat, *ctx.storm, ctx.storm_params->earth_radius);
        in.wind_speed = std::hypot(p.wind_x, p.wind_y);
      }
      bool flag = physics_flag(level, in, c);
      if (flag && c.max_refine_depth && ctx.sea_level - patch.b(i, j) > *c.max_refine_depth) flag = false;
      const int reg = region_override(lon, lat, ctx.t, level, c.regions);
      if (reg > 0) flag = true;
      if (reg < 0) flag = false;
      mask[static_cast<size_t>(j) * nx + i] = flag ? 1 : 0;
    }
  }
  return mask;
}

namespace {

struct Clusterer {
  const FlagGrid& g;
  double min_fill;
  std::vector<IndexBox> out;

  bool flag(int i, int j) const { return g.flags[g.index(i, j)] != 0; }

  void run(IndexBox b) {
    // shrink to the flags
    int i0 = b.i1, i1 = b.i0, j0 = b.j1, j1 = b.j0;
    long long count = 0;
    bool all_allowed = true;
    for (int j = b.j0; j < b.j1; ++j)
      for (int i = b.i0; i < b.i1; ++i)
        if (flag(i, j)) {
          ++count;
          i0 = std::min(i0, i);
          i1 = std::max(i1, i + 1);
          j0 = std::min(j0, j);
          j1 = std::max(j1, j + 1);
        }
    if (count == 0) return;
    b = {i0, j0, i1, j1};
    for (int j = b.j0; j < b.j1 && all_allowed; ++j)
      for (int i = b.i0; i < b.i1; ++i)
        if (!g.allowed(i, j)) {
          all_allowed = false;
          break;
        }
    const double fill = static_cast<double>(count) / static_cast<double>(b.size());
    if ((fill >= min_fill && all_allowed) || (b.nx() == 1 && b.ny() == 1)) {
      out.push_back(b);
      return;
    }

    std::vector<long long> sx(b.nx(), 0), sy(b.ny(), 0);
    for (int j = b.j0; j < b.j1; ++j)
      for (int i = b.i0; i < b.i1; ++i)
        if (flag(i, j)) {
          ++sx[i - b.i0];
          ++sy[j - b.j0];
        }

    // 1) holes, nearest the middle
    int best_axis = -1, best_cut = 0;
    double best_score = 1e300;
    auto consider_holes = [&](const std::vector<long long>& s, int axis) {
      const int n = static_cast<int>(s.size());
      for (int k = 1; k < n - 1; ++k) {
        if (s[k] != 0) continue;
        const double score = std::abs(k - 0.5 * (n - 1)) / n;
        if (score < best_score) {
          best_score = score;
          best_axis = axis;
          best_cut = k;
        }
      }
    };
    consider_holes(sx, 0);
    consider_holes(sy, 1);

    // 2) strongest inflection of the signature
    if (best_axis < 0) {
      long long best_jump = 0;
      auto consider_inflections = [&](const std::vector<long long>& s, int axis) {
        const int n = static_cast<int>(s.size());
        if (n < 4) return;
        std::vector<long long> lap(n, 0);
        for (int k = 1; k < n - 1; ++k) lap[k] = s[k - 1] - 2 * s[k] + s[k + 1];
        for (int k = 1; k < n - 2; ++k) {
          if ((lap[k] < 0 && lap[k + 1] > 0) || (lap[k] > 0 && lap[k + 1] < 0)) {
            const long long jump = std::llabs(lap[k + 1] - lap[k]);
            if (jump > best_jump || (jump == best_jump && best_axis >= 0 && axis == best_axis &&
                                     std::abs(k + 1 - n / 2) < std::abs(best_cut - n / 2))) {
              best_jump = jump;
              best_axis = axis;
              best_cut = k + 1;
            }
          }
        }
      };
      consider_inflections(sx, 0);
      consider_inflections(sy, 1);
    }

    // 3) bisect the longer side
    if (best_axis < 0) {
      if (b.nx() >= b.ny()) {
        best_axis = 0;
        best_cut = b.nx() / 2;
      } else {
        best_axis = 1;
        best_cut = b.ny() / 2;
      }
    }
    if (best_axis == 0) {
      run({b.i0, b.j0, b.i0 + best_cut, b.j1});
      run({b.i0 + best_cut, b.j0, b.i1, b.j1});
    } else {
      run({b.i0, b.j0, b.i1, b.j0 + best_cut});
      run({b.i0, b.j0 + best_cut, b.i1, b.j1});
    }
  }
};

}  // namespace

std::vector<IndexBox> cluster_flags(const FlagGrid& grid, double min_fill, int buffer) {
  const IndexBox& box = grid.box;
  if (box.empty()) return {};
  const int nx = box.nx(), ny = box.ny();
  // separable square dilation
  std::vector<uint8_t> tmp(grid.flags.size(), 0);
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      if (!grid.flags[static_cast<size_t>(j) * nx + i]) continue;
      for (int k = std::max(0, i - buffer); k <= std::min(nx - 1, i + buffer); ++k) tmp[static_cast<size_t>(j) * nx + k] = 1;
    }
  }
  FlagGrid dil(box);
  dil.nestable = grid.nestable;
  for (int i = 0; i < nx; ++i) {
    for (int j = 0; j < ny; ++j) {
      if (!tmp[static_cast<size_t>(j) * nx + i]) continue;
      for (int k = std::max(0, j - buffer); k <= std::min(ny - 1, j + buffer); ++k) dil.flags[static_cast<size_t>(k) * nx + i] = 1;
    }
  }
  if (!dil.nestable.empty())
    for (size_t k = 0; k < dil.flags.size(); ++k) dil.flags[k] = dil.flags[k] && dil.nestable[k];

  Clusterer c{dil, min_fill, {}};
  c.run(box);
  std::sort(c.out.begin(), c.out.end(), [](const IndexBox& a, const IndexBox& b) {
    return a.j0 != b.j0 ? a.j0 < b.j0 : a.i0 < b.i0;
  });
  return c.out;
}

}  // namespace surge
