#include "surge/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "surge/riemann.hpp"

namespace surge {

namespace {

struct Workspace {
  std::vector<double> h, hn, ht, b, length, area, left, right;
  void resize(int n) {
    h.resize(n + 4);
    hn.resize(n + 4);
    ht.resize(n + 4);
    b.resize(n + 4);
    length.resize(n + 3);
    area.resize(n + 4);
    left.resize(3 * static_cast<size_t>(n + 1));
    right.resize(3 * static_cast<size_t>(n + 1));
  }
};

// waves stored in the line's normal frame
struct Face {
  std::array<Vec3, 3> z{};
  std::array<double, 3> s{};
  Vec3 amdq{}, apdq{};
};

}  // namespace

SweepStats sweep_line(int n, double* h, double* hn, double* ht, const double* b, const double* length,
                      const double* area, int normal, const SweepParams& p, double* left, double* right) {
  SweepStats stats;
  // faces f = -1..n+1 stored at index f + 1
  std::vector<Face> faces(n + 3);
  for (int f = -1; f <= n + 1; ++f) {
    const int l = f - 1 + 2, r = f + 2;
    // solve in the x frame: the line's normal momentum sits in the hu slot
    const StateVector ql{h[l], hn[l], ht[l]}, qr{h[r], hn[r], ht[r]};
    const RiemannSolution sol = solve_augmented(ql, qr, b[l], b[r], 0, p.g, p.dry_tolerance);
    Face& fc = faces[f + 1];
    if (!sol.active) continue;
    fc.z = sol.fwaves;
    fc.s = sol.speeds;
    fc.amdq = sol.amdq;
    fc.apdq = sol.apdq;
  }

  std::vector<Vec3> ftilde(n + 1, Vec3{});
  for (int f = 0; f <= n; ++f) {
    const Face& fc = faces[f + 1];
    const double nu_face = p.dt * length[f + 1] / (0.5 * (area[f + 1] + area[f + 2]));
    for (int w = 0; w < 3; ++w) {
      const double speed = std::abs(fc.s[w]);
      stats.max_speed = std::max(stats.max_speed, speed);
      stats.max_courant = std::max(stats.max_courant, nu_face * speed);
    }
    if (!p.second_order) continue;
    Vec3& ft = ftilde[f];
    for (int w = 0; w < 3; ++w) {
      const double s = fc.s[w];
      if (s == 0.0) continue;
      const Face& up = faces[s > 0.0 ? f : f + 2];
      const double phi = mc_limiter(wave_ratio(up.z[w], fc.z[w]));
      if (phi == 0.0) continue;
      const double c = 0.5 * (s > 0.0 ? 1.0 : -1.0) * (1.0 - nu_face * std::abs(s)) * phi;
      for (int m = 0; m < 3; ++m) ft[m] += c * fc.z[w][m];
    }
  }

  // face contributions, then cell updates
  std::vector<double> wl(3 * static_cast<size_t>(n + 1)), wr(3 * static_cast<size_t>(n + 1));
  for (int f = 0; f <= n; ++f) {
    const Face& fc = faces[f + 1];
    const double dtl = p.dt * length[f + 1];
    for (int m = 0; m < 3; ++m) {
      wl[3 * f + m] = dtl * (fc.amdq[m] + ftilde[f][m]);
      wr[3 * f + m] = dtl * (fc.apdq[m] - ftilde[f][m]);
    }
    wl[3 * f] += dtl * hn[f - 1 + 2];
    wr[3 * f] -= dtl * hn[f + 2];
  }
  for (int k = 0; k < n; ++k) {
    const double inv_area = 1.0 / area[k + 2];
    h[k + 2] -= (wl[3 * (k + 1)] + wr[3 * k]) * inv_area;
    hn[k + 2] -= (wl[3 * (k + 1) + 1] + wr[3 * k + 1]) * inv_area;
    ht[k + 2] -= (wl[3 * (k + 1) + 2] + wr[3 * k + 2]) * inv_area;
    stats.min_depth = std::min(stats.min_depth, h[k + 2]);
  }
  if (left) std::copy(wl.begin(), wl.end(), left);
  if (right) std::copy(wr.begin(), wr.end(), right);
  (void)normal;
  return stats;
}

namespace {

void merge(SweepStats& into, const SweepStats& s) {
  into.max_courant = std::max(into.max_courant, s.max_courant);
  into.max_speed = std::max(into.max_speed, s.max_speed);
  into.min_depth = std::min(into.min_depth, s.min_depth);
}

}  // namespace

SweepStats sweep_x(Patch& patch, const SweepParams& params, int j_lo, int j_hi, bool record, SweepMode mode) {
  const int nx = patch.nx(), ny = patch.ny();
  const int gw = kGhostWidth;
  const double lx = patch.geometry().x_face_length();
  SweepStats total;
  FaceFluxes& ff = patch.fluxes;

  auto do_row = [&](int j, Workspace& ws) {
    ws.resize(nx);
    const double a = patch.cell_area(j);
    for (int k = 0; k < nx + 4; ++k) {
      const int i = k - gw;
      ws.h[k] = patch.h(i, j);
      ws.hn[k] = patch.hu(i, j);
      ws.ht[k] = patch.hv(i, j);
      ws.b[k] = patch.b(i, j);
      ws.area[k] = a;
    }
    std::fill(ws.length.begin(), ws.length.end(), lx);
    const bool rec = record && j >= 0 && j < ny;
    const SweepStats s = sweep_line(nx, ws.h.data(), ws.hn.data(), ws.ht.data(), ws.b.data(), ws.length.data(),
                                    ws.area.data(), 0, params, rec ? ws.left.data() : nullptr,
                                    rec ? ws.right.data() : nullptr);
    for (int i = 0; i < nx; ++i) {
      patch.h(i, j) = ws.h[i + gw];
      patch.hu(i, j) = ws.hn[i + gw];
      patch.hv(i, j) = ws.ht[i + gw];
    }
    if (rec) {
      for (int f = 0; f <= nx; ++f) {
        const size_t o = ff.xf(f, j);
        for (int m = 0; m < 3; ++m) {
          ff.x_left[o + m] += ws.left[3 * f + m];
          ff.x_right[o + m] += ws.right[3 * f + m];
        }
      }
      for (int m = 0; m < 3; ++m) {
        ff.west[3 * j + m] += ws.left[m];
        ff.east[3 * j + m] += ws.right[3 * nx + m];
      }
    }
    return s;
  };

  if (mode == SweepMode::Parallel) {
    double mc = 0.0, ms = 0.0, md = 0.0;
#pragma omp parallel
    {
      Workspace ws;
#pragma omp for schedule(static) reduction(max : mc, ms) reduction(min : md)
      for (int j = j_lo; j < j_hi; ++j) {
        const SweepStats s = do_row(j, ws);
        mc = std::max(mc, s.max_courant);
        ms = std::max(ms, s.max_speed);
        md = std::min(md, s.min_depth);
      }
    }
    total.max_courant = mc;
    total.max_speed = ms;
    total.min_depth = md;
  } else {
    Workspace ws;
    for (int j = j_lo; j < j_hi; ++j) merge(total, do_row(j, ws));
  }
  return total;
}

SweepStats sweep_y(Patch& patch, const SweepParams& params, int i_lo, int i_hi, bool record, SweepMode mode) {
  const int nx = patch.nx(), ny = patch.ny();
  const int gw = kGhostWidth;
  const LevelGeometry& geo = patch.geometry();
  std::vector<double> length(ny + 3), area(ny + 4);
  for (int f = -1; f <= ny + 1; ++f) length[f + 1] = geo.y_face_length(patch.gj(f));
  for (int k = -gw; k < ny + gw; ++k) area[k + gw] = patch.cell_area(k);
  SweepStats total;
  FaceFluxes& ff = patch.fluxes;

  auto do_col = [&](int i, Workspace& ws) {
    ws.resize(ny);
    for (int k = 0; k < ny + 4; ++k) {
      const int j = k - gw;
      ws.h[k] = patch.h(i, j);
      ws.hn[k] = patch.hv(i, j);
      ws.ht[k] = patch.hu(i, j);
      ws.b[k] = patch.b(i, j);
    }
    const bool rec = record && i >= 0 && i < nx;
    const SweepStats s = sweep_line(ny, ws.h.data(), ws.hn.data(), ws.ht.data(), ws.b.data(), length.data(),
                                    area.data(), 1, params, rec ? ws.left.data() : nullptr,
                                    rec ? ws.right.data() : nullptr);
    for (int j = 0; j < ny; ++j) {
      patch.h(i, j) = ws.h[j + gw];
      patch.hv(i, j) = ws.hn[j + gw];
      patch.hu(i, j) = ws.ht[j + gw];
    }
    if (rec) {
      // back to global component order (h, hu, hv)
      for (int f = 0; f <= ny; ++f) {
        const size_t o = ff.yf(i, f);
        ff.y_left[o] += ws.left[3 * f];
        ff.y_left[o + 1] += ws.left[3 * f + 2];
        ff.y_left[o + 2] += ws.left[3 * f + 1];
        ff.y_right[o] += ws.right[3 * f];
        ff.y_right[o + 1] += ws.right[3 * f + 2];
        ff.y_right[o + 2] += ws.right[3 * f + 1];
      }
      ff.south[3 * i] += ws.left[0];
      ff.south[3 * i + 1] += ws.left[2];
      ff.south[3 * i + 2] += ws.left[1];
      const size_t t = 3 * static_cast<size_t>(ny);
      ff.north[3 * i] += ws.right[t];
      ff.north[3 * i + 1] += ws.right[t + 2];
      ff.north[3 * i + 2] += ws.right[t + 1];
    }
    return s;
  };

  if (mode == SweepMode::Parallel) {
    double mc = 0.0, ms = 0.0, md = 0.0;
#pragma omp parallel
    {
      Workspace ws;
#pragma omp for schedule(static) reduction(max : mc, ms) reduction(min : md)
      for (int i = i_lo; i < i_hi; ++i) {
        const SweepStats s = do_col(i, ws);
        mc = std::max(mc, s.max_courant);
        ms = std::max(ms, s.max_speed);
        md = std::min(md, s.min_depth);
      }
    }
    total.max_courant = mc;
    total.max_speed = ms;
    total.min_depth = md;
  } else {
    Workspace ws;
    for (int i = i_lo; i < i_hi; ++i) merge(total, do_col(i, ws));
  }
  return total;
}

}  // namespace surge
