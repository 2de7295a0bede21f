#include "surge/riemann.hpp"

#include <cmath>
#include <stdexcept>

namespace surge {

namespace {

constexpr double kCriticalTol = 1e-6;
constexpr double kConditionGuard = 1e12;

Vec3 to_global(const Vec3& v, int normal) { return normal == 0 ? v : Vec3{v[0], v[2], v[1]}; }

}  // namespace

std::optional<SpeedBounds> einfeldt_speeds(double h_l, double u_l, double h_r, double u_r, double g,
                                           double dry_tolerance) {
  const bool dry_l = h_l < dry_tolerance;
  const bool dry_r = h_r < dry_tolerance;
  if (dry_l && dry_r) return std::nullopt;
  if (dry_r) {
    const double c = std::sqrt(g * h_l);
    return SpeedBounds{u_l - c, u_l + 2.0 * c};
  }
  if (dry_l) {
    const double c = std::sqrt(g * h_r);
    return SpeedBounds{u_r - 2.0 * c, u_r + c};
  }
  const double cl = std::sqrt(g * h_l);
  const double cr = std::sqrt(g * h_r);
  const double sl = std::sqrt(h_l), sr = std::sqrt(h_r);
  const double u_hat = (sl * u_l + sr * u_r) / (sl + sr);
  const double c_hat = std::sqrt(0.5 * g * (h_l + h_r));
  return SpeedBounds{std::min({u_l - cl, u_r - cr, u_hat - c_hat}), std::max({u_l + cl, u_r + cr, u_hat + c_hat})};
}

double reflected_middle_depth(double h, double u, double g) {
  if (h <= 0.0) return 0.0;
  if (u <= 0.0) {
    const double c = std::sqrt(g * h) + 0.5 * u;
    return c > 0.0 ? c * c / g : 0.0;
  }
  // two-shock: (x - h) sqrt(g (x + h) / (2 x h)) = u
  auto f = [&](double x) { return (x - h) * std::sqrt(0.5 * g * (x + h) / (x * h)) - u; };
  double lo = h, hi = 2.0 * h;
  while (f(hi) < 0.0) {
    lo = hi;
    hi *= 2.0;
  }
  double x = 0.5 * (lo + hi);
  for (int it = 0; it < 100; ++it) {
    const double fx = f(x);
    if (fx > 0.0) hi = x; else lo = x;
    const double dx = 1e-7 * x;
    const double d = (f(x + dx) - fx) / dx;
    double next = d > 0.0 ? x - fx / d : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - x) <= 1e-14 * x) return next;
    x = next;
  }
  return x;
}

RiemannSolution solve_augmented(const StateVector& q_l, const StateVector& q_r, double b_l, double b_r,
                                int normal, double g, double dry_tolerance) {
  if (q_l.h < 0.0 || q_r.h < 0.0) throw std::invalid_argument("riemann: negative depth");
  RiemannSolution sol;
  double hl = q_l.h, hr = q_r.h;
  double hnl = normal == 0 ? q_l.hu : q_l.hv;
  double htl = normal == 0 ? q_l.hv : q_l.hu;
  double hnr = normal == 0 ? q_r.hu : q_r.hv;
  double htr = normal == 0 ? q_r.hv : q_r.hu;
  const bool dry_l = hl < dry_tolerance;
  const bool dry_r = hr < dry_tolerance;
  if (dry_l && dry_r) return sol;
  sol.active = true;

  double ul = 0.0, vl = 0.0, ur = 0.0, vr = 0.0;
  if (dry_l) hnl = htl = 0.0; else { ul = hnl / hl; vl = htl / hl; }
  if (dry_r) hnr = htr = 0.0; else { ur = hnr / hr; vr = htr / hr; }

  bool wall_l = false, wall_r = false;
  if (dry_r) {
    const double h_star = std::max(hl, reflected_middle_depth(hl, ul, g));
    if (h_star + b_l < b_r) {
      wall_r = true;
      hr = hl; hnr = -hnl; htr = htl; ur = -ul; vr = vl; b_r = b_l;
    } else if (hl + b_l < b_r) {
      b_r = hl + b_l;
    }
  } else if (dry_l) {
    const double h_star = std::max(hr, reflected_middle_depth(hr, -ur, g));
    if (h_star + b_r < b_l) {
      wall_l = true;
      hl = hr; hnl = -hnr; htl = htr; ul = -ur; vl = vr; b_l = b_r;
    } else if (hr + b_r < b_l) {
      b_l = hr + b_r;
    }
  }

  const auto bounds = *einfeldt_speeds(hl, ul, hr, ur, g, dry_tolerance);
  const double s1 = bounds.s_min, s3 = bounds.s_max;
  const double db = b_r - b_l;
  const double deta = (hr + b_r) - (hl + b_l);
  const double hbar = std::max(0.5 * (hl + hr), 0.0);
  const double ghbar = g * hbar;

  // steady-state wave
  const double sub = ghbar - 0.25 * (ul + ur) * (ul + ur);  // -(s1 s2) of the Roe-like average
  const double sub_tilde = ghbar - std::max(0.0, ul * ur);
  bool sonic = std::abs(sub) <= kCriticalTol || sub * sub_tilde <= kCriticalTol * kCriticalTol ||
               -sub * s1 * s3 <= kCriticalTol * kCriticalTol || std::min(std::abs(s1), std::abs(s3)) < kCriticalTol;
  if (!sonic) {
    const double cl = std::sqrt(g * hl), cr = std::sqrt(g * hr);
    if ((ul + cl) * (ur + cr) < 0.0 || (ul - cl) * (ur - cr) < 0.0) sonic = true;
  }
  double ssw_h = -db * (sonic ? 1.0 : ghbar / sub);
  const double den = s3 - s1;
  if (den > 0.0) {
    const double h_hll = std::max((hnl - hnr + s3 * hr - s1 * hl) / den, 0.0);
    if (s1 < -kCriticalTol && s3 > kCriticalTol) {
      ssw_h = std::min(ssw_h, h_hll * den / s3);
      ssw_h = std::max(ssw_h, h_hll * den / s1);
    } else if (s1 >= kCriticalTol) {
      ssw_h = std::min(ssw_h, h_hll * den / s1);
      ssw_h = std::max(ssw_h, -hl);
    } else if (s3 <= -kCriticalTol) {
      ssw_h = std::min(ssw_h, hr);
      ssw_h = std::max(ssw_h, h_hll * den / s3);
    }
  }
  const double base = -ghbar * db;
  double ssw_hu = base * (sonic ? 1.0 : sub_tilde / sub);
  const double lim_a = -(g * hl) * db, lim_b = -(g * hr) * db;
  ssw_hu = std::min(ssw_hu, std::max(lim_a, lim_b));
  ssw_hu = std::max(ssw_hu, std::min(lim_a, lim_b));
  sol.bathy_source = ssw_hu;

  // jumps with the steady-state wave removed; both vanish exactly at rest
  const double d0 = deta - (ssw_h + db);
  const double d1 = hnr - hnl;
  const double d2 = (hnr * ur - hnl * ul) + ghbar * deta + (base - ssw_hu);
  const double dt = hnr * vr - hnl * vl;

  std::array<Vec3, 3> z{};
  std::array<double, 3> s{s1, 0.5 * (s1 + s3), s3};
  const double scale = 1.0 + std::abs(s1) + std::abs(s3);
  if (!(den > 0.0) || scale * scale / den > kConditionGuard) {
    // degenerate speeds: single HLLE-type f-wave at the mean speed
    z[1] = {d1, d2, dt};
  } else {
    const double beta1 = (s3 * d0 - d1) / den;
    const double beta3 = (d1 - s1 * d0) / den;
    const double beta2 = d2 - s1 * s1 * beta1 - s3 * s3 * beta3;
    z[0] = {beta1 * s1, beta1 * s1 * s1, beta1 * s1 * vl};
    z[2] = {beta3 * s3, beta3 * s3 * s3, beta3 * s3 * vr};
    z[1] = {0.0, beta2, dt - z[0][2] - z[2][2]};
  }
  if (wall_r) {
    z[1] = z[2] = Vec3{};
    s[1] = s[2] = 0.0;
  }
  if (wall_l) {
    z[0] = z[1] = Vec3{};
    s[0] = s[1] = 0.0;
  }

  for (int p = 0; p < 3; ++p) {
    const Vec3 zg = to_global(z[p], normal);
    sol.fwaves[p] = zg;
    sol.speeds[p] = s[p];
    for (int m = 0; m < 3; ++m) {
      if (s[p] < 0.0) sol.amdq[m] += zg[m];
      else if (s[p] > 0.0) sol.apdq[m] += zg[m];
      else {
        sol.amdq[m] += 0.5 * zg[m];
        sol.apdq[m] += 0.5 * zg[m];
      }
    }
  }
  return sol;
}

Vec3 second_order_flux(const std::array<double, 3>& speeds, const std::array<Vec3, 3>& limited, double dt_over_dx) {
  Vec3 f{};
  for (int p = 0; p < 3; ++p) {
    const double s = speeds[p];
    if (s == 0.0) continue;
    const double nu = dt_over_dx * std::abs(s);
    if (nu > 1.0 + 1e-12) throw CflViolation(nu, 0);
    const double c = 0.5 * (s > 0.0 ? 1.0 : -1.0) * (1.0 - nu);
    for (int m = 0; m < 3; ++m) f[m] += c * limited[p][m];
  }
  return f;
}

}  // namespace surge
