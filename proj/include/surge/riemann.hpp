#pragma once

#include <algorithm>
#include <array>
#include <optional>

#include "surge/common.hpp"

namespace surge {

/// f-waves, speeds and fluctuations at one interface. Components are always in
/// global (h, hu, hv) order regardless of the sweep direction.
struct RiemannSolution {
  bool active = false;  // false for dry-dry interfaces
  std::array<Vec3, 3> fwaves{};
  std::array<double, 3> speeds{};
  Vec3 amdq{};
  Vec3 apdq{};
  /// Normal-momentum bathymetry source carried by the solution; the f-waves
  /// sum to f(q_r) - f(q_l) - (0, source, 0) in the normal frame.
  double bathy_source = 0.0;
};

struct SpeedBounds {
  double s_min;
  double s_max;
};

/// Einfeldt speed bounds in the normal direction. Returns nullopt when both
/// sides are dry (no Riemann problem).
std::optional<SpeedBounds> einfeldt_speeds(double h_l, double u_l, double h_r, double u_r, double g,
                                           double dry_tolerance);
inline std::optional<SpeedBounds> einfeldt_speeds(const StateVector& l, const StateVector& r, double g,
                                                  double dry_tolerance = 1e-3) {
  const double ul = l.h >= dry_tolerance ? l.hu / l.h : 0.0;
  const double ur = r.h >= dry_tolerance ? r.hu / r.h : 0.0;
  return einfeldt_speeds(l.h, ul, r.h, ur, g, dry_tolerance);
}

/// Depth of the middle state of the reflected problem (h, u) | (h, -u), used
/// to decide whether a wet cell can overtop a dry bank.
double reflected_middle_depth(double h, double u, double g);

/// Augmented f-wave solver with bathymetry source and wet/dry handling.
/// `normal` is 0 for x interfaces (hu normal) and 1 for y interfaces.
RiemannSolution solve_augmented(const StateVector& q_l, const StateVector& q_r, double b_l, double b_r,
                                int normal, double g, double dry_tolerance);

/// Monotonized-central limiter.
inline double mc_limiter(double theta) {
  return std::max(0.0, std::min({0.5 * (1.0 + theta), 2.0, 2.0 * theta}));
}

/// Limiter ratio of f-wave z against the upwind f-wave z_up.
inline double wave_ratio(const Vec3& z_up, const Vec3& z) {
  const double zz = z[0] * z[0] + z[1] * z[1] + z[2] * z[2];
  if (zz == 0.0) return 0.0;
  return (z_up[0] * z[0] + z_up[1] * z[1] + z_up[2] * z[2]) / zz;
}

/// Second-order correction flux 0.5 * sum sgn(s) (1 - nu |s|) z~ for limited
/// f-waves z~ (z = s * w), with nu = dt / dx (or dt * L / A on the sphere).
/// Throws CflViolation when nu |s| > 1.
Vec3 second_order_flux(const std::array<double, 3>& speeds, const std::array<Vec3, 3>& limited, double dt_over_dx);

}  // namespace surge
