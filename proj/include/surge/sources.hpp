#pragma once

#include <limits>
#include <vector>

#include "surge/geometry.hpp"
#include "surge/patch.hpp"
#include "surge/storm.hpp"

namespace surge {

/// One contour rule: applies when b > sea_level + threshold. A threshold of
/// -infinity is the catch-all.
struct ManningRule {
  double threshold = -std::numeric_limits<double>::infinity();
  double n = 0.022;
};

struct ManningRegion {
  double lon_min = 0.0, lon_max = 0.0, lat_min = 0.0, lat_max = 0.0;
  std::vector<ManningRule> rules;
  bool contains(double lon, double lat) const {
    return lon >= lon_min && lon <= lon_max && lat >= lat_min && lat <= lat_max;
  }
};

struct FrictionConfig {
  double h_break = 2.0;
  double theta_f = 10.0;
  double gamma_f = 4.0 / 3.0;
  // false: shallow-water enhancement [1 + (h_break/h)^theta]^(gamma/theta)
  bool clamped_bracket = true;
  std::vector<ManningRule> default_rules{{0.0, 0.030}, {}};
  std::vector<ManningRegion> regions;

  void validate() const;
};

/// Rules of the shelf region used in the Gulf example (contours at 5 and 200 m).
std::vector<ManningRule> shelf_manning_rules(double shallow = -5.0, double deep = -200.0);

struct SourceToggles {
  bool friction = true;
  bool coriolis = true;
  bool wind = true;
  bool pressure = true;
};

/// Garratt drag coefficient.
inline double wind_drag(double wind_speed) { return std::min(2.0e-3, (0.75 + 0.067 * std::abs(wind_speed)) * 1e-3); }

/// Hybrid Chezy-Manning friction rate D (1/s) for depth h and momentum magnitude.
double friction_coefficient(double h, double n, const FrictionConfig& cfg, double momentum_magnitude,
                            double g = 9.81);

double manning_value(double b, double lon, double lat, const FrictionConfig& cfg, double sea_level);
/// Fills patch.manning over the whole frame from its bathymetry.
void manning_field(Patch& patch, const FrictionConfig& cfg, double sea_level);

void apply_friction(Patch& patch, double dt, const FrictionConfig& cfg, const PhysConfig& phys);
/// Truncated-series rotation of (hu, hv) with x = f dt.
void apply_coriolis(Patch& patch, double dt, const PhysConfig& phys);
void apply_wind(Patch& patch, double dt, const StormFields& fields, const PhysConfig& phys);
void apply_pressure(Patch& patch, double dt, const StormFields& fields, const PhysConfig& phys);

/// Rotation coefficients (c, s) of the truncated matrix exponential.
inline std::pair<double, double> coriolis_coefficients(double x) {
  const double x2 = x * x;
  return {1.0 - 0.5 * x2 + x2 * x2 / 24.0, x - x * x2 / 6.0};
}

}  // namespace surge
