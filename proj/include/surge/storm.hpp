#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "surge/array2d.hpp"
#include "surge/common.hpp"

namespace surge {

class Patch;

struct StormSample {
  double t = 0.0;          // s since the reference epoch
  double eye_lon = 0.0;    // degrees
  double eye_lat = 0.0;    // degrees
  double max_wind = 0.0;   // m/s
  double rmw = 0.0;        // radius of maximum winds, m
  double central_pressure = 0.0;  // Pa
  double radius_outer = 0.0;      // radius of the last closed isobar, m
};

/// Background parameters of the parametric storm model.
struct StormParams {
  double ambient_pressure = 101300.0;  // P_n, Pa
  double ramp_width = 100.0e3;         // R_w, m
  double rho_air = 1.15;
  double omega = 2.0 * kPi / 8.61642e4;
  double earth_radius = 6.367e6;
};

struct StormState {
  StormSample sample;
  double trans_x = 0.0;  // translation velocity, m/s (east)
  double trans_y = 0.0;  // m/s (north)
  double holland_b = 1.0;
  double ambient_pressure = 101300.0;
  double ramp_width = 100.0e3;
};

/// Parses the track CSV (header t_seconds,eye_lon,eye_lat,max_wind_mps,rmw_m,
/// central_pressure_pa,radius_outer_m; `#` comments). Rows must be sorted.
std::vector<StormSample> parse_storm_track(const std::string& text, const std::string& name = "<memory>");
std::vector<StormSample> read_storm_track(const std::filesystem::path& path);
void validate_track(const std::vector<StormSample>& track, double ambient_pressure, const std::string& name);

/// Linear interpolation of the track; held constant (with continued eye
/// advection) after the last sample. Fills B from the interpolated values.
StormState interpolate_track(const std::vector<StormSample>& track, double t, const StormParams& params);

/// Holland B with the translation-corrected W'_max = max(W_max - |v_t|, 0.1 W_max).
double holland_B(double max_wind, double translation_speed, double central_pressure, double ambient_pressure,
                 double rho_air);
double holland_B(const StormState& state, double rho_air);

double coriolis_parameter(double lat_deg, double omega);
/// Gradient wind profile; |f| is used so the profile is hemisphere-symmetric.
double wind_profile(double r, const StormState& state, double f);
double pressure_profile(double r, const StormState& state);
double ramp(double r, double radius_outer, double ramp_width);

/// Wind vector and pressure at one point, including rotation, translation and ramp.
struct StormPoint {
  double wind_x;
  double wind_y;
  double pressure;
};
StormPoint evaluate_point(double lon, double lat, const StormState& state, const StormParams& params);
/// Metric distance (m) from the eye, using the mean latitude for the zonal scale.
double eye_distance(double lon, double lat, const StormState& state, double earth_radius);

struct StormFields {
  Array2D wind_x, wind_y, pressure;
};
/// Evaluates the storm at every cell centre of the patch frame (ghosts included).
StormFields evaluate_fields(const Patch& patch, const StormState& state, const StormParams& params);

/// Track plus parameters; warns once when B leaves [1, 2.5].
class StormModel {
 public:
  StormModel() = default;
  StormModel(std::vector<StormSample> track, StormParams params);
  bool enabled() const { return !track_.empty(); }
  const std::vector<StormSample>& track() const { return track_; }
  const StormParams& params() const { return params_; }
  StormState at(double t) const;

 private:
  std::vector<StormSample> track_;
  StormParams params_;
  mutable bool warned_ = false;
};

}  // namespace surge
