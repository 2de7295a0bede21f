#include "surge/storm.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "surge/geometry.hpp"
#include "surge/patch.hpp"

namespace surge {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

const char* kTrackHeader = "t_seconds,eye_lon,eye_lat,max_wind_mps,rmw_m,central_pressure_pa,radius_outer_m";

}  // namespace

std::vector<StormSample> parse_storm_track(const std::string& text, const std::string& name) {
  std::istringstream in(text);
  std::string line;
  std::vector<StormSample> track;
  bool header_seen = false;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    std::string compact;
    for (char c : line)
      if (c != ' ' && c != '\t') compact += c;
    if (!header_seen) {
      if (compact != kTrackHeader)
        throw InputError("storm track '" + name + "': expected header " + kTrackHeader);
      header_seen = true;
      continue;
    }
    std::istringstream row(compact);
    std::string cell;
    std::vector<double> v;
    while (std::getline(row, cell, ',')) {
      try {
        size_t used = 0;
        v.push_back(std::stod(cell, &used));
        if (used != cell.size()) throw std::invalid_argument(cell);
      } catch (const std::exception&) {
        throw InputError("storm track '" + name + "' line " + std::to_string(lineno) + ": bad number '" + cell + "'");
      }
    }
    if (v.size() != 7)
      throw InputError("storm track '" + name + "' line " + std::to_string(lineno) + ": expected 7 columns");
    track.push_back({v[0], v[1], v[2], v[3], v[4], v[5], v[6]});
  }
  if (!header_seen) throw InputError("storm track '" + name + "': empty file");
  return track;
}

std::vector<StormSample> read_storm_track(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw InputError("cannot open storm track " + path.string());
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_storm_track(ss.str(), path.string());
}

void validate_track(const std::vector<StormSample>& track, double ambient_pressure, const std::string& name) {
  auto fail = [&](size_t k, const std::string& what) {
    throw InputError("storm track '" + name + "' sample " + std::to_string(k) + ": " + what);
  };
  if (track.size() < 2) throw InputError("storm track '" + name + "': need at least 2 samples");
  for (size_t k = 0; k < track.size(); ++k) {
    const auto& s = track[k];
    if (k > 0 && !(s.t > track[k - 1].t)) fail(k, "times must be strictly increasing");
    if (!(s.rmw > 0)) fail(k, "rmw must be > 0");
    if (!(s.max_wind > 0)) fail(k, "max wind must be > 0");
    if (!(s.central_pressure > 0 && s.central_pressure <= ambient_pressure))
      fail(k, "central pressure must lie in (0, ambient]");
    if (!(s.radius_outer > s.rmw)) fail(k, "outer radius must exceed rmw");
  }
}

double holland_B(double max_wind, double translation_speed, double central_pressure, double ambient_pressure,
                 double rho_air) {
  const double dp = ambient_pressure - central_pressure;
  if (!(dp > 0.0)) throw std::domain_error("holland_B: ambient pressure must exceed central pressure");
  const double w = std::max(max_wind - translation_speed, 0.1 * max_wind);
  return rho_air * w * w * std::exp(1.0) / dp;
}

double holland_B(const StormState& s, double rho_air) {
  return holland_B(s.sample.max_wind, std::hypot(s.trans_x, s.trans_y), s.sample.central_pressure,
                   s.ambient_pressure, rho_air);
}

StormState interpolate_track(const std::vector<StormSample>& track, double t, const StormParams& params) {
  if (track.size() < 2) throw InputError("storm track needs at least 2 samples");
  if (t < track.front().t) {
    std::ostringstream os;
    os << "storm time " << t << " precedes the first track sample (" << track.front().t << ")";
    throw InputError(os.str());
  }
  size_t k = 0;
  while (k + 2 < track.size() && t >= track[k + 1].t) ++k;
  const StormSample& a = track[k];
  const StormSample& b = track[k + 1];
  const double R = params.earth_radius;
  const double span = b.t - a.t;

  StormState st;
  st.ambient_pressure = params.ambient_pressure;
  st.ramp_width = params.ramp_width;
  if (t <= b.t) {
    const double w = (t - a.t) / span;
    auto lerp = [w](double x, double y) { return x + w * (y - x); };
    st.sample = {t,
                 lerp(a.eye_lon, b.eye_lon),
                 lerp(a.eye_lat, b.eye_lat),
                 lerp(a.max_wind, b.max_wind),
                 lerp(a.rmw, b.rmw),
                 lerp(a.central_pressure, b.central_pressure),
                 lerp(a.radius_outer, b.radius_outer)};
    if (t == b.t) st.sample = b;
    if (t == a.t) st.sample = a;
    const auto m = cell_size_meters(st.sample.eye_lat, b.eye_lon - a.eye_lon, b.eye_lat - a.eye_lat, R);
    st.trans_x = m.dx_m / span;
    st.trans_y = m.dy_m / span;
  } else {
    // past the end: hold parameters, keep advecting the eye
    const auto m = cell_size_meters(b.eye_lat, b.eye_lon - a.eye_lon, b.eye_lat - a.eye_lat, R);
    st.trans_x = m.dx_m / span;
    st.trans_y = m.dy_m / span;
    st.sample = b;
    st.sample.t = t;
    const double dt = t - b.t;
    st.sample.eye_lat = b.eye_lat + st.trans_y * dt / (R * kDegToRad);
    st.sample.eye_lon = b.eye_lon + st.trans_x * dt / (R * kDegToRad * std::cos(st.sample.eye_lat * kDegToRad));
  }
  st.holland_b = holland_B(st, params.rho_air);
  return st;
}

double coriolis_parameter(double lat_deg, double omega) { return 2.0 * omega * std::sin(lat_deg * kDegToRad); }

double wind_profile(double r, const StormState& s, double f) {
  if (r <= 0.0) return 0.0;
  const double fa = std::abs(f);
  const double x = std::pow(s.sample.rmw / r, s.holland_b);
  const double w = s.sample.max_wind;
  return std::sqrt(x * w * w * std::exp(1.0 - x) + 0.25 * r * r * fa * fa) - 0.5 * r * fa;
}

double pressure_profile(double r, const StormState& s) {
  const double pc = s.sample.central_pressure;
  if (r <= 0.0) return pc;
  return pc + (s.ambient_pressure - pc) * std::exp(-std::pow(s.sample.rmw / r, s.holland_b));
}

double ramp(double r, double radius_outer, double ramp_width) {
  return 0.5 * (1.0 - std::tanh((r - radius_outer) / ramp_width));
}

double eye_distance(double lon, double lat, const StormState& s, double earth_radius) {
  const double mean_lat = 0.5 * (lat + s.sample.eye_lat);
  const auto m = cell_size_meters(mean_lat, lon - s.sample.eye_lon, lat - s.sample.eye_lat, earth_radius);
  return std::hypot(m.dx_m, m.dy_m);
}

StormPoint evaluate_point(double lon, double lat, const StormState& s, const StormParams& params) {
  const double mean_lat = 0.5 * (lat + s.sample.eye_lat);
  const auto m = cell_size_meters(mean_lat, lon - s.sample.eye_lon, lat - s.sample.eye_lat, params.earth_radius);
  const double r = std::hypot(m.dx_m, m.dy_m);
  const double f = coriolis_parameter(s.sample.eye_lat, params.omega);
  const double w = wind_profile(r, s, f);
  double wx = 0.0, wy = 0.0;
  if (r > 0.0) {
    const double sin_t = m.dy_m / r, cos_t = m.dx_m / r;
    const double sense = s.sample.eye_lat < 0.0 ? -1.0 : 1.0;
    wx = -sense * w * sin_t;
    wy = sense * w * cos_t;
  }
  wx += s.trans_x;
  wy += s.trans_y;
  const double rr = ramp(r, s.sample.radius_outer, s.ramp_width);
  const double p = pressure_profile(r, s);
  return {wx * rr, wy * rr, s.ambient_pressure + (p - s.ambient_pressure) * rr};
}

StormFields evaluate_fields(const Patch& patch, const StormState& state, const StormParams& params) {
  const int gw = kGhostWidth;
  StormFields out{Array2D(patch.nx(), patch.ny(), gw), Array2D(patch.nx(), patch.ny(), gw),
                  Array2D(patch.nx(), patch.ny(), gw)};
  for (int j = -gw; j < patch.ny() + gw; ++j) {
    const double lat = patch.lat(j);
    for (int i = -gw; i < patch.nx() + gw; ++i) {
      const StormPoint p = evaluate_point(patch.lon(i), lat, state, params);
      out.wind_x(i, j) = p.wind_x;
      out.wind_y(i, j) = p.wind_y;
      out.pressure(i, j) = p.pressure;
    }
  }
  return out;
}

StormModel::StormModel(std::vector<StormSample> track, StormParams params)
    : track_(std::move(track)), params_(params) {
  if (!track_.empty()) validate_track(track_, params_.ambient_pressure, "track");
}

StormState StormModel::at(double t) const {
  StormState s = interpolate_track(track_, t, params_);
  if (!warned_ && (s.holland_b < 1.0 || s.holland_b > 2.5)) {
    std::ostringstream os;
    os << "Holland B = " << s.holland_b << " outside [1, 2.5] at t = " << t;
    warn(os.str());
    warned_ = true;
  }
  return s;
}

}  // namespace surge
