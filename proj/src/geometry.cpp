#include "surge/geometry.hpp"

#include <iostream>
#include <sstream>

namespace surge {

namespace {
bool g_warnings_muted = false;
}

void warn(const std::string& message) {
  if (!g_warnings_muted) std::cerr << "warning: " << message << '\n';
}

void set_warnings_muted(bool muted) { g_warnings_muted = muted; }

void GeoDomain::validate() const {
  auto fail = [](const std::string& what) { throw ConfigError("domain: " + what); };
  if (!(lon_min < lon_max)) fail("lon_min must be < lon_max");
  if (!(lat_min < lat_max)) fail("lat_min must be < lat_max");
  if (n_cells_x < 1 || n_cells_y < 1) fail("cell counts must be >= 1");
  if (!(lat_min > -90.0 && lat_max < 90.0)) fail("latitudes must lie strictly inside (-90, 90)");
}

void PhysConfig::validate() const {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      std::ostringstream os;
      os << "physics." << name << " must be a positive finite number (got " << v << ")";
      throw ConfigError(os.str());
    }
  };
  positive(g, "g");
  positive(rho, "rho");
  positive(rho_air, "rho_air");
  positive(omega, "omega");
  positive(earth_radius, "earth_radius");
  positive(dry_tolerance, "dry_tolerance");
  if (!std::isfinite(sea_level)) throw ConfigError("physics.sea_level must be finite");
}

CellSizeMeters cell_size_meters(double lat, double dlon, double dlat, double earth_radius) {
  const double dy = earth_radius * dlat * kDegToRad;
  const double dx = earth_radius * std::cos(lat * kDegToRad) * dlon * kDegToRad;
  return {dx, dy};
}

int floor_div(int a, int b) {
  int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

IndexBox IndexBox::coarsen(int rx, int ry) const {
  return {floor_div(i0, rx), floor_div(j0, ry), floor_div(i1 - 1, rx) + 1, floor_div(j1 - 1, ry) + 1};
}

LevelGeometry::LevelGeometry(const GeoDomain& domain, double earth_radius, int cells_x, int cells_y)
    : lon0_(domain.lon_min),
      lat0_(domain.lat_min),
      dlon_((domain.lon_max - domain.lon_min) / cells_x),
      dlat_((domain.lat_max - domain.lat_min) / cells_y),
      cells_x_(cells_x),
      cells_y_(cells_y),
      radius_(earth_radius) {}

double LevelGeometry::cell_area(int j) const {
  const double s_lo = std::sin(lat_edge(j) * kDegToRad);
  const double s_hi = std::sin(lat_edge(j + 1) * kDegToRad);
  return radius_ * radius_ * dlon_ * kDegToRad * (s_hi - s_lo);
}

double LevelGeometry::y_face_length(int j) const {
  return radius_ * std::cos(lat_edge(j) * kDegToRad) * dlon_ * kDegToRad;
}

CellSizeMeters LevelGeometry::metric(int j) const {
  return cell_size_meters(lat_center(j), dlon_, dlat_, radius_);
}

}  // namespace surge
