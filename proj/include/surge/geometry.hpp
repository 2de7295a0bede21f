#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "surge/common.hpp"

namespace surge {

/// Geographic extent of the simulation and its coarse-level cell counts.
struct GeoDomain {
  double lon_min = 0.0;
  double lon_max = 1.0;
  double lat_min = 0.0;
  double lat_max = 1.0;
  int n_cells_x = 1;
  int n_cells_y = 1;

  /// Throws ConfigError naming the first violated invariant.
  void validate() const;
  double dlon() const { return (lon_max - lon_min) / n_cells_x; }
  double dlat() const { return (lat_max - lat_min) / n_cells_y; }
};

struct PhysConfig {
  double g = 9.81;
  double rho = 1025.0;
  double rho_air = 1.15;
  double omega = 2.0 * kPi / 8.61642e4;
  double earth_radius = 6.367e6;
  double dry_tolerance = 1e-3;
  double sea_level = 0.0;
  // wind stress enters as (h/rho) tau when set, as tau/rho otherwise
  bool wind_depth_scaled = true;
  // stress form only: forcing tapers linearly to zero below this depth
  double wind_taper_depth = 1.0;

  void validate() const;
};

/// Local metric cell size in meters for a cell of extent (dlon, dlat) degrees
/// centred at latitude `lat`.
struct CellSizeMeters {
  double dx_m;
  double dy_m;
};
CellSizeMeters cell_size_meters(double lat, double dlon, double dlat,
                                double earth_radius = PhysConfig{}.earth_radius);

/// Half-open rectangle [i0, i1) x [j0, j1) in one level's global index space.
struct IndexBox {
  int i0 = 0;
  int j0 = 0;
  int i1 = 0;
  int j1 = 0;

  int nx() const { return i1 - i0; }
  int ny() const { return j1 - j0; }
  long long size() const { return empty() ? 0 : static_cast<long long>(nx()) * ny(); }
  bool empty() const { return i1 <= i0 || j1 <= j0; }
  bool contains(int i, int j) const { return i >= i0 && i < i1 && j >= j0 && j < j1; }
  bool contains(const IndexBox& o) const {
    return o.empty() || (o.i0 >= i0 && o.i1 <= i1 && o.j0 >= j0 && o.j1 <= j1);
  }
  IndexBox grow(int n) const { return {i0 - n, j0 - n, i1 + n, j1 + n}; }
  IndexBox intersect(const IndexBox& o) const {
    return {std::max(i0, o.i0), std::max(j0, o.j0), std::min(i1, o.i1), std::min(j1, o.j1)};
  }
  IndexBox refine(int rx, int ry) const { return {i0 * rx, j0 * ry, i1 * rx, j1 * ry}; }
  /// Smallest coarse box whose refinement covers this box.
  IndexBox coarsen(int rx, int ry) const;
  bool operator==(const IndexBox&) const = default;
};

int floor_div(int a, int b);

/// Cell geometry of one refinement level on the sphere. Cell areas are exact
/// spherical zone areas, so they add up exactly (to rounding) under refinement.
class LevelGeometry {
 public:
  LevelGeometry() = default;
  LevelGeometry(const GeoDomain& domain, double earth_radius, int cells_x, int cells_y);

  double dlon() const { return dlon_; }
  double dlat() const { return dlat_; }
  int cells_x() const { return cells_x_; }
  int cells_y() const { return cells_y_; }
  IndexBox domain_box() const { return {0, 0, cells_x_, cells_y_}; }
  double earth_radius() const { return radius_; }

  double lon_center(int i) const { return lon0_ + (i + 0.5) * dlon_; }
  double lat_center(int j) const { return lat0_ + (j + 0.5) * dlat_; }
  double lon_edge(int i) const { return lon0_ + i * dlon_; }
  double lat_edge(int j) const { return lat0_ + j * dlat_; }

  /// Area (m^2) of any cell in row j.
  double cell_area(int j) const;
  /// Length (m) of the cell face normal to x (constant on the level).
  double x_face_length() const { return radius_ * dlat_ * kDegToRad; }
  /// Length (m) of the face between rows j-1 and j.
  double y_face_length(int j) const;
  /// Metric cell size at the row-centre latitude.
  CellSizeMeters metric(int j) const;
  /// Row index holding latitude `lat` (may lie outside the domain).
  int row_of(double lat) const { return static_cast<int>(std::floor((lat - lat0_) / dlat_)); }
  int col_of(double lon) const { return static_cast<int>(std::floor((lon - lon0_) / dlon_)); }

 private:
  double lon0_ = 0.0;
  double lat0_ = 0.0;
  double dlon_ = 1.0;
  double dlat_ = 1.0;
  int cells_x_ = 1;
  int cells_y_ = 1;
  double radius_ = 6.367e6;
};

}  // namespace surge
