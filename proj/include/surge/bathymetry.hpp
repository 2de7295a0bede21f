#pragma once

#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "surge/patch.hpp"

namespace surge {

/// Node-valued raster read from an ESRI ASCII grid. Values are stored south
/// row first internally; node (c, r) sits at (x0 + c * cellsize, y0 + r * cellsize).
struct EsriRaster {
  int ncols = 0;
  int nrows = 0;
  double x0 = 0.0;  // longitude of the first node column
  double y0 = 0.0;  // latitude of the southern node row
  double cellsize = 1.0;
  double nodata = -9999.0;
  std::vector<double> values;  // nrows * ncols, row 0 = south
  std::string name;

  double node(int c, int r) const { return values[static_cast<size_t>(r) * ncols + c]; }
  double x_max() const { return x0 + (ncols - 1) * cellsize; }
  double y_max() const { return y0 + (nrows - 1) * cellsize; }
  bool covers(double lon, double lat, double slack = 1e-9) const;
  /// Bilinear interpolation of node values; coordinates are clamped to the hull.
  double bilinear(double lon, double lat) const;

  /// Builds a raster by sampling f(lon, lat) on a node lattice.
  static EsriRaster from_function(double x0, double y0, double cellsize, int ncols, int nrows,
                                  const std::function<double(double, double)>& f);
};

/// Parses ESRI ASCII (`ncols`, `nrows`, `xllcorner|xllcenter`, `yllcorner|yllcenter`,
/// `cellsize`, optional `nodata_value`, then rows north first).
EsriRaster read_esri_ascii(const std::filesystem::path& path);
EsriRaster parse_esri_ascii(const std::string& text, const std::string& name = "<memory>");
/// Writes with `xllcenter`/`yllcenter` so the nodes round-trip exactly.
void write_esri_ascii(const EsriRaster& raster, const std::filesystem::path& path);

/// Prioritised list of rasters (first entry wins where several cover a point).
class Bathymetry {
 public:
  Bathymetry() = default;
  explicit Bathymetry(std::vector<EsriRaster> sources) : sources_(std::move(sources)) {}

  const std::vector<EsriRaster>& sources() const { return sources_; }
  bool empty() const { return sources_.empty(); }

  /// Index of the highest-priority raster covering the point, or -1.
  int source_for(double lon, double lat) const;
  /// Pointwise bilinear value from the winning raster.
  double point(double lon, double lat) const;
  /// Area-weighted (spherical) average over a lon/lat rectangle of the
  /// bilinear surface of the raster that covers the rectangle centre. Exact
  /// up to rounding, so averages are additive under refinement.
  double cell_average(double lon0, double lon1, double lat0, double lat1) const;

 private:
  std::vector<EsriRaster> sources_;
};

/// Fills patch.b over the interior and every in-domain ghost cell with cell
/// averages. Ghost cells beyond the domain edge are left untouched.
void sample_bathymetry(const Bathymetry& bathymetry, Patch& patch);

}  // namespace surge
