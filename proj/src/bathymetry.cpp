#include "surge/bathymetry.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace surge {

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

// 2-point Gauss in lon (integrand linear), 3-point in lat (linear times cos).
constexpr double kG2 = 0.57735026918962576451;
constexpr double kG3 = 0.77459666924148337704;
constexpr double kW3[3] = {5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};
constexpr double kX3[3] = {-kG3, 0.0, kG3};

// Breakpoints of [a, b] at raster node lines and hull edges.
std::vector<double> breakpoints(double a, double b, double origin, double step, int nodes) {
  std::vector<double> pts{a};
  const double hull_hi = origin + (nodes - 1) * step;
  int k = static_cast<int>(std::ceil((a - origin) / step));
  k = std::max(k, 0);
  for (; k < nodes; ++k) {
    const double x = origin + k * step;
    if (x >= b) break;
    if (x > a) pts.push_back(x);
  }
  if (hull_hi > a && hull_hi < b && pts.back() < hull_hi) pts.push_back(hull_hi);
  if (origin > a && origin < b && std::find(pts.begin(), pts.end(), origin) == pts.end()) {
    pts.push_back(origin);
    std::sort(pts.begin(), pts.end());
  }
  pts.push_back(b);
  return pts;
}

}  // namespace

bool EsriRaster::covers(double lon, double lat, double slack) const {
  const double tol = slack * std::max(1.0, cellsize);
  return lon >= x0 - tol && lon <= x_max() + tol && lat >= y0 - tol && lat <= y_max() + tol;
}

double EsriRaster::bilinear(double lon, double lat) const {
  double s = std::clamp((lon - x0) / cellsize, 0.0, static_cast<double>(ncols - 1));
  double t = std::clamp((lat - y0) / cellsize, 0.0, static_cast<double>(nrows - 1));
  int c = std::min(static_cast<int>(s), std::max(ncols - 2, 0));
  int r = std::min(static_cast<int>(t), std::max(nrows - 2, 0));
  s -= c;
  t -= r;
  const int c1 = std::min(c + 1, ncols - 1);
  const int r1 = std::min(r + 1, nrows - 1);
  const double v00 = node(c, r), v10 = node(c1, r), v01 = node(c, r1), v11 = node(c1, r1);
  for (double v : {v00, v10, v01, v11}) {
    if (v == nodata) {
      std::ostringstream os;
      os << "bathymetry '" << name << "': nodata value used near lon=" << lon << " lat=" << lat;
      throw InputError(os.str());
    }
  }
  return (1 - s) * (1 - t) * v00 + s * (1 - t) * v10 + (1 - s) * t * v01 + s * t * v11;
}

EsriRaster EsriRaster::from_function(double x0, double y0, double cellsize, int ncols, int nrows,
                                     const std::function<double(double, double)>& f) {
  EsriRaster r;
  r.ncols = ncols;
  r.nrows = nrows;
  r.x0 = x0;
  r.y0 = y0;
  r.cellsize = cellsize;
  r.values.resize(static_cast<size_t>(ncols) * nrows);
  for (int j = 0; j < nrows; ++j)
    for (int i = 0; i < ncols; ++i)
      r.values[static_cast<size_t>(j) * ncols + i] = f(x0 + i * cellsize, y0 + j * cellsize);
  r.name = "<function>";
  return r;
}

EsriRaster parse_esri_ascii(const std::string& text, const std::string& name) {
  std::istringstream in(text);
  EsriRaster r;
  r.name = name;
  bool x_center = false, y_center = false;
  bool have_x = false, have_y = false, have_cs = false;
  auto fail = [&](const std::string& what) { throw InputError("bathymetry '" + name + "': " + what); };

  // header: keyword/value pairs until the first numeric token
  std::string key;
  std::streampos data_start = in.tellg();
  while (in >> key) {
    const std::string k = lower(key);
    if (!k.empty() && (std::isdigit(static_cast<unsigned char>(k[0])) || k[0] == '-' || k[0] == '+' || k[0] == '.')) {
      break;
    }
    double v;
    if (!(in >> v)) fail("bad header value for " + key);
    if (k == "ncols") r.ncols = static_cast<int>(v);
    else if (k == "nrows") r.nrows = static_cast<int>(v);
    else if (k == "xllcorner") { r.x0 = v; have_x = true; }
    else if (k == "xllcenter") { r.x0 = v; have_x = x_center = true; }
    else if (k == "yllcorner") { r.y0 = v; have_y = true; }
    else if (k == "yllcenter") { r.y0 = v; have_y = y_center = true; }
    else if (k == "cellsize") { r.cellsize = v; have_cs = true; }
    else if (k == "nodata_value") r.nodata = v;
    else fail("unknown header key " + key);
    data_start = in.tellg();
  }
  if (r.ncols < 2 || r.nrows < 2) fail("ncols and nrows must be >= 2");
  if (!have_x || !have_y || !have_cs) fail("missing xll/yll/cellsize header");
  if (!(r.cellsize > 0)) fail("cellsize must be positive");
  // corner registration: node values sit at cell centres
  if (!x_center) r.x0 += 0.5 * r.cellsize;
  if (!y_center) r.y0 += 0.5 * r.cellsize;

  in.clear();
  in.seekg(data_start);
  r.values.assign(static_cast<size_t>(r.ncols) * r.nrows, 0.0);
  for (int row = r.nrows - 1; row >= 0; --row) {
    for (int c = 0; c < r.ncols; ++c) {
      double v;
      if (!(in >> v)) {
        std::ostringstream os;
        os << "truncated data (expected " << r.ncols * r.nrows << " values)";
        fail(os.str());
      }
      r.values[static_cast<size_t>(row) * r.ncols + c] = v;
    }
  }
  return r;
}

EsriRaster read_esri_ascii(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw InputError("cannot open bathymetry file " + path.string());
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_esri_ascii(ss.str(), path.string());
}

void write_esri_ascii(const EsriRaster& r, const std::filesystem::path& path) {
  std::ofstream f(path);
  if (!f) throw InputError("cannot write " + path.string());
  f << std::setprecision(17);
  f << "ncols " << r.ncols << "\nnrows " << r.nrows << "\nxllcenter " << r.x0 << "\nyllcenter " << r.y0
    << "\ncellsize " << r.cellsize << "\nnodata_value " << r.nodata << "\n";
  for (int row = r.nrows - 1; row >= 0; --row) {
    for (int c = 0; c < r.ncols; ++c) f << (c ? " " : "") << r.node(c, row);
    f << "\n";
  }
}

int Bathymetry::source_for(double lon, double lat) const {
  for (size_t k = 0; k < sources_.size(); ++k)
    if (sources_[k].covers(lon, lat)) return static_cast<int>(k);
  return -1;
}

double Bathymetry::point(double lon, double lat) const {
  const int k = source_for(lon, lat);
  if (k < 0) {
    std::ostringstream os;
    os << "no bathymetry source covers lon=" << lon << " lat=" << lat;
    throw ConfigError(os.str());
  }
  return sources_[k].bilinear(lon, lat);
}

double Bathymetry::cell_average(double lon0, double lon1, double lat0, double lat1) const {
  const double lonc = 0.5 * (lon0 + lon1), latc = 0.5 * (lat0 + lat1);
  const int k = source_for(lonc, latc);
  if (k < 0) {
    std::ostringstream os;
    os << "no bathymetry source covers cell centred at lon=" << lonc << " lat=" << latc;
    throw ConfigError(os.str());
  }
  const EsriRaster& r = sources_[k];
  const auto xs = breakpoints(lon0, lon1, r.x0, r.cellsize, r.ncols);
  const auto ys = breakpoints(lat0, lat1, r.y0, r.cellsize, r.nrows);
  double integral = 0.0;
  for (size_t b = 0; b + 1 < ys.size(); ++b) {
    const double ym = 0.5 * (ys[b] + ys[b + 1]), yh = 0.5 * (ys[b + 1] - ys[b]);
    for (int q = 0; q < 3; ++q) {
      const double y = ym + yh * kX3[q];
      const double wy = kW3[q] * yh * kDegToRad * std::cos(y * kDegToRad);
      double row = 0.0;
      for (size_t a = 0; a + 1 < xs.size(); ++a) {
        const double xm = 0.5 * (xs[a] + xs[a + 1]), xh = 0.5 * (xs[a + 1] - xs[a]);
        row += xh * kDegToRad * (r.bilinear(xm - xh * kG2, y) + r.bilinear(xm + xh * kG2, y));
      }
      integral += wy * row;
    }
  }
  const double area = (lon1 - lon0) * kDegToRad * (std::sin(lat1 * kDegToRad) - std::sin(lat0 * kDegToRad));
  return integral / area;
}

void sample_bathymetry(const Bathymetry& bathymetry, Patch& patch) {
  const LevelGeometry& g = patch.geometry();
  const IndexBox dom = g.domain_box();
  const int gw = patch.b.ghost();
  for (int j = -gw; j < patch.ny() + gw; ++j) {
    const int gj = patch.gj(j);
    if (gj < dom.j0 || gj >= dom.j1) continue;
    for (int i = -gw; i < patch.nx() + gw; ++i) {
      const int gi = patch.gi(i);
      if (gi < dom.i0 || gi >= dom.i1) continue;
      patch.b(i, j) = bathymetry.cell_average(g.lon_edge(gi), g.lon_edge(gi + 1), g.lat_edge(gj), g.lat_edge(gj + 1));
    }
  }
}

}  // namespace surge
