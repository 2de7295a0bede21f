#include "surge/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace surge {

namespace fs = std::filesystem;
using nlohmann::json;
using ojson = nlohmann::ordered_json;

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw InputError(dir.string() + ": cannot create directory: " + ec.message());
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError(path.string() + ": cannot open for writing");
  return out;
}

std::vector<double> split_numbers(const std::string& line) {
  std::vector<double> v;
  const char* p = line.c_str();
  while (*p) {
    char* end = nullptr;
    const double x = std::strtod(p, &end);
    if (end == p) break;
    v.push_back(x);
    p = end;
    if (*p == ',') ++p;
  }
  return v;
}

}  // namespace

// ---- gauges ------------------------------------------------------------------

bool record_gauge(const LevelHierarchy& hierarchy, Gauge& gauge, int level, double t) {
  const auto loc = hierarchy.locate(gauge.spec.lon, gauge.spec.lat);
  if (loc.level != level) return false;
  if (!gauge.records.empty() && !(t > gauge.records.back().t)) return false;
  const Patch& p = hierarchy.level(level).patches[loc.patch];
  const double sea = hierarchy.inputs().phys.sea_level;
  const double tol = hierarchy.inputs().phys.dry_tolerance;
  gauge.records.push_back(
      {t, level, p.h(loc.i, loc.j), p.hu(loc.i, loc.j), p.hv(loc.i, loc.j), surface_elevation(p, loc.i, loc.j, tol, sea)});
  return true;
}

void write_gauge_csv(const Gauge& gauge, const fs::path& path) {
  std::ofstream out = open_out(path);
  out << "t,level,h,hu,hv,eta\n";
  for (const auto& r : gauge.records)
    out << fmt17(r.t) << ',' << r.level << ',' << fmt17(r.h) << ',' << fmt17(r.hu) << ',' << fmt17(r.hv) << ','
        << fmt17(r.eta) << '\n';
  if (!out) throw InputError(path.string() + ": write failed");
}

std::vector<GaugeRecord> read_gauge_csv(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError(path.string() + ": cannot open gauge file");
  std::string line;
  std::getline(in, line);
  if (line != "t,level,h,hu,hv,eta") throw InputError(path.string() + ": unexpected gauge header");
  std::vector<GaugeRecord> out;
  int row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty()) continue;
    const auto v = split_numbers(line);
    if (v.size() != 6) throw InputError(path.string() + ":" + std::to_string(row) + ": expected 6 fields");
    out.push_back({v[0], static_cast<int>(v[1]), v[2], v[3], v[4], v[5]});
  }
  return out;
}

// ---- frames ------------------------------------------------------------------

double FramePatch::lon_edge(int gi) const { return lon0 + gi * dlon; }
double FramePatch::lat_edge(int gj) const { return lat0 + gj * dlat; }

std::vector<std::pair<int, long long>> Frame::level_counts() const {
  std::vector<std::pair<int, long long>> out;
  for (const auto& p : patches) {
    if (static_cast<int>(out.size()) < p.level) out.resize(p.level, {0, 0});
    out[p.level - 1].first += 1;
    out[p.level - 1].second += p.box.size();
  }
  return out;
}

Frame snapshot_frame(const LevelHierarchy& hierarchy, int index) {
  Frame f;
  f.index = index;
  f.time = hierarchy.time();
  f.domain = hierarchy.inputs().domain;
  f.sea_level = hierarchy.inputs().phys.sea_level;
  f.dry_tolerance = hierarchy.inputs().phys.dry_tolerance;
  for (int l = 1; l <= hierarchy.num_levels(); ++l) {
    const Level& L = hierarchy.level(l);
    std::vector<const Patch*> ordered;
    for (const auto& p : L.patches) ordered.push_back(&p);
    std::sort(ordered.begin(), ordered.end(), [](const Patch* a, const Patch* b) {
      return a->box().j0 != b->box().j0 ? a->box().j0 < b->box().j0 : a->box().i0 < b->box().i0;
    });
    for (const Patch* p : ordered) {
      FramePatch fp;
      fp.level = l;
      fp.box = p->box();
      fp.dlon = L.geometry.dlon();
      fp.dlat = L.geometry.dlat();
      fp.lon0 = f.domain.lon_min;
      fp.lat0 = f.domain.lat_min;
      const size_t n = static_cast<size_t>(p->box().size());
      fp.h.reserve(n);
      fp.hu.reserve(n);
      fp.hv.reserve(n);
      fp.b.reserve(n);
      for (int j = 0; j < p->ny(); ++j)
        for (int i = 0; i < p->nx(); ++i) {
          fp.h.push_back(p->h(i, j));
          fp.hu.push_back(p->hu(i, j));
          fp.hv.push_back(p->hv(i, j));
          fp.b.push_back(p->b(i, j));
        }
      f.patches.push_back(std::move(fp));
    }
  }
  return f;
}

fs::path frame_manifest_path(const fs::path& outdir, int index) {
  char name[32];
  std::snprintf(name, sizeof name, "frame_%04d.json", index);
  return outdir / "frames" / name;
}

namespace {
std::string patch_file_name(int index, size_t k) {
  char name[48];
  std::snprintf(name, sizeof name, "frame_%04d_p%04zu.csv", index, k);
  return name;
}
}  // namespace

void write_frame(const Frame& frame, const fs::path& outdir) {
  const fs::path dir = outdir / "frames";
  ensure_dir(dir);
  ojson m;
  m["frame"] = frame.index;
  m["time"] = frame.time;
  m["domain"] = {{"lon_min", frame.domain.lon_min}, {"lon_max", frame.domain.lon_max},
                 {"lat_min", frame.domain.lat_min}, {"lat_max", frame.domain.lat_max},
                 {"n_cells_x", frame.domain.n_cells_x}, {"n_cells_y", frame.domain.n_cells_y}};
  m["sea_level"] = frame.sea_level;
  m["dry_tolerance"] = frame.dry_tolerance;
  ojson levels = ojson::array();
  const auto counts = frame.level_counts();
  for (size_t l = 0; l < counts.size(); ++l)
    levels.push_back({{"level", l + 1}, {"patches", counts[l].first}, {"cells", counts[l].second}});
  m["levels"] = levels;
  ojson patches = ojson::array();
  for (size_t k = 0; k < frame.patches.size(); ++k) {
    const FramePatch& p = frame.patches[k];
    const std::string file = patch_file_name(frame.index, k);
    patches.push_back({{"file", file}, {"level", p.level}, {"i0", p.box.i0}, {"j0", p.box.j0}, {"i1", p.box.i1},
                       {"j1", p.box.j1}, {"dlon", p.dlon}, {"dlat", p.dlat}});
    std::ofstream out = open_out(dir / file);
    out << "i,j,lon,lat,h,hu,hv,b,eta\n";
    size_t c = 0;
    for (int gj = p.box.j0; gj < p.box.j1; ++gj) {
      const double lat = p.lat0 + (gj + 0.5) * p.dlat;
      for (int gi = p.box.i0; gi < p.box.i1; ++gi, ++c) {
        const double lon = p.lon0 + (gi + 0.5) * p.dlon;
        const double eta = p.h[c] >= frame.dry_tolerance ? p.h[c] + p.b[c] : frame.sea_level;
        out << gi << ',' << gj << ',' << fmt17(lon) << ',' << fmt17(lat) << ',' << fmt17(p.h[c]) << ','
            << fmt17(p.hu[c]) << ',' << fmt17(p.hv[c]) << ',' << fmt17(p.b[c]) << ',' << fmt17(eta) << '\n';
      }
    }
    if (!out) throw InputError((dir / file).string() + ": write failed");
  }
  m["patches"] = patches;
  std::ofstream out = open_out(frame_manifest_path(outdir, frame.index));
  out << m.dump(2) << '\n';
}

Frame read_frame(const fs::path& outdir, int index) {
  const fs::path mpath = frame_manifest_path(outdir, index);
  std::ifstream in(mpath);
  if (!in) throw InputError(mpath.string() + ": frame manifest not found");
  json m;
  try {
    in >> m;
  } catch (const json::exception& e) {
    throw InputError(mpath.string() + ": " + e.what());
  }
  Frame f;
  f.index = m.at("frame").get<int>();
  f.time = m.at("time").get<double>();
  const json& d = m.at("domain");
  f.domain = {d.at("lon_min").get<double>(), d.at("lon_max").get<double>(), d.at("lat_min").get<double>(),
              d.at("lat_max").get<double>(),  d.at("n_cells_x").get<int>(),  d.at("n_cells_y").get<int>()};
  f.sea_level = m.at("sea_level").get<double>();
  f.dry_tolerance = m.at("dry_tolerance").get<double>();
  for (const auto& pj : m.at("patches")) {
    FramePatch p;
    p.level = pj.at("level").get<int>();
    p.box = {pj.at("i0").get<int>(), pj.at("j0").get<int>(), pj.at("i1").get<int>(), pj.at("j1").get<int>()};
    p.dlon = pj.at("dlon").get<double>();
    p.dlat = pj.at("dlat").get<double>();
    p.lon0 = f.domain.lon_min;
    p.lat0 = f.domain.lat_min;
    const fs::path cpath = outdir / "frames" / pj.at("file").get<std::string>();
    std::ifstream cin(cpath);
    if (!cin) throw InputError(cpath.string() + ": patch file not found");
    std::string line;
    std::getline(cin, line);
    while (std::getline(cin, line)) {
      if (line.empty()) continue;
      const auto v = split_numbers(line);
      if (v.size() != 9) throw InputError(cpath.string() + ": expected 9 fields per row");
      p.h.push_back(v[4]);
      p.hu.push_back(v[5]);
      p.hv.push_back(v[6]);
      p.b.push_back(v[7]);
    }
    if (static_cast<long long>(p.h.size()) != p.box.size())
      throw InputError(cpath.string() + ": row count does not match the patch box");
    f.patches.push_back(std::move(p));
  }
  return f;
}

int count_frames(const fs::path& outdir) {
  int n = 0;
  while (fs::exists(frame_manifest_path(outdir, n))) ++n;
  return n;
}

// ---- rendering ---------------------------------------------------------------

RenderVar parse_render_var(const std::string& name) {
  if (name == "eta") return RenderVar::Eta;
  if (name == "speed") return RenderVar::Speed;
  if (name == "level") return RenderVar::Level;
  throw InputError("unknown variable \"" + name + "\" (expected eta, speed or level)");
}

const char* render_var_name(RenderVar v) {
  switch (v) {
    case RenderVar::Eta: return "eta";
    case RenderVar::Speed: return "speed";
    case RenderVar::Level: return "level";
  }
  return "?";
}

RenderBounds default_bounds(RenderVar v) {
  switch (v) {
    case RenderVar::Eta: return {-1.0, 1.0};
    case RenderVar::Speed: return {0.0, 2.0};
    case RenderVar::Level: return {1.0, 7.0};
  }
  return {};
}

namespace {

// diverging blue-white-red for eta, dark-to-yellow for speed
constexpr std::array<Rgb, 5> kEtaTable{{{33, 102, 172}, {103, 169, 207}, {247, 247, 247}, {239, 138, 98}, {178, 24, 43}}};
constexpr std::array<Rgb, 5> kSpeedTable{{{68, 1, 84}, {59, 82, 139}, {33, 145, 140}, {94, 201, 98}, {253, 231, 37}}};
constexpr std::array<Rgb, 7> kLevelTable{
    {{49, 54, 149}, {69, 117, 180}, {116, 173, 209}, {254, 224, 144}, {253, 174, 97}, {244, 109, 67}, {165, 0, 38}}};

Rgb lerp_table(const std::array<Rgb, 5>& t, double s) {
  s = std::clamp(s, 0.0, 1.0) * 4.0;
  const int k = std::min(3, static_cast<int>(std::floor(s)));
  const double w = s - k;
  Rgb c;
  for (int m = 0; m < 3; ++m) c[m] = static_cast<uint8_t>(std::lround((1.0 - w) * t[k][m] + w * t[k + 1][m]));
  return c;
}

}  // namespace

Rgb color_for(RenderVar v, double value, const RenderBounds& bounds) {
  if (v == RenderVar::Level) {
    const int k = std::clamp(static_cast<int>(std::lround(value)) - 1, 0, 6);
    return kLevelTable[k];
  }
  const double span = bounds.hi - bounds.lo;
  const double s = span > 0.0 ? (value - bounds.lo) / span : 0.5;
  return lerp_table(v == RenderVar::Eta ? kEtaTable : kSpeedTable, s);
}

std::array<uint8_t, 3> Image::pixel(int x, int y) const {
  const size_t k = 3 * (static_cast<size_t>(y) * width + x);
  return {rgb[k], rgb[k + 1], rgb[k + 2]};
}

Image render_raster(const Frame& frame, RenderVar var, const RenderBounds& bounds, int max_pixels) {
  if (frame.patches.empty()) throw InputError("frame has no patches");
  double dlon = frame.patches.front().dlon, dlat = frame.patches.front().dlat;
  for (const auto& p : frame.patches) {
    dlon = std::min(dlon, p.dlon);
    dlat = std::min(dlat, p.dlat);
  }
  const GeoDomain& d = frame.domain;
  const int fx = static_cast<int>(std::lround((d.lon_max - d.lon_min) / dlon));
  const int fy = static_cast<int>(std::lround((d.lat_max - d.lat_min) / dlat));
  const int factor = std::max(1, (std::max(fx, fy) + max_pixels - 1) / max_pixels);
  Image img;
  img.width = std::max(1, fx / factor);
  img.height = std::max(1, fy / factor);
  img.rgb.assign(3 * static_cast<size_t>(img.width) * img.height, 0);
  const double px = (d.lon_max - d.lon_min) / img.width;
  const double py = (d.lat_max - d.lat_min) / img.height;

  std::vector<const FramePatch*> order;
  for (const auto& p : frame.patches) order.push_back(&p);
  std::stable_sort(order.begin(), order.end(), [](const FramePatch* a, const FramePatch* b) { return a->level < b->level; });
  for (const FramePatch* p : order) {
    const double x0 = p->lon_edge(p->box.i0), x1 = p->lon_edge(p->box.i1);
    const double y0 = p->lat_edge(p->box.j0), y1 = p->lat_edge(p->box.j1);
    const int c0 = std::max(0, static_cast<int>(std::ceil((x0 - d.lon_min) / px - 0.5)));
    const int c1 = std::min(img.width, static_cast<int>(std::ceil((x1 - d.lon_min) / px - 0.5)));
    const int r0 = std::max(0, static_cast<int>(std::ceil((y0 - d.lat_min) / py - 0.5)));
    const int r1 = std::min(img.height, static_cast<int>(std::ceil((y1 - d.lat_min) / py - 0.5)));
    for (int r = r0; r < r1; ++r) {
      const double lat = d.lat_min + (r + 0.5) * py;
      const int j = std::clamp(static_cast<int>(std::floor((lat - p->lat0) / p->dlat)), p->box.j0, p->box.j1 - 1) - p->box.j0;
      const int y = img.height - 1 - r;
      for (int c = c0; c < c1; ++c) {
        const double lon = d.lon_min + (c + 0.5) * px;
        const int i =
            std::clamp(static_cast<int>(std::floor((lon - p->lon0) / p->dlon)), p->box.i0, p->box.i1 - 1) - p->box.i0;
        const size_t k = static_cast<size_t>(j) * p->box.nx() + i;
        Rgb col;
        if (var == RenderVar::Level) {
          col = color_for(var, p->level, bounds);
        } else if (p->h[k] < frame.dry_tolerance) {
          col = kLandColor;
        } else if (var == RenderVar::Eta) {
          col = color_for(var, p->h[k] + p->b[k] - frame.sea_level, bounds);
        } else {
          col = color_for(var, std::hypot(p->hu[k], p->hv[k]) / p->h[k], bounds);
        }
        const size_t o = 3 * (static_cast<size_t>(y) * img.width + c);
        img.rgb[o] = col[0];
        img.rgb[o + 1] = col[1];
        img.rgb[o + 2] = col[2];
      }
    }
  }
  return img;
}

void write_ppm(const Image& image, const fs::path& path) {
  if (path.has_parent_path()) ensure_dir(path.parent_path());
  std::ofstream out = open_out(path);
  out << "P6\n" << image.width << ' ' << image.height << "\n255\n";
  out.write(reinterpret_cast<const char*>(image.rgb.data()), static_cast<std::streamsize>(image.rgb.size()));
  if (!out) throw InputError(path.string() + ": write failed");
}

void write_scale_sidecar(RenderVar var, const RenderBounds& bounds, const fs::path& path) {
  std::ofstream out = open_out(path);
  out << "variable " << render_var_name(var) << '\n';
  if (var == RenderVar::Level) {
    out << "# level r g b\n";
    for (int l = 1; l <= 7; ++l) {
      const Rgb c = color_for(var, l, bounds);
      out << l << ' ' << int(c[0]) << ' ' << int(c[1]) << ' ' << int(c[2]) << '\n';
    }
  } else {
    out << "# value r g b (linear between stops; "
        << (var == RenderVar::Eta ? "eta minus sea_level, m" : "speed, m/s") << ")\n";
    out << "bounds " << fmt17(bounds.lo) << ' ' << fmt17(bounds.hi) << '\n';
    for (int k = 0; k <= 4; ++k) {
      const double v = bounds.lo + (bounds.hi - bounds.lo) * k / 4.0;
      const Rgb c = color_for(var, v, bounds);
      out << fmt17(v) << ' ' << int(c[0]) << ' ' << int(c[1]) << ' ' << int(c[2]) << '\n';
    }
    out << "land " << int(kLandColor[0]) << ' ' << int(kLandColor[1]) << ' ' << int(kLandColor[2]) << '\n';
  }
}

}  // namespace surge
