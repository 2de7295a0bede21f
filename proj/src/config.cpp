#include "surge/config.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace surge {

using nlohmann::json;
using ojson = nlohmann::ordered_json;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
  throw ConfigError(path.empty() ? msg : path + ": " + msg);
}

std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }
std::string join(const std::string& path, size_t k) { return path + "[" + std::to_string(k) + "]"; }

void check_keys(const json& j, const std::string& path, const std::vector<std::string>& allowed) {
  if (!j.is_object()) fail(path, "expected an object");
  for (const auto& [key, value] : j.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) != allowed.end()) continue;
    std::string best;
    int best_d = std::numeric_limits<int>::max();
    for (const auto& a : allowed) {
      const int d = levenshtein(key, a);
      if (d < best_d) {
        best_d = d;
        best = a;
      }
    }
    std::string msg = "unknown key \"" + key + "\"";
    if (!best.empty()) msg += " (did you mean \"" + best + "\"?)";
    fail(path, msg);
  }
}

double num(const json& j, const std::string& key, const std::string& path, double def) {
  if (!j.contains(key)) return def;
  const json& v = j.at(key);
  if (!v.is_number()) fail(join(path, key), "expected a number");
  return v.get<double>();
}

// null maps to `null_value` (used for infinities)
double num_or_null(const json& j, const std::string& key, const std::string& path, double def, double null_value) {
  if (!j.contains(key)) return def;
  if (j.at(key).is_null()) return null_value;
  return num(j, key, path, def);
}

int integer(const json& j, const std::string& key, const std::string& path, int def) {
  if (!j.contains(key)) return def;
  const json& v = j.at(key);
  if (!v.is_number_integer()) fail(join(path, key), "expected an integer");
  return v.get<int>();
}

bool boolean(const json& j, const std::string& key, const std::string& path, bool def) {
  if (!j.contains(key)) return def;
  const json& v = j.at(key);
  if (!v.is_boolean()) fail(join(path, key), "expected true or false");
  return v.get<bool>();
}

std::string str(const json& j, const std::string& key, const std::string& path, const std::string& def) {
  if (!j.contains(key)) return def;
  const json& v = j.at(key);
  if (v.is_null()) return "";
  if (!v.is_string()) fail(join(path, key), "expected a string");
  return v.get<std::string>();
}

std::vector<double> num_list(const json& j, const std::string& key, const std::string& path,
                             const std::vector<double>& def) {
  if (!j.contains(key)) return def;
  const json& v = j.at(key);
  if (!v.is_array()) fail(join(path, key), "expected an array of numbers");
  std::vector<double> out;
  for (size_t k = 0; k < v.size(); ++k) {
    if (!v[k].is_number()) fail(join(join(path, key), k), "expected a number");
    out.push_back(v[k].get<double>());
  }
  return out;
}

std::vector<int> int_list(const json& j, const std::string& key, const std::string& path, const std::vector<int>& def) {
  if (!j.contains(key)) return def;
  const json& v = j.at(key);
  if (!v.is_array()) fail(join(path, key), "expected an array of integers");
  std::vector<int> out;
  for (size_t k = 0; k < v.size(); ++k) {
    if (!v[k].is_number_integer()) fail(join(join(path, key), k), "expected an integer");
    out.push_back(v[k].get<int>());
  }
  return out;
}

const json* section(const json& doc, const std::string& key) {
  if (!doc.contains(key) || doc.at(key).is_null()) return nullptr;
  return &doc.at(key);
}

BoundaryKind boundary_kind(const json& j, const std::string& key, const std::string& path) {
  const std::string s = str(j, key, path, "outflow");
  if (s == "outflow") return BoundaryKind::Outflow;
  if (s == "wall") return BoundaryKind::Wall;
  fail(join(path, key), "expected \"outflow\" or \"wall\" (got \"" + s + "\")");
}

std::vector<ManningRule> parse_rules(const json& v, const std::string& path) {
  if (!v.is_array()) fail(path, "expected an array of {threshold, n}");
  std::vector<ManningRule> rules;
  for (size_t k = 0; k < v.size(); ++k) {
    const std::string p = join(path, k);
    check_keys(v[k], p, {"threshold", "n"});
    ManningRule r;
    r.threshold = num_or_null(v[k], "threshold", p, -kInf, -kInf);
    if (!v[k].contains("n")) fail(p, "missing key \"n\"");
    r.n = num(v[k], "n", p, 0.0);
    rules.push_back(r);
  }
  return rules;
}

ojson rules_json(const std::vector<ManningRule>& rules) {
  ojson a = ojson::array();
  for (const auto& r : rules) {
    ojson o;
    o["threshold"] = std::isfinite(r.threshold) ? ojson(r.threshold) : ojson(nullptr);
    o["n"] = r.n;
    a.push_back(o);
  }
  return a;
}

ojson finite_or_null(double v) { return std::isfinite(v) ? ojson(v) : ojson(nullptr); }

std::string resolve(const std::string& p, const std::filesystem::path& base) {
  if (p.empty()) return p;
  std::filesystem::path path(p);
  if (path.is_relative()) path = base / path;
  return path.lexically_normal().string();
}

const char* kind_name(BoundaryKind k) { return k == BoundaryKind::Wall ? "wall" : "outflow"; }

}  // namespace

int levenshtein(const std::string& a, const std::string& b) {
  std::vector<int> prev(b.size() + 1), cur(b.size() + 1);
  for (size_t j = 0; j <= b.size(); ++j) prev[j] = static_cast<int>(j);
  for (size_t i = 1; i <= a.size(); ++i) {
    cur[0] = static_cast<int>(i);
    for (size_t j = 1; j <= b.size(); ++j) {
      const int sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

std::string strip_comments(const std::string& text) {
  std::string out;
  out.reserve(text.size());
  bool in_string = false, escaped = false, in_comment = false;
  for (char c : text) {
    if (in_comment) {
      if (c == '\n') {
        in_comment = false;
        out += c;
      }
      continue;
    }
    if (in_string) {
      out += c;
      if (escaped) escaped = false;
      else if (c == '\\') escaped = true;
      else if (c == '"') in_string = false;
      continue;
    }
    if (c == '#') {
      in_comment = true;
      continue;
    }
    if (c == '"') in_string = true;
    out += c;
  }
  return out;
}

RunConfig parse_config(const json& doc, const std::filesystem::path& base_dir) {
  RunConfig cfg;
  check_keys(doc, "", {"domain", "physics", "friction", "amr", "refinement", "storm", "bathymetry", "time", "gauges",
                       "boundary", "sources", "solver", "initial_condition", "output_dir"});

  if (!section(doc, "domain")) fail("domain", "missing required section");
  {
    const json& d = doc.at("domain");
    const std::string p = "domain";
    check_keys(d, p, {"lon_min", "lon_max", "lat_min", "lat_max", "n_cells_x", "n_cells_y"});
    for (const char* k : {"lon_min", "lon_max", "lat_min", "lat_max", "n_cells_x", "n_cells_y"})
      if (!d.contains(k)) fail(p, std::string("missing key \"") + k + "\"");
    cfg.domain.lon_min = num(d, "lon_min", p, 0);
    cfg.domain.lon_max = num(d, "lon_max", p, 0);
    cfg.domain.lat_min = num(d, "lat_min", p, 0);
    cfg.domain.lat_max = num(d, "lat_max", p, 0);
    cfg.domain.n_cells_x = integer(d, "n_cells_x", p, 1);
    cfg.domain.n_cells_y = integer(d, "n_cells_y", p, 1);
  }

  if (const json* s = section(doc, "physics")) {
    const std::string p = "physics";
    check_keys(*s, p, {"g", "rho", "rho_air", "omega", "earth_radius", "dry_tolerance", "sea_level", "wind_depth_scaled", "wind_taper_depth"});
    PhysConfig& ph = cfg.phys;
    ph.g = num(*s, "g", p, ph.g);
    ph.rho = num(*s, "rho", p, ph.rho);
    ph.rho_air = num(*s, "rho_air", p, ph.rho_air);
    ph.omega = num(*s, "omega", p, ph.omega);
    ph.earth_radius = num(*s, "earth_radius", p, ph.earth_radius);
    ph.dry_tolerance = num(*s, "dry_tolerance", p, ph.dry_tolerance);
    ph.sea_level = num(*s, "sea_level", p, ph.sea_level);
    if (s->contains("wind_depth_scaled")) {
      if (!s->at("wind_depth_scaled").is_boolean()) fail(join(p, "wind_depth_scaled"), "expected a boolean");
      ph.wind_depth_scaled = s->at("wind_depth_scaled").get<bool>();
    }
    ph.wind_taper_depth = num(*s, "wind_taper_depth", p, ph.wind_taper_depth);
    if (!(ph.wind_taper_depth >= 0.0)) fail(join(p, "wind_taper_depth"), "must be >= 0");
  }

  if (const json* s = section(doc, "friction")) {
    const std::string p = "friction";
    check_keys(*s, p, {"h_break", "theta_f", "gamma_f", "law", "manning", "regions"});
    FrictionConfig& f = cfg.friction;
    f.h_break = num(*s, "h_break", p, f.h_break);
    f.theta_f = num(*s, "theta_f", p, f.theta_f);
    f.gamma_f = num(*s, "gamma_f", p, f.gamma_f);
    if (s->contains("law")) {
      const std::string law = str(*s, "law", p, "clamped");
      if (law == "clamped") f.clamped_bracket = true;
      else if (law == "hybrid") f.clamped_bracket = false;
      else fail(join(p, "law"), "expected \"clamped\" or \"hybrid\", got \"" + law + "\"");
    }
    if (s->contains("manning")) f.default_rules = parse_rules(s->at("manning"), join(p, "manning"));
    if (s->contains("regions")) {
      const json& r = s->at("regions");
      if (!r.is_array()) fail(join(p, "regions"), "expected an array");
      for (size_t k = 0; k < r.size(); ++k) {
        const std::string q = join(join(p, "regions"), k);
        check_keys(r[k], q, {"lon_min", "lon_max", "lat_min", "lat_max", "rules"});
        ManningRegion reg;
        reg.lon_min = num(r[k], "lon_min", q, 0);
        reg.lon_max = num(r[k], "lon_max", q, 0);
        reg.lat_min = num(r[k], "lat_min", q, 0);
        reg.lat_max = num(r[k], "lat_max", q, 0);
        if (!r[k].contains("rules")) fail(q, "missing key \"rules\"");
        reg.rules = parse_rules(r[k].at("rules"), join(q, "rules"));
        f.regions.push_back(reg);
      }
    }
  }

  if (const json* s = section(doc, "amr")) {
    const std::string p = "amr";
    check_keys(*s, p, {"max_levels", "ratios", "ratios_y", "regrid_interval", "min_fill", "flag_buffer",
                       "nesting_buffer", "reflux", "reflux_momentum", "courant", "dt_max"});
    AmrConfig& a = cfg.amr;
    a.max_levels = integer(*s, "max_levels", p, a.max_levels);
    a.ratio_x = int_list(*s, "ratios", p, {});
    a.ratio_y = s->contains("ratios_y") && !s->at("ratios_y").is_null() ? int_list(*s, "ratios_y", p, {}) : a.ratio_x;
    a.regrid_interval = integer(*s, "regrid_interval", p, a.regrid_interval);
    a.min_fill = num(*s, "min_fill", p, a.min_fill);
    a.flag_buffer = integer(*s, "flag_buffer", p, a.flag_buffer);
    a.nesting_buffer = integer(*s, "nesting_buffer", p, a.nesting_buffer);
    a.reflux = boolean(*s, "reflux", p, a.reflux);
    a.reflux_momentum = boolean(*s, "reflux_momentum", p, a.reflux_momentum);
    a.courant = num(*s, "courant", p, a.courant);
    a.dt_max = num_or_null(*s, "dt_max", p, a.dt_max, kInf);
  }

  if (const json* s = section(doc, "refinement")) {
    const std::string p = "refinement";
    check_keys(*s, p, {"T_wave", "T_speed", "T_r", "T_wind", "max_refine_depth", "regions"});
    RefinementCriteria& c = cfg.amr.criteria;
    c.wave_tolerance = num(*s, "T_wave", p, c.wave_tolerance);
    c.speed_tolerance = num_list(*s, "T_speed", p, {});
    c.eye_radius = num_list(*s, "T_r", p, {});
    c.wind_tolerance = num_list(*s, "T_wind", p, {});
    if (s->contains("max_refine_depth") && !s->at("max_refine_depth").is_null())
      c.max_refine_depth = num(*s, "max_refine_depth", p, 0);
    if (s->contains("regions")) {
      const json& r = s->at("regions");
      if (!r.is_array()) fail(join(p, "regions"), "expected an array");
      for (size_t k = 0; k < r.size(); ++k) {
        const std::string q = join(join(p, "regions"), k);
        check_keys(r[k], q, {"min_level", "max_level", "lon_min", "lon_max", "lat_min", "lat_max", "t_start", "t_end"});
        RegionConstraint rc;
        rc.min_level = integer(r[k], "min_level", q, rc.min_level);
        rc.max_level = integer(r[k], "max_level", q, rc.max_level);
        rc.lon_min = num(r[k], "lon_min", q, 0);
        rc.lon_max = num(r[k], "lon_max", q, 0);
        rc.lat_min = num(r[k], "lat_min", q, 0);
        rc.lat_max = num(r[k], "lat_max", q, 0);
        rc.t_start = num_or_null(r[k], "t_start", q, -kInf, -kInf);
        rc.t_end = num_or_null(r[k], "t_end", q, kInf, kInf);
        c.regions.push_back(rc);
      }
    }
  }

  if (const json* s = section(doc, "storm")) {
    const std::string p = "storm";
    check_keys(*s, p, {"track", "ambient_pressure", "ramp_width"});
    cfg.storm_track = resolve(str(*s, "track", p, ""), base_dir);
    cfg.storm.ambient_pressure = num(*s, "ambient_pressure", p, cfg.storm.ambient_pressure);
    cfg.storm.ramp_width = num(*s, "ramp_width", p, cfg.storm.ramp_width);
  }

  if (const json* s = section(doc, "bathymetry")) {
    const std::string p = "bathymetry";
    if (!s->is_array()) fail(p, "expected an array of {path, priority}");
    for (size_t k = 0; k < s->size(); ++k) {
      const std::string q = join(p, k);
      check_keys((*s)[k], q, {"path", "priority"});
      BathymetrySource b;
      b.path = resolve(str((*s)[k], "path", q, ""), base_dir);
      if (b.path.empty()) fail(q, "missing key \"path\"");
      b.priority = integer((*s)[k], "priority", q, 0);
      cfg.bathymetry.push_back(b);
    }
  }

  if (const json* s = section(doc, "time")) {
    const std::string p = "time";
    check_keys(*s, p, {"start", "end", "output_cadence"});
    cfg.t_start = num(*s, "start", p, cfg.t_start);
    cfg.t_end = num(*s, "end", p, cfg.t_end);
    cfg.output_cadence = num(*s, "output_cadence", p, cfg.output_cadence);
  }

  if (const json* s = section(doc, "gauges")) {
    const std::string p = "gauges";
    if (!s->is_array()) fail(p, "expected an array of {id, lon, lat}");
    for (size_t k = 0; k < s->size(); ++k) {
      const std::string q = join(p, k);
      check_keys((*s)[k], q, {"id", "lon", "lat"});
      for (const char* key : {"id", "lon", "lat"})
        if (!(*s)[k].contains(key)) fail(q, std::string("missing key \"") + key + "\"");
      cfg.gauges.push_back({integer((*s)[k], "id", q, 0), num((*s)[k], "lon", q, 0), num((*s)[k], "lat", q, 0)});
    }
  }

  if (const json* s = section(doc, "boundary")) {
    const std::string p = "boundary";
    check_keys(*s, p, {"west", "east", "south", "north"});
    cfg.amr.bc.west = boundary_kind(*s, "west", p);
    cfg.amr.bc.east = boundary_kind(*s, "east", p);
    cfg.amr.bc.south = boundary_kind(*s, "south", p);
    cfg.amr.bc.north = boundary_kind(*s, "north", p);
  }

  if (const json* s = section(doc, "sources")) {
    const std::string p = "sources";
    check_keys(*s, p, {"friction", "coriolis", "wind", "pressure"});
    cfg.toggles.friction = boolean(*s, "friction", p, true);
    cfg.toggles.coriolis = boolean(*s, "coriolis", p, true);
    cfg.toggles.wind = boolean(*s, "wind", p, true);
    cfg.toggles.pressure = boolean(*s, "pressure", p, true);
  }

  if (const json* s = section(doc, "solver")) {
    const std::string p = "solver";
    check_keys(*s, p, {"second_order", "mode"});
    cfg.second_order = boolean(*s, "second_order", p, true);
    const std::string m = str(*s, "mode", p, "parallel");
    if (m == "parallel") cfg.mode = SweepMode::Parallel;
    else if (m == "reference") cfg.mode = SweepMode::Reference;
    else fail(join(p, "mode"), "expected \"parallel\" or \"reference\"");
  }

  if (const json* s = section(doc, "initial_condition")) {
    const std::string p = "initial_condition";
    check_keys(*s, p, {"type", "axis", "position", "eta_left", "eta_right", "lon", "lat", "radius", "amplitude"});
    InitialConditionSpec& ic = cfg.initial_condition;
    ic.type = str(*s, "type", p, ic.type);
    if (ic.type != "lake_at_rest" && ic.type != "dam_break" && ic.type != "hump")
      fail(join(p, "type"), "expected \"lake_at_rest\", \"dam_break\" or \"hump\"");
    ic.axis = str(*s, "axis", p, ic.axis);
    if (ic.axis != "x" && ic.axis != "y") fail(join(p, "axis"), "expected \"x\" or \"y\"");
    ic.position = num(*s, "position", p, ic.position);
    ic.eta_left = num(*s, "eta_left", p, ic.eta_left);
    ic.eta_right = num(*s, "eta_right", p, ic.eta_right);
    ic.lon = num(*s, "lon", p, ic.lon);
    ic.lat = num(*s, "lat", p, ic.lat);
    ic.radius = num(*s, "radius", p, ic.radius);
    ic.amplitude = num(*s, "amplitude", p, ic.amplitude);
  }

  cfg.output_dir = str(doc, "output_dir", "", cfg.output_dir);
  cfg.storm.rho_air = cfg.phys.rho_air;
  cfg.storm.omega = cfg.phys.omega;
  cfg.storm.earth_radius = cfg.phys.earth_radius;
  return cfg;
}

RunConfig parse_config_text(const std::string& text, const std::filesystem::path& base_dir) {
  json doc;
  try {
    doc = json::parse(strip_comments(text));
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("malformed JSON: ") + e.what());
  }
  return parse_config(doc, base_dir);
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path.string() + ": cannot open config file");
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    RunConfig cfg = parse_config_text(ss.str(), path.parent_path().empty() ? "." : path.parent_path());
    validate_config(cfg);
    return cfg;
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

void validate_config(const RunConfig& cfg) {
  cfg.domain.validate();
  cfg.phys.validate();
  cfg.friction.validate();
  const AmrConfig& a = cfg.amr;
  if (a.max_levels < 1) fail("amr.max_levels", "must be >= 1");
  if (static_cast<int>(a.ratio_x.size()) < a.max_levels - 1)
    fail("amr.ratios", "needs max_levels - 1 = " + std::to_string(a.max_levels - 1) + " entries");
  if (static_cast<int>(a.ratio_y.size()) < a.max_levels - 1)
    fail("amr.ratios_y", "needs max_levels - 1 = " + std::to_string(a.max_levels - 1) + " entries");
  for (size_t k = 0; k < a.ratio_x.size(); ++k)
    if (a.ratio_x[k] < 1) fail(join("amr.ratios", k), "must be >= 1");
  for (size_t k = 0; k < a.ratio_y.size(); ++k)
    if (a.ratio_y[k] < 1) fail(join("amr.ratios_y", k), "must be >= 1");
  if (a.regrid_interval < 1) fail("amr.regrid_interval", "must be >= 1");
  if (!(a.min_fill > 0.0 && a.min_fill <= 1.0)) fail("amr.min_fill", "must lie in (0, 1]");
  if (a.flag_buffer < 0) fail("amr.flag_buffer", "must be >= 0");
  if (a.nesting_buffer < 1) fail("amr.nesting_buffer", "must be >= 1");
  if (!(a.courant > 0.0 && a.courant <= 1.0)) fail("amr.courant", "must lie in (0, 1]");
  if (!(a.dt_max > 0.0)) fail("amr.dt_max", "must be > 0");
  if (!(a.criteria.wave_tolerance > 0.0)) fail("refinement.T_wave", "must be > 0");
  for (size_t k = 0; k < a.criteria.regions.size(); ++k) {
    const auto& r = a.criteria.regions[k];
    const std::string q = join("refinement.regions", k);
    if (!(r.lon_min < r.lon_max && r.lat_min < r.lat_max)) fail(q, "empty rectangle");
    if (r.min_level < 1 || r.max_level < r.min_level) fail(q, "need 1 <= min_level <= max_level");
    if (!(r.t_start <= r.t_end)) fail(q, "t_start must be <= t_end");
  }
  if (!(cfg.t_end > cfg.t_start)) fail("time", "end must be > start");
  if (!(cfg.output_cadence > 0.0)) fail("time.output_cadence", "must be > 0");
  if (!(cfg.storm.ambient_pressure > 0.0)) fail("storm.ambient_pressure", "must be > 0");
  if (!(cfg.storm.ramp_width > 0.0)) fail("storm.ramp_width", "must be > 0");
  if (cfg.bathymetry.empty()) fail("bathymetry", "at least one raster is required");
  for (size_t k = 0; k < cfg.bathymetry.size(); ++k)
    if (!std::filesystem::exists(cfg.bathymetry[k].path))
      fail(join("bathymetry", k) + ".path", "file not found: " + cfg.bathymetry[k].path);
  if (!cfg.storm_track.empty() && !std::filesystem::exists(cfg.storm_track))
    fail("storm.track", "file not found: " + cfg.storm_track);
  for (size_t k = 0; k < cfg.gauges.size(); ++k) {
    const auto& g = cfg.gauges[k];
    if (!(g.lon >= cfg.domain.lon_min && g.lon <= cfg.domain.lon_max && g.lat >= cfg.domain.lat_min &&
          g.lat <= cfg.domain.lat_max))
      fail(join("gauges", k), "gauge " + std::to_string(g.id) + " lies outside the domain");
    for (size_t m = 0; m < k; ++m)
      if (cfg.gauges[m].id == g.id) fail(join("gauges", k), "duplicate gauge id " + std::to_string(g.id));
  }
}

ojson to_json(const RunConfig& cfg) {
  ojson doc;
  doc["domain"] = {{"lon_min", cfg.domain.lon_min}, {"lon_max", cfg.domain.lon_max},
                   {"lat_min", cfg.domain.lat_min}, {"lat_max", cfg.domain.lat_max},
                   {"n_cells_x", cfg.domain.n_cells_x}, {"n_cells_y", cfg.domain.n_cells_y}};
  const PhysConfig& ph = cfg.phys;
  doc["physics"] = {{"g", ph.g}, {"rho", ph.rho}, {"rho_air", ph.rho_air}, {"omega", ph.omega},
                    {"earth_radius", ph.earth_radius}, {"dry_tolerance", ph.dry_tolerance},
                    {"sea_level", ph.sea_level}, {"wind_depth_scaled", ph.wind_depth_scaled}, {"wind_taper_depth", ph.wind_taper_depth}};
  ojson regions = ojson::array();
  for (const auto& r : cfg.friction.regions) {
    ojson o;
    o["lon_min"] = r.lon_min;
    o["lon_max"] = r.lon_max;
    o["lat_min"] = r.lat_min;
    o["lat_max"] = r.lat_max;
    o["rules"] = rules_json(r.rules);
    regions.push_back(o);
  }
  doc["friction"] = {{"h_break", cfg.friction.h_break}, {"theta_f", cfg.friction.theta_f},
                     {"gamma_f", cfg.friction.gamma_f}, {"law", cfg.friction.clamped_bracket ? "clamped" : "hybrid"}, {"manning", rules_json(cfg.friction.default_rules)},
                     {"regions", regions}};
  const AmrConfig& a = cfg.amr;
  doc["amr"] = {{"max_levels", a.max_levels}, {"ratios", a.ratio_x}, {"ratios_y", a.ratio_y},
                {"regrid_interval", a.regrid_interval}, {"min_fill", a.min_fill}, {"flag_buffer", a.flag_buffer},
                {"nesting_buffer", a.nesting_buffer}, {"reflux", a.reflux}, {"reflux_momentum", a.reflux_momentum},
                {"courant", a.courant}, {"dt_max", finite_or_null(a.dt_max)}};
  ojson rregions = ojson::array();
  for (const auto& r : a.criteria.regions) {
    ojson o;
    o["min_level"] = r.min_level;
    o["max_level"] = r.max_level;
    o["lon_min"] = r.lon_min;
    o["lon_max"] = r.lon_max;
    o["lat_min"] = r.lat_min;
    o["lat_max"] = r.lat_max;
    o["t_start"] = finite_or_null(r.t_start);
    o["t_end"] = finite_or_null(r.t_end);
    rregions.push_back(o);
  }
  doc["refinement"] = {{"T_wave", a.criteria.wave_tolerance}, {"T_speed", a.criteria.speed_tolerance},
                       {"T_r", a.criteria.eye_radius}, {"T_wind", a.criteria.wind_tolerance},
                       {"max_refine_depth", a.criteria.max_refine_depth ? ojson(*a.criteria.max_refine_depth)
                                                                        : ojson(nullptr)},
                       {"regions", rregions}};
  doc["storm"] = {{"track", cfg.storm_track.empty() ? ojson(nullptr) : ojson(cfg.storm_track)},
                  {"ambient_pressure", cfg.storm.ambient_pressure}, {"ramp_width", cfg.storm.ramp_width}};
  ojson bathy = ojson::array();
  for (const auto& b : cfg.bathymetry) bathy.push_back({{"path", b.path}, {"priority", b.priority}});
  doc["bathymetry"] = bathy;
  doc["time"] = {{"start", cfg.t_start}, {"end", cfg.t_end}, {"output_cadence", cfg.output_cadence}};
  ojson gauges = ojson::array();
  for (const auto& g : cfg.gauges) gauges.push_back({{"id", g.id}, {"lon", g.lon}, {"lat", g.lat}});
  doc["gauges"] = gauges;
  doc["boundary"] = {{"west", kind_name(a.bc.west)}, {"east", kind_name(a.bc.east)},
                     {"south", kind_name(a.bc.south)}, {"north", kind_name(a.bc.north)}};
  doc["sources"] = {{"friction", cfg.toggles.friction}, {"coriolis", cfg.toggles.coriolis},
                    {"wind", cfg.toggles.wind}, {"pressure", cfg.toggles.pressure}};
  doc["solver"] = {{"second_order", cfg.second_order},
                   {"mode", cfg.mode == SweepMode::Parallel ? "parallel" : "reference"}};
  const InitialConditionSpec& ic = cfg.initial_condition;
  doc["initial_condition"] = {{"type", ic.type}, {"axis", ic.axis}, {"position", ic.position},
                              {"eta_left", ic.eta_left}, {"eta_right", ic.eta_right}, {"lon", ic.lon},
                              {"lat", ic.lat}, {"radius", ic.radius}, {"amplitude", ic.amplitude}};
  doc["output_dir"] = cfg.output_dir;
  return doc;
}

InitialCondition make_initial_condition(const RunConfig& cfg) {
  const InitialConditionSpec ic = cfg.initial_condition;
  const double sea = cfg.phys.sea_level;
  const double tol = cfg.phys.dry_tolerance;
  return [ic, sea, tol](Patch& p) {
    initialize_lake_at_rest(p, sea);
    if (ic.type == "lake_at_rest") return;
    const int gw = p.h.ghost();
    for (int j = -gw; j < p.ny() + gw; ++j)
      for (int i = -gw; i < p.nx() + gw; ++i) {
        double eta = sea;
        if (ic.type == "dam_break") {
          const double x = ic.axis == "x" ? p.lon(i) : p.lat(j);
          eta = x < ic.position ? ic.eta_left : ic.eta_right;
        } else if (p.b(i, j) < sea) {
          const double dx = p.lon(i) - ic.lon, dy = p.lat(j) - ic.lat;
          eta = sea + ic.amplitude * std::exp(-(dx * dx + dy * dy) / (ic.radius * ic.radius));
        }
        const double h = std::max(0.0, eta - p.b(i, j));
        p.h(i, j) = h < tol ? 0.0 : h;
      }
  };
}

}  // namespace surge
