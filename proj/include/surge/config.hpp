#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"
#include "surge/amr.hpp"
#include "surge/sources.hpp"
#include "surge/storm.hpp"

namespace surge {

struct BathymetrySource {
  std::string path;
  int priority = 0;  // larger wins where rasters overlap
};

struct GaugeSpec {
  int id = 0;
  double lon = 0.0;
  double lat = 0.0;
};

/// Initial state. `lake_at_rest` (default), `dam_break` (surface eta_left /
/// eta_right split at `position` along `axis`, degrees) or `hump` (Gaussian
/// surface bump of `amplitude` and e-folding `radius` degrees on sea level).
struct InitialConditionSpec {
  std::string type = "lake_at_rest";
  std::string axis = "x";
  double position = 0.0;
  double eta_left = 0.0;
  double eta_right = 0.0;
  double lon = 0.0;
  double lat = 0.0;
  double radius = 1.0;
  double amplitude = 0.0;
};

struct RunConfig {
  GeoDomain domain;
  PhysConfig phys;
  FrictionConfig friction;
  AmrConfig amr;
  std::string storm_track;  // empty: no atmospheric forcing
  StormParams storm;
  std::vector<BathymetrySource> bathymetry;
  double t_start = 0.0;
  double t_end = 86400.0;
  double output_cadence = 3600.0;
  std::vector<GaugeSpec> gauges;
  std::string output_dir = "surge_output";
  SourceToggles toggles;
  bool second_order = true;
  SweepMode mode = SweepMode::Parallel;
  InitialConditionSpec initial_condition;
};

/// Removes `#` comments outside string literals.
std::string strip_comments(const std::string& text);

/// Parses a config document. Relative file paths are resolved against
/// `base_dir`. Throws ConfigError with a field path on any problem.
RunConfig parse_config(const nlohmann::json& doc, const std::filesystem::path& base_dir = ".");
RunConfig parse_config_text(const std::string& text, const std::filesystem::path& base_dir = ".");
RunConfig load_config(const std::filesystem::path& path);

/// Invariants plus existence of referenced files and gauges inside the domain.
void validate_config(const RunConfig& cfg);

/// Fully resolved config; itself a valid config document.
nlohmann::ordered_json to_json(const RunConfig& cfg);

int levenshtein(const std::string& a, const std::string& b);

/// Initial-condition functor for the hierarchy.
InitialCondition make_initial_condition(const RunConfig& cfg);

}  // namespace surge
