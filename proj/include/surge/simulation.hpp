#pragma once

#include <filesystem>
#include <future>
#include <memory>
#include <string>
#include <vector>

#include "surge/amr.hpp"
#include "surge/config.hpp"
#include "surge/io.hpp"

namespace surge {

struct RunStats {
  long long coarse_steps = 0;
  long long cfl_retries = 0;
  int frames = 0;
  int finest_level_reached = 1;
  std::vector<long long> cell_steps;  // per level
  long long total_cell_steps = 0;
  double uniform_finest_cell_steps = 0.0;
  double mass_initial = 0.0;
  double mass_final = 0.0;
  double wall_seconds = 0.0;
};

/// Runs a configured experiment: owns rasters, storm, hierarchy and gauges.
class Simulation {
 public:
  /// Reads rasters and the storm track named in the config.
  explicit Simulation(RunConfig cfg);
  /// Uses in-memory inputs (tests and generated scenarios).
  Simulation(RunConfig cfg, Bathymetry bathymetry, StormModel storm);
  Simulation(const Simulation&) = delete;
  Simulation& operator=(const Simulation&) = delete;

  void initialize(const InitialCondition* ic = nullptr);
  /// One level-1 step; on a CFL violation the hierarchy is restored and the
  /// step retried with 0.75 dt. Returns the dt taken.
  double step();
  /// Steps to t_end. With an output directory, writes frames at the cadence,
  /// gauges, cells_per_level.csv, stats.json and run_metadata.json.
  RunStats run(const std::filesystem::path& outdir = {});

  const RunConfig& config() const { return cfg_; }
  LevelHierarchy& hierarchy() { return hierarchy_; }
  const LevelHierarchy& hierarchy() const { return hierarchy_; }
  const std::vector<Gauge>& gauges() const { return gauges_; }
  const RunStats& stats() const { return stats_; }
  const Bathymetry& bathymetry() const { return *bathymetry_; }

  /// Cell count of the uniform finest grid times its step count over the run.
  double uniform_finest_estimate(int finest_level) const;

  /// Output directory after applying the SURGE_OUTPUT_DIR override.
  static std::filesystem::path resolve_output_dir(const RunConfig& cfg);

 private:
  void build_hierarchy();
  void on_level_step(int level, double t);

  RunConfig cfg_;
  std::unique_ptr<Bathymetry> bathymetry_;
  std::unique_ptr<StormModel> storm_;
  LevelHierarchy hierarchy_;
  std::vector<Gauge> gauges_;
  RunStats stats_;
  double max_depth_ = 0.0;
};

std::string code_version();

}  // namespace surge
