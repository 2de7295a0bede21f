#include "surge/simulation.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>

#include "json.hpp"

namespace surge {

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

std::string code_version() { return "surge 0.1.0"; }

namespace {

Bathymetry load_bathymetry(const RunConfig& cfg) {
  std::vector<BathymetrySource> order = cfg.bathymetry;
  std::stable_sort(order.begin(), order.end(),
                   [](const BathymetrySource& a, const BathymetrySource& b) { return a.priority > b.priority; });
  std::vector<EsriRaster> rasters;
  for (const auto& s : order) rasters.push_back(read_esri_ascii(s.path));
  return Bathymetry(std::move(rasters));
}

StormModel load_storm(const RunConfig& cfg) {
  if (cfg.storm_track.empty()) return StormModel({}, cfg.storm);
  auto track = read_storm_track(cfg.storm_track);
  validate_track(track, cfg.storm.ambient_pressure, cfg.storm_track);
  return StormModel(std::move(track), cfg.storm);
}

}  // namespace

Simulation::Simulation(RunConfig cfg) : cfg_(std::move(cfg)) {
  bathymetry_ = std::make_unique<Bathymetry>(load_bathymetry(cfg_));
  storm_ = std::make_unique<StormModel>(load_storm(cfg_));
  build_hierarchy();
}

Simulation::Simulation(RunConfig cfg, Bathymetry bathymetry, StormModel storm)
    : cfg_(std::move(cfg)),
      bathymetry_(std::make_unique<Bathymetry>(std::move(bathymetry))),
      storm_(std::make_unique<StormModel>(std::move(storm))) {
  build_hierarchy();
}

void Simulation::build_hierarchy() {
  cfg_.storm.rho_air = cfg_.phys.rho_air;
  cfg_.storm.omega = cfg_.phys.omega;
  cfg_.storm.earth_radius = cfg_.phys.earth_radius;
  HierarchyInputs in;
  in.domain = cfg_.domain;
  in.phys = cfg_.phys;
  in.amr = cfg_.amr;
  in.bathymetry = bathymetry_.get();
  in.friction = &cfg_.friction;
  in.storm = storm_.get();
  in.toggles = cfg_.toggles;
  in.solver.second_order = cfg_.second_order;
  in.solver.mode = cfg_.mode;
  hierarchy_ = LevelHierarchy(std::move(in));
  hierarchy_.on_level_step = [this](int l, double t) { on_level_step(l, t); };
  gauges_.clear();
  for (const auto& g : cfg_.gauges) gauges_.push_back({g, {}});
}

void Simulation::on_level_step(int level, double t) {
  for (auto& g : gauges_) record_gauge(hierarchy_, g, level, t);
}

void Simulation::initialize(const InitialCondition* ic) {
  const InitialCondition def = make_initial_condition(cfg_);
  hierarchy_.initialize(cfg_.t_start, ic ? *ic : def);
  for (auto& g : gauges_) {
    g.records.clear();
    const auto loc = hierarchy_.locate(g.spec.lon, g.spec.lat);
    if (loc.level > 0) record_gauge(hierarchy_, g, loc.level, cfg_.t_start);
  }
  stats_ = {};
  stats_.finest_level_reached = hierarchy_.num_levels();
  stats_.mass_initial = hierarchy_.composite_mass();
  max_depth_ = 0.0;
  for (const auto& p : hierarchy_.level(1).patches)
    for (int j = 0; j < p.ny(); ++j)
      for (int i = 0; i < p.nx(); ++i) max_depth_ = std::max(max_depth_, p.h(i, j));
}

double Simulation::step() {
  const double remaining = cfg_.t_end - hierarchy_.time();
  double dt = std::min({hierarchy_.stable_dt(), cfg_.amr.dt_max, remaining});
  if (!(dt > 0.0) || !std::isfinite(dt)) throw std::runtime_error("no admissible time step");
  for (int attempt = 0;; ++attempt) {
    const LevelHierarchy snapshot = hierarchy_;
    std::vector<size_t> sizes;
    for (const auto& g : gauges_) sizes.push_back(g.records.size());
    try {
      // the final step lands exactly on t_end
      if (dt >= remaining) {
        hierarchy_.advance(remaining);
        dt = remaining;
      } else {
        hierarchy_.advance(dt);
      }
      break;
    } catch (const CflViolation& e) {
      hierarchy_ = snapshot;
      hierarchy_.on_level_step = [this](int l, double t) { on_level_step(l, t); };
      for (size_t k = 0; k < gauges_.size(); ++k) gauges_[k].records.resize(sizes[k]);
      ++stats_.cfl_retries;
      if (attempt >= 40) throw std::runtime_error(std::string("step rejected repeatedly: ") + e.what());
      dt *= 0.75;
    }
  }
  ++stats_.coarse_steps;
  stats_.finest_level_reached = std::max(stats_.finest_level_reached, hierarchy_.num_levels());
  return dt;
}

double Simulation::uniform_finest_estimate(int finest_level) const {
  const LevelGeometry& g = hierarchy_.level(finest_level).geometry;
  const double cells = static_cast<double>(g.cells_x()) * g.cells_y();
  const double lat = std::max(std::abs(cfg_.domain.lat_min), std::abs(cfg_.domain.lat_max));
  const auto m = cell_size_meters(lat, g.dlon(), g.dlat(), cfg_.phys.earth_radius);
  const double speed = std::sqrt(cfg_.phys.g * std::max(max_depth_, cfg_.phys.dry_tolerance));
  const double dt_u = 0.9 * std::min(m.dx_m, m.dy_m) / speed;
  return cells * std::ceil((cfg_.t_end - cfg_.t_start) / dt_u);
}

fs::path Simulation::resolve_output_dir(const RunConfig& cfg) {
  if (const char* env = std::getenv("SURGE_OUTPUT_DIR"); env && *env) return env;
  return cfg.output_dir;
}

RunStats Simulation::run(const fs::path& outdir) {
  const auto wall0 = std::chrono::steady_clock::now();
  if (hierarchy_.num_levels() == 0) initialize();
  const bool write = !outdir.empty();
  std::ofstream cells_csv;
  std::future<void> pending;
  auto emit_frame = [&]() {
    Frame f = snapshot_frame(hierarchy_, stats_.frames++);
    if (pending.valid()) pending.get();
    pending = std::async(std::launch::async, [f = std::move(f), outdir]() { write_frame(f, outdir); });
  };
  auto log_cells = [&]() {
    for (int l = 1; l <= hierarchy_.num_levels(); ++l) {
      long long cells = 0;
      for (const auto& p : hierarchy_.level(l).patches) cells += p.box().size();
      cells_csv << std::setprecision(17) << hierarchy_.time() << ',' << l << ','
                << hierarchy_.level(l).patches.size() << ',' << cells << '\n';
    }
  };
  if (write) {
    fs::create_directories(outdir);
    ojson meta;
    meta["version"] = code_version();
    meta["config"] = to_json(cfg_);
    meta["sea_level"] = cfg_.phys.sea_level;
    std::ofstream(outdir / "run_metadata.json") << meta.dump(2) << '\n';
    cells_csv.open(outdir / "cells_per_level.csv");
    cells_csv << "t,level,patches,cells\n";
    log_cells();
    emit_frame();
  }

  double next_output = cfg_.t_start + cfg_.output_cadence;
  while (hierarchy_.time() < cfg_.t_end) {
    step();
    if (write) {
      log_cells();
      if (hierarchy_.time() >= next_output || hierarchy_.time() >= cfg_.t_end) {
        emit_frame();
        while (next_output <= hierarchy_.time()) next_output += cfg_.output_cadence;
      }
    }
  }
  if (pending.valid()) pending.get();

  stats_.cell_steps.clear();
  stats_.total_cell_steps = 0;
  for (int l = 1; l <= hierarchy_.max_levels(); ++l) {
    stats_.cell_steps.push_back(hierarchy_.level(l).cell_steps);
    stats_.total_cell_steps += hierarchy_.level(l).cell_steps;
  }
  stats_.uniform_finest_cell_steps = uniform_finest_estimate(stats_.finest_level_reached);
  stats_.mass_final = hierarchy_.composite_mass();
  stats_.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - wall0).count();

  if (write) {
    for (const auto& g : gauges_) write_gauge_csv(g, outdir / ("gauge_" + std::to_string(g.spec.id) + ".csv"));
    const MassLog& ml = hierarchy_.mass_log();
    ojson s;
    s["coarse_steps"] = stats_.coarse_steps;
    s["cfl_retries"] = stats_.cfl_retries;
    s["frames"] = stats_.frames;
    s["finest_level_reached"] = stats_.finest_level_reached;
    s["cell_steps_per_level"] = stats_.cell_steps;
    s["total_cell_steps"] = stats_.total_cell_steps;
    s["uniform_finest_cell_steps"] = stats_.uniform_finest_cell_steps;
    s["cost_ratio"] = stats_.total_cell_steps / stats_.uniform_finest_cell_steps;
    s["mass_initial"] = stats_.mass_initial;
    s["mass_final"] = stats_.mass_final;
    s["mass_relative_drift"] = (stats_.mass_final - stats_.mass_initial) / stats_.mass_initial;
    s["regrids"] = ml.regrids;
    s["regrid_mass_change"] = ml.regrid_change;
    s["regrid_mass_change_abs"] = ml.regrid_change_abs;
    s["regrid_mass_change_abs_percent"] = 100.0 * ml.regrid_change_abs / stats_.mass_initial;
    s["skipped_reflux_mass"] = ml.skipped_reflux;
    s["time_ratios"] = hierarchy_.time_ratios();
    s["wall_seconds"] = stats_.wall_seconds;
    std::ofstream(outdir / "stats.json") << s.dump(2) << '\n';
  }
  return stats_;
}

}  // namespace surge
