#include <algorithm>
#include <cmath>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "surge/config.hpp"
#include "surge/io.hpp"
#include "surge/simulation.hpp"

namespace fs = std::filesystem;
using namespace surge;

namespace {

// one greppable line per failure
int report(const std::string& kind, std::string msg, int code) {
  std::replace(msg.begin(), msg.end(), '\n', ' ');
  std::cerr << "surge: error: " << kind << ": " << msg << '\n';
  return code;
}

int cmd_check(const std::string& path) {
  const RunConfig cfg = load_config(path);
  // inputs must parse too
  Simulation sim(cfg);
  std::cout << to_json(cfg).dump(2) << '\n';
  return 0;
}

int cmd_run(const std::string& path, const std::string& out_override, bool quiet) {
  const RunConfig cfg = load_config(path);
  if (quiet) set_warnings_muted(true);
  Simulation sim(cfg);
  const fs::path outdir = out_override.empty() ? Simulation::resolve_output_dir(cfg) : fs::path(out_override);
  const RunStats s = sim.run(outdir);
  if (!quiet) {
    std::cout << "steps " << s.coarse_steps << ", frames " << s.frames << ", finest level " << s.finest_level_reached
              << ", cell-steps " << s.total_cell_steps << " (" << 100.0 * s.total_cell_steps / s.uniform_finest_cell_steps
              << "% of uniform finest), output " << outdir.string() << '\n';
  }
  return 0;
}

int cmd_plot(const std::string& outdir, int frame, const std::string& var_name, std::string out, double lo, double hi) {
  const RenderVar var = parse_render_var(var_name);
  const int n = count_frames(outdir);
  if (frame < 0 || frame >= n) {
    if (n == 0) throw InputError("no frames in " + outdir);
    throw InputError("frame " + std::to_string(frame) + " out of range [0, " + std::to_string(n - 1) + "]");
  }
  RenderBounds b = default_bounds(var);
  if (!std::isnan(lo)) b.lo = lo;
  if (!std::isnan(hi)) b.hi = hi;
  const Frame f = read_frame(outdir, frame);
  const Image img = render_raster(f, var, b);
  if (out.empty()) {
    char name[64];
    std::snprintf(name, sizeof name, "plot_%s_%04d.ppm", render_var_name(var), frame);
    out = (fs::path(outdir) / "plots" / name).string();
  }
  write_ppm(img, out);
  write_scale_sidecar(var, b, out + ".scale.txt");
  std::cout << out << '\n';
  return 0;
}

int cmd_gauges(const std::string& outdir, int id, bool has_id) {
  std::vector<std::pair<int, fs::path>> files;
  if (!fs::is_directory(outdir)) throw InputError(outdir + ": not a directory");
  for (const auto& e : fs::directory_iterator(outdir)) {
    const std::string name = e.path().filename().string();
    if (name.rfind("gauge_", 0) != 0 || e.path().extension() != ".csv") continue;
    const std::string num = name.substr(6, name.size() - 10);
    try {
      files.emplace_back(std::stoi(num), e.path());
    } catch (const std::exception&) {
    }
  }
  std::sort(files.begin(), files.end());
  if (has_id) {
    std::erase_if(files, [id](const auto& f) { return f.first != id; });
    if (files.empty()) throw InputError("no gauge with id " + std::to_string(id) + " in " + outdir);
  }
  std::cout << "id,t,level,h,hu,hv,eta\n";
  char buf[256];
  for (const auto& [gid, path] : files)
    for (const auto& r : read_gauge_csv(path)) {
      std::snprintf(buf, sizeof buf, "%d,%.17g,%d,%.17g,%.17g,%.17g,%.17g\n", gid, r.t, r.level, r.h, r.hu, r.hv, r.eta);
      std::cout << buf;
    }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Adaptive storm-surge simulator"};
  app.require_subcommand(1);

  std::string config_path, out_dir;
  bool quiet = false;
  auto* run = app.add_subcommand("run", "simulate and write frames, gauges and statistics");
  run->add_option("config", config_path, "run configuration (JSON)")->required();
  run->add_option("--output", out_dir, "output directory (overrides config and SURGE_OUTPUT_DIR)");
  run->add_flag("--quiet", quiet, "suppress progress and warnings");

  std::string plot_dir, var = "eta", plot_out;
  int frame = 0;
  double lo = std::nan(""), hi = std::nan("");
  auto* plot = app.add_subcommand("plot", "render a frame to a PPM raster");
  plot->add_option("outdir", plot_dir, "run output directory")->required();
  plot->add_option("--frame", frame, "frame index")->required();
  plot->add_option("--var", var, "eta | speed | level");
  plot->add_option("--out", plot_out, "image path");
  plot->add_option("--min", lo, "lower colour bound");
  plot->add_option("--max", hi, "upper colour bound");

  std::string gauge_dir;
  int gauge_id = 0;
  bool csv = false;
  auto* gauges = app.add_subcommand("gauges", "export gauge series");
  gauges->add_option("outdir", gauge_dir, "run output directory")->required();
  auto* id_opt = gauges->add_option("--id", gauge_id, "gauge id");
  gauges->add_flag("--csv", csv, "CSV output (the only format)");

  std::string check_path;
  auto* check = app.add_subcommand("check", "validate a configuration and its inputs");
  check->add_option("config", check_path, "run configuration (JSON)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return report("usage", e.what(), 64);
  }

  try {
    if (*run) return cmd_run(config_path, out_dir, quiet);
    if (*plot) return cmd_plot(plot_dir, frame, var, plot_out, lo, hi);
    if (*gauges) return cmd_gauges(gauge_dir, gauge_id, id_opt->count() > 0);
    if (*check) return cmd_check(check_path);
  } catch (const ConfigError& e) {
    return report("config", e.what(), 2);
  } catch (const InputError& e) {
    return report("input", e.what(), 3);
  } catch (const NestingError& e) {
    return report("nesting", e.what(), 4);
  } catch (const std::exception& e) {
    return report("runtime", e.what(), 1);
  }
  return 0;
}
