#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct Result {
  int code = -1;
  std::string out;
};

// runs the CLI with stderr folded into stdout
Result run(const std::string& args) {
  const std::string cmd = std::string(SURGE_CLI_PATH) + " " + args + " 2>&1";
  Result r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  std::array<char, 4096> buf{};
  size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("surge_cli_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

// tiny closed basin: quick to run, writes two frames and one gauge
void write_small_case(const fs::path& dir) {
  std::ofstream(dir / "bed.asc") << "ncols 3\nnrows 3\nxllcorner -2\nyllcorner -2\ncellsize 2\n"
                                    "-10 -10 -10\n-10 -10 -10\n-10 -10 -10\n";
  std::ofstream(dir / "case.json") << R"({
    "domain": {"lon_min": -1, "lon_max": 1, "lat_min": -1, "lat_max": 1, "n_cells_x": 10, "n_cells_y": 10},
    "bathymetry": [{"path": "bed.asc"}],
    "boundary": {"west": "wall", "east": "wall", "south": "wall", "north": "wall"},
    "initial_condition": {"type": "hump", "lon": 0, "lat": 0, "radius": 0.3, "amplitude": 0.5},
    "sources": {"friction": false, "coriolis": false, "wind": false, "pressure": false},
    "time": {"end": 4000, "output_cadence": 2000},
    "gauges": [{"id": 5, "lon": 0.1, "lat": 0.1}]
  })";
}

}  // namespace

TEST(Cli, UsageErrorsExitWith64) {
  EXPECT_EQ(run("").code, 64);
  EXPECT_EQ(run("frobnicate").code, 64);
  EXPECT_EQ(run("plot /tmp").code, 64);  // missing --frame
  EXPECT_EQ(run("--help").code, 0);
}

TEST(Cli, ConfigAndInputErrors) {
  const fs::path dir = scratch("errors");
  std::ofstream(dir / "bad.json") << R"({"domain": {"lon_min": 0}, "Twave": 1})";
  const Result bad = run("check " + (dir / "bad.json").string());
  EXPECT_EQ(bad.code, 2) << bad.out;
  EXPECT_NE(bad.out.find("surge: error: config"), std::string::npos);
  std::ofstream(dir / "nofile.json")
      << R"({"domain": {"lon_min": 0, "lon_max": 1, "lat_min": 0, "lat_max": 1, "n_cells_x": 2, "n_cells_y": 2},
            "bathymetry": [{"path": "missing.asc"}]})";
  const int missing = run("check " + (dir / "nofile.json").string()).code;
  EXPECT_TRUE(missing == 2 || missing == 3) << missing;
  EXPECT_EQ(run("plot " + dir.string() + " --frame 0").code, 3);
  EXPECT_EQ(run("gauges " + (dir / "nope").string()).code, 3);
  fs::remove_all(dir);
}

TEST(Cli, RunPlotGaugesRoundTrip) {
  const fs::path dir = scratch("run");
  write_small_case(dir);
  const Result chk = run("check " + (dir / "case.json").string());
  ASSERT_EQ(chk.code, 0) << chk.out;
  EXPECT_NE(chk.out.find("\"domain\""), std::string::npos);

  const fs::path out = dir / "out";
  const Result r = run("run " + (dir / "case.json").string() + " --quiet --output " + out.string());
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_TRUE(fs::exists(out / "stats.json"));
  EXPECT_TRUE(fs::exists(out / "gauge_5.csv"));

  const Result p = run("plot " + out.string() + " --frame 1 --var speed");
  ASSERT_EQ(p.code, 0) << p.out;
  EXPECT_TRUE(fs::exists(out / "plots" / "plot_speed_0001.ppm"));
  EXPECT_TRUE(fs::exists(out / "plots" / "plot_speed_0001.ppm.scale.txt"));
  EXPECT_EQ(run("plot " + out.string() + " --frame 99").code, 3);
  EXPECT_EQ(run("plot " + out.string() + " --frame 0 --var bogus").code, 3);

  const Result g = run("gauges " + out.string() + " --id 5 --csv");
  ASSERT_EQ(g.code, 0) << g.out;
  EXPECT_EQ(g.out.rfind("id,t,level,h,hu,hv,eta\n", 0), 0u);
  EXPECT_NE(g.out.find("\n5,"), std::string::npos);
  EXPECT_EQ(run("gauges " + out.string() + " --id 6").code, 3);
  fs::remove_all(dir);
}
