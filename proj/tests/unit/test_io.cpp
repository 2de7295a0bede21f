#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <set>

#include "../support/scenarios.hpp"
#include "surge/io.hpp"

using namespace surge;
using namespace surge::testing;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("surge_io_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

}  // namespace

TEST(Frames, WriteReadRoundTripIsBitwise) {
  auto sim = closed_basin_dam_break(2).make();
  sim->initialize();
  for (int k = 0; k < 3; ++k) sim->step();
  const Frame a = snapshot_frame(sim->hierarchy(), 4);
  const fs::path dir = scratch("frames");
  write_frame(a, dir);
  EXPECT_TRUE(fs::exists(frame_manifest_path(dir, 4)));
  const Frame b = read_frame(dir, 4);
  EXPECT_EQ(b.time, a.time);
  ASSERT_EQ(a.patches.size(), b.patches.size());
  for (size_t k = 0; k < a.patches.size(); ++k) {
    EXPECT_EQ(a.patches[k].level, b.patches[k].level);
    EXPECT_EQ(a.patches[k].box, b.patches[k].box);
    EXPECT_EQ(a.patches[k].h, b.patches[k].h);
    EXPECT_EQ(a.patches[k].hu, b.patches[k].hu);
    EXPECT_EQ(a.patches[k].b, b.patches[k].b);
  }
  EXPECT_EQ(a.level_counts(), b.level_counts());
  EXPECT_EQ(count_frames(dir), 0);  // frame 0 missing
  fs::remove_all(dir);
}

TEST(Gauges, OnlyFinestLevelRecords) {
  auto sim = seamount_lake_at_rest().make();
  sim->initialize();
  Gauge g{{1, 0.0, 0.0}, {}};  // inside the forced level-3 box
  EXPECT_FALSE(record_gauge(sim->hierarchy(), g, 1, 10.0));
  EXPECT_FALSE(record_gauge(sim->hierarchy(), g, 2, 10.0));
  EXPECT_TRUE(record_gauge(sim->hierarchy(), g, 3, 10.0));
  EXPECT_FALSE(record_gauge(sim->hierarchy(), g, 3, 10.0));  // time must advance
  ASSERT_EQ(g.records.size(), 1u);
  EXPECT_EQ(g.records[0].level, 3);
  Gauge far{{2, -1.9, -1.9}, {}};
  EXPECT_TRUE(record_gauge(sim->hierarchy(), far, 1, 10.0));

  const fs::path dir = scratch("gauges");
  g.records.push_back({20.0, 3, 1.0 / 3.0, 1e-17, -2.5, 0.1});
  write_gauge_csv(g, dir / "gauge_1.csv");
  const auto back = read_gauge_csv(dir / "gauge_1.csv");
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[1].h, 1.0 / 3.0);
  EXPECT_EQ(back[1].hu, 1e-17);
  fs::remove_all(dir);
}

TEST(Render, DeterministicAndShowsEveryLevel) {
  auto sim = seamount_lake_at_rest().make();
  sim->initialize();
  const Frame f = snapshot_frame(sim->hierarchy(), 0);
  const Image a = render_raster(f, RenderVar::Level, default_bounds(RenderVar::Level));
  const Image b = render_raster(f, RenderVar::Level, default_bounds(RenderVar::Level));
  EXPECT_EQ(a.rgb, b.rgb);
  std::set<Rgb> colours;
  for (int y = 0; y < a.height; ++y)
    for (int x = 0; x < a.width; ++x) colours.insert(a.pixel(x, y));
  EXPECT_EQ(colours.size(), 3u);
  for (int l = 1; l <= 3; ++l) EXPECT_TRUE(colours.count(color_for(RenderVar::Level, l, {}))) << l;

  // the island is land in the surface plot
  const Image eta = render_raster(f, RenderVar::Eta, default_bounds(RenderVar::Eta));
  bool land = false;
  for (int y = 0; y < eta.height; ++y)
    for (int x = 0; x < eta.width; ++x) land |= eta.pixel(x, y) == kLandColor;
  EXPECT_TRUE(land);
}

TEST(Render, ColourTablesAndNames) {
  EXPECT_EQ(parse_render_var("speed"), RenderVar::Speed);
  EXPECT_STREQ(render_var_name(RenderVar::Eta), "eta");
  EXPECT_THROW(parse_render_var("vorticity"), InputError);
  const auto eb = default_bounds(RenderVar::Eta);
  EXPECT_EQ(eb.lo, -1.0);
  EXPECT_EQ(eb.hi, 1.0);
  EXPECT_EQ(default_bounds(RenderVar::Speed).hi, 2.0);
  // saturation outside the bounds
  EXPECT_EQ(color_for(RenderVar::Eta, 5.0, eb), color_for(RenderVar::Eta, 1.0, eb));
  EXPECT_EQ(color_for(RenderVar::Eta, -5.0, eb), color_for(RenderVar::Eta, -1.0, eb));
  EXPECT_NE(color_for(RenderVar::Level, 1, eb), color_for(RenderVar::Level, 2, eb));
}

TEST(Render, PpmHeader) {
  Image img;
  img.width = 3;
  img.height = 2;
  img.rgb.assign(18, 7);
  const fs::path dir = scratch("ppm");
  write_ppm(img, dir / "x.ppm");
  std::ifstream in(dir / "x.ppm", std::ios::binary);
  std::string magic;
  int w = 0, h = 0, maxv = 0;
  in >> magic >> w >> h >> maxv;
  EXPECT_EQ(magic, "P6");
  EXPECT_EQ(w, 3);
  EXPECT_EQ(h, 2);
  EXPECT_EQ(maxv, 255);
  EXPECT_EQ(fs::file_size(dir / "x.ppm"), std::string("P6\n3 2\n255\n").size() + 18);
  fs::remove_all(dir);
}
