#include <gtest/gtest.h>

#include <cmath>

#include "../support/scenarios.hpp"
#include "surge/amr.hpp"

using namespace surge;
using namespace surge::testing;

TEST(Flags, SpeedIndexedByLevelOthersByLevelMinusOne) {
  RefinementCriteria c;
  c.wave_tolerance = 1.0;
  c.speed_tolerance = {2.0, 2.5, 3.0};
  c.eye_radius = {60e3, 40e3};
  c.wind_tolerance = {20.0, 40.0};
  FlagInputs in;
  in.speed = 2.6;
  EXPECT_TRUE(physics_flag(1, in, c));
  EXPECT_FALSE(physics_flag(2, in, c));
  in = {};
  in.eye_distance = 50e3;
  EXPECT_TRUE(physics_flag(1, in, c));
  EXPECT_FALSE(physics_flag(2, in, c));
  EXPECT_FALSE(physics_flag(3, in, c));
  in = {};
  in.wind_speed = 30.0;
  EXPECT_TRUE(physics_flag(1, in, c));
  EXPECT_FALSE(physics_flag(2, in, c));
  in = {};
  in.eta_deviation = 1.01;
  EXPECT_TRUE(physics_flag(7, in, c));
}

TEST(Flags, RegionOverrideCombinesByMaximum) {
  RegionConstraint a{1, 2, 0.0, 1.0, 0.0, 1.0};
  RegionConstraint b{3, 4, 0.5, 1.5, 0.5, 1.5};
  const std::vector<RegionConstraint> r{a, b};
  EXPECT_EQ(region_override(0.2, 0.2, 0.0, 1, r), 0);
  EXPECT_EQ(region_override(0.2, 0.2, 0.0, 2, r), -1);
  EXPECT_EQ(region_override(0.7, 0.7, 0.0, 2, r), 1);  // min 3 from b
  EXPECT_EQ(region_override(0.7, 0.7, 0.0, 3, r), 0);
  EXPECT_EQ(region_override(0.7, 0.7, 0.0, 4, r), -1);
  EXPECT_EQ(region_override(5.0, 5.0, 0.0, 1, r), 0);
  RegionConstraint timed = a;
  timed.t_start = 10.0;
  EXPECT_EQ(region_override(0.2, 0.2, 5.0, 3, {timed}), 0);
}

TEST(Cluster, CoversFlagsInsideNestableRegion) {
  FlagGrid g(IndexBox{0, 0, 40, 30});
  for (int i = 3; i < 12; ++i) g.set(i, 5);
  for (int j = 10; j < 25; ++j) g.set(30, j);
  g.set(20, 20);
  g.nestable.assign(g.flags.size(), 1);
  for (int j = 0; j < 30; ++j) g.nestable[g.index(39, j)] = 0;
  const auto boxes = cluster_flags(g, 0.7, 2);
  ASSERT_FALSE(boxes.empty());
  for (int j = 0; j < 30; ++j)
    for (int i = 0; i < 40; ++i) {
      if (!g.flagged(i, j)) continue;
      bool covered = false;
      for (const auto& b : boxes) covered |= b.contains(i, j);
      EXPECT_TRUE(covered) << i << "," << j;
    }
  for (const auto& b : boxes) {
    EXPECT_TRUE(g.box.contains(b));
    for (int j = b.j0; j < b.j1; ++j)
      for (int i = b.i0; i < b.i1; ++i) EXPECT_TRUE(g.allowed(i, j));
  }
  // pairwise disjoint
  for (size_t a = 0; a < boxes.size(); ++a)
    for (size_t b = a + 1; b < boxes.size(); ++b) EXPECT_TRUE(boxes[a].intersect(boxes[b]).empty());
  EXPECT_TRUE(cluster_flags(FlagGrid(IndexBox{0, 0, 5, 5}), 0.7, 1).empty());
}

TEST(Boundary, SourceIndexForWallsAndOutflow) {
  bool flip = false;
  EXPECT_EQ(boundary_source_index(-1, 10, BoundaryKind::Outflow, flip), 0);
  EXPECT_FALSE(flip);
  EXPECT_EQ(boundary_source_index(11, 10, BoundaryKind::Outflow, flip), 9);
  EXPECT_EQ(boundary_source_index(-1, 10, BoundaryKind::Wall, flip), 0);
  EXPECT_TRUE(flip);
  EXPECT_EQ(boundary_source_index(-2, 10, BoundaryKind::Wall, flip), 1);
  EXPECT_EQ(boundary_source_index(10, 10, BoundaryKind::Wall, flip), 9);
  EXPECT_EQ(boundary_source_index(11, 10, BoundaryKind::Wall, flip), 8);
  EXPECT_EQ(boundary_source_index(4, 10, BoundaryKind::Wall, flip), 4);
  EXPECT_FALSE(flip);
}

TEST(Coarsen, FlatSurfaceStaysFlatAndMassIsKept) {
  const GeoDomain d{0.0, 1.0, 10.0, 11.0, 4, 4};
  const LevelGeometry cg(d, 6.367e6, 4, 4), fg(d, 6.367e6, 16, 16);
  Patch coarse(1, IndexBox{0, 0, 4, 4}, cg), fine(2, IndexBox{4, 4, 12, 12}, fg);
  for (int j = 0; j < fine.ny(); ++j)
    for (int i = 0; i < fine.nx(); ++i) {
      fine.b(i, j) = -20.0 - 3.0 * std::sin(0.7 * i + 0.3 * j);
      fine.h(i, j) = 0.25 - fine.b(i, j);
      fine.hu(i, j) = 0.1 * i;
    }
  // coarse bed is the area average of its children
  for (int cj = 1; cj < 3; ++cj)
    for (int ci = 1; ci < 3; ++ci) {
      double s = 0.0, a = 0.0;
      for (int kj = 0; kj < 4; ++kj)
        for (int ki = 0; ki < 4; ++ki) {
          const int fi = ci * 4 + ki - 4, fj = cj * 4 + kj - 4;
          s += fine.cell_area(fj) * fine.b(fi, fj);
          a += fine.cell_area(fj);
        }
      coarse.b(ci, cj) = s / a;
    }
  coarsen(fine, coarse, 4, 4, 1e-3);
  for (int cj = 1; cj < 3; ++cj)
    for (int ci = 1; ci < 3; ++ci) {
      EXPECT_NEAR(coarse.h(ci, cj) + coarse.b(ci, cj), 0.25, 1e-13);
      EXPECT_NEAR(coarse.h(ci, cj) * coarse.cell_area(cj),
                  [&] {
                    double m = 0.0;
                    for (int kj = 0; kj < 4; ++kj)
                      for (int ki = 0; ki < 4; ++ki)
                        m += fine.cell_area(cj * 4 + kj - 4) * fine.h(ci * 4 + ki - 4, cj * 4 + kj - 4);
                    return m;
                  }(),
                  1e-9 * coarse.h(ci, cj) * coarse.cell_area(cj));
    }
  EXPECT_EQ(coarse.h(0, 0), 0.0);  // uncovered cells untouched
}

TEST(Hierarchy, SeamountStaysAtRestThroughRegrids) {
  auto sim = seamount_lake_at_rest().make();
  sim->initialize();
  EXPECT_EQ(sim->hierarchy().num_levels(), 3);
  for (int k = 0; k < 20; ++k) sim->step();
  EXPECT_LE(max_surface_deviation(sim->hierarchy(), 0.0, 1e-3), 1e-10);
  EXPECT_LE(max_momentum(sim->hierarchy()), 1e-10);
  EXPECT_GE(sim->hierarchy().mass_log().regrids, 1);
}

TEST(Hierarchy, ClosedBasinConservesMassWithRefluxing) {
  auto sim = closed_basin_dam_break(2).make();
  sim->initialize();
  const double m0 = sim->hierarchy().composite_mass();
  for (int k = 0; k < 15; ++k) sim->step();
  const double m1 = sim->hierarchy().composite_mass();
  const double regrid = sim->hierarchy().mass_log().regrid_change;
  EXPECT_LE(std::abs(m1 - m0 - regrid) / m0, 1e-8);
  EXPECT_EQ(sim->hierarchy().num_levels(), 2);
}

TEST(Hierarchy, TimeRatioIsCeilOfStepRatio) {
  auto sim = closed_basin_dam_break(2).make();
  sim->initialize();
  const auto& h = sim->hierarchy();
  ASSERT_EQ(h.num_levels(), 2);
  double fine = 1e300;
  for (const auto& p : h.level(2).patches)
    fine = std::min(fine, compute_stable_dt(p, h.inputs().amr.courant, h.inputs().phys.g, h.inputs().phys.dry_tolerance));
  EXPECT_EQ(h.choose_time_ratio(1, 2.5 * fine), 3);
  EXPECT_EQ(h.choose_time_ratio(1, 2.0 * fine), 2);
  EXPECT_EQ(h.choose_time_ratio(1, 0.1 * fine), 1);
}
