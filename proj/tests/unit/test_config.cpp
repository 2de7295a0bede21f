#include <gtest/gtest.h>

#include <cmath>

#include "surge/config.hpp"

using namespace surge;

namespace {

const std::string kDomain =
    R"("domain": {"lon_min": -1, "lon_max": 1, "lat_min": 0, "lat_max": 2, "n_cells_x": 4, "n_cells_y": 4})";

std::string doc(const std::string& extra = "") { return "{" + kDomain + (extra.empty() ? "" : ", " + extra) + "}"; }

std::string error_of(const std::string& text) {
  try {
    parse_config_text(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST(Config, DefaultsFromMinimalDocument) {
  const RunConfig c = parse_config_text(doc());
  EXPECT_EQ(c.domain.n_cells_x, 4);
  EXPECT_EQ(c.phys.rho, 1025.0);
  EXPECT_EQ(c.phys.rho_air, 1.15);
  EXPECT_EQ(c.phys.dry_tolerance, 1e-3);
  EXPECT_TRUE(c.phys.wind_depth_scaled);
  EXPECT_TRUE(c.friction.clamped_bracket);
  EXPECT_EQ(c.friction.h_break, 2.0);
  EXPECT_EQ(c.amr.max_levels, 1);
  EXPECT_TRUE(c.storm_track.empty());
  EXPECT_EQ(c.storm.ambient_pressure, 101300.0);
}

TEST(Config, UnknownKeySuggestsClosestName) {
  const std::string e = error_of(doc(R"("refinement": {"Twave": 1.0})"));
  EXPECT_NE(e.find("Twave"), std::string::npos) << e;
  EXPECT_NE(e.find("T_wave"), std::string::npos) << e;
  EXPECT_EQ(levenshtein("Twave", "T_wave"), 1);
  EXPECT_EQ(levenshtein("", "abc"), 3);
}

TEST(Config, CommentsAreStrippedOutsideStrings) {
  const std::string text = "# header\n{" + kDomain + ", # trailing\n \"output_dir\": \"out#1\"}\n";
  const RunConfig c = parse_config_text(text);
  EXPECT_EQ(c.output_dir, "out#1");
}

TEST(Config, TypeAndRangeErrorsNameTheField) {
  EXPECT_NE(error_of(doc(R"("physics": {"rho": "heavy"})")).find("physics.rho"), std::string::npos);
  EXPECT_NE(error_of(doc(R"("physics": {"wind_depth_scaled": 1})")).find("wind_depth_scaled"), std::string::npos);
  EXPECT_NE(error_of(doc(R"("friction": {"law": "quadratic"})")).find("law"), std::string::npos);
  const RunConfig short_ratios = parse_config_text(doc(R"("amr": {"max_levels": 3, "ratios": [2]})"));
  EXPECT_THROW(validate_config(short_ratios), ConfigError);
  EXPECT_FALSE(error_of("{}").empty());
  EXPECT_FALSE(error_of("{ not json").empty());
}

TEST(Config, NewPhysicsAndFrictionKeys) {
  const RunConfig c = parse_config_text(
      doc(R"("physics": {"wind_depth_scaled": false, "wind_taper_depth": 0.5}, "friction": {"law": "hybrid"})"));
  EXPECT_FALSE(c.phys.wind_depth_scaled);
  EXPECT_EQ(c.phys.wind_taper_depth, 0.5);
  EXPECT_FALSE(c.friction.clamped_bracket);
}

TEST(Config, ResolvedJsonRoundTrips) {
  const RunConfig a = parse_config_text(doc(
      R"("amr": {"max_levels": 3, "ratios": [2, 4]},
         "refinement": {"T_speed": [1, 2, 3], "regions": [{"min_level": 1, "max_level": 2, "lon_min": -1, "lon_max": 0, "lat_min": 0, "lat_max": 1}]},
         "friction": {"law": "hybrid", "regions": [{"lon_min": -1, "lon_max": 0, "lat_min": 0, "lat_max": 1,
                       "rules": [{"threshold": -5, "n": 0.03}, {"threshold": null, "n": 0.02}]}]},
         "physics": {"sea_level": 0.28},
         "gauges": [{"id": 7, "lon": 0.5, "lat": 1.5}])"));
  const auto ja = to_json(a);
  const RunConfig b = parse_config(nlohmann::json::parse(ja.dump()));
  EXPECT_EQ(ja.dump(), to_json(b).dump());
  EXPECT_EQ(b.amr.ratio_y, (std::vector<int>{2, 4}));
  EXPECT_EQ(b.phys.sea_level, 0.28);
  ASSERT_EQ(b.gauges.size(), 1u);
  EXPECT_EQ(b.gauges[0].id, 7);
}

TEST(Config, ShippedExamplesParse) {
  for (const char* name : {"synthetic_storm.json", "ike_example.json"}) {
    const auto path = std::filesystem::path(SURGE_SOURCE_DIR) / "configs" / name;
    RunConfig c;
    ASSERT_NO_THROW(c = load_config(path)) << name;
    EXPECT_NO_THROW(validate_config(c)) << name;
  }
}
