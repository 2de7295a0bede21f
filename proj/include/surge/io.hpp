#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "surge/amr.hpp"
#include "surge/config.hpp"

namespace surge {

// ---- gauges ------------------------------------------------------------------

struct GaugeRecord {
  double t = 0.0;
  int level = 0;
  double h = 0.0, hu = 0.0, hv = 0.0, eta = 0.0;
};

struct Gauge {
  GaugeSpec spec;
  std::vector<GaugeRecord> records;
};

/// Appends the state of the cell holding the gauge when `level` is the finest
/// level containing it and t is past the last record. Returns true if recorded.
bool record_gauge(const LevelHierarchy& hierarchy, Gauge& gauge, int level, double t);

void write_gauge_csv(const Gauge& gauge, const std::filesystem::path& path);
std::vector<GaugeRecord> read_gauge_csv(const std::filesystem::path& path);

// ---- frames ------------------------------------------------------------------

struct FramePatch {
  int level = 1;
  IndexBox box;
  double dlon = 0.0, dlat = 0.0;
  std::vector<double> h, hu, hv, b;  // row-major nx * ny, south row first
  double lon_edge(int gi) const;
  double lat_edge(int gj) const;
  double lon0 = 0.0, lat0 = 0.0;  // domain origin
};

struct Frame {
  int index = 0;
  double time = 0.0;
  GeoDomain domain;
  double sea_level = 0.0;
  double dry_tolerance = 1e-3;
  std::vector<FramePatch> patches;  // sorted by level, then (j0, i0)

  /// Patches and interior cells per level (index 0 is level 1).
  std::vector<std::pair<int, long long>> level_counts() const;
};

Frame snapshot_frame(const LevelHierarchy& hierarchy, int index);
std::filesystem::path frame_manifest_path(const std::filesystem::path& outdir, int index);
/// Writes frames/frame_NNNN.json and one CSV per patch with %.17g values.
void write_frame(const Frame& frame, const std::filesystem::path& outdir);
Frame read_frame(const std::filesystem::path& outdir, int index);
/// Number of consecutive frames 0..N-1 present in the output directory.
int count_frames(const std::filesystem::path& outdir);

// ---- rendering ---------------------------------------------------------------

enum class RenderVar { Eta, Speed, Level };
RenderVar parse_render_var(const std::string& name);
const char* render_var_name(RenderVar v);

struct RenderBounds {
  double lo = 0.0;
  double hi = 1.0;
};
/// eta: [-1, 1] m, speed: [0, 2] m/s, level: [1, 7].
RenderBounds default_bounds(RenderVar v);

struct Image {
  int width = 0;
  int height = 0;
  std::vector<uint8_t> rgb;
  std::array<uint8_t, 3> pixel(int x, int y) const;
};

using Rgb = std::array<uint8_t, 3>;
inline constexpr Rgb kLandColor{140, 110, 70};

/// Colour of a value under the fixed table of the variable.
Rgb color_for(RenderVar v, double value, const RenderBounds& bounds);

/// Composites patches finest-on-top on a uniform grid at the finest frame
/// resolution (downsampled by an integer factor to at most max_pixels per side).
Image render_raster(const Frame& frame, RenderVar var, const RenderBounds& bounds, int max_pixels = 1200);
void write_ppm(const Image& image, const std::filesystem::path& path);
/// Text sidecar listing the value-to-colour scale.
void write_scale_sidecar(RenderVar var, const RenderBounds& bounds, const std::filesystem::path& path);

}  // namespace surge
