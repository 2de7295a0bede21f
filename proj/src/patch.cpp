#include "surge/patch.hpp"

#include <algorithm>

namespace surge {

void FaceFluxes::resize(int nx_, int ny_) {
  nx = nx_;
  ny = ny_;
  x_left.assign(3 * static_cast<size_t>(nx + 1) * ny, 0.0);
  x_right.assign(x_left.size(), 0.0);
  y_left.assign(3 * static_cast<size_t>(nx) * (ny + 1), 0.0);
  y_right.assign(y_left.size(), 0.0);
  west.assign(3 * static_cast<size_t>(ny), 0.0);
  east.assign(west.size(), 0.0);
  south.assign(3 * static_cast<size_t>(nx), 0.0);
  north.assign(south.size(), 0.0);
}

void FaceFluxes::clear_step() {
  std::fill(x_left.begin(), x_left.end(), 0.0);
  std::fill(x_right.begin(), x_right.end(), 0.0);
  std::fill(y_left.begin(), y_left.end(), 0.0);
  std::fill(y_right.begin(), y_right.end(), 0.0);
}

void FaceFluxes::clear_cycle() {
  std::fill(west.begin(), west.end(), 0.0);
  std::fill(east.begin(), east.end(), 0.0);
  std::fill(south.begin(), south.end(), 0.0);
  std::fill(north.begin(), north.end(), 0.0);
}

Patch::Patch(int level, IndexBox box, const LevelGeometry& geometry)
    : h(box.nx(), box.ny(), kGhostWidth),
      hu(box.nx(), box.ny(), kGhostWidth),
      hv(box.nx(), box.ny(), kGhostWidth),
      b(box.nx(), box.ny(), kGhostWidth),
      manning(box.nx(), box.ny(), kGhostWidth),
      h_old(box.nx(), box.ny(), kGhostWidth),
      hu_old(box.nx(), box.ny(), kGhostWidth),
      hv_old(box.nx(), box.ny(), kGhostWidth),
      level_(level),
      box_(box),
      geometry_(geometry) {
  if (box.empty()) throw std::invalid_argument("patch: empty index box");
  fluxes.resize(box.nx(), box.ny());
}

void Patch::save_old_state() {
  h_old = h;
  hu_old = hu;
  hv_old = hv;
}

double Patch::mass() const {
  double total = 0.0;
  for (int j = 0; j < ny(); ++j) {
    double row = 0.0;
    for (int i = 0; i < nx(); ++i) row += h(i, j);
    total += row * cell_area(j);
  }
  return total;
}

double surface_elevation(const Patch& patch, int i, int j, double dry_tolerance, double sea_level) {
  const double depth = patch.h(i, j);
  if (depth < dry_tolerance) return sea_level;
  return depth + patch.b(i, j);
}

void initialize_lake_at_rest(Patch& patch, double sea_level) {
  auto& h = patch.h.raw();
  const auto& b = patch.b.raw();
  for (size_t k = 0; k < h.size(); ++k) h[k] = std::max(0.0, sea_level - b[k]);
  patch.hu.fill(0.0);
  patch.hv.fill(0.0);
}

int clean_dry_cells(Patch& patch, double dry_tolerance) {
  int clamped = 0;
  auto& h = patch.h.raw();
  auto& hu = patch.hu.raw();
  auto& hv = patch.hv.raw();
  for (size_t k = 0; k < h.size(); ++k) {
    if (h[k] < 0.0) {
      h[k] = 0.0;
      ++clamped;
    }
    if (h[k] < dry_tolerance) {
      hu[k] = 0.0;
      hv[k] = 0.0;
    }
  }
  return clamped;
}

}  // namespace surge
