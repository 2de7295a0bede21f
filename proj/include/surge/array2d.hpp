#pragma once

#include <algorithm>
#include <cassert>
#include <span>
#include <vector>

namespace surge {

/// Row-major 2D field over an interior of nx x ny cells surrounded by a ghost
/// frame. Local indices run from -ghost to n + ghost - 1.
class Array2D {
 public:
  Array2D() = default;
  Array2D(int nx, int ny, int ghost, double value = 0.0)
      : nx_(nx), ny_(ny), ghost_(ghost), stride_(nx + 2 * ghost),
        data_(static_cast<size_t>(nx + 2 * ghost) * (ny + 2 * ghost), value) {}

  double& operator()(int i, int j) {
    assert(i >= -ghost_ && i < nx_ + ghost_ && j >= -ghost_ && j < ny_ + ghost_);
    return data_[static_cast<size_t>(j + ghost_) * stride_ + (i + ghost_)];
  }
  double operator()(int i, int j) const {
    assert(i >= -ghost_ && i < nx_ + ghost_ && j >= -ghost_ && j < ny_ + ghost_);
    return data_[static_cast<size_t>(j + ghost_) * stride_ + (i + ghost_)];
  }

  /// Full row j including ghost columns; element 0 is local column -ghost.
  std::span<double> row(int j) {
    return {data_.data() + static_cast<size_t>(j + ghost_) * stride_, static_cast<size_t>(stride_)};
  }
  std::span<const double> row(int j) const {
    return {data_.data() + static_cast<size_t>(j + ghost_) * stride_, static_cast<size_t>(stride_)};
  }

  int nx() const { return nx_; }
  int ny() const { return ny_; }
  int ghost() const { return ghost_; }
  int stride() const { return stride_; }
  std::vector<double>& raw() { return data_; }
  const std::vector<double>& raw() const { return data_; }
  void fill(double v) { std::fill(data_.begin(), data_.end(), v); }

  bool operator==(const Array2D&) const = default;

 private:
  int nx_ = 0;
  int ny_ = 0;
  int ghost_ = 0;
  int stride_ = 0;
  std::vector<double> data_;
};

}  // namespace surge
