#pragma once

// Uniform hash grid over a point set, any dimension up to kMaxDimension.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "clustertess/geometry.hpp"

namespace ctess::detail {

class SpatialGrid {
 public:
  /// cell_size may be +infinity (everything lands in one cell).
  SpatialGrid(std::span<const Point> points, double cell_size)
      : points_(points), cell_(cell_size) {
    if (!(cell_size > 0.0)) throw std::invalid_argument("grid cell size must be positive");
    if (points_.empty()) return;
    dim_ = points_.front().dim();
    origin_ = bounding_box(points_).low;
    for (std::size_t i = 0; i < points_.size(); ++i) {
      const Key k = key_of(points_[i]);
      if (i == 0) {
        lo_ = hi_ = k;
      } else {
        for (std::size_t j = 0; j < dim_; ++j) {
          lo_[j] = std::min(lo_[j], k[j]);
          hi_[j] = std::max(hi_[j], k[j]);
        }
      }
      cells_[k].push_back(static_cast<std::uint32_t>(i));
    }
  }

  /// Calls fn(index) for every point within distance `radius` of `center`
  /// (closed ball, plus a relative slack of 1e-12 for rounding).
  template <class Fn>
  void for_each_within(const Point& center, double radius, Fn&& fn) const {
    any_within(center, radius, [&](std::size_t i) {
      fn(i);
      return false;
    });
  }

  /// Like for_each_within, but stops and returns true as soon as pred
  /// returns true.
  template <class Pred>
  bool any_within(const Point& center, double radius, Pred&& pred) const {
    if (points_.empty()) return false;
    const double r2 = radius * radius * (1.0 + 1e-12);
    Key lo{}, hi{};
    for (std::size_t j = 0; j < dim_; ++j) {
      lo[j] = std::max(lo_[j], coord_key(center[j] - radius, j));
      hi[j] = std::min(hi_[j], coord_key(center[j] + radius, j));
      if (lo[j] > hi[j]) return false;
    }
    Key k = lo;
    for (;;) {
      if (auto it = cells_.find(k); it != cells_.end()) {
        for (std::uint32_t i : it->second)
          if (squared_distance(points_[i], center) <= r2 && pred(static_cast<std::size_t>(i)))
            return true;
      }
      std::size_t j = 0;
      for (; j < dim_; ++j) {
        if (k[j] < hi[j]) {
          ++k[j];
          break;
        }
        k[j] = lo[j];
      }
      if (j == dim_) return false;
    }
  }

 private:
  using Key = std::array<std::int64_t, kMaxDimension>;

  struct KeyHash {
    std::size_t operator()(const Key& k) const {
      std::uint64_t h = 1469598103934665603ull;
      for (std::int64_t v : k) h = (h ^ static_cast<std::uint64_t>(v)) * 1099511628211ull;
      return static_cast<std::size_t>(h);
    }
  };

  std::int64_t coord_key(double x, std::size_t j) const {
    constexpr double kLimit = 1e15;
    const double t = std::floor((x - origin_[j]) / cell_);
    if (std::isnan(t)) return 0;
    return static_cast<std::int64_t>(std::clamp(t, -kLimit, kLimit));
  }

  Key key_of(const Point& p) const {
    Key k{};
    for (std::size_t j = 0; j < dim_; ++j) k[j] = coord_key(p[j], j);
    return k;
  }

  std::span<const Point> points_;
  double cell_;
  std::size_t dim_ = 0;
  Point origin_;
  Key lo_{}, hi_{};
  std::unordered_map<Key, std::vector<std::uint32_t>, KeyHash> cells_;
};

}  // namespace ctess::detail
