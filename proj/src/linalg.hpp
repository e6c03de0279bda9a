#pragma once

// Small dense linear systems (n <= kMaxDimension), solved by Gaussian
// elimination with partial pivoting.

#include <array>
#include <cmath>
#include <cstddef>
#include <utility>

#include "clustertess/geometry.hpp"

namespace ctess::detail {

struct SmallSystem {
  std::size_t n = 0;
  std::array<std::array<double, kMaxDimension>, kMaxDimension> a{};
  std::array<double, kMaxDimension> b{};
};

/// Solves the system in place, leaving the solution in s.b. Returns false
/// when a pivot falls below rel_tol times the largest matrix entry.
inline bool solve(SmallSystem& s, double rel_tol) {
  const std::size_t n = s.n;
  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) scale = std::max(scale, std::abs(s.a[i][j]));
  if (scale == 0.0 || !std::isfinite(scale)) return false;
  const double threshold = rel_tol * scale;

  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(s.a[r][col]) > std::abs(s.a[pivot][col])) pivot = r;
    if (std::abs(s.a[pivot][col]) <= threshold) return false;
    if (pivot != col) {
      std::swap(s.a[pivot], s.a[col]);
      std::swap(s.b[pivot], s.b[col]);
    }
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = s.a[r][col] / s.a[col][col];
      if (f == 0.0) continue;
      for (std::size_t c = col; c < n; ++c) s.a[r][c] -= f * s.a[col][c];
      s.b[r] -= f * s.b[col];
    }
  }
  for (std::size_t i = n; i-- > 0;) {
    double acc = s.b[i];
    for (std::size_t c = i + 1; c < n; ++c) acc -= s.a[i][c] * s.b[c];
    s.b[i] = acc / s.a[i][i];
  }
  return true;
}

}  // namespace ctess::detail
