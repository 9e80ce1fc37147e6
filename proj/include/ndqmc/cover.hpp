#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ndqmc/rng.hpp"

// delta-covers of [0,1)^d: a finite set Gamma such that every anchored box
// corner y is bracketed by x <= y <= z with x,z in Gamma-union-{0} and
// vol[0,z] - vol[0,x] <= delta.

namespace ndqmc {

struct DeltaCover {
  std::uint32_t d = 1;
  double delta = 1.0;
  // grid_m > 0: implicit regular grid Gamma = {k/M : k=1..M}^d.
  // grid_m == 0: explicit point list.
  std::uint32_t grid_m = 0;
  std::vector<std::vector<double>> points;

  bool is_grid() const { return grid_m > 0; }

  std::size_t size() const {
    if (!is_grid()) return points.size();
    std::size_t s = 1;
    for (std::uint32_t j = 0; j < d; ++j) s *= grid_m;
    return s;
  }

  /// Calls fn(corner) for every point of Gamma.
  void for_each_point(const std::function<void(const std::vector<double>&)>& fn) const {
    if (!is_grid()) {
      for (const auto& p : points) fn(p);
      return;
    }
    std::vector<std::uint32_t> idx(d, 1);
    std::vector<double> corner(d);
    for (;;) {
      for (std::uint32_t j = 0; j < d; ++j) corner[j] = static_cast<double>(idx[j]) / grid_m;
      fn(corner);
      std::uint32_t j = 0;
      while (j < d && ++idx[j] > grid_m) idx[j++] = 1;
      if (j == d) return;
    }
  }
};

/// Gamma = {k/M : k=1..M} with M = ceil(1/delta); size is the minimal
/// one-dimensional cover cardinality ceil(1/delta).
inline DeltaCover build_cover_1d(double delta) {
  if (!(delta > 0.0 && delta <= 1.0))
    throw std::invalid_argument("build_cover_1d: delta must be in (0,1]");
  DeltaCover c;
  c.d = 1;
  c.delta = delta;
  c.grid_m = static_cast<std::uint32_t>(std::ceil(1.0 / delta));
  return c;
}

/// Regular grid cover {k/M : k=1..M}^d with M = ceil(d/delta).  Rounding a
/// corner down/up to the grid changes the box volume by at most
/// 1-(1-1/M)^d <= d/M <= delta.
inline DeltaCover build_cover_grid(std::uint32_t d, double delta,
                                   std::size_t max_points = 100'000'000) {
  if (d < 1) throw std::invalid_argument("build_cover_grid: d must be >= 1");
  if (!(delta > 0.0 && delta <= 1.0))
    throw std::invalid_argument("build_cover_grid: delta must be in (0,1]");
  const auto m = static_cast<std::uint64_t>(std::ceil(d / delta));
  double sz = 1.0;
  for (std::uint32_t j = 0; j < d; ++j) sz *= static_cast<double>(m);
  if (sz > static_cast<double>(max_points))
    throw std::runtime_error("build_cover_grid: grid needs " + std::to_string(m) + "^" +
                             std::to_string(d) + " points, over the budget of " +
                             std::to_string(max_points));
  DeltaCover c;
  c.d = d;
  c.delta = delta;
  c.grid_m = static_cast<std::uint32_t>(m);
  return c;
}

/// Cardinality bound 2^d * (d^d / d!) * (1/delta + 1)^d.
inline double cover_cardinality_bound(std::uint32_t d, double delta) {
  if (d < 1) throw std::invalid_argument("cover_cardinality_bound: d must be >= 1");
  if (!(delta > 0.0 && delta <= 1.0))
    throw std::invalid_argument("cover_cardinality_bound: delta must be in (0,1]");
  const double base = 2.0 * (1.0 / delta + 1.0) * static_cast<double>(d);
  double v = 1.0;
  for (std::uint32_t k = 1; k <= d; ++k) v *= base / static_cast<double>(k);
  return v;
}

struct CoverVerdict {
  bool valid = true;
  double worst_gap = 0.0;
  std::optional<std::vector<double>> counterexample;

  explicit operator bool() const { return valid; }
};

namespace detail {

inline double closed_box_volume(const std::vector<double>& x) {
  double v = 1.0;
  for (double c : x) v *= c;
  return v;
}

// Best bracketing gap for one probe y; infinity if no z >= y exists.
inline double bracketing_gap(const DeltaCover& cover, const std::vector<double>& y) {
  const std::uint32_t d = cover.d;
  if (cover.is_grid()) {
    const std::uint32_t m = cover.grid_m;
    double volx = 1.0, volz = 1.0;
    bool x_exists = true;
    for (std::uint32_t j = 0; j < d; ++j) {
      auto k = static_cast<std::int64_t>(std::floor(y[j] * m));
      // exact adjustment against the actual double grid values
      while (k + 1 <= m && static_cast<double>(k + 1) / m <= y[j]) ++k;
      while (k >= 1 && static_cast<double>(k) / m > y[j]) --k;
      if (k < 1) x_exists = false;
      else volx *= static_cast<double>(k) / m;
      const double zk = (k >= 1 && static_cast<double>(k) / m == y[j])
                            ? static_cast<double>(k) / m
                            : static_cast<double>(std::min<std::int64_t>(k + 1, m)) / m;
      if (zk < y[j]) return std::numeric_limits<double>::infinity();
      volz *= zk;
    }
    if (!x_exists) volx = 0.0;  // fall back to the implicit origin
    return volz - volx;
  }
  // explicit cover: best x maximizes vol over points <= y, best z minimizes over points >= y
  double volx = 0.0;  // origin always available
  double volz = std::numeric_limits<double>::infinity();
  for (const auto& p : cover.points) {
    bool le = true, ge = true;
    for (std::uint32_t j = 0; j < d; ++j) {
      if (p[j] > y[j]) le = false;
      if (p[j] < y[j]) ge = false;
    }
    const double v = closed_box_volume(p);
    if (le && v > volx) volx = v;
    if (ge && v < volz) volz = v;
  }
  return volz - volx;
}

}  // namespace detail

/// Deterministically checks all midpoints of the grid cells induced by the
/// cover's per-axis coordinates, then `probes` uniform random corners.
/// Returns the first violation found, if any.
inline CoverVerdict verify_cover(const DeltaCover& cover, std::size_t probes, std::uint64_t seed,
                                 std::size_t max_midpoints = 200'000'000) {
  const std::uint32_t d = cover.d;
  CoverVerdict verdict;

  // 1e-12 relative slack absorbs the rounding of the k/M volume arithmetic;
  // genuine violations of our constructions are of order delta, not ulps
  auto check = [&](const std::vector<double>& y) {
    const double gap = detail::bracketing_gap(cover, y);
    if (gap > verdict.worst_gap) verdict.worst_gap = gap;
    if (gap > cover.delta * (1.0 + 1e-12)) {
      verdict.valid = false;
      verdict.counterexample = y;
      return false;
    }
    return true;
  };

  // per-axis cell boundaries: cover coordinates plus 0 and 1
  std::vector<std::vector<double>> axis(d);
  if (cover.is_grid()) {
    for (std::uint32_t j = 0; j < d; ++j) {
      axis[j].reserve(cover.grid_m + 1);
      for (std::uint32_t k = 0; k <= cover.grid_m; ++k)
        axis[j].push_back(static_cast<double>(k) / cover.grid_m);
    }
  } else {
    for (std::uint32_t j = 0; j < d; ++j) axis[j].push_back(0.0);
    for (const auto& p : cover.points)
      for (std::uint32_t j = 0; j < d; ++j) axis[j].push_back(std::min(p[j], 1.0));
    for (std::uint32_t j = 0; j < d; ++j) {
      axis[j].push_back(1.0);
      std::sort(axis[j].begin(), axis[j].end());
      axis[j].erase(std::unique(axis[j].begin(), axis[j].end()), axis[j].end());
    }
  }

  double cells = 1.0;
  for (std::uint32_t j = 0; j < d; ++j) cells *= static_cast<double>(axis[j].size() - 1);
  if (cells <= static_cast<double>(max_midpoints)) {
    std::vector<std::size_t> idx(d, 0);
    std::vector<double> y(d);
    for (;;) {
      for (std::uint32_t j = 0; j < d; ++j)
        y[j] = 0.5 * (axis[j][idx[j]] + axis[j][idx[j] + 1]);
      if (!check(y)) return verdict;
      std::uint32_t j = 0;
      while (j < d && ++idx[j] >= axis[j].size() - 1) idx[j++] = 0;
      if (j == d) break;
    }
  }

  SplitMix64 gen(derive_stream(seed, 0));
  std::vector<double> y(d);
  for (std::size_t p = 0; p < probes; ++p) {
    for (std::uint32_t j = 0; j < d; ++j) y[j] = gen.next_unit();
    if (!check(y)) return verdict;
  }
  return verdict;
}

}  // namespace ndqmc
