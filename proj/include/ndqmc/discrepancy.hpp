#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ndqmc/cover.hpp"
#include "ndqmc/errors.hpp"
#include "ndqmc/pointset.hpp"
#include "ndqmc/region.hpp"

// Local discrepancy of anchored boxes and box differences, exact star
// discrepancy by critical-grid enumeration, and two-sided cover estimates.
// All point/corner comparisons are exact floating comparisons; the inputs
// are generated dyadic rationals, not measured data.

namespace ndqmc {

/// Number of points x with x_j < y_j (open axis) or x_j <= y_j (closed axis)
/// for all j.
inline std::uint64_t count_in_box(const PointSet& ps, std::span<const double> corner,
                                  const std::vector<bool>& closed_axes) {
  if (corner.size() != ps.d || closed_axes.size() != ps.d)
    throw std::invalid_argument("count_in_box: dimension mismatch");
  std::uint64_t cnt = 0;
  const std::uint32_t n = ps.n();
  for (std::uint32_t i = 0; i < n; ++i) {
    const auto p = ps.point(i);
    bool in = true;
    for (std::uint32_t j = 0; j < ps.d; ++j) {
      const bool ok = closed_axes[j] ? p[j] <= corner[j] : p[j] < corner[j];
      if (!ok) { in = false; break; }
    }
    cnt += in;
  }
  return cnt;
}

inline double local_discrepancy(const PointSet& ps, const AnchoredBox& box) {
  box.validate();
  if (box.dim() != ps.d) throw std::invalid_argument("local_discrepancy: dimension mismatch");
  if (ps.n() == 0) throw std::invalid_argument("local_discrepancy: empty point set");
  std::uint64_t cnt = 0;
  for (std::uint32_t i = 0; i < ps.n(); ++i) cnt += box.contains(ps.point(i));
  return std::abs(static_cast<double>(cnt) / ps.n() - box.volume());
}

inline double local_discrepancy(const PointSet& ps, const BoxDifference& region) {
  region.validate();
  if (region.dim() != ps.d) throw std::invalid_argument("local_discrepancy: dimension mismatch");
  if (ps.n() == 0) throw std::invalid_argument("local_discrepancy: empty point set");
  std::uint64_t cnt = 0;
  for (std::uint32_t i = 0; i < ps.n(); ++i) cnt += region.contains(ps.point(i));
  return std::abs(static_cast<double>(cnt) / ps.n() - region.volume());
}

namespace detail {

// Workspace for the critical-grid enumeration; reusable across calls so
// study loops do not reallocate the prefix cube every trial.
struct StarDiscrepancyWorkspace {
  std::vector<std::vector<double>> axis_values;  // sorted distinct coords per axis
  std::vector<std::uint32_t> ranks;
  std::vector<std::int32_t> prefix;
};

// Exact star discrepancy.
//
// Candidate grid: per axis the distinct point coordinates plus 1.  At each
// grid corner both the open-count deficit vol - A_open/N and the
// closed-count excess A_closed/N - vol are evaluated; the supremum over
// half-open boxes equals the maximum of these values and 0.  Counting uses
// a rank-binned prefix-sum cube, so the whole enumeration is
// O(d * prod_j (m_j + 1)).
inline double star_discrepancy_exact_impl(const PointSet& ps, std::size_t max_boxes,
                                          StarDiscrepancyWorkspace& ws) {
  const std::uint32_t d = ps.d;
  const std::uint32_t n = ps.n();
  if (n == 0) throw std::invalid_argument("star_discrepancy_exact: empty point set");

  ws.axis_values.resize(d);
  std::size_t cells = 1;
  for (std::uint32_t j = 0; j < d; ++j) {
    auto& vals = ws.axis_values[j];
    vals.clear();
    vals.reserve(n);
    for (std::uint32_t i = 0; i < n; ++i) vals.push_back(ps(i, j));
    std::sort(vals.begin(), vals.end());
    vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
    if (cells > max_boxes / (vals.size() + 1))
      throw BudgetError("star_discrepancy_exact: candidate grid exceeds " +
                        std::to_string(max_boxes) + " boxes; use the delta-cover estimate");
    cells *= vals.size() + 1;
  }

  // prefix[p1..pd] = #points with rank_j < p_j for all j  (index 0 = none)
  std::vector<std::size_t> dims(d), strides(d);
  std::size_t total = 1;
  for (std::uint32_t j = 0; j < d; ++j) {
    dims[j] = ws.axis_values[j].size() + 1;
    strides[j] = total;
    total *= dims[j];
  }
  ws.prefix.assign(total, 0);
  auto& prefix = ws.prefix;

  for (std::uint32_t i = 0; i < n; ++i) {
    std::size_t off = 0;
    for (std::uint32_t j = 0; j < d; ++j) {
      const auto& vals = ws.axis_values[j];
      const auto it = std::lower_bound(vals.begin(), vals.end(), ps(i, j));
      off += strides[j] * static_cast<std::size_t>(it - vals.begin() + 1);
    }
    ++prefix[off];
  }
  for (std::uint32_t j = 0; j < d; ++j) {
    const std::size_t stride = strides[j], dim = dims[j], block = stride * dim;
    for (std::size_t hi = 0; hi < total; hi += block)
      for (std::size_t t = 1; t < dim; ++t) {
        const std::size_t row = hi + t * stride;
        for (std::size_t lo = 0; lo < stride; ++lo) prefix[row + lo] += prefix[row - stride + lo];
      }
  }

  // sweep all corners; index t_j in [0, m_j]: value = vals[t_j], or 1 at m_j
  double best = 0.0;
  std::vector<std::size_t> idx(d, 0);
  std::vector<double> vols(d + 1);
  vols[0] = 1.0;
  const double inv_n = 1.0 / n;
  for (;;) {
    for (std::uint32_t j = 0; j < d; ++j) {
      const auto& vals = ws.axis_values[j];
      const double v = idx[j] < vals.size() ? vals[idx[j]] : 1.0;
      vols[j + 1] = vols[j] * v;
    }
    std::size_t off_open = 0, off_closed = 0;
    for (std::uint32_t j = 0; j < d; ++j) {
      off_open += strides[j] * idx[j];
      off_closed += strides[j] * std::min(idx[j] + 1, dims[j] - 1);
    }
    const double vol = vols[d];
    const double deficit = vol - prefix[off_open] * inv_n;
    const double excess = prefix[off_closed] * inv_n - vol;
    if (deficit > best) best = deficit;
    if (excess > best) best = excess;

    std::uint32_t j = 0;
    while (j < d && ++idx[j] >= dims[j]) idx[j++] = 0;
    if (j == d) break;
  }
  return best;
}

}  // namespace detail

inline double star_discrepancy_exact(const PointSet& ps, std::size_t max_boxes = 100'000'000) {
  detail::StarDiscrepancyWorkspace ws;
  return detail::star_discrepancy_exact_impl(ps, max_boxes, ws);
}

/// Two-sided estimate from a delta-cover:
///   lower = max over x in Gamma of D_N(P, [0,x)),   upper = lower + delta,
/// and lower <= D*_N(P) <= upper.
inline std::pair<double, double> star_discrepancy_cover(const PointSet& ps,
                                                        const DeltaCover& cover) {
  if (cover.d != ps.d) throw std::invalid_argument("star_discrepancy_cover: dimension mismatch");
  const std::uint32_t d = ps.d;
  const std::uint32_t n = ps.n();
  if (n == 0) throw std::invalid_argument("star_discrepancy_cover: empty point set");

  double lower = 0.0;
  if (cover.is_grid()) {
    // bin points against the actual double grid values, then prefix-sum
    const std::uint32_t m = cover.grid_m;
    std::vector<double> grid(m + 1);
    for (std::uint32_t k = 0; k <= m; ++k) grid[k] = static_cast<double>(k) / m;

    std::vector<std::size_t> dims(d, m + 1), strides(d);
    std::size_t total = 1;
    for (std::uint32_t j = 0; j < d; ++j) {
      strides[j] = total;
      total *= dims[j];
    }
    std::vector<std::int32_t> prefix(total, 0);
    for (std::uint32_t i = 0; i < n; ++i) {
      std::size_t off = 0;
      for (std::uint32_t j = 0; j < d; ++j) {
        // bin b: grid[b] <= x < grid[b+1]; contributes to open counts at k > b
        const double x = ps(i, j);
        auto b = static_cast<std::size_t>(
            std::upper_bound(grid.begin() + 1, grid.end(), x) - (grid.begin() + 1));
        off += strides[j] * (b + 1);
      }
      ++prefix[std::min(off, total - 1)];
    }
    for (std::uint32_t j = 0; j < d; ++j) {
      const std::size_t stride = strides[j], dim = dims[j], block = stride * dim;
      for (std::size_t hi = 0; hi < total; hi += block)
        for (std::size_t t = 1; t < dim; ++t) {
          const std::size_t row = hi + t * stride;
          for (std::size_t lo = 0; lo < stride; ++lo)
            prefix[row + lo] += prefix[row - stride + lo];
        }
    }
    const double inv_n = 1.0 / n;
    std::vector<std::size_t> idx(d, 1);
    for (;;) {
      double vol = 1.0;
      std::size_t off = 0;
      for (std::uint32_t j = 0; j < d; ++j) {
        vol *= grid[idx[j]];
        off += strides[j] * idx[j];
      }
      const double dev = std::abs(prefix[off] * inv_n - vol);
      if (dev > lower) lower = dev;
      std::uint32_t j = 0;
      while (j < d && ++idx[j] > cover.grid_m) idx[j++] = 1;
      if (j == d) break;
    }
  } else {
    AnchoredBox box;
    cover.for_each_point([&](const std::vector<double>& x) {
      box.corner = x;
      const double dev = local_discrepancy(ps, box);
      if (dev > lower) lower = dev;
    });
  }
  return {lower, lower + cover.delta};
}

}  // namespace ndqmc
