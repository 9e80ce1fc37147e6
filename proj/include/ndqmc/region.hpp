#pragma once

#include <span>
#include <stdexcept>
#include <vector>

// Test regions for discrepancy and dependence checks: anchored boxes
// [0,y) and anchored-box differences [0,outer) \ [0,inner).

namespace ndqmc {

/// Anchored half-open box [0, corner).
struct AnchoredBox {
  std::vector<double> corner;

  std::uint32_t dim() const { return static_cast<std::uint32_t>(corner.size()); }

  void validate() const {
    if (corner.empty()) throw std::invalid_argument("AnchoredBox: empty corner");
    for (double y : corner)
      if (!(y >= 0.0 && y <= 1.0)) throw std::invalid_argument("AnchoredBox: corner not in [0,1]^d");
  }

  double volume() const {
    double v = 1.0;
    for (double y : corner) v *= y;
    return v;
  }

  bool contains(std::span<const double> p) const {
    for (std::size_t j = 0; j < corner.size(); ++j)
      if (!(p[j] < corner[j])) return false;
    return true;
  }
};

/// Box difference [0, outer) \ [0, inner) with inner <= outer componentwise.
struct BoxDifference {
  std::vector<double> inner;  // the subtracted anchored box
  std::vector<double> outer;

  std::uint32_t dim() const { return static_cast<std::uint32_t>(outer.size()); }

  void validate() const {
    if (outer.empty() || inner.size() != outer.size())
      throw std::invalid_argument("BoxDifference: inner/outer must have equal positive dimension");
    for (std::size_t j = 0; j < outer.size(); ++j) {
      if (!(inner[j] >= 0.0 && outer[j] <= 1.0))
        throw std::invalid_argument("BoxDifference: corners not in [0,1]^d");
      if (!(inner[j] <= outer[j]))
        throw std::invalid_argument("BoxDifference: inner must be <= outer componentwise");
    }
  }

  double volume() const {
    double vb = 1.0, va = 1.0;
    for (double y : outer) vb *= y;
    for (double y : inner) va *= y;
    return vb - va;
  }

  bool contains(std::span<const double> p) const {
    bool in_outer = true, in_inner = true;
    for (std::size_t j = 0; j < outer.size(); ++j) {
      if (!(p[j] < outer[j])) in_outer = false;
      if (!(p[j] < inner[j])) in_inner = false;
    }
    return in_outer && !in_inner;
  }

  static BoxDifference anchored(std::vector<double> corner) {
    BoxDifference r;
    r.inner.assign(corner.size(), 0.0);
    r.outer = std::move(corner);
    return r;
  }
};

}  // namespace ndqmc
