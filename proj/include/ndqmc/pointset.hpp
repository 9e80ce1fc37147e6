#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ndqmc/rng.hpp"

// Point-set samplers: Monte Carlo, Latin hypercube (randomized and
// centered), and LHS padded by Monte Carlo.  All samplers are pure
// functions of a SampleSpec; identical specs give bit-identical output.

namespace ndqmc {

enum class SamplerKind { MonteCarlo, Lhs, CenteredLhs, PaddedLhs };

inline const char* to_string(SamplerKind k) {
  switch (k) {
    case SamplerKind::MonteCarlo: return "mc";
    case SamplerKind::Lhs: return "lhs";
    case SamplerKind::CenteredLhs: return "clhs";
    case SamplerKind::PaddedLhs: return "padded";
  }
  return "?";
}

struct SampleSpec {
  SamplerKind kind = SamplerKind::MonteCarlo;
  std::uint32_t n = 1;      // number of points
  std::uint32_t d = 1;      // total dimension
  std::uint32_t d_lhs = 0;  // leading coordinates that are LHS-stratified
  std::uint64_t seed = 0;
  std::uint64_t trial = 0;

  std::uint32_t d_mc() const { return d - d_lhs; }

  void validate() const {
    if (n < 1) throw std::invalid_argument("SampleSpec: n must be >= 1");
    if (d < 1) throw std::invalid_argument("SampleSpec: d must be >= 1");
    if (d_lhs > d) throw std::invalid_argument("SampleSpec: d_lhs must be <= d");
    switch (kind) {
      case SamplerKind::MonteCarlo:
        if (d_lhs != 0) throw std::invalid_argument("SampleSpec: Monte Carlo requires d_lhs == 0");
        break;
      case SamplerKind::Lhs:
      case SamplerKind::CenteredLhs:
        if (d_lhs != d) throw std::invalid_argument("SampleSpec: LHS requires d_lhs == d");
        break;
      case SamplerKind::PaddedLhs:
        break;
    }
  }

  static SampleSpec monte_carlo(std::uint32_t n, std::uint32_t d, std::uint64_t seed,
                                std::uint64_t trial = 0) {
    return SampleSpec{SamplerKind::MonteCarlo, n, d, 0, seed, trial};
  }
  static SampleSpec lhs(std::uint32_t n, std::uint32_t d, std::uint64_t seed,
                        std::uint64_t trial = 0) {
    return SampleSpec{SamplerKind::Lhs, n, d, d, seed, trial};
  }
  static SampleSpec centered_lhs(std::uint32_t n, std::uint32_t d, std::uint64_t seed,
                                 std::uint64_t trial = 0) {
    return SampleSpec{SamplerKind::CenteredLhs, n, d, d, seed, trial};
  }
  static SampleSpec padded_lhs(std::uint32_t n, std::uint32_t d, std::uint32_t d_lhs,
                               std::uint64_t seed, std::uint64_t trial = 0) {
    return SampleSpec{SamplerKind::PaddedLhs, n, d, d_lhs, seed, trial};
  }

  bool operator==(const SampleSpec&) const = default;
};

/// Multi-set of points in [0,1)^d, row-major storage.
struct PointSet {
  std::uint32_t d = 0;
  std::vector<double> coords;  // n*d values
  std::optional<SampleSpec> provenance;

  std::uint32_t n() const { return d == 0 ? 0 : static_cast<std::uint32_t>(coords.size() / d); }
  double operator()(std::uint32_t i, std::uint32_t j) const { return coords[std::size_t(i) * d + j]; }
  std::span<const double> point(std::uint32_t i) const {
    return {coords.data() + std::size_t(i) * d, d};
  }
};

namespace detail {

// Places a stratified coordinate strictly inside its stratum
// [p/N, (p+1)/N) even when the final rounding would spill over.
inline double stratum_coordinate(std::uint32_t p, double u, std::uint32_t n) {
  const double lo = static_cast<double>(p) / n;
  const double hi = static_cast<double>(p + 1) / n;
  double x = (static_cast<double>(p) + u) / n;
  if (x < lo) x = lo;
  if (x >= hi) x = std::nextafter(hi, lo);
  return x;
}

}  // namespace detail

/// Draw order (part of the reproducibility contract):
///   1. one permutation per LHS coordinate j = 0..d_lhs-1 (Fisher-Yates),
///   2. the in-stratum offsets U_{i,j}, point-major (skipped for CenteredLhs),
///   3. the Monte Carlo block, point-major.
/// With d_lhs = 0 this reduces bit-exactly to plain Monte Carlo, with
/// d_lhs = d to plain LHS.
inline PointSet sample(const SampleSpec& spec) {
  spec.validate();
  SplitMix64 gen(derive_stream(spec.seed, spec.trial));

  PointSet ps;
  ps.d = spec.d;
  ps.coords.assign(std::size_t(spec.n) * spec.d, 0.0);
  ps.provenance = spec;

  std::vector<std::vector<std::uint32_t>> perms;
  perms.reserve(spec.d_lhs);
  for (std::uint32_t j = 0; j < spec.d_lhs; ++j) perms.push_back(random_permutation(spec.n, gen));

  const bool centered = spec.kind == SamplerKind::CenteredLhs;
  for (std::uint32_t i = 0; i < spec.n; ++i)
    for (std::uint32_t j = 0; j < spec.d_lhs; ++j) {
      const double u = centered ? 0.5 : gen.next_unit();
      ps.coords[std::size_t(i) * spec.d + j] = detail::stratum_coordinate(perms[j][i], u, spec.n);
    }
  for (std::uint32_t i = 0; i < spec.n; ++i)
    for (std::uint32_t j = spec.d_lhs; j < spec.d; ++j)
      ps.coords[std::size_t(i) * spec.d + j] = gen.next_unit();
  return ps;
}

inline PointSet sample_monte_carlo(const SampleSpec& spec) {
  if (spec.kind != SamplerKind::MonteCarlo)
    throw std::invalid_argument("sample_monte_carlo: spec.kind must be MonteCarlo");
  return sample(spec);
}

inline PointSet sample_lhs(const SampleSpec& spec) {
  if (spec.kind != SamplerKind::Lhs && spec.kind != SamplerKind::CenteredLhs)
    throw std::invalid_argument("sample_lhs: spec.kind must be Lhs or CenteredLhs");
  return sample(spec);
}

inline PointSet sample_padded_lhs(const SampleSpec& spec) {
  if (spec.kind != SamplerKind::PaddedLhs)
    throw std::invalid_argument("sample_padded_lhs: spec.kind must be PaddedLhs");
  return sample(spec);
}

// ---------------------------------------------------------------------------
// Point-set text format: first line "d N", then N lines of d coordinates
// with 17 significant digits.  Writer and reader round-trip bit-exactly.

inline void write_pointset(std::ostream& os, const PointSet& ps) {
  os << ps.d << ' ' << ps.n() << '\n';
  char buf[40];
  const std::uint32_t n = ps.n();
  for (std::uint32_t i = 0; i < n; ++i) {
    for (std::uint32_t j = 0; j < ps.d; ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", ps(i, j));
      if (j) os << ' ';
      os << buf;
    }
    os << '\n';
  }
}

inline PointSet read_pointset(std::istream& is) {
  std::uint32_t d = 0;
  std::uint64_t n = 0;
  if (!(is >> d >> n)) throw std::runtime_error("point set: bad header, expected \"d N\"");
  if (d < 1) throw std::runtime_error("point set: dimension must be >= 1");
  PointSet ps;
  ps.d = d;
  ps.coords.resize(n * d);
  for (std::uint64_t i = 0; i < n * d; ++i) {
    std::string tok;
    if (!(is >> tok)) throw std::runtime_error("point set: truncated coordinate list");
    char* end = nullptr;
    const double v = std::strtod(tok.c_str(), &end);
    if (end == tok.c_str() || *end != '\0')
      throw std::runtime_error("point set: bad coordinate \"" + tok + "\"");
    if (!(v >= 0.0 && v < 1.0))
      throw std::runtime_error("point set: coordinate out of [0,1): " + tok);
    ps.coords[i] = v;
  }
  return ps;
}

}  // namespace ndqmc
