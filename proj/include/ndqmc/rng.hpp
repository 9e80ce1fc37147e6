#pragma once

#include <cstdint>
#include <vector>

// Counter-based pseudo-random streams (SplitMix64, Steele/Lea/Flood).
//
// Every value produced by this library is a pure function of a 64-bit
// stream key.  The i-th raw output of a stream with key k is
//
//     out_i = mix64(k + (i+1) * 0x9E3779B97F4A7C15)
//
// where mix64 is the SplitMix64 finalizer.  Stream keys for independent
// trials are derived with derive_stream below.  The exact constants and
// operation order are part of the file-format contract: two builds must
// produce bit-identical samples for the same (seed, trial).

namespace ndqmc {

inline constexpr std::uint64_t kSplitMixGamma = 0x9E3779B97F4A7C15ull;

/// SplitMix64 finalizer; bijective on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

/// Derives the stream key for one trial of one experiment seed.
/// Distinct trials of the same seed always get distinct keys (the
/// pre-mix map is injective mod 2^64 and mix64 is a bijection).
constexpr std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t trial) {
  return mix64(seed + kSplitMixGamma * (trial + 1));
}

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t key) : state_(key) {}

  std::uint64_t next_u64() {
    state_ += kSplitMixGamma;
    return mix64(state_);
  }

  /// Uniform 53-bit dyadic rational in [0,1); 1.0 is unreachable.
  double next_unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform integer in [0,n) by rejection; exact, no modulo bias.
  std::uint64_t next_below(std::uint64_t n) {
    const std::uint64_t threshold = (0 - n) % n;  // 2^64 mod n
    for (;;) {
      const std::uint64_t x = next_u64();
      if (x >= threshold) return x % n;
    }
  }

 private:
  std::uint64_t state_;
};

/// Fisher-Yates permutation of {0,...,n-1}, uniform over all n! orders.
inline std::vector<std::uint32_t> random_permutation(std::uint32_t n, SplitMix64& gen) {
  std::vector<std::uint32_t> perm(n);
  for (std::uint32_t i = 0; i < n; ++i) perm[i] = i;
  for (std::uint32_t i = n; i > 1; --i) {
    const auto j = static_cast<std::uint32_t>(gen.next_below(i));
    std::swap(perm[i - 1], perm[j]);
  }
  return perm;
}

}  // namespace ndqmc
