#pragma once

#include <cstdint>

namespace mectopo {

// splitmix64 finalizer (Steele, Lea & Flood 2014). Fully specified,
// so streams reproduce bit-for-bit on every platform.
inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    return mix64(z);
  }

  // uniform in [0, 1), 53 mantissa bits
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

 private:
  std::uint64_t state_;
};

// Counter-based stream derivation: one independent generator per
// (seed, purpose) pair. std random distributions are deliberately
// avoided; they are not reproducible across standard libraries.
inline SplitMix64 substream(std::uint64_t seed, std::uint64_t purpose) {
  return SplitMix64(mix64(seed + 0x9e3779b97f4a7c15ull * (purpose + 1)));
}

// Per-run scenario seeds for experiment grids, keyed by (root, n, trial)
// so that a sweep over comm ranges reuses the same world per trial.
inline std::uint64_t derive_seed(std::uint64_t root, std::uint64_t a,
                                 std::uint64_t b) {
  return mix64(root + 0x9e3779b97f4a7c15ull * (a + 1) +
               0x517cc1b727220a95ull * (b + 1));
}

}  // namespace mectopo
