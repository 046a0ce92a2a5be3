#pragma once

#include <cstdint>

namespace lolasym {

// SplitMix64 (Steele, Lea, Vigna): tiny, seedable, identical output on every
// platform — injection plans must be reproducible bit-for-bit.
struct SplitMix64 {
  uint64_t state;

  explicit SplitMix64(uint64_t seed) : state(seed) {}

  uint64_t next() {
    uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, n); n must be positive.  Modulo bias is irrelevant for the
  // trace sizes involved and keeps the sequence platform-stable.
  uint64_t below(uint64_t n) { return next() % n; }

  bool chance(uint64_t num, uint64_t den) { return below(den) < num; }
};

}  // namespace lolasym
