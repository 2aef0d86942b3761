#pragma once

#include <cstdint>

namespace nclass {

/// Small counter-friendly PRNG (SplitMix64). Used everywhere randomness is
/// needed so that results are reproducible across platforms and standard
/// library versions.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

 private:
  std::uint64_t state_;
};

/// Independent stream for (seed, index) pairs. Two mixing rounds keep
/// neighbouring indices statistically unrelated.
inline SplitMix64 substream(std::uint64_t seed, std::uint64_t index) {
  SplitMix64 outer(seed ^ (0xd1b54a32d192ed03ULL + index * 0x9e3779b97f4a7c15ULL));
  std::uint64_t s = outer.next();
  s ^= SplitMix64(index + 0x2545f4914f6cdd1dULL).next();
  return SplitMix64(s);
}

}  // namespace nclass
