#pragma once

#include <cstdint>

namespace ncm {

// Deterministic generator used everywhere randomness is needed, so results
// are identical across platforms and standard libraries. Per-trial streams
// derive from a master seed and the trial index via the same mixer.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  static Rng for_trial(std::uint64_t master_seed, std::uint64_t trial) {
    Rng mixer(master_seed ^ (0x9e3779b97f4a7c15ULL * (trial + 1)));
    mixer.next();
    return mixer;
  }

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, bound) by rejection; bound > 0.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    std::uint64_t v;
    do {
      v = next();
    } while (v >= limit);
    return v % bound;
  }

  std::int64_t range(std::int64_t lo, std::int64_t hi_inclusive) {
    return lo + static_cast<std::int64_t>(
                    below(static_cast<std::uint64_t>(hi_inclusive - lo + 1)));
  }

  double unit() {  // [0,1)
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

 private:
  std::uint64_t state_;
};

}  // namespace ncm
