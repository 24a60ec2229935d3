#pragma once

#include <cstdint>

namespace bsos {

// splitmix64; fixed project-wide so sampled instances are bit-reproducible
// across platforms.
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform in [0, 1): top 53 bits
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // uniform in [-1, 1]
    double next_symmetric() { return 2.0 * next_unit() - 1.0; }

  private:
    std::uint64_t state_;
};

}  // namespace bsos
