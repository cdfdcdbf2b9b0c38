#pragma once

#include <cstdint>

namespace kdm {

// splitmix64: deterministic across platforms and compilers, which the
// std:: distributions are not. Good enough for harness instance generation.
class SplitMix64 {
  public:
    explicit SplitMix64(uint64_t seed) : state_(seed) {}

    uint64_t next() {
        uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // Uniform in [0, n) via rejection sampling.
    uint64_t below(uint64_t n) {
        uint64_t limit = ~uint64_t(0) - ~uint64_t(0) % n;
        uint64_t x;
        do {
            x = next();
        } while (x >= limit);
        return x % n;
    }

  private:
    uint64_t state_;
};

}  // namespace kdm
