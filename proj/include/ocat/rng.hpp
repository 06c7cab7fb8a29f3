// Deterministic seeded RNG for the randomized suites. splitmix64 is used
// instead of <random> distributions so that streams are byte-identical
// across platforms and standard library implementations.
#pragma once

#include <cstdint>

namespace ocat {

class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform in [0, n)
    int below(int n) { return n <= 1 ? 0 : static_cast<int>(next() % static_cast<std::uint64_t>(n)); }

    // small signed integer in [-k, k], for sparse-ish random vectors
    int small_int(int k = 3) { return below(2 * k + 1) - k; }

  private:
    std::uint64_t state_;
};

}  // namespace ocat
