#pragma once

#include <cstdint>
#include <random>

namespace hilbert {

// Deterministic uniforms. mt19937_64's output sequence is pinned by the standard;
// the explicit 53-bit mapping avoids the implementation-defined behaviour of
// std::uniform_real_distribution, so seeded runs are byte-identical across
// toolchains.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    std::uint64_t next_u64() { return gen_(); }
    // Skip n draws; parallel consumers jump to disjoint ranges of one stream.
    void discard(std::uint64_t n) { gen_.discard(static_cast<unsigned long long>(n)); }

  private:
    std::mt19937_64 gen_;
};

// Halton low-discrepancy sequence (bases 2 and 3), used as the thin-region
// quadrature fallback. Deterministic; `seed` offsets the start index.
inline double halton(std::uint64_t index, std::uint64_t base) {
    double f = 1.0, r = 0.0;
    while (index > 0) {
        f /= static_cast<double>(base);
        r += f * static_cast<double>(index % base);
        index /= base;
    }
    return r;
}

}  // namespace hilbert
