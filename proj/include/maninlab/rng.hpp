#pragma once

#include <cstdint>

namespace maninlab {

// Counter-based splittable generator: every draw is a pure function of
// (seed, stream, counter), so parallel consumers can be assigned disjoint
// counter ranges and results never depend on the thread count.
struct SplitRng {
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;

    static std::uint64_t mix(std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t bits(std::uint64_t counter) const {
        return mix(mix(seed ^ 0x2545f4914f6cdd1dULL * stream) + counter);
    }

    // uniform in [0,1)
    double uniform(std::uint64_t counter) const {
        return (double)(bits(counter) >> 11) * 0x1.0p-53;
    }

    SplitRng split(std::uint64_t substream) const { return SplitRng{seed, mix(stream ^ substream)}; }
};

// Van der Corput radical inverse: the Halton low-discrepancy sequence in a
// given prime base.
inline double halton(std::uint64_t i, unsigned base) {
    double f = 1.0, r = 0.0;
    while (i > 0) {
        f /= (double)base;
        r += f * (double)(i % base);
        i /= base;
    }
    return r;
}

}  // namespace maninlab
