#pragma once

#include <cstdint>
#include <random>

namespace hyperdet {

/// Seeded source of small integers. The engine is std::mt19937_64, whose
/// output sequence is fixed by the C++ standard; bounded draws use rejection
/// sampling on the raw 64-bit output, so results do not depend on the
/// standard library's distribution implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform integer in [0, bound).
    std::uint64_t below(std::uint64_t bound) {
        if (bound <= 1) return 0;
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t x;
        do {
            x = engine_();
        } while (x >= limit);
        return x % bound;
    }

    /// Uniform integer in [lo, hi].
    long uniform(long lo, long hi) {
        return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo) + 1));
    }

    /// Uniform integer in [-bound, bound] \ {0}.
    long nonzero(long bound) {
        long x = uniform(-bound, bound - 1);
        return x >= 0 ? x + 1 : x;
    }

private:
    std::mt19937_64 engine_;
};

/// Stable derivation of a sub-seed, so that independent streams can be
/// attached to (seed, label) pairs.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t label) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (label + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace hyperdet
