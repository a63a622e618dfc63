#pragma once

#include <cstdint>

namespace apfrac {

// splitmix64 finalizer; full-period permutation of uint64.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Counter-based generator: the stream for sample `index` under a given seed
/// is a pure function of (seed, index), so samples can be drawn in any order
/// and on any thread with identical results.
class CounterRng {
public:
    CounterRng(std::uint64_t seed, std::uint64_t index)
        : key_(mix64(seed ^ mix64(index * 0xd6e8feb86659fd93ULL))), ctr_(0) {}

    std::uint64_t next_u64() { return mix64(key_ + (++ctr_) * 0x9e3779b97f4a7c15ULL); }

    /// Uniform integer in [0, n), n >= 1, by rejection on the top bias range.
    std::uint64_t next_below(std::uint64_t n) {
        // Rejection bound: multiples of n fit wholly below `limit`.
        std::uint64_t limit = n * ((~0ULL) / n);
        std::uint64_t x;
        do {
            x = next_u64();
        } while (x >= limit);
        return x % n;
    }

    /// One uniformly random bit.
    unsigned next_bit() { return static_cast<unsigned>(next_u64() >> 63); }

private:
    std::uint64_t key_;
    std::uint64_t ctr_;
};

} // namespace apfrac
