#pragma once

#include <cstdint>

namespace qcover {

// SplitMix64: tiny, fast, and good enough for reproducible sampling.
// All randomized harnesses in this project derive their streams from a
// single master seed through mix(), so results are independent of worker
// count and stable across runs.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, bound); bound must be nonzero. Rejection-free Lemire trick.
    std::uint64_t below(std::uint64_t bound) {
        unsigned __int128 m = static_cast<unsigned __int128>(next()) * bound;
        return static_cast<std::uint64_t>(m >> 64);
    }

    // Uniform integer in [lo, hi] inclusive.
    std::int64_t range(std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo) + 1));
    }

    // Uniform double in [0, 1).
    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // Derive a decorrelated per-stream seed from a master seed.
    static std::uint64_t mix(std::uint64_t seed, std::uint64_t stream) {
        SplitMix64 g(seed ^ (0x632be59bd9b4e019ULL * (stream + 1)));
        g.next();
        return g.next();
    }

private:
    std::uint64_t state_;
};

}  // namespace qcover
