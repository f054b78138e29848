#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "json.hpp"
#include "qcover/progressions.hpp"

// Dyadic quasi-progression cover of the squares up to n.
//
// The interval ladder I_i = [ceil(n/2^i), ceil(n/2^(i-1)) - 1] (I_1 ends at n)
// for i = 1..floor(log2 n) splits [1, n]. Each interval with at least two
// squares becomes one QP piece: base gap D_i = isqrt(first square root in the
// interval), and between consecutive squares a^2, b^2 the block contributes
// q = floor(s/D) gaps of which delta = s mod D are (D+1)-gaps (s = b^2 - a^2),
// placed first. Partial sums then pass through every square of the interval.
// Intervals with one square become singleton pieces, as does the residual
// square 1 when it falls below the last interval.

namespace qcover {

inline constexpr std::uint64_t kNoCap = std::numeric_limits<std::uint64_t>::max();

struct DyadicInterval {
    int index = 0;           // i, 1-based
    long long lo = 0;        // inclusive
    long long hi = 0;        // inclusive
    long long first_root = 0;  // smallest a with a^2 in [lo, hi]
    long long last_root = 0;   // largest b with b^2 in [lo, hi]; < first_root when empty
    long long base_gap = 0;    // isqrt(first_root); 0 when the interval has no square

    long long square_count() const {
        return first_root > last_root ? 0 : last_root - first_root + 1;
    }
};

struct DyadicPlan {
    long long n = 0;
    int t = 0;  // floor(log2 n)
    std::vector<DyadicInterval> intervals;

    static DyadicPlan make(long long n);  // requires n >= 4
};

// Gap word for one block a^2 -> b^2 (a < b) with base gap d: floor(s/d) gaps,
// s mod d of them set (placed first). Returns nullopt when infeasible, i.e.
// s mod d > floor(s/d).
std::optional<std::vector<bool>> build_block(long long a, long long b, long long d);

struct BuildStats {
    int singleton_pieces = 0;    // sparse intervals + residual square 1
    int infeasible_intervals = 0;  // intervals downgraded to singletons per square
};

// Full construction. A finite cap bounds the number of (D+1)-gaps per piece:
// a piece is cut at the last square reached whenever the next block would
// overflow the budget; a single block that overflows on its own is emitted
// with the largest base gap d' <= D keeping s mod d' <= cap.
Cover build_quasi_cover_capped(long long n, std::uint64_t cap, BuildStats* stats = nullptr);
Cover build_quasi_cover(long long n, BuildStats* stats = nullptr);

// (3^(1/4)/2) * 2^(3/4) / (2^(3/4) - 1): the constant in the cost bound
// C * n^(3/4) * log2 n.
double qp_bound_constant();
double theoretical_qp_bound(long long n);

struct BuildCertificate {
    long long n = 0;
    int t = 0;                // number of pieces
    std::uint64_t sum_len = 0;
    std::uint64_t cost = 0;
    double bound = 0.0;
    bool ok = false;          // cost < bound, strictly
    int fallbacks = 0;        // singleton pieces emitted
};

BuildCertificate certify_build(const Cover& c, const BuildStats& stats);
nlohmann::json certificate_to_json(const BuildCertificate& cert);

}  // namespace qcover
