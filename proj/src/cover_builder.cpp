#include "qcover/cover_builder.hpp"

#include <cmath>
#include <stdexcept>

namespace qcover {

DyadicPlan DyadicPlan::make(long long n) {
    if (n < 4) throw std::invalid_argument("DyadicPlan: n must be >= 4");
    DyadicPlan plan;
    plan.n = n;
    plan.t = 63 - __builtin_clzll(static_cast<unsigned long long>(n));
    for (int i = 1; i <= plan.t; ++i) {
        DyadicInterval iv;
        iv.index = i;
        long long den = 1LL << i;
        iv.lo = (n + den - 1) / den;
        iv.hi = i == 1 ? n : (n + (den >> 1) - 1) / (den >> 1) - 1;
        iv.first_root = static_cast<long long>(isqrt64(static_cast<std::uint64_t>(iv.lo - 1))) + 1;
        iv.last_root = static_cast<long long>(isqrt64(static_cast<std::uint64_t>(iv.hi)));
        if (iv.first_root <= iv.last_root)
            iv.base_gap = static_cast<long long>(isqrt64(static_cast<std::uint64_t>(iv.first_root)));
        plan.intervals.push_back(iv);
    }
    return plan;
}

std::optional<std::vector<bool>> build_block(long long a, long long b, long long d) {
    if (a < 1 || b <= a || d < 1) throw std::invalid_argument("build_block: need 1 <= a < b, d >= 1");
    long long s = b * b - a * a;
    long long q = s / d;
    long long delta = s % d;
    if (delta > q) return std::nullopt;
    std::vector<bool> word(static_cast<std::size_t>(q), false);
    for (long long i = 0; i < delta; ++i) word[static_cast<std::size_t>(i)] = true;
    return word;
}

namespace {

// Largest base gap d' <= d such that a single block of span s stays within
// the (d'+1)-gap budget and is feasible. d' = 1 always works (s mod 1 = 0).
long long adjusted_gap_for_block(long long s, long long d, std::uint64_t cap) {
    for (long long dd = d; dd >= 1; --dd) {
        long long q = s / dd, delta = s % dd;
        if (delta <= q && static_cast<std::uint64_t>(delta) <= cap) return dd;
    }
    return 1;  // unreachable
}

void append_interval_pieces(const DyadicInterval& iv, std::uint64_t cap,
                            std::vector<Piece>& pieces, BuildStats& stats) {
    long long squares = iv.square_count();
    if (squares == 0) return;
    if (squares == 1) {
        pieces.emplace_back(QuasiProgression(iv.first_root * iv.first_root, 1, {}));
        ++stats.singleton_pieces;
        return;
    }
    long long d = iv.base_gap;

    // Feasibility dry run: one bad block downgrades the whole interval.
    for (long long a = iv.first_root; a < iv.last_root; ++a) {
        long long s = 2 * a + 1;
        if (s % d > s / d) {
            for (long long r = iv.first_root; r <= iv.last_root; ++r) {
                pieces.emplace_back(QuasiProgression(r * r, 1, {}));
                ++stats.singleton_pieces;
            }
            ++stats.infeasible_intervals;
            return;
        }
    }

    long long piece_start = iv.first_root * iv.first_root;
    std::vector<bool> word;
    std::uint64_t plus1 = 0;
    auto flush = [&](void) {
        if (!word.empty()) {
            pieces.emplace_back(QuasiProgression(piece_start, d, std::move(word)));
            word = {};
        }
    };
    for (long long a = iv.first_root; a < iv.last_root; ++a) {
        long long b = a + 1;
        long long s = 2 * a + 1;  // b^2 - a^2
        std::uint64_t delta = static_cast<std::uint64_t>(s % d);
        if (delta > cap) {
            // This block alone blows the budget: emit it with a smaller base gap.
            flush();
            long long dd = adjusted_gap_for_block(s, d, cap);
            auto w = build_block(a, b, dd);
            pieces.emplace_back(QuasiProgression(a * a, dd, std::move(*w)));
            piece_start = b * b;
            plus1 = 0;
            continue;
        }
        if (plus1 + delta > cap) {
            // Cut at the last square reached; start a fresh piece at a^2.
            flush();
            piece_start = a * a;
            plus1 = 0;
        }
        auto w = build_block(a, b, d);
        word.insert(word.end(), w->begin(), w->end());
        plus1 += delta;
    }
    flush();
}

}  // namespace

Cover build_quasi_cover_capped(long long n, std::uint64_t cap, BuildStats* stats) {
    if (n < 1) throw std::invalid_argument("build_quasi_cover: n must be >= 1");
    if (cap < 1) throw std::invalid_argument("build_quasi_cover: cap must be >= 1");
    BuildStats local;
    Cover c;
    c.n = n;
    c.target = TargetSet::squares_target();
    if (n < 4) {
        c.pieces.emplace_back(QuasiProgression(1, 1, {}));
        ++local.singleton_pieces;
        if (stats) *stats = local;
        return c;
    }
    DyadicPlan plan = DyadicPlan::make(n);
    for (const auto& iv : plan.intervals)
        append_interval_pieces(iv, cap, c.pieces, local);
    if (plan.intervals.back().lo > 1) {
        // The ladder bottoms out at 2; the square 1 needs its own piece.
        c.pieces.emplace_back(QuasiProgression(1, 1, {}));
        ++local.singleton_pieces;
    }
    if (stats) *stats = local;
    return c;
}

Cover build_quasi_cover(long long n, BuildStats* stats) {
    return build_quasi_cover_capped(n, kNoCap, stats);
}

double qp_bound_constant() {
    static const double c = (std::pow(3.0, 0.25) / 2.0) * std::pow(2.0, 0.75) / (std::pow(2.0, 0.75) - 1.0);
    return c;
}

double theoretical_qp_bound(long long n) {
    if (n < 2) throw std::invalid_argument("theoretical_qp_bound: n must be >= 2");
    double nn = static_cast<double>(n);
    return qp_bound_constant() * std::pow(nn, 0.75) * std::log2(nn);
}

BuildCertificate certify_build(const Cover& c, const BuildStats& stats) {
    BuildCertificate cert;
    cert.n = c.n;
    cert.t = static_cast<int>(c.pieces.size());
    cert.sum_len = c.sum_lengths();
    cert.cost = c.cost();
    cert.bound = c.n >= 2 ? theoretical_qp_bound(c.n) : 1.0;
    cert.ok = static_cast<double>(cert.cost) < cert.bound;
    cert.fallbacks = stats.singleton_pieces;
    return cert;
}

nlohmann::json certificate_to_json(const BuildCertificate& cert) {
    return nlohmann::json{{"n", cert.n},       {"t", cert.t},
                          {"sum_len", cert.sum_len}, {"cost", cert.cost},
                          {"bound", cert.bound},     {"ok", cert.ok},
                          {"fallbacks", cert.fallbacks}};
}

}  // namespace qcover
