#include "qcover/oracle.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

#include "qcover/ntcore.hpp"

namespace qcover {

namespace {

int popcount(std::uint32_t m) { return __builtin_popcount(m); }

struct MaskEntry {
    std::uint32_t length;
    Piece piece;
};

// mask -> shortest piece seen, first-come on ties (generation order is fixed).
void keep_best(std::vector<std::pair<std::uint32_t, MaskEntry>>& acc, std::uint32_t mask,
               std::uint32_t length, Piece piece) {
    for (auto& [m, e] : acc) {
        if (m == mask) {
            if (length < e.length) e = MaskEntry{length, std::move(piece)};
            return;
        }
    }
    acc.emplace_back(mask, MaskEntry{length, std::move(piece)});
}

std::vector<CandidatePiece> finalize(std::vector<std::pair<std::uint32_t, MaskEntry>>& acc) {
    std::vector<CandidatePiece> out;
    for (auto& [mask, e] : acc) {
        bool dominated = false;
        for (auto& [m2, e2] : acc) {
            if (m2 != mask && (m2 & mask) == mask && e2.length <= e.length) {
                dominated = true;
                break;
            }
        }
        if (!dominated)
            out.push_back(CandidatePiece{std::move(e.piece), mask, e.length});
    }
    std::sort(out.begin(), out.end(), [](const CandidatePiece& a, const CandidatePiece& b) {
        int pa = popcount(a.mask), pb = popcount(b.mask);
        double da = static_cast<double>(a.length) / pa, db = static_cast<double>(b.length) / pb;
        if (da != db) return da < db;  // denser (cheaper per square) first
        if (a.length != b.length) return a.length < b.length;
        return a.mask < b.mask;
    });
    return out;
}

std::vector<CandidatePiece> ap_candidates(long long n) {
    long long s = static_cast<long long>(isqrt64(static_cast<std::uint64_t>(n)));
    std::vector<long long> sq(s);
    for (long long i = 1; i <= s; ++i) sq[i - 1] = i * i;
    std::vector<std::pair<std::uint32_t, MaskEntry>> acc;
    for (long long i = 0; i < s; ++i)
        keep_best(acc, 1u << i, 1, ArithProgression(1, sq[i] - 1, 1));
    for (long long i = 0; i < s; ++i) {
        for (long long j = i + 1; j < s; ++j) {
            long long diff = sq[j] - sq[i];
            for (long long m = 1; m <= diff; ++m) {
                if (diff % m != 0) continue;
                std::uint64_t k = static_cast<std::uint64_t>(diff / m) + 1;
                ArithProgression ap(m, sq[i] - m, k);
                std::uint32_t mask = 0;
                for (long long t = 0; t < s; ++t)
                    if (ap.contains(sq[t])) mask |= 1u << t;
                keep_best(acc, mask, static_cast<std::uint32_t>(k), std::move(ap));
            }
        }
    }
    return finalize(acc);
}

std::vector<CandidatePiece> qp_candidates(long long n) {
    long long s = static_cast<long long>(isqrt64(static_cast<std::uint64_t>(n)));
    std::vector<long long> sq(s);
    std::vector<int> root_of(static_cast<std::size_t>(n) + 1, -1);
    for (long long i = 1; i <= s; ++i) {
        sq[i - 1] = i * i;
        root_of[static_cast<std::size_t>(i * i)] = static_cast<int>(i - 1);
    }
    std::vector<std::pair<std::uint32_t, MaskEntry>> acc;
    for (long long i = 0; i < s; ++i)
        keep_best(acc, 1u << i, 1, QuasiProgression(sq[static_cast<std::size_t>(i)], 1, {}));
    const std::uint32_t nmasks = 1u << s;
    const std::uint16_t kInf = 0xffff;
    // dp[pos][mask]: shortest QP with base gap d starting at a^2, ending at pos,
    // having visited exactly the squares in mask. Parents rebuild the gap word.
    std::vector<std::uint16_t> dp(static_cast<std::size_t>(n + 1) * nmasks);
    std::vector<std::int32_t> par(dp.size());  // prev_pos * nmasks + prev_mask, -1 at root
    std::vector<std::uint8_t> via(dp.size());  // 1 if the arriving gap was d+1
    auto idx = [&](long long pos, std::uint32_t mask) {
        return static_cast<std::size_t>(pos) * nmasks + mask;
    };
    for (long long d = 1; d < n; ++d) {
        for (long long a = 0; a < s; ++a) {
            std::fill(dp.begin(), dp.end(), kInf);
            long long start = sq[a];
            std::uint32_t mask0 = 1u << a;
            dp[idx(start, mask0)] = 1;
            par[idx(start, mask0)] = -1;
            for (long long pos = start; pos <= n; ++pos) {
                for (std::uint32_t mask = 0; mask < nmasks; ++mask) {
                    std::uint16_t len = dp[idx(pos, mask)];
                    if (len == kInf) continue;
                    if (root_of[static_cast<std::size_t>(pos)] >= 0) {
                        // A QP may end at any visited square: record it.
                        std::vector<bool> word;
                        long long p = pos;
                        std::uint32_t m = mask;
                        while (par[idx(p, m)] >= 0) {
                            std::int32_t pr = par[idx(p, m)];
                            word.push_back(via[idx(p, m)] != 0);
                            p = pr / static_cast<std::int32_t>(nmasks);
                            m = static_cast<std::uint32_t>(pr) % nmasks;
                        }
                        std::reverse(word.begin(), word.end());
                        long long base = word.empty() ? 1 : d;
                        keep_best(acc, mask, len, QuasiProgression(start, base, std::move(word)));
                    }
                    for (int g = 0; g <= 1; ++g) {
                        long long next = pos + d + g;
                        if (next > n) continue;
                        std::uint32_t nmask = mask;
                        if (root_of[static_cast<std::size_t>(next)] >= 0)
                            nmask |= 1u << root_of[static_cast<std::size_t>(next)];
                        if (len + 1 < dp[idx(next, nmask)]) {
                            dp[idx(next, nmask)] = len + 1;
                            par[idx(next, nmask)] =
                                static_cast<std::int32_t>(idx(pos, mask));
                            via[idx(next, nmask)] = static_cast<std::uint8_t>(g);
                        }
                    }
                }
            }
        }
    }
    return finalize(acc);
}

struct Search {
    const std::vector<CandidatePiece>& cands;
    std::vector<std::vector<std::uint32_t>> by_square;
    std::uint32_t full_mask;
    int s_count;
    int max_cov;
    double min_ratio;

    int t_limit = 0;
    std::uint64_t incumbent = 0;
    std::vector<std::uint32_t> stack, best_stack;
    std::uint64_t nodes = 0;
    bool timed_out = false;
    std::chrono::steady_clock::time_point deadline;

    void dfs(std::uint32_t uncovered, int used, std::uint64_t sigma) {
        if (timed_out) return;
        if ((++nodes & 1023) == 0 && std::chrono::steady_clock::now() > deadline) {
            timed_out = true;
            return;
        }
        if (uncovered == 0) {
            std::uint64_t cost = static_cast<std::uint64_t>(used) * sigma;
            if (cost < incumbent) {
                incumbent = cost;
                best_stack = stack;
            }
            return;
        }
        if (used == t_limit) return;
        int u = popcount(uncovered);
        int rem = t_limit - used;
        int min_pieces = (u + max_cov - 1) / max_cov;
        if (min_pieces > rem) return;
        auto lb_add = static_cast<std::uint64_t>(
            std::max<double>(min_pieces, std::ceil(u * min_ratio - 1e-9)));
        if (static_cast<std::uint64_t>(t_limit) * (sigma + lb_add) >= incumbent) return;
        int sqi = __builtin_ctz(uncovered);
        for (std::uint32_t ci : by_square[static_cast<std::size_t>(sqi)]) {
            const CandidatePiece& c = cands[ci];
            stack.push_back(ci);
            dfs(uncovered & ~c.mask, used + 1, sigma + c.length);
            stack.pop_back();
            if (timed_out) return;
        }
    }
};

}  // namespace

std::vector<CandidatePiece> candidate_pieces(long long n, PieceKind kind) {
    if (n < 1) throw std::invalid_argument("candidate_pieces: n must be >= 1");
    if (kind == PieceKind::ap && n > kOracleApLimit)
        throw std::invalid_argument("candidate_pieces: AP oracle supports n <= 64");
    if (kind == PieceKind::qp && n > kOracleQpLimit)
        throw std::invalid_argument("candidate_pieces: QP oracle supports n <= 36");
    return kind == PieceKind::ap ? ap_candidates(n) : qp_candidates(n);
}

OracleResult exact_min_cost(const OracleConfig& cfg) {
    auto cands = candidate_pieces(cfg.n, cfg.kind);  // validates n
    int s_count = static_cast<int>(isqrt64(static_cast<std::uint64_t>(cfg.n)));

    Search srch{cands, {}, (1u << s_count) - 1, s_count, 1, 1e9, 0, 0, {}, {}, 0, false, {}};
    srch.by_square.resize(static_cast<std::size_t>(s_count));
    for (std::uint32_t ci = 0; ci < cands.size(); ++ci) {
        srch.max_cov = std::max(srch.max_cov, popcount(cands[ci].mask));
        srch.min_ratio = std::min(srch.min_ratio, static_cast<double>(cands[ci].length) /
                                                      popcount(cands[ci].mask));
        for (int t = 0; t < s_count; ++t)
            if (cands[ci].mask & (1u << t)) srch.by_square[static_cast<std::size_t>(t)].push_back(ci);
    }
    // Singleton cover = trivial incumbent and fallback witness.
    std::vector<Piece> fallback;
    for (int t = 1; t <= s_count; ++t) {
        long long v = static_cast<long long>(t) * t;
        if (cfg.kind == PieceKind::ap)
            fallback.emplace_back(ArithProgression(1, v - 1, 1));
        else
            fallback.emplace_back(QuasiProgression(v, 1, {}));
    }
    srch.incumbent = static_cast<std::uint64_t>(s_count) * static_cast<std::uint64_t>(s_count);
    srch.deadline = std::chrono::steady_clock::now() +
                    std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                        std::chrono::duration<double>(cfg.time_budget_seconds));

    int max_t = cfg.max_pieces > 0 ? cfg.max_pieces : 2 * s_count;
    std::uint64_t min_sigma = static_cast<std::uint64_t>(std::ceil(s_count * srch.min_ratio - 1e-9));
    for (int t = 1; t <= max_t && !srch.timed_out; ++t) {
        std::uint64_t floor_cost =
            static_cast<std::uint64_t>(t) * std::max<std::uint64_t>(static_cast<std::uint64_t>(t), min_sigma);
        if (floor_cost >= srch.incumbent) break;  // larger t only gets worse
        srch.t_limit = t;
        srch.dfs(srch.full_mask, 0, 0);
    }

    OracleResult res;
    res.cost = srch.incumbent;
    res.exact = !srch.timed_out;
    res.nodes_explored = srch.nodes;
    res.witness.n = cfg.n;
    res.witness.target = TargetSet::squares_target();
    if (!srch.best_stack.empty()) {
        for (std::uint32_t ci : srch.best_stack) res.witness.pieces.push_back(cands[ci].piece);
    } else {
        res.witness.pieces = std::move(fallback);
    }
    std::sort(res.witness.pieces.begin(), res.witness.pieces.end(),
              [](const Piece& a, const Piece& b) { return piece_first(a) < piece_first(b); });
    return res;
}

nlohmann::json oracle_report_to_json(const OracleResult& res, const OracleConfig& cfg) {
    nlohmann::json j;
    j["n"] = cfg.n;
    j["kind"] = cfg.kind == PieceKind::ap ? "ap" : "qp";
    j["cost"] = res.cost;
    j["exact"] = res.exact;
    j["nodes_explored"] = res.nodes_explored;
    j["degenerate_qp_allowed"] = true;
    j["witness"] = cover_to_json(res.witness);
    return j;
}

}  // namespace qcover
