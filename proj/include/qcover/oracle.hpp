#pragma once

#include <cstdint>
#include <vector>

#include "json.hpp"
#include "qcover/progressions.hpp"

// Exact minimum-cost cover search for small n: the ground truth the dyadic
// construction and the analytic lower bounds are compared against.
//
// Candidate pieces have square endpoints (trimming non-square ends of any
// piece never breaks coverage and never raises the cost), which makes the
// candidate set finite and small. The search is iterative deepening over the
// piece count T with branch and bound inside each T; cost = T * sum of
// lengths, minimized over T.

namespace qcover {

enum class PieceKind { ap, qp };

inline constexpr long long kOracleApLimit = 64;  // n cap for kind = ap
inline constexpr long long kOracleQpLimit = 36;  // n cap for kind = qp

struct OracleConfig {
    long long n = 0;
    PieceKind kind = PieceKind::ap;
    double time_budget_seconds = 30.0;
    int max_pieces = 0;  // 0 -> 2 * floor(sqrt(n))
};

struct CandidatePiece {
    Piece piece;
    std::uint32_t mask = 0;    // bit i-1 <=> i^2 covered
    std::uint32_t length = 0;
};

// All non-dominated candidate pieces (dominated = another candidate covers a
// superset of squares with no greater length). Deterministic order.
std::vector<CandidatePiece> candidate_pieces(long long n, PieceKind kind);

struct OracleResult {
    std::uint64_t cost = 0;
    bool exact = true;  // false when the time budget expired (incumbent returned)
    Cover witness;
    std::uint64_t nodes_explored = 0;
};

OracleResult exact_min_cost(const OracleConfig& cfg);

nlohmann::json oracle_report_to_json(const OracleResult& res, const OracleConfig& cfg);

}  // namespace qcover
