#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "qcover/ntcore.hpp"

// Progression pieces and covers. An AP piece is {m*j + r : j = 1..k}; a
// quasi-progression (QP) piece is an increasing sequence whose consecutive
// gaps all lie in {D, D+1}. A cover is a list of pieces whose union must
// contain a target set (the squares, or a polynomial value set) up to n.

namespace qcover {

class ArithProgression {
public:
    // Requires m >= 1, k >= 1 and m + r >= 1 (every element positive);
    // r may be negative. Throws std::invalid_argument.
    ArithProgression(long long m, long long r, std::uint64_t k);

    long long modulus() const { return m_; }
    long long residue() const { return r_; }
    std::uint64_t length() const { return k_; }
    long long first() const { return m_ + r_; }
    long long last() const { return r_ + static_cast<long long>(k_) * m_; }
    bool contains(long long v) const;
    std::vector<long long> elements() const;

private:
    long long m_;
    long long r_;
    std::uint64_t k_;
};

class QuasiProgression {
public:
    // gaps.size() + 1 elements starting at start; gap i is base_gap + gaps[i].
    // Requires start >= 1, base_gap >= 1.
    QuasiProgression(long long start, long long base_gap, std::vector<bool> gaps);

    long long start() const { return start_; }
    long long first() const { return start_; }
    long long base_gap() const { return d_; }
    const std::vector<bool>& gap_word() const { return gaps_; }
    std::uint64_t length() const { return gaps_.size() + 1; }
    std::uint64_t plus1_count() const;
    long long last() const;
    std::vector<long long> elements() const;

    // Rebuilds a QP from its element list (increasing, >= 1). The base gap is
    // the minimum consecutive difference; throws std::invalid_argument if the
    // gaps are not all in {D, D+1}. Singletons get base_gap 1.
    static QuasiProgression from_elements(const std::vector<long long>& elems);

private:
    long long start_;
    long long d_;
    std::vector<bool> gaps_;
};

using Piece = std::variant<ArithProgression, QuasiProgression>;

std::uint64_t piece_length(const Piece& p);
std::vector<long long> piece_elements(const Piece& p);
long long piece_first(const Piece& p);
long long piece_last(const Piece& p);

struct TargetSet {
    enum class Kind { squares, poly };
    Kind kind = Kind::squares;
    Polynomial poly;  // meaningful only for Kind::poly

    static TargetSet squares_target();
    static TargetSet poly_target(Polynomial f);

    // Sorted distinct values of the target inside [1, n].
    std::vector<long long> values_up_to(long long n) const;
};

struct Cover {
    long long n = 0;
    TargetSet target;
    std::vector<Piece> pieces;

    std::uint64_t sum_lengths() const;
    // Cost of the covering system: (#pieces) * (sum of lengths).
    std::uint64_t cost() const;
};

struct CoverCertificate {
    bool covered = false;
    std::vector<long long> missing;  // first 100 uncovered target values
};

// Checks that every target value <= n lies in some piece. Also validates that
// all piece elements stay inside [1, n] (std::invalid_argument otherwise).
CoverCertificate verify_cover(const Cover& c);

// Number of perfect squares among the AP's elements. Requires the whole AP to
// sit inside [1, n]; throws std::domain_error otherwise.
std::uint64_t square_intersection_count(const ArithProgression& ap, long long n);

nlohmann::json cover_to_json(const Cover& c);
Cover cover_from_json(const nlohmann::json& j);

}  // namespace qcover
