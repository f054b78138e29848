#include "qcover/progressions.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

namespace qcover {

ArithProgression::ArithProgression(long long m, long long r, std::uint64_t k)
    : m_(m), r_(r), k_(k) {
    if (m < 1) throw std::invalid_argument("ArithProgression: modulus must be >= 1");
    if (k < 1) throw std::invalid_argument("ArithProgression: length must be >= 1");
    if (m + r < 1) throw std::invalid_argument("ArithProgression: first element m + r must be >= 1");
}

bool ArithProgression::contains(long long v) const {
    if (v < first() || v > last()) return false;
    return (v - r_) % m_ == 0;
}

std::vector<long long> ArithProgression::elements() const {
    std::vector<long long> out;
    out.reserve(k_);
    for (std::uint64_t j = 1; j <= k_; ++j)
        out.push_back(r_ + static_cast<long long>(j) * m_);
    return out;
}

QuasiProgression::QuasiProgression(long long start, long long base_gap, std::vector<bool> gaps)
    : start_(start), d_(base_gap), gaps_(std::move(gaps)) {
    if (start < 1) throw std::invalid_argument("QuasiProgression: start must be >= 1");
    if (base_gap < 1) throw std::invalid_argument("QuasiProgression: base gap must be >= 1");
}

std::uint64_t QuasiProgression::plus1_count() const {
    std::uint64_t c = 0;
    for (bool b : gaps_) c += b;
    return c;
}

long long QuasiProgression::last() const {
    return start_ + static_cast<long long>(gaps_.size()) * d_ +
           static_cast<long long>(plus1_count());
}

std::vector<long long> QuasiProgression::elements() const {
    std::vector<long long> out;
    out.reserve(gaps_.size() + 1);
    long long v = start_;
    out.push_back(v);
    for (bool b : gaps_) {
        v += d_ + (b ? 1 : 0);
        out.push_back(v);
    }
    return out;
}

QuasiProgression QuasiProgression::from_elements(const std::vector<long long>& elems) {
    if (elems.empty()) throw std::invalid_argument("QuasiProgression: no elements");
    if (elems.size() == 1) return QuasiProgression(elems[0], 1, {});
    long long d = 0;
    for (std::size_t i = 1; i < elems.size(); ++i) {
        long long g = elems[i] - elems[i - 1];
        if (g < 1) throw std::invalid_argument("QuasiProgression: elements must be strictly increasing");
        if (d == 0 || g < d) d = g;
    }
    std::vector<bool> gaps;
    gaps.reserve(elems.size() - 1);
    for (std::size_t i = 1; i < elems.size(); ++i) {
        long long g = elems[i] - elems[i - 1];
        if (g != d && g != d + 1)
            throw std::invalid_argument("QuasiProgression: gaps are not {D, D+1}");
        gaps.push_back(g == d + 1);
    }
    return QuasiProgression(elems[0], d, std::move(gaps));
}

std::uint64_t piece_length(const Piece& p) {
    return std::visit([](const auto& x) { return x.length(); }, p);
}

std::vector<long long> piece_elements(const Piece& p) {
    return std::visit([](const auto& x) { return x.elements(); }, p);
}

long long piece_first(const Piece& p) {
    return std::visit([](const auto& x) { return x.first(); }, p);
}

long long piece_last(const Piece& p) {
    return std::visit([](const auto& x) { return x.last(); }, p);
}

TargetSet TargetSet::squares_target() { return TargetSet{}; }

TargetSet TargetSet::poly_target(Polynomial f) {
    TargetSet t;
    t.kind = Kind::poly;
    t.poly = std::move(f);
    return t;
}

std::vector<long long> TargetSet::values_up_to(long long n) const {
    std::vector<long long> vals;
    if (n < 1) return vals;
    if (kind == Kind::squares) {
        for (long long s = 1; s * s <= n; ++s) vals.push_back(s * s);
        return vals;
    }
    if (poly.degree() < 1)
        throw std::invalid_argument("TargetSet: polynomial target must have degree >= 1");
    // |f(x)| > n for every x beyond b = (n + sum|c_i|) / |c_d| + 1, since
    // |f(x)| >= x^(d-1) (|c_d| x - sum_{i<d} |c_i|).
    unsigned long long sum_abs = 0;
    const auto& cs = poly.coeffs();
    for (std::size_t i = 0; i + 1 < cs.size(); ++i) {
        long long c = cs[i];
        sum_abs += c < 0 ? static_cast<unsigned long long>(-(c + 1)) + 1
                         : static_cast<unsigned long long>(c);
    }
    long long lead = cs.back();
    unsigned long long lead_abs = lead < 0 ? static_cast<unsigned long long>(-(lead + 1)) + 1
                                           : static_cast<unsigned long long>(lead);
    unsigned long long b = (static_cast<unsigned long long>(n) + sum_abs) / lead_abs + 1;
    if (b > 100000000ULL)
        throw std::length_error("TargetSet: polynomial value set too large to enumerate");
    for (long long x = 1; static_cast<unsigned long long>(x) <= b; ++x) {
        long long v = poly.eval_saturating(x);
        if (v >= 1 && v <= n) vals.push_back(v);
    }
    std::sort(vals.begin(), vals.end());
    vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
    return vals;
}

std::uint64_t Cover::sum_lengths() const {
    std::uint64_t s = 0;
    for (const auto& p : pieces) s += piece_length(p);
    return s;
}

std::uint64_t Cover::cost() const { return pieces.size() * sum_lengths(); }

CoverCertificate verify_cover(const Cover& c) {
    constexpr std::uint64_t kVerifyCap = 1ULL << 27;
    if (c.n < 1) throw std::invalid_argument("verify_cover: n must be >= 1");
    if (c.sum_lengths() > kVerifyCap)
        throw std::length_error("verify_cover: cover too large to expand");
    std::unordered_set<long long> covered;
    covered.reserve(static_cast<std::size_t>(c.sum_lengths() * 2));
    for (const auto& p : c.pieces) {
        if (piece_first(p) < 1 || piece_last(p) > c.n)
            throw std::invalid_argument("verify_cover: piece leaves [1, n]");
        for (long long v : piece_elements(p)) covered.insert(v);
    }
    CoverCertificate cert;
    cert.covered = true;
    for (long long v : c.target.values_up_to(c.n)) {
        if (!covered.count(v)) {
            cert.covered = false;
            if (cert.missing.size() < 100) cert.missing.push_back(v);
            else break;
        }
    }
    return cert;
}

std::uint64_t square_intersection_count(const ArithProgression& ap, long long n) {
    if (ap.first() < 1 || ap.last() > n)
        throw std::domain_error("square_intersection_count: AP leaves [1, n]");
    std::uint64_t count = 0;
    long long lo = ap.first(), hi = ap.last(), m = ap.modulus(), r = ap.residue();
    long long s = static_cast<long long>(isqrt64(static_cast<std::uint64_t>(lo - 1))) + 1;
    for (; s * s <= hi; ++s) {
        long long rem = (s * s - r) % m;
        if (rem == 0) ++count;  // index j = (s^2 - r)/m is in [1, k] since s^2 is in [first, last]
    }
    return count;
}

nlohmann::json cover_to_json(const Cover& c) {
    nlohmann::json j;
    j["n"] = c.n;
    if (c.target.kind == TargetSet::Kind::squares) {
        j["target"] = {{"kind", "squares"}};
    } else {
        j["target"] = {{"kind", "poly"}, {"coeffs", c.target.poly.coeffs()}};
    }
    j["pieces"] = nlohmann::json::array();
    for (const auto& p : c.pieces) {
        if (std::holds_alternative<ArithProgression>(p)) {
            const auto& ap = std::get<ArithProgression>(p);
            j["pieces"].push_back({{"kind", "ap"},
                                   {"m", ap.modulus()},
                                   {"r", ap.residue()},
                                   {"k", ap.length()}});
        } else {
            const auto& qp = std::get<QuasiProgression>(p);
            std::string word(qp.gap_word().size(), '0');
            for (std::size_t i = 0; i < word.size(); ++i)
                if (qp.gap_word()[i]) word[i] = '1';
            j["pieces"].push_back({{"kind", "qp"},
                                   {"start", qp.start()},
                                   {"d", qp.base_gap()},
                                   {"gaps", word}});
        }
    }
    j["cost"] = c.cost();
    return j;
}

Cover cover_from_json(const nlohmann::json& j) {
    Cover c;
    if (!j.is_object() || !j.contains("n") || !j.contains("target") || !j.contains("pieces"))
        throw std::invalid_argument("cover: missing n/target/pieces");
    c.n = j.at("n").get<long long>();
    const auto& t = j.at("target");
    std::string kind = t.at("kind").get<std::string>();
    if (kind == "squares") {
        c.target = TargetSet::squares_target();
    } else if (kind == "poly") {
        c.target = TargetSet::poly_target(Polynomial(t.at("coeffs").get<std::vector<long long>>()));
    } else {
        throw std::invalid_argument("cover: unknown target kind '" + kind + "'");
    }
    for (const auto& pj : j.at("pieces")) {
        std::string pk = pj.at("kind").get<std::string>();
        if (pk == "ap") {
            c.pieces.emplace_back(ArithProgression(pj.at("m").get<long long>(),
                                                   pj.at("r").get<long long>(),
                                                   pj.at("k").get<std::uint64_t>()));
        } else if (pk == "qp") {
            std::string word = pj.at("gaps").get<std::string>();
            std::vector<bool> gaps;
            gaps.reserve(word.size());
            for (char ch : word) {
                if (ch != '0' && ch != '1')
                    throw std::invalid_argument("cover: gap word must be over {0,1}");
                gaps.push_back(ch == '1');
            }
            c.pieces.emplace_back(QuasiProgression(pj.at("start").get<long long>(),
                                                   pj.at("d").get<long long>(),
                                                   std::move(gaps)));
        } else {
            throw std::invalid_argument("cover: unknown piece kind '" + pk + "'");
        }
    }
    return c;  // cost is always recomputed from the pieces, never trusted
}

}  // namespace qcover
