#pragma once

#include <cstdint>
#include <vector>

#include "json.hpp"
#include "qcover/progressions.hpp"

// Analytic lower bounds for cover costs, the arithmetic large sieve
// inequality, and randomized harnesses exercising both.

namespace qcover {

// 2 * sqrt(K) * sqrt(k ln k): upper bound for the number of squares in an AP
// of length k whose modulus has at most K divisors. Requires K >= 1, k >= 3.
double lemma13_bound(std::uint64_t big_k, std::uint64_t k);

// n / (4 K ln n): AP cover cost lower bound. Requires n >= 3, K >= 1.
double theorem12_bound(long long n, std::uint64_t big_k);

// n / (700 ln^2 n). Requires n >= 2.
double sarkozy_bound(long long n);

// C' * n^(2/d) / (ln n)^(A+2) with C' = (1-mu)^2 * eta^2 / 200.
// Requires n >= 3, d >= 1, a >= 0, eta in (0,1], mu in (0,1).
double h_bound(long long n, int d, double a, double eta, double mu);

// --- large sieve ---------------------------------------------------------

struct SieveInstance {
    long long m = 0;              // ambient interval [1, m]
    long long w = 0;              // prime cutoff
    std::vector<long long> u;     // subset of [1, m], sorted, distinct
};

struct SieveCheckResult {
    double lhs = 0.0;  // sum_{p<=w} p * sum_h (Z(p,h) - |U|/p)^2, computed exactly
    double rhs = 0.0;  // (m + w^2) * |U|
    bool ok = false;   // lhs <= rhs (exact integer comparison underneath)
};

// The inequality is checked in exact integer arithmetic via the identity
// p * sum_h (Z(p,h) - |U|/p)^2 = p * sum_h Z(p,h)^2 - |U|^2.
SieveCheckResult large_sieve_check(const SieveInstance& inst);

struct SieveHarnessReport {
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    long long m_max = 0;
    std::uint64_t violations = 0;
    double max_lhs_over_rhs = 0.0;
};

// Random subsets of [1, M] with M in [100, m_max], W = floor(sqrt(M)).
SieveHarnessReport large_sieve_harness(std::uint64_t trials, long long m_max, std::uint64_t seed);

// --- empirical check of the squares-in-AP bound --------------------------

struct Lemma13Trial {
    long long m = 0;
    long long r = 0;
    std::uint64_t k = 0;
    std::uint64_t square_count = 0;
    double bound = 0.0;
    double ratio = 0.0;
};

struct Lemma13Report {
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    long long n = 0;
    double max_ratio = 0.0;
    Lemma13Trial max_trial;
    std::vector<Lemma13Trial> failures;  // ratio > 1 (expected empty)
};

// Random APs inside [1, n] with k >= 16; ratio = square count / lemma13_bound.
// Fixed-size shards keyed by the master seed make the report independent of
// the worker count. Requires n >= 256.
Lemma13Report lemma13_empirical(std::uint64_t trials, long long n, std::uint64_t seed,
                                unsigned workers = 1);

nlohmann::json sieve_harness_report_to_json(const SieveHarnessReport& r);
nlohmann::json lemma13_report_to_json(const Lemma13Report& r);

}  // namespace qcover
