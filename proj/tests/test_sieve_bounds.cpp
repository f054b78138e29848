#include "doctest.h"

#include <cmath>

#include "qcover/ntcore.hpp"
#include "qcover/rng.hpp"
#include "qcover/sieve_bounds.hpp"

using namespace qcover;

TEST_SUITE("sieve_bounds") {

TEST_CASE("bound formulas at frozen points") {
    CHECK(lemma13_bound(4, 100) == doctest::Approx(85.83864105157389).epsilon(1e-12));
    CHECK(lemma13_bound(1, 3) == doctest::Approx(2.0 * std::sqrt(3.0 * std::log(3.0))));
    CHECK(theorem12_bound(20, 1) == doctest::Approx(1.6690410034766703).epsilon(1e-12));
    CHECK(sarkozy_bound(1000000) == doctest::Approx(7.484591151254521).epsilon(1e-12));
    CHECK(h_bound(1000000, 2, 0.0, 1.0, 0.5) == doctest::Approx(6.549017257347707).epsilon(1e-12));
    CHECK(h_bound(1000000, 4, 1.0, 0.3, 0.2) ==
          doctest::Approx(0.00010921735897940268).epsilon(1e-12));
    // d = 2, A = 0, eta = 1, mu = 1/2 is the classical n / (800 ln^2 n)
    for (long long n : {100LL, 10000LL, 123456LL}) {
        double l = std::log(static_cast<double>(n));
        CHECK(h_bound(n, 2, 0.0, 1.0, 0.5) ==
              doctest::Approx(static_cast<double>(n) / (800.0 * l * l)).epsilon(1e-12));
    }
}

TEST_CASE("bound domain guards") {
    CHECK_THROWS_AS(lemma13_bound(0, 10), std::domain_error);
    CHECK_THROWS_AS(lemma13_bound(1, 2), std::domain_error);
    CHECK_THROWS_AS(theorem12_bound(2, 1), std::domain_error);
    CHECK_THROWS_AS(theorem12_bound(10, 0), std::domain_error);
    CHECK_THROWS_AS(sarkozy_bound(1), std::domain_error);
    CHECK_THROWS_AS(h_bound(2, 2, 0.0, 1.0, 0.5), std::domain_error);
    CHECK_THROWS_AS(h_bound(10, 0, 0.0, 1.0, 0.5), std::domain_error);
    CHECK_THROWS_AS(h_bound(10, 2, -1.0, 1.0, 0.5), std::domain_error);
    CHECK_THROWS_AS(h_bound(10, 2, 0.0, 0.0, 0.5), std::domain_error);
    CHECK_THROWS_AS(h_bound(10, 2, 0.0, 1.1, 0.5), std::domain_error);
    CHECK_THROWS_AS(h_bound(10, 2, 0.0, 1.0, 0.0), std::domain_error);
    CHECK_THROWS_AS(h_bound(10, 2, 0.0, 1.0, 1.0), std::domain_error);
}

TEST_CASE("bounds grow with n") {
    double t = 0, s = 0, h = 0;
    for (int e = 4; e <= 24; ++e) {
        long long n = 1LL << e;
        CHECK(theorem12_bound(n, 3) > t);
        CHECK(sarkozy_bound(n) > s);
        // n^{2/3}/ln^3(n) dips before n ~ e^{4.5} ~ 90, so only compare past that
        if (e >= 8) CHECK(h_bound(n, 3, 1.0, 0.5, 0.5) > h);
        t = theorem12_bound(n, 3);
        s = sarkozy_bound(n);
        h = h_bound(n, 3, 1.0, 0.5, 0.5);
    }
}

TEST_CASE("large sieve check: hand instances") {
    // U = {2, 4} in [1, 4], primes <= 2: residue counts (2, 0) mod 2
    SieveCheckResult r = large_sieve_check({4, 2, {2, 4}});
    CHECK(r.lhs == doctest::Approx(4.0));
    CHECK(r.rhs == doctest::Approx(16.0));
    CHECK(r.ok);

    // full interval is perfectly equidistributed mod 2, slightly lumpy mod 3
    SieveCheckResult full = large_sieve_check({10, 3, {1, 2, 3, 4, 5, 6, 7, 8, 9, 10}});
    CHECK(full.lhs == doctest::Approx(2.0));
    CHECK(full.rhs == doctest::Approx(190.0));
    CHECK(full.ok);

    // singleton: each prime contributes p - 1
    SieveCheckResult single = large_sieve_check({100, 10, {5}});
    CHECK(single.lhs == doctest::Approx(13.0));  // 1 + 2 + 4 + 6
    CHECK(single.rhs == doctest::Approx(200.0));
    CHECK(single.ok);

    // the squares concentrate in few residue classes but still pass
    std::vector<long long> squares;
    for (long long a = 1; a <= 10; ++a) squares.push_back(a * a);
    SieveCheckResult sq = large_sieve_check({100, 10, squares});
    CHECK(sq.lhs == doctest::Approx(250.0));
    CHECK(sq.rhs == doctest::Approx(2000.0));
    CHECK(sq.ok);
}

TEST_CASE("large sieve check: input validation") {
    CHECK_THROWS_AS(large_sieve_check({0, 2, {}}), std::invalid_argument);
    CHECK_THROWS_AS(large_sieve_check({10, 0, {1}}), std::invalid_argument);
    CHECK_THROWS_AS(large_sieve_check({10, 3, {0, 4}}), std::invalid_argument);
    CHECK_THROWS_AS(large_sieve_check({10, 3, {4, 11}}), std::invalid_argument);
    CHECK_THROWS_AS(large_sieve_check({10, 3, {4, 4}}), std::invalid_argument);
    CHECK_THROWS_AS(large_sieve_check({10, 3, {5, 4}}), std::invalid_argument);
    SieveCheckResult empty = large_sieve_check({10, 3, {}});
    CHECK(empty.lhs == doctest::Approx(0.0));
    CHECK(empty.ok);
}

TEST_CASE("large sieve holds on random subsets") {
    SplitMix64 rng(0x5eedULL);
    for (int t = 0; t < 200; ++t) {
        SieveInstance inst;
        inst.m = static_cast<long long>(rng.range(50, 2000));
        inst.w = static_cast<long long>(rng.range(2, 60));
        double rho = rng.unit();
        for (long long v = 1; v <= inst.m; ++v)
            if (rng.unit() < rho) inst.u.push_back(v);
        SieveCheckResult r = large_sieve_check(inst);
        CAPTURE(inst.m);
        CAPTURE(inst.w);
        CHECK(r.ok);
        CHECK(r.lhs <= r.rhs);
    }
}

TEST_CASE("sieve harness: no violations, deterministic report") {
    SieveHarnessReport a = large_sieve_harness(64, 2000, 42);
    CHECK(a.trials == 64);
    CHECK(a.violations == 0);
    CHECK(a.max_lhs_over_rhs > 0.0);
    CHECK(a.max_lhs_over_rhs <= 1.0);
    SieveHarnessReport b = large_sieve_harness(64, 2000, 42);
    CHECK(sieve_harness_report_to_json(a) == sieve_harness_report_to_json(b));
    SieveHarnessReport c = large_sieve_harness(64, 2000, 43);
    CHECK(a.max_lhs_over_rhs != c.max_lhs_over_rhs);  // seed actually matters
    CHECK_THROWS_AS(large_sieve_harness(8, 50, 1), std::invalid_argument);
}

TEST_CASE("squares-in-AP bound holds empirically") {
    Lemma13Report rep = lemma13_empirical(500, 100000, 7);
    CHECK(rep.trials == 500);
    CHECK(rep.failures.empty());
    CHECK(rep.max_ratio > 0.0);
    CHECK(rep.max_ratio <= 1.0);
    CHECK(rep.max_trial.ratio == doctest::Approx(rep.max_ratio));
    CHECK(rep.max_trial.k >= 16);
    CHECK(rep.max_trial.bound ==
          doctest::Approx(lemma13_bound(tau(static_cast<std::uint64_t>(rep.max_trial.m)),
                                        rep.max_trial.k)));
}

TEST_CASE("lemma13 harness is independent of worker count") {
    Lemma13Report a = lemma13_empirical(3000, 50000, 99, 1);
    Lemma13Report b = lemma13_empirical(3000, 50000, 99, 4);
    CHECK(lemma13_report_to_json(a) == lemma13_report_to_json(b));
    CHECK_THROWS_AS(lemma13_empirical(10, 100, 1), std::invalid_argument);
}

TEST_CASE("adversarial APs with highly composite moduli stay under the bound") {
    // m = 24 has 8 divisors; pack as many squares as possible by hand
    for (long long r : {-23LL, 0LL, 1LL, 25LL}) {
        for (std::uint64_t k : {16ULL, 64ULL, 256ULL}) {
            long long n = r + static_cast<long long>(k) * 24;
            if (n < 256) n = 256;
            ArithProgression ap(24, r, k);
            std::uint64_t count = square_intersection_count(ap, n);
            CHECK(static_cast<double>(count) <= lemma13_bound(tau(24), k));
        }
    }
    // perfect-square modulus m = 36 with r = 0 hits squares at every square index
    ArithProgression ap(36, 0, 1000);
    std::uint64_t count = square_intersection_count(ap, 36000);
    CHECK(count == 31);  // 36 j is square iff j is, isqrt(1000) = 31
    CHECK(static_cast<double>(count) <= lemma13_bound(tau(36), 1000));
}

TEST_CASE("report json fields") {
    nlohmann::json sj = sieve_harness_report_to_json(large_sieve_harness(8, 500, 5));
    CHECK(sj["trials"] == 8);
    CHECK(sj["seed"] == 5);
    CHECK(sj["m_max"] == 500);
    CHECK(sj.contains("violations"));
    CHECK(sj.contains("max_lhs_over_rhs"));

    nlohmann::json lj = lemma13_report_to_json(lemma13_empirical(100, 1000, 3));
    CHECK(lj["trials"] == 100);
    CHECK(lj["n"] == 1000);
    CHECK(lj["max_trial"].contains("square_count"));
    CHECK(lj["failures"].is_array());
}

}  // TEST_SUITE
