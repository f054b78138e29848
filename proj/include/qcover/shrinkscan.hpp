#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "json.hpp"
#include "qcover/ntcore.hpp"

// Shrinking scan: for a fixed integer polynomial f and every prime p <= x,
// compute |f(F_p)| and test the shrinking condition |f(F_p)| < mu * p
// (strict). eta_hat is the fraction of scanned primes that qualify.

namespace qcover {

struct PrimeImage {
    std::uint64_t p = 0;
    std::uint64_t image_size = 0;
    double density = 0.0;  // image_size / p
    bool qualifies = false;
};

struct ShrinkCheckpoint {
    std::uint64_t x = 0;
    double eta_hat = 0.0;
};

struct ShrinkReport {
    Polynomial f;
    std::uint64_t limit = 0;  // x
    double mu = 0.0;
    std::uint64_t min_prime = 2;
    std::uint64_t primes_scanned = 0;  // #primes in [min_prime, x]; = pi(x) by default
    std::uint64_t qualifying = 0;
    double eta_hat = 0.0;
    std::vector<PrimeImage> per_prime;          // ascending p
    std::vector<ShrinkCheckpoint> checkpoints;  // geometric x grid, last = x
};

// Requires x >= 100, mu in (0, 1], degree(f) >= 1 (constants are degenerate).
// Worker threads only affect wall time, never the report contents.
ShrinkReport shrinking_scan(const Polynomial& f, std::uint64_t x, double mu,
                            std::uint64_t min_prime = 2, unsigned workers = 1);

// |{a^n : a in F_p}| = (p-1)/gcd(p-1, n) + 1. Requires n >= 1 and p prime.
std::uint64_t power_image_size(std::uint64_t n, std::uint64_t p);

// sum_{j=1..d} (-1)^(j-1)/j!  (-> 1 - 1/e as d grows).
double alternating_factorial_sum(int d);

// Expected image size p * alternating_factorial_sum(d) of a generic degree-d map.
double generic_image_prediction(int d, std::uint64_t p);

nlohmann::json shrink_report_to_json(const ShrinkReport& r);
void shrink_report_to_csv(const ShrinkReport& r, std::ostream& os);

}  // namespace qcover
