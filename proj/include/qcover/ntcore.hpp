#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

// Number-theoretic kernel: primes, divisor counts, and polynomial images
// over prime fields. Everything here is a pure function; PrimeTable is
// immutable once built.

namespace qcover {

// Hard cap for sieve limits; beyond this the table would not fit in memory.
inline constexpr std::uint64_t kPrimeLimitCap = 1ULL << 40;

// Largest prime modulus accepted by poly_image_size.
inline constexpr std::uint64_t kImagePrimeCap = 1ULL << 31;

std::uint64_t isqrt64(std::uint64_t n);
std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e, std::uint64_t m);

// Deterministic Miller-Rabin, valid for the full 64-bit range.
bool is_prime(std::uint64_t n);

// Prime factorization via trial division + Pollard rho (Brent). Sorted by prime.
std::vector<std::pair<std::uint64_t, int>> factorize(std::uint64_t n);

// Number of divisors. Throws std::domain_error for n = 0.
std::uint64_t tau(std::uint64_t n);

// Number of distinct prime factors; omega(1) = 0.
int omega(std::uint64_t n);

struct PrimeTable {
    std::uint64_t limit = 0;
    bool empty_range_warning = false;  // set when limit < 2
    std::vector<std::uint64_t> primes;

    std::size_t count() const { return primes.size(); }
    bool contains(std::uint64_t p) const;
};

// Streams every prime <= limit, ascending. Throws std::length_error if the
// limit exceeds kPrimeLimitCap. Segmented Eratosthenes underneath.
void for_each_prime(std::uint64_t limit, const std::function<void(std::uint64_t)>& fn);

// Materialized table of all primes <= limit.
PrimeTable primes_up_to(std::uint64_t limit);

// #{p <= x : p prime, p == 1 (mod d)}. d >= 1; d = 1 counts all primes.
std::uint64_t prime_count_in_class(std::uint64_t x, std::uint64_t d);

// Integer-coefficient polynomial, constant term first.
class Polynomial {
public:
    Polynomial() : c_{0} {}
    explicit Polynomial(std::vector<long long> coeffs);

    // Parses "c0,c1,...,cd" (optional spaces). Throws std::invalid_argument.
    static Polynomial parse(const std::string& csv);
    // x^n
    static Polynomial power(int n);

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.size() == 1 && c_[0] == 0; }
    const std::vector<long long>& coeffs() const { return c_; }

    // Horner evaluation mod p; coefficients are reduced into [0, p).
    std::uint64_t eval_mod(std::uint64_t x, std::uint64_t p) const;

    // Exact evaluation at x >= 0, saturated to +/-2^62 so callers can safely
    // compare against any range bound without overflow.
    long long eval_saturating(long long x) const;

    std::string to_string() const;

private:
    std::vector<long long> c_;  // trailing zeros trimmed; never empty
};

// |f(F_p)| by direct enumeration with a bitmap. p must be prime (<= 2^31);
// throws std::domain_error otherwise.
std::uint64_t poly_image_size(const Polynomial& f, std::uint64_t p);

}  // namespace qcover
