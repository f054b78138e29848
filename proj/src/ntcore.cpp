#include "qcover/ntcore.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace qcover {

std::uint64_t isqrt64(std::uint64_t n) {
    if (n == 0) return 0;
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r > n / r) --r;
    while ((r + 1) <= n / (r + 1)) ++r;
    return r;
}

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    if (m == 1) return 0;
    std::uint64_t r = 1;
    a %= m;
    while (e) {
        if (e & 1) r = mul_mod(r, a, m);
        a = mul_mod(a, a, m);
        e >>= 1;
    }
    return r;
}

namespace {

bool miller_rabin(std::uint64_t n, std::uint64_t a) {
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    std::uint64_t x = pow_mod(a % n, d, n);
    if (x == 1 || x == n - 1) return true;
    for (int i = 1; i < s; ++i) {
        x = mul_mod(x, x, n);
        if (x == n - 1) return true;
    }
    return false;
}

std::uint64_t pollard_rho(std::uint64_t n) {
    // Brent's cycle variant; n must be odd composite, not a prime power check done by caller.
    if (n % 2 == 0) return 2;
    std::uint64_t x0 = 2, c = 1;
    for (;;) {
        std::uint64_t x = x0, y = x0, d = 1;
        std::uint64_t q = 1;
        int power = 1, lam = 0;
        const int batch = 64;
        while (d == 1) {
            x = y;
            for (int i = 0; i < power; ++i) y = (mul_mod(y, y, n) + c) % n;
            for (int k = 0; k < power && d == 1; k += batch) {
                std::uint64_t ys = y;
                int lim = std::min(batch, power - k);
                for (int i = 0; i < lim; ++i) {
                    y = (mul_mod(y, y, n) + c) % n;
                    q = mul_mod(q, x > y ? x - y : y - x, n);
                }
                d = std::gcd(q, n);
                if (d == n) {
                    // backtrack one step at a time
                    d = 1;
                    y = ys;
                    do {
                        y = (mul_mod(y, y, n) + c) % n;
                        d = std::gcd(x > y ? x - y : y - x, n);
                    } while (d == 1);
                    break;
                }
            }
            power *= 2;
            if (++lam > 64) break;  // paranoia; retry with new parameters
        }
        if (d != 1 && d != n) return d;
        ++c;
        ++x0;
    }
}

void factor_rec(std::uint64_t n, std::vector<std::uint64_t>& out) {
    if (n == 1) return;
    if (is_prime(n)) { out.push_back(n); return; }
    std::uint64_t d = pollard_rho(n);
    factor_rec(d, out);
    factor_rec(n / d, out);
}

}  // namespace

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % p == 0) return n == p;
    }
    for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (!miller_rabin(n, a)) return false;
    }
    return true;
}

std::vector<std::pair<std::uint64_t, int>> factorize(std::uint64_t n) {
    std::vector<std::pair<std::uint64_t, int>> out;
    if (n == 0) throw std::domain_error("factorize: n must be positive");
    for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % p == 0) {
            int e = 0;
            while (n % p == 0) { n /= p; ++e; }
            out.emplace_back(p, e);
        }
    }
    if (n > 1) {
        std::vector<std::uint64_t> rest;
        factor_rec(n, rest);
        std::sort(rest.begin(), rest.end());
        for (std::size_t i = 0; i < rest.size();) {
            std::size_t j = i;
            while (j < rest.size() && rest[j] == rest[i]) ++j;
            out.emplace_back(rest[i], static_cast<int>(j - i));
            i = j;
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::uint64_t tau(std::uint64_t n) {
    if (n == 0) throw std::domain_error("tau: undefined at 0");
    std::uint64_t t = 1;
    for (auto [p, e] : factorize(n)) t *= static_cast<std::uint64_t>(e) + 1;
    return t;
}

int omega(std::uint64_t n) {
    if (n == 0) throw std::domain_error("omega: undefined at 0");
    return static_cast<int>(factorize(n).size());
}

bool PrimeTable::contains(std::uint64_t p) const {
    return std::binary_search(primes.begin(), primes.end(), p);
}

void for_each_prime(std::uint64_t limit, const std::function<void(std::uint64_t)>& fn) {
    if (limit > kPrimeLimitCap) throw std::length_error("for_each_prime: limit beyond capacity cap");
    if (limit < 2) return;
    fn(2);
    if (limit < 3) return;

    // Base primes up to sqrt(limit), odd-only simple sieve.
    std::uint64_t root = isqrt64(limit);
    std::vector<std::uint64_t> base;
    {
        std::vector<bool> comp((root >= 3 ? (root - 1) / 2 : 0) + 1, false);
        for (std::uint64_t i = 1; 2 * i + 1 <= root; ++i) {
            if (comp[i]) continue;
            std::uint64_t p = 2 * i + 1;
            base.push_back(p);
            for (std::uint64_t j = (p * p - 1) / 2; 2 * j + 1 <= root; j += p) comp[j] = true;
        }
    }

    const std::uint64_t kSeg = 1u << 20;  // odds per segment
    std::vector<char> seg(kSeg);
    for (std::uint64_t low = 3; low <= limit; low += 2 * kSeg) {
        std::uint64_t high = std::min(limit, low + 2 * kSeg - 2);  // odd range [low, high]
        std::uint64_t count = (high - low) / 2 + 1;
        std::fill(seg.begin(), seg.begin() + count, 0);
        for (std::uint64_t p : base) {
            std::uint64_t start = p * p;
            if (start > high) break;
            if (start < low) {
                std::uint64_t rem = low % p;
                start = rem == 0 ? low : low + (p - rem);
                if ((start & 1) == 0) start += p;
            }
            for (std::uint64_t v = start; v <= high; v += 2 * p) seg[(v - low) / 2] = 1;
        }
        for (std::uint64_t i = 0; i < count; ++i) {
            if (!seg[i]) fn(low + 2 * i);
        }
    }
}

PrimeTable primes_up_to(std::uint64_t limit) {
    if (limit > kPrimeLimitCap) throw std::length_error("primes_up_to: limit beyond capacity cap");
    PrimeTable t;
    t.limit = limit;
    if (limit < 2) {
        t.empty_range_warning = true;
        return t;
    }
    if (limit >= 3) {
        double est = static_cast<double>(limit) / std::log(static_cast<double>(limit));
        t.primes.reserve(static_cast<std::size_t>(est * 1.15) + 16);
    }
    for_each_prime(limit, [&t](std::uint64_t p) { t.primes.push_back(p); });
    return t;
}

std::uint64_t prime_count_in_class(std::uint64_t x, std::uint64_t d) {
    if (d == 0) throw std::invalid_argument("prime_count_in_class: d must be >= 1");
    std::uint64_t count = 0;
    std::uint64_t target = 1 % d;  // d = 1 counts every prime
    for_each_prime(x, [&](std::uint64_t p) {
        if (p % d == target) ++count;
    });
    return count;
}

Polynomial::Polynomial(std::vector<long long> coeffs) : c_(std::move(coeffs)) {
    if (c_.empty()) c_.push_back(0);
    while (c_.size() > 1 && c_.back() == 0) c_.pop_back();
}

Polynomial Polynomial::parse(const std::string& csv) {
    std::vector<long long> cs;
    std::size_t pos = 0;
    while (pos <= csv.size()) {
        std::size_t comma = csv.find(',', pos);
        std::string tok = csv.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        // trim whitespace
        std::size_t b = tok.find_first_not_of(" \t");
        std::size_t e = tok.find_last_not_of(" \t");
        if (b == std::string::npos) throw std::invalid_argument("polynomial: empty coefficient in '" + csv + "'");
        tok = tok.substr(b, e - b + 1);
        long long v = 0;
        auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (ec != std::errc() || ptr != tok.data() + tok.size())
            throw std::invalid_argument("polynomial: bad coefficient '" + tok + "'");
        cs.push_back(v);
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (cs.empty()) throw std::invalid_argument("polynomial: no coefficients");
    return Polynomial(std::move(cs));
}

Polynomial Polynomial::power(int n) {
    if (n < 0) throw std::invalid_argument("Polynomial::power: negative exponent");
    std::vector<long long> cs(static_cast<std::size_t>(n) + 1, 0);
    cs.back() = 1;
    return Polynomial(std::move(cs));
}

std::uint64_t Polynomial::eval_mod(std::uint64_t x, std::uint64_t p) const {
    std::uint64_t acc = 0;
    x %= p;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
        long long c = *it % static_cast<long long>(p);
        if (c < 0) c += static_cast<long long>(p);
        acc = (mul_mod(acc, x, p) + static_cast<std::uint64_t>(c)) % p;
    }
    return acc;
}

long long Polynomial::eval_saturating(long long x) const {
    constexpr long long kSat = 1LL << 62;
    __int128 acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
        acc = acc * x + *it;
        if (acc > kSat) acc = kSat;
        if (acc < -kSat) acc = -kSat;
    }
    return static_cast<long long>(acc);
}

std::string Polynomial::to_string() const {
    if (is_zero()) return "0";
    std::string out;
    for (int i = degree(); i >= 0; --i) {
        long long c = c_[static_cast<std::size_t>(i)];
        if (c == 0) continue;
        if (!out.empty()) out += c > 0 ? " + " : " - ";
        else if (c < 0) out += "-";
        unsigned long long a = c < 0 ? static_cast<unsigned long long>(-(c + 1)) + 1 : static_cast<unsigned long long>(c);
        if (a != 1 || i == 0) out += std::to_string(a);
        if (i >= 1) {
            out += "x";
            if (i >= 2) out += "^" + std::to_string(i);
        }
    }
    return out;
}

std::uint64_t poly_image_size(const Polynomial& f, std::uint64_t p) {
    if (p > kImagePrimeCap || !is_prime(p))
        throw std::domain_error("poly_image_size: p must be a prime <= 2^31");
    std::vector<std::uint64_t> bits((p + 63) / 64, 0);
    // Reduce coefficients once; evaluate by Horner over the whole field.
    std::vector<std::uint64_t> cs(f.coeffs().size());
    for (std::size_t i = 0; i < cs.size(); ++i) {
        long long c = f.coeffs()[i] % static_cast<long long>(p);
        if (c < 0) c += static_cast<long long>(p);
        cs[i] = static_cast<std::uint64_t>(c);
    }
    for (std::uint64_t x = 0; x < p; ++x) {
        std::uint64_t acc = 0;
        for (std::size_t i = cs.size(); i-- > 0;) {
            acc = (mul_mod(acc, x, p) + cs[i]) % p;
        }
        bits[acc >> 6] |= 1ULL << (acc & 63);
    }
    std::uint64_t count = 0;
    for (std::uint64_t w : bits) count += static_cast<std::uint64_t>(__builtin_popcountll(w));
    return count;
}

}  // namespace qcover
