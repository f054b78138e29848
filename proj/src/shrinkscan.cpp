#include "qcover/shrinkscan.hpp"

#include <cmath>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include "qcover/parallel.hpp"

namespace qcover {

ShrinkReport shrinking_scan(const Polynomial& f, std::uint64_t x, double mu,
                            std::uint64_t min_prime, unsigned workers) {
    if (x < 100) throw std::invalid_argument("shrinking_scan: x must be >= 100");
    if (!(mu > 0.0) || mu > 1.0) throw std::invalid_argument("shrinking_scan: mu must be in (0, 1]");
    if (f.degree() < 1)
        throw std::invalid_argument("shrinking_scan: constant polynomial is degenerate (image size 1)");

    ShrinkReport rep;
    rep.f = f;
    rep.limit = x;
    rep.mu = mu;
    rep.min_prime = min_prime;

    PrimeTable table = primes_up_to(x);
    std::vector<std::uint64_t> ps;
    ps.reserve(table.count());
    for (std::uint64_t p : table.primes)
        if (p >= min_prime) ps.push_back(p);
    rep.primes_scanned = ps.size();
    rep.per_prime.resize(ps.size());

    // Slot-per-prime writes keep the result independent of the worker count.
    parallel_for(ps.size(), workers, [&](std::size_t i) {
        std::uint64_t p = ps[i];
        PrimeImage& pi = rep.per_prime[i];
        pi.p = p;
        pi.image_size = poly_image_size(f, p);
        pi.density = static_cast<double>(pi.image_size) / static_cast<double>(p);
        pi.qualifies = static_cast<double>(pi.image_size) < mu * static_cast<double>(p);
    });

    for (const auto& pi : rep.per_prime) rep.qualifying += pi.qualifies;
    rep.eta_hat = rep.primes_scanned == 0
                      ? 0.0
                      : static_cast<double>(rep.qualifying) / static_cast<double>(rep.primes_scanned);

    // Geometric checkpoint grid 100, 200, 400, ..., with the scan limit last.
    std::vector<std::uint64_t> grid;
    for (std::uint64_t g = 100; g < x; g *= 2) grid.push_back(g);
    grid.push_back(x);
    std::size_t idx = 0;
    std::uint64_t seen = 0, qual = 0;
    for (std::uint64_t g : grid) {
        while (idx < rep.per_prime.size() && rep.per_prime[idx].p <= g) {
            ++seen;
            qual += rep.per_prime[idx].qualifies;
            ++idx;
        }
        ShrinkCheckpoint cp;
        cp.x = g;
        cp.eta_hat = seen == 0 ? 0.0 : static_cast<double>(qual) / static_cast<double>(seen);
        rep.checkpoints.push_back(cp);
    }
    return rep;
}

std::uint64_t power_image_size(std::uint64_t n, std::uint64_t p) {
    if (n < 1) throw std::invalid_argument("power_image_size: exponent must be >= 1");
    if (!is_prime(p)) throw std::domain_error("power_image_size: p must be prime");
    return (p - 1) / std::gcd(p - 1, n) + 1;
}

double alternating_factorial_sum(int d) {
    if (d < 1) throw std::invalid_argument("alternating_factorial_sum: d must be >= 1");
    double sum = 0.0, fact = 1.0;
    for (int j = 1; j <= d; ++j) {
        fact *= j;
        sum += (j % 2 == 1 ? 1.0 : -1.0) / fact;
    }
    return sum;
}

double generic_image_prediction(int d, std::uint64_t p) {
    return static_cast<double>(p) * alternating_factorial_sum(d);
}

nlohmann::json shrink_report_to_json(const ShrinkReport& r) {
    nlohmann::json j;
    j["f"] = r.f.coeffs();
    j["x"] = r.limit;
    j["mu"] = r.mu;
    j["min_prime"] = r.min_prime;
    j["primes_scanned"] = r.primes_scanned;
    j["qualifying"] = r.qualifying;
    j["eta_hat"] = r.eta_hat;
    j["checkpoints"] = nlohmann::json::array();
    for (const auto& cp : r.checkpoints)
        j["checkpoints"].push_back({{"x", cp.x}, {"eta_hat", cp.eta_hat}});
    return j;
}

void shrink_report_to_csv(const ShrinkReport& r, std::ostream& os) {
    os << "p,image_size,density,qualifies\n";
    char buf[64];
    for (const auto& pi : r.per_prime) {
        std::snprintf(buf, sizeof buf, "%.6f", pi.density);
        os << pi.p << ',' << pi.image_size << ',' << buf << ',' << (pi.qualifies ? 1 : 0) << '\n';
    }
}

}  // namespace qcover
