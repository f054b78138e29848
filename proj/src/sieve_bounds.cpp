#include "qcover/sieve_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qcover/ntcore.hpp"
#include "qcover/parallel.hpp"
#include "qcover/rng.hpp"

namespace qcover {

double lemma13_bound(std::uint64_t big_k, std::uint64_t k) {
    if (big_k < 1) throw std::domain_error("lemma13_bound: K must be >= 1");
    if (k < 3) throw std::domain_error("lemma13_bound: k must be >= 3");
    double kk = static_cast<double>(k);
    return 2.0 * std::sqrt(static_cast<double>(big_k)) * std::sqrt(kk * std::log(kk));
}

double theorem12_bound(long long n, std::uint64_t big_k) {
    if (n < 3) throw std::domain_error("theorem12_bound: n must be >= 3");
    if (big_k < 1) throw std::domain_error("theorem12_bound: K must be >= 1");
    double nn = static_cast<double>(n);
    return nn / (4.0 * static_cast<double>(big_k) * std::log(nn));
}

double sarkozy_bound(long long n) {
    if (n < 2) throw std::domain_error("sarkozy_bound: n must be >= 2");
    double nn = static_cast<double>(n);
    double l = std::log(nn);
    return nn / (700.0 * l * l);
}

double h_bound(long long n, int d, double a, double eta, double mu) {
    if (n < 3) throw std::domain_error("h_bound: n must be >= 3");
    if (d < 1) throw std::domain_error("h_bound: d must be >= 1");
    if (a < 0.0) throw std::domain_error("h_bound: A must be >= 0");
    if (!(eta > 0.0) || eta > 1.0) throw std::domain_error("h_bound: eta must be in (0, 1]");
    if (!(mu > 0.0) || !(mu < 1.0)) throw std::domain_error("h_bound: mu must be in (0, 1)");
    double cprime = (1.0 - mu) * (1.0 - mu) * eta * eta / 200.0;
    double nn = static_cast<double>(n);
    return cprime * std::pow(nn, 2.0 / static_cast<double>(d)) / std::pow(std::log(nn), a + 2.0);
}

SieveCheckResult large_sieve_check(const SieveInstance& inst) {
    if (inst.m < 1) throw std::invalid_argument("large_sieve_check: m must be >= 1");
    if (inst.w < 1) throw std::invalid_argument("large_sieve_check: w must be >= 1");
    for (std::size_t i = 0; i < inst.u.size(); ++i) {
        if (inst.u[i] < 1 || inst.u[i] > inst.m)
            throw std::invalid_argument("large_sieve_check: element outside [1, m]");
        if (i > 0 && inst.u[i] <= inst.u[i - 1])
            throw std::invalid_argument("large_sieve_check: elements must be sorted distinct");
    }
    unsigned __int128 lhs = 0;  // sum over p of (p * sum_h Z^2 - |U|^2), each term >= 0
    const unsigned __int128 usize = inst.u.size();
    std::vector<std::uint64_t> counts;
    for_each_prime(static_cast<std::uint64_t>(inst.w), [&](std::uint64_t p) {
        counts.assign(p, 0);
        for (long long v : inst.u) ++counts[static_cast<std::uint64_t>(v) % p];
        unsigned __int128 s2 = 0;
        for (std::uint64_t c : counts) s2 += static_cast<unsigned __int128>(c) * c;
        lhs += static_cast<unsigned __int128>(p) * s2 - usize * usize;
    });
    SieveCheckResult res;
    res.lhs = static_cast<double>(lhs);
    unsigned __int128 rhs = (static_cast<unsigned __int128>(inst.m) +
                             static_cast<unsigned __int128>(inst.w) * inst.w) * usize;
    res.rhs = static_cast<double>(rhs);
    res.ok = lhs <= rhs;
    return res;
}

SieveHarnessReport large_sieve_harness(std::uint64_t trials, long long m_max, std::uint64_t seed) {
    if (m_max < 100) throw std::invalid_argument("large_sieve_harness: m_max must be >= 100");
    SieveHarnessReport rep;
    rep.trials = trials;
    rep.seed = seed;
    rep.m_max = m_max;
    for (std::uint64_t t = 0; t < trials; ++t) {
        SplitMix64 rng(SplitMix64::mix(seed, t));
        SieveInstance inst;
        inst.m = rng.range(100, m_max);
        inst.w = static_cast<long long>(isqrt64(static_cast<std::uint64_t>(inst.m)));
        // membership density log-uniform in [0.01, 1]
        double rho = std::pow(10.0, -2.0 * rng.unit());
        for (long long v = 1; v <= inst.m; ++v)
            if (rng.unit() < rho) inst.u.push_back(v);
        if (inst.u.empty()) inst.u.push_back(rng.range(1, inst.m));
        SieveCheckResult r = large_sieve_check(inst);
        if (!r.ok) ++rep.violations;
        if (r.rhs > 0.0) rep.max_lhs_over_rhs = std::max(rep.max_lhs_over_rhs, r.lhs / r.rhs);
    }
    return rep;
}

namespace {

constexpr std::uint64_t kShard = 1024;

// log-uniform integer in [lo, hi]
long long log_uniform(SplitMix64& rng, long long lo, long long hi) {
    if (hi <= lo) return lo;
    double v = static_cast<double>(lo) *
               std::pow(static_cast<double>(hi) / static_cast<double>(lo), rng.unit());
    long long r = static_cast<long long>(v);
    return std::clamp(r, lo, hi);
}

struct ShardResult {
    double max_ratio = -1.0;
    Lemma13Trial max_trial;
    std::vector<Lemma13Trial> failures;
};

}  // namespace

Lemma13Report lemma13_empirical(std::uint64_t trials, long long n, std::uint64_t seed,
                                unsigned workers) {
    if (n < 256) throw std::invalid_argument("lemma13_empirical: n must be >= 256");
    Lemma13Report rep;
    rep.trials = trials;
    rep.seed = seed;
    rep.n = n;
    if (trials == 0) return rep;

    std::uint64_t shards = (trials + kShard - 1) / kShard;
    std::vector<ShardResult> results(shards);
    parallel_for(shards, workers, [&](std::size_t s) {
        SplitMix64 rng(SplitMix64::mix(seed, s));
        std::uint64_t begin = s * kShard;
        std::uint64_t end = std::min(trials, begin + kShard);
        ShardResult& out = results[s];
        for (std::uint64_t t = begin; t < end; ++t) {
            long long kmax = std::max<long long>(16, n / 16);
            std::uint64_t k = static_cast<std::uint64_t>(log_uniform(rng, 16, kmax));
            long long mmax = (n - 1) / (static_cast<long long>(k) - 1);
            long long m = log_uniform(rng, 1, mmax);
            long long r = rng.range(1 - m, n - static_cast<long long>(k) * m);
            ArithProgression ap(m, r, k);
            Lemma13Trial tr;
            tr.m = m;
            tr.r = r;
            tr.k = k;
            tr.square_count = square_intersection_count(ap, n);
            tr.bound = lemma13_bound(tau(static_cast<std::uint64_t>(m)), k);
            tr.ratio = static_cast<double>(tr.square_count) / tr.bound;
            if (tr.ratio > out.max_ratio) {
                out.max_ratio = tr.ratio;
                out.max_trial = tr;
            }
            if (tr.ratio > 1.0) out.failures.push_back(tr);
        }
    });

    rep.max_ratio = -1.0;
    for (const auto& sr : results) {
        if (sr.max_ratio > rep.max_ratio) {  // strict: earliest shard wins ties
            rep.max_ratio = sr.max_ratio;
            rep.max_trial = sr.max_trial;
        }
        rep.failures.insert(rep.failures.end(), sr.failures.begin(), sr.failures.end());
    }
    return rep;
}

nlohmann::json sieve_harness_report_to_json(const SieveHarnessReport& r) {
    return nlohmann::json{{"trials", r.trials},
                          {"seed", r.seed},
                          {"m_max", r.m_max},
                          {"violations", r.violations},
                          {"max_lhs_over_rhs", r.max_lhs_over_rhs}};
}

namespace {
nlohmann::json trial_to_json(const Lemma13Trial& t) {
    return nlohmann::json{{"m", t.m},         {"r", t.r},
                          {"k", t.k},         {"square_count", t.square_count},
                          {"bound", t.bound}, {"ratio", t.ratio}};
}
}  // namespace

nlohmann::json lemma13_report_to_json(const Lemma13Report& r) {
    nlohmann::json j{{"trials", r.trials}, {"seed", r.seed},       {"n", r.n},
                     {"max_ratio", r.max_ratio}, {"max_trial", trial_to_json(r.max_trial)}};
    j["failures"] = nlohmann::json::array();
    for (const auto& f : r.failures) j["failures"].push_back(trial_to_json(f));
    return j;
}

}  // namespace qcover
