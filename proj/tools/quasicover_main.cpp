// quasicover: build and certify quasi-progression covers of the squares,
// probe exact optima, scan polynomial image shrinkage, and exercise the
// sieve-based bounds. Every run emits a manifest so results can be
// reproduced byte for byte (timestamps aside).

#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qcover/cover_builder.hpp"
#include "qcover/ntcore.hpp"
#include "qcover/oracle.hpp"
#include "qcover/progressions.hpp"
#include "qcover/shrinkscan.hpp"
#include "qcover/sieve_bounds.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";
constexpr long long kBuildLimit = 1LL << 34;

std::string iso_timestamp() {
    std::time_t t = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void write_file(const std::string& path, const std::string& contents) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("cannot open '" + path + "' for writing");
    os << contents;
    if (!os) throw std::runtime_error("failed writing '" + path + "'");
}

// The manifest travels next to the primary output file, or to stderr when
// everything goes to stdout.
void emit_manifest(const std::string& subcommand, const nlohmann::json& params,
                   const std::vector<std::string>& outputs,
                   std::optional<std::uint64_t> seed) {
    nlohmann::json m{{"tool", "quasicover"},
                     {"version", kVersion},
                     {"subcommand", subcommand},
                     {"parameters", params},
                     {"generated_at", iso_timestamp()},
                     {"outputs", outputs}};
    if (seed) m["seed"] = *seed;
    if (outputs.empty())
        std::cerr << m.dump() << "\n";
    else
        write_file(outputs.front() + ".manifest.json", m.dump(2) + "\n");
}

void deliver(const std::string& out, const std::string& payload) {
    if (out.empty())
        std::cout << payload;
    else
        write_file(out, payload);
}

struct BuildArgs {
    long long n = 0;
    std::uint64_t cap = 0;  // 0 = uncapped
    std::string out;
};

struct VerifyArgs {
    std::string file;
};

struct OracleArgs {
    long long n = 0;
    std::string kind;
    double budget = 30.0;
    int max_pieces = 0;
    std::string out;
};

struct ShrinkArgs {
    std::string poly;
    std::uint64_t limit = 0;
    double mu = 0.0;
    std::uint64_t min_prime = 2;
    unsigned workers = 1;
    std::string csv;
    std::string out;
};

struct BoundsArgs {
    std::string n_list;
    std::uint64_t big_k = 1;
    int d = 2;
    double a = 0.0;
    double eta = 1.0;
    double mu = 0.5;
    std::string out;
};

struct SieveArgs {
    std::uint64_t trials = 0;
    long long m = 0;
    std::uint64_t seed = 12345;
    std::string out;
};

struct Lemma13Args {
    std::uint64_t trials = 0;
    long long n = 0;
    std::uint64_t seed = 12345;
    unsigned workers = 1;
    std::string out;
};

int run_build(const BuildArgs& a) {
    if (a.n < 1 || a.n > kBuildLimit) {
        std::cerr << "cover build: --n must be in [1, 2^34]\n";
        return 2;
    }
    qcover::BuildStats stats;
    qcover::Cover c = a.cap == 0 ? qcover::build_quasi_cover(a.n, &stats)
                                 : qcover::build_quasi_cover_capped(a.n, a.cap, &stats);
    qcover::BuildCertificate cert = qcover::certify_build(c, stats);
    qcover::CoverCertificate vc = qcover::verify_cover(c);
    nlohmann::json cj = qcover::certificate_to_json(cert);
    cj["covered"] = vc.covered;

    std::vector<std::string> outputs;
    if (!a.out.empty()) {
        write_file(a.out, qcover::cover_to_json(c).dump(2) + "\n");
        outputs.push_back(a.out);
    }
    std::cout << cj.dump() << "\n";
    nlohmann::json params{{"n", a.n}, {"cap", a.cap}, {"out", a.out}};
    emit_manifest("cover build", params, outputs, std::nullopt);
    // The cost bound is asserted from 2^14 up; smaller n only report it.
    bool ok = vc.covered && (a.n < 16384 || cert.ok);
    return ok ? 0 : 1;
}

int run_verify(const VerifyArgs& a) {
    std::ifstream is(a.file);
    if (!is) {
        std::cerr << "cover verify: cannot read '" << a.file << "'\n";
        return 2;
    }
    nlohmann::json j = nlohmann::json::parse(is);
    qcover::Cover c = qcover::cover_from_json(j);
    qcover::CoverCertificate cert = qcover::verify_cover(c);
    nlohmann::json out{{"n", c.n},
                       {"pieces", c.pieces.size()},
                       {"cost", c.cost()},
                       {"covered", cert.covered},
                       {"missing", cert.missing}};
    std::cout << out.dump() << "\n";
    emit_manifest("cover verify", nlohmann::json{{"file", a.file}}, {}, std::nullopt);
    return cert.covered ? 0 : 1;
}

int run_oracle(const OracleArgs& a) {
    qcover::OracleConfig cfg;
    cfg.n = a.n;
    if (a.kind == "ap")
        cfg.kind = qcover::PieceKind::ap;
    else if (a.kind == "qp")
        cfg.kind = qcover::PieceKind::qp;
    else {
        std::cerr << "cover oracle: --kind must be 'ap' or 'qp'\n";
        return 2;
    }
    cfg.time_budget_seconds = a.budget;
    cfg.max_pieces = a.max_pieces;
    qcover::OracleResult res = qcover::exact_min_cost(cfg);
    std::string payload = qcover::oracle_report_to_json(res, cfg).dump(2) + "\n";
    deliver(a.out, payload);
    std::vector<std::string> outputs;
    if (!a.out.empty()) outputs.push_back(a.out);
    nlohmann::json params{
        {"n", a.n}, {"kind", a.kind}, {"budget", a.budget}, {"max_pieces", a.max_pieces}, {"out", a.out}};
    emit_manifest("cover oracle", params, outputs, std::nullopt);
    return 0;
}

int run_shrink(const ShrinkArgs& a) {
    qcover::Polynomial f = qcover::Polynomial::parse(a.poly);
    qcover::ShrinkReport rep =
        qcover::shrinking_scan(f, a.limit, a.mu, a.min_prime, a.workers);
    std::vector<std::string> outputs;
    std::string payload = qcover::shrink_report_to_json(rep).dump(2) + "\n";
    if (!a.out.empty()) outputs.push_back(a.out);
    if (!a.csv.empty()) {
        std::ostringstream csv;
        qcover::shrink_report_to_csv(rep, csv);
        write_file(a.csv, csv.str());
        outputs.push_back(a.csv);
    }
    deliver(a.out, payload);
    nlohmann::json params{{"poly", a.poly},   {"limit", a.limit}, {"mu", a.mu},
                          {"min_prime", a.min_prime}, {"workers", a.workers},
                          {"csv", a.csv},     {"out", a.out}};
    emit_manifest("shrink scan", params, outputs, std::nullopt);
    return 0;
}

int run_bounds(const BoundsArgs& a) {
    std::vector<long long> ns;
    std::stringstream ss(a.n_list);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            ns.push_back(std::stoll(tok));
        } catch (const std::exception&) {
            std::cerr << "bounds table: bad n '" << tok << "'\n";
            return 2;
        }
    }
    if (ns.empty()) {
        std::cerr << "bounds table: empty --n-list\n";
        return 2;
    }
    std::ostringstream os;
    os << "n,sarkozy,theorem12,qp_bound,h_bound\n";
    char buf[160];
    for (long long n : ns) {
        if (n < 3) {
            std::cerr << "bounds table: n must be >= 3 (got " << n << ")\n";
            return 2;
        }
        std::snprintf(buf, sizeof buf, "%lld,%.10g,%.10g,%.10g,%.10g\n", n,
                      qcover::sarkozy_bound(n), qcover::theorem12_bound(n, a.big_k),
                      qcover::theoretical_qp_bound(n),
                      qcover::h_bound(n, a.d, a.a, a.eta, a.mu));
        os << buf;
    }
    deliver(a.out, os.str());
    std::vector<std::string> outputs;
    if (!a.out.empty()) outputs.push_back(a.out);
    nlohmann::json params{{"n_list", a.n_list}, {"k", a.big_k}, {"d", a.d},
                          {"a", a.a},           {"eta", a.eta}, {"mu", a.mu},
                          {"out", a.out}};
    emit_manifest("bounds table", params, outputs, std::nullopt);
    return 0;
}

int run_sieve(const SieveArgs& a) {
    qcover::SieveHarnessReport rep = qcover::large_sieve_harness(a.trials, a.m, a.seed);
    deliver(a.out, qcover::sieve_harness_report_to_json(rep).dump(2) + "\n");
    std::vector<std::string> outputs;
    if (!a.out.empty()) outputs.push_back(a.out);
    nlohmann::json params{{"trials", a.trials}, {"m", a.m}, {"out", a.out}};
    emit_manifest("sieve check", params, outputs, a.seed);
    return rep.violations == 0 ? 0 : 1;
}

int run_lemma13(const Lemma13Args& a) {
    qcover::Lemma13Report rep = qcover::lemma13_empirical(a.trials, a.n, a.seed, a.workers);
    deliver(a.out, qcover::lemma13_report_to_json(rep).dump(2) + "\n");
    std::vector<std::string> outputs;
    if (!a.out.empty()) outputs.push_back(a.out);
    nlohmann::json params{{"trials", a.trials}, {"n", a.n}, {"workers", a.workers}, {"out", a.out}};
    emit_manifest("lemma13", params, outputs, a.seed);
    return rep.failures.empty() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"quasi-progression covers of the squares and polynomial value sets"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    BuildArgs build_args;
    VerifyArgs verify_args;
    OracleArgs oracle_args;
    ShrinkArgs shrink_args;
    BoundsArgs bounds_args;
    SieveArgs sieve_args;
    Lemma13Args lemma_args;

    auto* cover = app.add_subcommand("cover", "covers of the squares");
    cover->require_subcommand(1);
    auto* build = cover->add_subcommand("build", "dyadic quasi-progression cover + certificate");
    build->add_option("--n", build_args.n, "cover the squares up to n")->required();
    build->add_option("--cap", build_args.cap, "max (D+1)-gaps per piece (0 = uncapped)");
    build->add_option("--out", build_args.out, "write the cover JSON here");
    auto* verify = cover->add_subcommand("verify", "check a cover file");
    verify->add_option("--file", verify_args.file, "cover JSON to verify")->required();
    auto* oracle = cover->add_subcommand("oracle", "exact minimum cover cost (small n)");
    oracle->add_option("--n", oracle_args.n, "target bound n")->required();
    oracle->add_option("--kind", oracle_args.kind, "piece kind: ap or qp")->required();
    oracle->add_option("--budget", oracle_args.budget, "time budget in seconds");
    oracle->add_option("--max-pieces", oracle_args.max_pieces, "cap on piece count (0 = auto)");
    oracle->add_option("--out", oracle_args.out, "write the report here");

    auto* shrink = app.add_subcommand("shrink", "polynomial image scans");
    shrink->require_subcommand(1);
    auto* scan = shrink->add_subcommand("scan", "image sizes mod every prime <= limit");
    scan->add_option("--poly", shrink_args.poly, "coefficients c0,c1,...,cd")->required();
    scan->add_option("--limit", shrink_args.limit, "prime limit x")->required();
    scan->add_option("--mu", shrink_args.mu, "shrinking threshold in (0,1]")->required();
    scan->add_option("--min-prime", shrink_args.min_prime, "ignore primes below this");
    scan->add_option("--workers", shrink_args.workers, "worker threads (wall time only)");
    scan->add_option("--csv", shrink_args.csv, "write per-prime CSV here");
    scan->add_option("--out", shrink_args.out, "write the report here");

    auto* bounds = app.add_subcommand("bounds", "bound formula tables");
    bounds->require_subcommand(1);
    auto* table = bounds->add_subcommand("table", "CSV of the cost bounds");
    table->add_option("--n-list", bounds_args.n_list, "comma-separated n values")->required();
    table->add_option("--k", bounds_args.big_k, "divisor bound K for the AP lower bound");
    table->add_option("--d", bounds_args.d, "degree d for the polynomial bound");
    table->add_option("--a", bounds_args.a, "log exponent A for the polynomial bound");
    table->add_option("--eta", bounds_args.eta, "prime density eta in (0,1]");
    table->add_option("--mu", bounds_args.mu, "shrinking factor mu in (0,1)");
    table->add_option("--out", bounds_args.out, "write the CSV here");

    auto* sieve = app.add_subcommand("sieve", "large sieve checks");
    sieve->require_subcommand(1);
    auto* check = sieve->add_subcommand("check", "randomized large sieve harness");
    check->add_option("--trials", sieve_args.trials, "number of random instances")->required();
    check->add_option("--m", sieve_args.m, "max interval length M")->required();
    check->add_option("--seed", sieve_args.seed, "master seed");
    check->add_option("--out", sieve_args.out, "write the report here");

    auto* lemma = app.add_subcommand("lemma13", "squares-in-AP bound, empirically");
    lemma->add_option("--trials", lemma_args.trials, "number of random APs")->required();
    lemma->add_option("--n", lemma_args.n, "APs sampled inside [1, n]")->required();
    lemma->add_option("--seed", lemma_args.seed, "master seed");
    lemma->add_option("--workers", lemma_args.workers, "worker threads (wall time only)");
    lemma->add_option("--out", lemma_args.out, "write the report here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help / --version
        std::cerr << e.what() << "\n";
        return 2;
    }

    try {
        if (build->parsed()) return run_build(build_args);
        if (verify->parsed()) return run_verify(verify_args);
        if (oracle->parsed()) return run_oracle(oracle_args);
        if (scan->parsed()) return run_shrink(shrink_args);
        if (table->parsed()) return run_bounds(bounds_args);
        if (check->parsed()) return run_sieve(sieve_args);
        if (lemma->parsed()) return run_lemma13(lemma_args);
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "malformed input: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::length_error& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
