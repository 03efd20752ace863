#pragma once

// The chebgap command line. run_cli is the whole program; tools/chebgap.cpp
// only forwards argv, which lets the tests drive it in-process.

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "chebgap/admissible.hpp"
#include "chebgap/bounds.hpp"
#include "chebgap/claims.hpp"
#include "chebgap/gapscan.hpp"
#include "chebgap/io.hpp"
#include "chebgap/primes.hpp"
#include "chebgap/sieve.hpp"
#include "chebgap/variational.hpp"

namespace chebgap {

inline constexpr const char* kVersion = "0.1.0";

enum ExitCode : int { kExitOk = 0, kExitClaimFailed = 1, kExitInputError = 2 };

struct RunManifest {
    std::string command;
    std::string config_path;
    std::string output_path;
    u64 seed = kDefaultSeed;
    std::string version = kVersion;
};

inline json to_json(const RunManifest& m) {
    return {{"command", m.command},
            {"config_path", m.config_path},
            {"output_path", m.output_path},
            {"seed", m.seed},
            {"version", m.version}};
}

namespace cli_detail {

struct Globals {
    std::string config;
    std::string out;
    unsigned threads = 1;
    u64 seed = kDefaultSeed;
    bool quick = false;
    bool as_json = false;
};

struct Emitter {
    const Globals& g;
    RunManifest manifest;
    std::ostream& out;

    // payload goes to --out (always JSON) and to stdout as JSON or as the table
    void emit(json payload, const std::string& table) const {
        json doc{{"manifest", to_json(manifest)}};
        for (auto& [key, v] : payload.items()) doc[key] = v;
        if (!g.out.empty()) {
            std::ofstream f(g.out);
            if (!f) throw std::invalid_argument("cannot write " + g.out);
            f << doc.dump(2) << '\n';
        }
        if (g.as_json)
            out << doc.dump(2) << '\n';
        else
            out << table;
    }
};

inline std::string row(const std::string& name, const std::string& value) {
    std::ostringstream os;
    os << "  " << std::left << std::setw(26) << name << value << '\n';
    return os.str();
}

inline std::string yes_no(bool b) { return b ? "true" : "false"; }

inline int cmd_bounds(const Emitter& em, std::optional<u64> q) {
    if (q) {
        const u64 b = gap_bound_abelian(*q);
        em.emit({{"abelian_q", *q}, {"gap_bound", b}}, "abelian gap bound 600 q, q = " + std::to_string(*q) + ": " +
                                                          std::to_string(b) + '\n');
        return kExitOk;
    }
    if (em.g.config.empty()) throw std::invalid_argument("bounds: give --config or --q");
    const json cfg = read_json_file(em.g.config);
    const GaloisContext ctx = context_from_json(cfg.contains("context") ? cfg.at("context") : cfg);
    if (ctx.is_abelian()) {
        const u64 b = gap_bound_abelian(*ctx.abelian_conductor);
        em.emit({{"context", to_json(ctx)}, {"gap_bound", b}},
                "abelian context, conductor " + std::to_string(*ctx.abelian_conductor) + ": gap bound " +
                    std::to_string(b) + '\n');
        return kExitOk;
    }
    const BoundReport r = verify_theorem1(ctx);
    std::string t = "proof chain for |G| = " + std::to_string(ctx.group_order) +
                    ", |C| = " + std::to_string(ctx.class_size) + ", Delta = " + std::to_string(ctx.discriminant) + '\n';
    t += row("r", to_string(r.ratio) + " (" + claims_detail::fmt(r.ratio.get_d()) + ")");
    t += row("k", to_string(r.k.k) + (r.k.indeterminate ? " (ceiling indeterminate)" : ""));
    t += row("epsilon", to_string(r.epsilon));
    t += row("theta", to_string(r.theta));
    t += row("M_k >=", to_string(r.mk_bound, 12));
    t += row("rho argument", to_string(r.rk_argument, 12));
    t += row("r_k", to_string(r.rk));
    t += row("1.6 k log k", to_string(r.diameter_bound, 12));
    t += row("gap bound", to_string(r.gap_bound, 12));
    t += row("r_k > 1", yes_no(r.rk_ok));
    t += row("k >= 213", yes_no(r.k_ok));
    t += row("diameter <= bound", yes_no(r.diameter_ok));
    t += row("proof_ok", yes_no(r.proof_ok));
    em.emit({{"context", to_json(ctx)}, {"report", to_json(r)}}, t);
    return r.proof_ok ? kExitOk : kExitClaimFailed;
}

inline int cmd_mk(const Emitter& em, int k, int degree) {
    if (degree == 0) {
        const MkLowerBound b = mk_lower_bound(u64(k));
        std::string t = "M_" + std::to_string(k) + " lower bounds\n";
        t += row("log k - 2 loglog k - 2", claims_detail::fmt(b.simplified, 10));
        t += row("full form", b.full ? claims_detail::fmt(*b.full, 10) : std::string("not applicable"));
        em.emit({{"k", k}, {"simplified", b.simplified}, {"full", b.full ? json(*b.full) : json(nullptr)}}, t);
        return kExitOk;
    }
    const OptimizeResult o = optimize_rayleigh(k, degree, em.g.threads);
    std::string t = "M_" + std::to_string(k) + " over degree " + std::to_string(degree) + '\n';
    t += row("certified ratio", claims_detail::fmt(o.rayleigh.value.get_d(), 12));
    t += row("float eigenvalue", o.float_eigenvalue);
    t += row("basis kept/dropped", std::to_string(o.basis.size()) + "/" + std::to_string(o.dropped.size()));
    t += row("denominator bound", to_string(o.denominator_bound));
    em.emit({{"optimization", to_json(o)}}, t);
    return kExitOk;
}

inline void write_csv_with_manifest(const std::string& path, const RunManifest& m, const GapReport& r, bool histogram) {
    std::ofstream f(path);
    if (!f) throw std::invalid_argument("cannot write " + path);
    f << "# manifest " << to_json(m).dump() << '\n';
    if (histogram)
        write_histogram_csv(f, r);
    else
        write_summary_csv(f, r);
}

inline std::string histogram_path(const std::string& out) {
    const auto dot = out.rfind('.');
    const auto slash = out.rfind('/');
    const bool has_ext = dot != std::string::npos && (slash == std::string::npos || dot > slash);
    return (has_ext ? out.substr(0, dot) : out) + "_histogram.csv";
}

inline int cmd_scan(const Emitter& em, u64 x, u64 bound) {
    if (em.g.config.empty()) throw std::invalid_argument("scan: --config is required");
    const ChebotarevSpec spec = spec_from_json(read_json_file(em.g.config));
    const GapReport r = scan(spec, x, bound, em.g.threads);
    if (!em.g.out.empty()) {
        write_csv_with_manifest(em.g.out, em.manifest, r, false);
        write_csv_with_manifest(histogram_path(em.g.out), em.manifest, r, true);
    }
    if (em.g.as_json) {
        em.out << json{{"manifest", to_json(em.manifest)}, {"report", to_json(r)}}.dump(2) << '\n';
    } else {
        write_summary_csv(em.out, r);
    }
    return kExitOk;
}

inline int cmd_sieve(const Emitter& em) {
    if (em.g.config.empty()) throw std::invalid_argument("sieve: --config is required");
    const SieveRun run = sieve_run_from_json(read_json_file(em.g.config));
    const SieveConfig& cfg = run.config;
    const WeightTable table = weight_table(cfg, Arithmetic::exact, em.g.threads);
    const Rational s1 = sum_s1(table);
    const Rational s2 = sum_s2(cfg, table, run.spec);
    json payload{{"config", to_json(cfg)}, {"spec", to_json(run.spec)}, {"progression_size", table.size()},
                 {"s1", rational_json(s1)}, {"s2", rational_json(s2)}};
    std::string t = "sieve over [" + std::to_string(cfg.n_start) + ", " + std::to_string(2 * cfg.n_start) +
                    "), n = " + std::to_string(cfg.u0) + " mod " + std::to_string(cfg.u_modulus) + '\n';
    t += row("R", claims_detail::fmt(cfg.r_limit));
    t += row("progression size", std::to_string(table.size()));
    t += row("S1", to_string(s1) + " (" + claims_detail::fmt(s1.get_d()) + ")");
    t += row("S2", to_string(s2) + " (" + claims_detail::fmt(s2.get_d()) + ")");
    if (integral_I(cfg.f) != 0) {
        const PredictedTerms p = predicted_terms(cfg, run.spec);
        payload["predicted"] = {{"s1", p.s1}, {"s2", p.s2}, {"ratio", p.ratio}};
        t += row("predicted S2/S1", claims_detail::fmt(p.ratio));
        if (s1 != 0) t += row("observed S2/S1", claims_detail::fmt(Rational(s2 / s1).get_d()));
    }
    if (run.rho) {
        const SFunctional s = s_functional(cfg, table, run.spec, *run.rho);
        json windows = json::array();
        for (const auto& w : s.windows) windows.push_back({w.n, w.hits});
        payload["s_functional"] = {{"rho", rational_json(s.rho)}, {"value", rational_json(s.value)},
                                   {"threshold", s.threshold}, {"windows", windows}};
        t += row("S2 - rho S1", claims_detail::fmt(s.value.get_d()));
        t += row("windows >= threshold", std::to_string(s.windows.size()));
    }
    em.emit(payload, t);
    return kExitOk;
}

inline std::vector<i64> parse_tuple(const std::string& s) {
    std::vector<i64> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        out.push_back(std::stoll(item, &used));
        if (used != item.size() && item.find_first_not_of(' ', used) != std::string::npos)
            throw std::invalid_argument("bad tuple entry: " + item);
    }
    return out;
}

inline int cmd_admissible(const Emitter& em, const std::string& tuple, std::optional<u64> k,
                          const std::vector<u64>& range) {
    if (!range.empty()) {
        const DiameterReport r = verify_diameter_bound(range.at(0), range.at(1));
        std::string t = "diameter <= 1.6 k log k for k in [" + std::to_string(r.k_lo) + ", " + std::to_string(r.k_hi) +
                        "]: " + (r.pass ? "holds" : "fails at k = " + std::to_string(*r.first_failure)) + '\n';
        t += row("min slack", claims_detail::fmt(r.min_slack) + " at k = " + std::to_string(r.min_slack_k));
        em.emit({{"k_lo", r.k_lo},
                 {"k_hi", r.k_hi},
                 {"pass", r.pass},
                 {"first_failure", r.first_failure ? json(*r.first_failure) : json(nullptr)},
                 {"min_slack", r.min_slack},
                 {"min_slack_k", r.min_slack_k}},
                t);
        return r.pass ? kExitOk : kExitClaimFailed;
    }
    if (!k && tuple.empty()) throw std::invalid_argument("admissible: give --tuple, --k or --diameter-range");
    const Tuple h = k ? shifted_prime_tuple(*k) : Tuple(parse_tuple(tuple));
    const bool ok = is_admissible(h);
    std::string t;
    t += row("size", std::to_string(h.size()));
    t += row("admissible", yes_no(ok));
    t += row("diameter", std::to_string(diameter(h)));
    if (k) t += row("1.6 k log k", claims_detail::fmt(1.6 * double(*k) * std::log(double(*k))));
    json payload{{"size", h.size()}, {"admissible", ok}, {"diameter", diameter(h)}};
    if (h.size() <= 64) payload["tuple"] = to_json(h);
    em.emit(payload, t);
    return kExitOk;
}

inline int cmd_dusart(const Emitter& em, u64 lo, u64 hi) {
    const DusartReport r = verify_dusart(lo, hi);
    std::string t = "Dusart bounds for n in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]\n";
    t += row("nth prime bounds", r.nth_prime_ok ? "hold" : "fail at n = " + std::to_string(*r.nth_prime_violation));
    t += row("pi bounds", !r.pi_checked ? "not in range" : r.pi_ok ? "hold" : "fail at n = " + std::to_string(*r.pi_violation));
    t += row("min relative slack", claims_detail::fmt(r.min_relative_slack));
    em.emit({{"n_lo", lo},
             {"n_hi", hi},
             {"nth_prime_ok", r.nth_prime_ok},
             {"nth_prime_violation", r.nth_prime_violation ? json(*r.nth_prime_violation) : json(nullptr)},
             {"pi_checked", r.pi_checked},
             {"pi_ok", r.pi_ok},
             {"pi_violation", r.pi_violation ? json(*r.pi_violation) : json(nullptr)},
             {"min_relative_slack", r.min_relative_slack}},
            t);
    return r.pass() ? kExitOk : kExitClaimFailed;
}

inline int cmd_verify(const Emitter& em, const std::vector<int>& only) {
    ClaimOptions opt{em.g.quick, em.g.seed, em.g.threads};
    std::vector<ClaimResult> results;
    if (only.empty())
        results = run_claims(opt);
    else
        for (int id : only) results.push_back(run_claim(id, opt));
    bool failed = false;
    std::string t;
    json rows = json::array();
    for (const auto& r : results) {
        failed |= r.status == ClaimStatus::fail;
        t += format_claim(r) + '\n';
        // wall time is left out so that the JSON is reproducible
        rows.push_back({{"id", r.id}, {"name", r.name}, {"status", status_label(r.status)}, {"detail", r.detail}});
    }
    em.emit({{"claims", rows}, {"all_passed", !failed}}, t);
    return failed ? kExitClaimFailed : kExitOk;
}

}  // namespace cli_detail

inline int run_cli(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    using namespace cli_detail;
    CLI::App app{"chebgap: bounded gaps between primes in Chebotarev sets"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_version_flag("--version", kVersion);
    Globals g;
    app.add_option("--config", g.config, "JSON config file");
    app.add_option("--out", g.out, "write the result (with its run manifest) here");
    app.add_option("--threads", g.threads, "worker threads")->check(CLI::Range(1u, 256u));
    app.add_option("--seed", g.seed, "seed for Monte Carlo checks");
    app.add_flag("--quick", g.quick, "skip the slow M_105 optimization");
    app.add_flag("--json", g.as_json, "JSON on stdout");

    std::optional<u64> abelian_q;
    auto* bounds = app.add_subcommand("bounds", "gap bound and proof chain for a Galois context");
    bounds->add_option("--q", abelian_q, "abelian case: modulus q, prints 600 q")->check(CLI::PositiveNumber);

    int mk_k = 105, mk_degree = 11;
    auto* mk = app.add_subcommand("mk", "lower bound for M_k (degree 0: closed form)");
    mk->add_option("--k", mk_k, "number of variables")->check(CLI::Range(1, 100000));
    mk->add_option("--degree", mk_degree, "basis degree a + 2b")->check(CLI::Range(0, 30));

    u64 scan_x = 100000, scan_bound = ~u64(0);
    auto* scan_cmd = app.add_subcommand("scan", "gaps between consecutive members of a Chebotarev set (CSV)");
    scan_cmd->add_option("--x", scan_x, "height");
    scan_cmd->add_option("--bound", scan_bound, "count consecutive pairs with gap <= bound");

    auto* sieve = app.add_subcommand("sieve", "sieve sums S1, S2 for a config");

    std::string tuple;
    std::optional<u64> tuple_k;
    std::vector<u64> range;
    auto* adm = app.add_subcommand("admissible", "admissibility and diameter");
    adm->add_option("--tuple", tuple, "comma separated tuple");
    adm->add_option("--k", tuple_k, "use the shifted prime tuple of size k")->check(CLI::PositiveNumber);
    adm->add_option("--diameter-range", range, "check 1.6 k log k over [lo, hi]")->expected(2);

    u64 dus_lo = 6, dus_hi = 1000000;
    auto* dusart = app.add_subcommand("dusart", "explicit prime-counting bounds");
    dusart->add_option("--lo", dus_lo, "first n");
    dusart->add_option("--hi", dus_hi, "last n");

    std::vector<int> only;
    auto* verify = app.add_subcommand("verify-paper", "run every acceptance check");
    verify->add_option("--only", only, "run only these checks")->check(CLI::Range(1, 12));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitInputError;
    }

    Emitter em{g, {}, out};
    em.manifest.command = app.get_subcommands().front()->get_name();
    em.manifest.config_path = g.config;
    em.manifest.output_path = g.out;
    em.manifest.seed = g.seed;
    try {
        if (bounds->parsed()) return cmd_bounds(em, abelian_q);
        if (mk->parsed()) return cmd_mk(em, mk_k, mk_degree);
        if (scan_cmd->parsed()) return cmd_scan(em, scan_x, scan_bound);
        if (sieve->parsed()) return cmd_sieve(em);
        if (adm->parsed()) return cmd_admissible(em, tuple, tuple_k, range);
        if (dusart->parsed()) return cmd_dusart(em, dus_lo, dus_hi);
        if (verify->parsed()) return cmd_verify(em, only);
    } catch (const std::exception& e) {
        // bad files, malformed JSON and out-of-domain parameters all land here
        err << "error: " << e.what() << '\n';
        return kExitInputError;
    }
    return kExitInputError;
}

}  // namespace chebgap
