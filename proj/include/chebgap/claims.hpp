#pragma once

// The numbered reproduction checks, shared by the acceptance binary and the
// verify-paper subcommand. Each check carries its own tolerance and time
// budget; exceeding the budget fails the check.

#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_dec_float.hpp>

#include "chebgap/admissible.hpp"
#include "chebgap/bounds.hpp"
#include "chebgap/chebsets.hpp"
#include "chebgap/gapscan.hpp"
#include "chebgap/montecarlo.hpp"
#include "chebgap/primes.hpp"
#include "chebgap/sieve.hpp"
#include "chebgap/tau.hpp"
#include "chebgap/variational.hpp"

namespace chebgap {

inline constexpr u64 kDefaultSeed = 20260416;

enum class ClaimStatus { pass, fail, skipped };

struct ClaimResult {
    int id = 0;
    std::string name;
    ClaimStatus status = ClaimStatus::fail;
    std::string detail;
    double seconds = 0;
    double budget = 0;
};

struct ClaimOptions {
    bool quick = false;  // skips the M_105 optimization
    u64 seed = kDefaultSeed;
    unsigned threads = 1;
};

inline const char* status_label(ClaimStatus s) {
    switch (s) {
        case ClaimStatus::pass: return "PASS";
        case ClaimStatus::fail: return "FAIL";
        default: return "SKIP";
    }
}

namespace claims_detail {

struct Outcome {
    bool ok;
    std::string detail;
};

// Trial-division helpers kept apart from the library's sieve and factorization.
inline bool slow_is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline int slow_mu(u64 n) {
    int mu = 1;
    for (u64 p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        n /= p;
        if (n % p == 0) return 0;
        mu = -mu;
    }
    return n > 1 ? -mu : mu;
}

inline u64 slow_phi(u64 n) {
    u64 count = 0;
    for (u64 a = 1; a <= n; ++a) count += std::gcd(a, n) == 1;
    return count;
}

inline u64 sigma11_mod(u64 n, u64 d) {
    u64 s = 0;
    for (u64 a = 1; a <= n; ++a)
        if (n % a == 0) s = (s + powmod(a % d, 11, d)) % d;
    return s;
}

inline std::string fmt(double x, int digits = 6) {
    std::ostringstream os;
    os.precision(digits);
    os << x;
    return os.str();
}

// Exhaustive sieve oracle for k = 2 and F = 1 - t1 - t2.
struct SieveOracle {
    u64 w;
    double r_limit, log_r;
    std::map<std::pair<u64, u64>, Rational> memo;

    Rational f_at(u64 r1, u64 r2) const {
        const Rational t1 = exact_rational(std::log(double(r1)) / log_r);
        const Rational t2 = exact_rational(std::log(double(r2)) / log_r);
        if (t1 + t2 > 1) return 0;
        return 1 - t1 - t2;
    }

    Rational lambda(u64 d1, u64 d2) {
        if (!(double(d1) * double(d2) < r_limit)) return 0;
        if (std::gcd(d1 * d2, w) != 1 || slow_mu(d1 * d2) == 0) return 0;
        auto key = std::make_pair(d1, d2);
        if (auto it = memo.find(key); it != memo.end()) return it->second;
        Rational sum = 0;
        const u64 top = u64(std::floor(r_limit)) + 1;
        for (u64 r1 = d1; r1 <= top; r1 += d1)
            for (u64 r2 = d2; r2 <= top; r2 += d2) {
                if (std::gcd(r1, w) != 1 || std::gcd(r2, w) != 1) continue;
                if (slow_mu(r1 * r2) == 0) continue;
                sum += f_at(r1, r2) / Rational(slow_phi(r1) * slow_phi(r2));
            }
        Rational v = Rational(slow_mu(d1) * i64(d1)) * Rational(slow_mu(d2) * i64(d2)) * sum;
        memo.emplace(key, v);
        return v;
    }
};

inline SieveConfig demo_config() {
    return build_config(100000, Tuple({0, 4}), GaloisContext(1, 1, 1), 0.4, 0.05, SimplexPolynomial::one_minus_sum(2), 5);
}

inline ChebotarevSpec demo_spec() { return ChebotarevSpec::congruence(4, {1}, GaloisContext(2, 1, -4, 4)); }

// Every prime except 2; density 1 with trivial Galois data.
inline ChebotarevSpec odd_primes_spec() { return ChebotarevSpec::congruence(2, {1}, GaloisContext(1, 1, 1, 2)); }

// --- individual claims ---

inline Outcome threshold_213() {
    const u64 k = mk_threshold();
    const bool below = mk_lower_bound(212).simplified < 0;
    return {k == 213 && below, "smallest k = " + std::to_string(k) + ", bound(213) = " +
                                   fmt(mk_lower_bound(213).simplified) + ", bound(212) = " +
                                   fmt(mk_lower_bound(212).simplified)};
}

inline Outcome abelian_constants() {
    const u64 a = gap_bound_abelian(8), b = gap_bound_abelian(28);
    return {a == 4800 && b == 16800, "600*8 = " + std::to_string(a) + ", 600*28 = " + std::to_string(b)};
}

inline Outcome theorem_chain() {
    using Dec = boost::multiprecision::cpp_dec_float_50;
    const Dec c = ceil(Dec(36) * exp(Dec(6)));
    const BigInt expected = BigInt(125) * BigInt(c.convert_to<long>());
    const BoundReport rep = verify_theorem1(GaloisContext(6, 6, 1));
    const bool ok = rep.k.k == expected && rep.proof_ok && rep.k.k >= 213 && rep.diameter_ok;
    return {ok, "k = " + to_string(rep.k.k) + " (oracle " + to_string(expected) + "), proof_ok = " +
                    (rep.proof_ok ? "true" : "false") + ", 1.6 k log k = " + to_string(rep.diameter_bound, 10) +
                    " <= 825 r^3 e^r = " + to_string(rep.gap_bound, 10)};
}

inline Outcome diameter_claim() {
    const DiameterReport rep = verify_diameter_bound(213, 10000);
    return {rep.pass, "k in [213, 10^4], min slack " + fmt(rep.min_slack) + " at k = " + std::to_string(rep.min_slack_k) +
                          (rep.first_failure ? ", first failure k = " + std::to_string(*rep.first_failure) : "")};
}

inline Outcome dusart_claim() {
    const DusartReport a = verify_dusart(6, 100000);
    const DusartReport b = verify_dusart(kDusartPiThreshold, 400000);
    const bool ok = a.nth_prime_ok && b.pi_checked && b.pi_ok;
    return {ok, std::string("nth-prime bounds on [6, 10^5]: ") + (a.nth_prime_ok ? "hold" : "violated") +
                    ", pi bounds on [355991, 4*10^5]: " + (b.pi_ok ? "hold" : "violated")};
}

// A zero standard error (constant estimator) must then match to rounding.
inline double z_score(const McEstimate& e, double exact) {
    const double diff = std::abs(e.mean - exact);
    if (e.std_error == 0) return diff <= 1e-12 * std::abs(exact) ? 0.0 : INFINITY;
    return diff / e.std_error;
}

inline Outcome variational_claim(u64 seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> dim(1, 5);
    constexpr std::size_t kSamples = 1000000;
    constexpr double kSigmas = 3.0;
    int failures = 0;
    double worst = 0;
    for (int trial = 0; trial < 50; ++trial) {
        const int k = dim(rng);
        const SimplexPolynomial f = random_polynomial(k, 6, 3, rng);
        const double exact_i = integral_I(f).get_d();
        const double exact_j = integral_J_sum(f).get_d();
        const McEstimate mi = mc_integral_I(f, kSamples, rng);
        const McEstimate mj = mc_integral_J_sum(f, kSamples, rng);
        const double zi = z_score(mi, exact_i), zj = z_score(mj, exact_j);
        worst = std::max({worst, zi, zj});
        failures += (zi > kSigmas) + (zj > kSigmas);
    }
    const Rational r = rayleigh(SimplexPolynomial::constant(2, 1)).value;
    const bool exact_ok = r == Rational(4, 3);
    return {failures == 0 && exact_ok, "50 polynomials, " + std::to_string(failures) +
                                           " estimates beyond 3 sigma (worst z = " + fmt(worst, 3) +
                                           "), rayleigh(1, k=2) = " + to_string(r)};
}

inline Outcome mk105_claim(unsigned threads) {
    for (int degree = 11; degree <= 15; ++degree) {
        const OptimizeResult o = optimize_rayleigh(105, degree, threads);
        if (o.rayleigh.value > 4)
            return {true, "degree " + std::to_string(degree) + ": certified M_105 >= " + fmt(o.rayleigh.value.get_d(), 12) +
                              " (float eigenvalue " + o.float_eigenvalue.substr(0, 14) + ")"};
    }
    return {false, "no degree in [11, 15] certified a value above 4"};
}

inline Outcome sieve_equivalence() {
    const SieveConfig cfg = demo_config();
    const ChebotarevSpec spec = demo_spec();
    SieveOracle oracle{cfg.w_modulus, cfg.r_limit, cfg.log_r, {}};
    int lambda_mismatch = 0;
    for (u64 d1 = 1; d1 <= 60; ++d1)
        for (u64 d2 = 1; d2 <= 60; ++d2)
            if (lambda_weight({d1, d2}, cfg) != oracle.lambda(d1, d2)) ++lambda_mismatch;

    const WeightTable table = weight_table(cfg);
    Rational s1 = 0, s2 = 0;
    int w_mismatch = 0;
    std::size_t idx = 0;
    for (u64 n = cfg.n_start; n < 2 * cfg.n_start; ++n) {
        if (n % cfg.u_modulus != cfg.u0) continue;
        Rational inner = 0;
        // lambda vanishes once d1 d2 >= R, so larger divisors cannot contribute
        for (u64 d1 = 1; double(d1) < cfg.r_limit; ++d1) {
            if (n % d1) continue;
            for (u64 d2 = 1; double(d1) * double(d2) < cfg.r_limit; ++d2)
                if ((n + 4) % d2 == 0) inner += oracle.lambda(d1, d2);
        }
        const Rational w = inner * inner;
        if (idx >= table.size() || table.n[idx] != n || table.exact[idx] != w) ++w_mismatch;
        ++idx;
        s1 += w;
        for (u64 v : {n, n + 4})
            if (slow_is_prime(v) && v % 4 == 1) s2 += w;
    }
    if (idx != table.size()) ++w_mismatch;
    const Rational lib_s1 = sum_s1(table), lib_s2 = sum_s2(cfg, table, spec);
    const bool ok = lambda_mismatch == 0 && w_mismatch == 0 && lib_s1 == s1 && lib_s2 == s2;
    return {ok, "lambda mismatches " + std::to_string(lambda_mismatch) + "/3600, w_n mismatches " +
                    std::to_string(w_mismatch) + ", S1 = " + to_string(lib_s1) + " (oracle " + to_string(s1) +
                    "), S2 = " + to_string(lib_s2) + " (oracle " + to_string(s2) + ")"};
}

inline Outcome sieve_ratio() {
    const SieveConfig cfg = demo_config();
    const ChebotarevSpec spec = odd_primes_spec();
    // support and implication checks over all d-vectors with entries <= 60
    const i64 det = tuple_determinant(cfg.tuple).get_si();
    const u64 guard = cfg.u_modulus * abs_u64(det) * cfg.context.abs_discriminant();
    int support_violations = 0;
    for (u64 d1 = 1; d1 <= 60; ++d1)
        for (u64 d2 = 1; d2 <= 60; ++d2) {
            if (lambda_weight({d1, d2}, cfg) == 0) continue;
            const u64 d = d1 * d2;
            const bool ok = double(d) < cfg.r_limit && mobius(d) != 0 && std::gcd(d, cfg.w_modulus) == 1 &&
                            std::gcd(d1, d2) == 1 && std::gcd(d, guard) == 1;
            support_violations += !ok;
        }
    const WeightTable table = weight_table(cfg);
    int negative = 0;
    for (const auto& w : table.exact) negative += w < 0;
    const Rational s1 = sum_s1(table), s2 = sum_s2(cfg, table, spec);
    const bool bounds_ok = s1 >= 0 && s2 >= 0 && s2 <= cfg.k * s1;
    const double observed = Rational(s2 / s1).get_d();
    const double predicted = predicted_terms(cfg, spec).ratio;
    const double factor = std::max(observed / predicted, predicted / observed);
    const bool ratio_ok = factor <= 2.0;
    return {support_violations == 0 && negative == 0 && bounds_ok && ratio_ok,
            "observed S2/S1 = " + fmt(observed) + ", predicted = " + fmt(predicted) + ", factor " + fmt(factor, 4) +
                " (allowed 2); support violations " + std::to_string(support_violations) + ", negative w_n " +
                std::to_string(negative) + ", 0 <= S2 <= k S1: " + (bounds_ok ? "yes" : "no")};
}

inline Outcome chebotarev_density() {
    const auto cubic = ChebotarevSpec::factorization({-1, -1, 0, 1}, {3}, GaloisContext(6, 2, -23));
    const auto mod4 = ChebotarevSpec::congruence(4, {1}, GaloisContext(2, 1, -4, 4));
    const double a = empirical_density(cubic, 1000000).get_d();
    const double b = empirical_density(mod4, 1000000).get_d();
    const bool ok = std::abs(a - 1.0 / 3) <= 0.02 && std::abs(b - 0.5) <= 0.01;
    return {ok, "x^3 - x - 1 inert: " + fmt(a) + " (target 1/3 +- 0.02), p = 1 mod 4: " + fmt(b) + " (target 1/2 +- 0.01)"};
}

inline Outcome gap_evidence(unsigned threads) {
    const auto spec = ChebotarevSpec::congruence(8, {3}, GaloisContext(4, 1, 256, 8));
    const GapReport rep = scan(spec, 1000000, gap_bound_abelian(8), threads);
    const bool scan_ok = rep.min_gap && *rep.min_gap == 8 && rep.pairs_within_bound >= 100;
    const GapReport tau = tau_gap_scan(691, 100000, ~u64(0), threads);
    const auto tspec = tau_spec(691, 100000);
    u64 members = 0, bad = 0;
    for_each_prime(2, 100001, [&](u64 p) {
        const bool member = tspec.is_member(p);
        if (member) {
            ++members;
            if (sigma11_mod(p, 691) != 0) ++bad;
        } else if (p != 691 && (1 + powmod(p % 691, 11, 691)) % 691 == 0) {
            ++bad;  // sigma_11(p) = 0 mod 691 but missed
        }
    });
    const bool tau_ok = bad == 0 && members == tau.prime_count;
    return {scan_ok && tau_ok, "p = 3 mod 8 up to 10^6: min gap " + (rep.min_gap ? std::to_string(*rep.min_gap) : "-") +
                                   ", pairs within 4800: " + std::to_string(rep.pairs_within_bound) +
                                   "; tau(p) = 0 mod 691 up to 10^5: " + std::to_string(members) +
                                   " primes, sigma_11 mismatches " + std::to_string(bad)};
}

inline Outcome tau_claim() {
    constexpr std::size_t kLimit = 10000;
    const auto t691 = tau_mod_stream(691, kLimit);
    int sigma_bad = 0;
    for (std::size_t n = 1; n <= kLimit; ++n) sigma_bad += t691[n] != sigma11_mod(n, 691);
    int mult_bad = 0, hecke_bad = 0, checks = 0;
    for (u64 d : {u64(691), u64(997), u64(65537), u64(1000000007)}) {
        const auto t = tau_mod_stream(d, kLimit);
        for (u64 m = 2; m <= 100; ++m)
            for (u64 n = m + 1; n <= 100; ++n)
                if (std::gcd(m, n) == 1) {
                    ++checks;
                    mult_bad += t[m * n] != mulmod(t[m], t[n], d);
                }
        for (u64 p : small_primes(100)) {
            ++checks;
            const u64 rhs = (mulmod(t[p], t[p], d) + d - powmod(p % d, 11, d)) % d;
            hecke_bad += t[p * p] != rhs;
        }
    }
    return {sigma_bad == 0 && mult_bad == 0 && hecke_bad == 0,
            "tau = sigma_11 mod 691 for n <= 10^4: " + std::to_string(sigma_bad) + " mismatches; " +
                std::to_string(checks) + " multiplicativity/Hecke checks mod {691, 997, 65537, 1e9+7}: " +
                std::to_string(mult_bad + hecke_bad) + " failures"};
}

}  // namespace claims_detail

struct ClaimSpec {
    int id;
    std::string name;
    double budget;  // seconds
};

inline const std::vector<ClaimSpec>& claim_specs() {
    static const std::vector<ClaimSpec> specs{
        {1, "threshold 213", 1},           {2, "abelian constants", 1},     {3, "theorem chain (6,6,1)", 1},
        {4, "diameter 1.6 k log k", 60},   {5, "Dusart bounds", 60},        {6, "variational exactness", 120},
        {7, "M_105 > 4", 1800},            {8, "sieve brute force", 600},   {9, "sieve ratio sanity", 600},
        {10, "Chebotarev density", 120},   {11, "gap evidence", 300},       {12, "tau stream", 60},
    };
    return specs;
}

inline ClaimResult run_claim(int id, const ClaimOptions& opt) {
    using namespace claims_detail;
    const auto& spec = claim_specs().at(std::size_t(id - 1));
    ClaimResult res{id, spec.name, ClaimStatus::fail, "", 0, spec.budget};
    if (id == 7 && opt.quick) {
        res.status = ClaimStatus::skipped;
        res.detail = "skipped (--quick)";
        return res;
    }
    const auto start = std::chrono::steady_clock::now();
    Outcome out{false, ""};
    try {
        switch (id) {
            case 1: out = threshold_213(); break;
            case 2: out = abelian_constants(); break;
            case 3: out = theorem_chain(); break;
            case 4: out = diameter_claim(); break;
            case 5: out = dusart_claim(); break;
            case 6: out = variational_claim(opt.seed); break;
            case 7: out = mk105_claim(opt.threads); break;
            case 8: out = sieve_equivalence(); break;
            case 9: out = sieve_ratio(); break;
            case 10: out = chebotarev_density(); break;
            case 11: out = gap_evidence(opt.threads); break;
            case 12: out = tau_claim(); break;
            default: throw std::out_of_range("unknown claim");
        }
    } catch (const std::exception& e) {
        out = {false, std::string("exception: ") + e.what()};
    }
    res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = res.seconds < res.budget;
    res.status = out.ok && in_time ? ClaimStatus::pass : ClaimStatus::fail;
    res.detail = out.detail + (in_time ? "" : " [over time budget]");
    return res;
}

inline std::vector<ClaimResult> run_claims(const ClaimOptions& opt) {
    std::vector<ClaimResult> out;
    for (const auto& s : claim_specs()) out.push_back(run_claim(s.id, opt));
    return out;
}

inline std::string format_claim(const ClaimResult& r) {
    std::ostringstream os;
    os << '[' << status_label(r.status) << "] " << r.id << ". " << r.name << ": " << r.detail << " ("
       << claims_detail::fmt(r.seconds, 3) << " s, budget " << r.budget << " s)";
    return os.str();
}

}  // namespace chebgap
