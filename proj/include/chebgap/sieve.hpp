#pragma once

// Desk-scale Maynard sieve restricted to a Chebotarev set: the weights
// lambda_{d_1..d_k}, w_n, and the sums S_1, S_2 by direct enumeration over
// n in [N, 2N) with n = u0 mod U, next to the asymptotic main terms.
//
// F is evaluated at t_i = log(r_i) / log(R) with each coordinate computed in
// double precision and then taken as the exact rational value of that double,
// so every weight is an exact rational number.

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <stdexcept>
#include <thread>
#include <vector>

#include "chebgap/admissible.hpp"
#include "chebgap/arith.hpp"
#include "chebgap/chebsets.hpp"
#include "chebgap/numeric.hpp"
#include "chebgap/primes.hpp"
#include "chebgap/simplex.hpp"

namespace chebgap {

struct SieveConfig {
    u64 n_start = 0;  // N
    int k = 0;
    Tuple tuple{std::vector<i64>{0}};
    double theta = 0;
    double epsilon = 0;
    u64 d0 = 0;
    u64 w_modulus = 1;  // W = prod_{p <= D0} p
    u64 u_modulus = 1;  // U = W / rad(|Delta|)
    u64 u0 = 0;
    double r_limit = 1;  // R
    double log_r = 0;    // log R
    SimplexPolynomial f{1, PolyForm::symmetric};
    GaloisContext context;
};

// floor(log log log N), or 0 where that is undefined or negative.
inline u64 default_d0(u64 n) {
    if (n < 16) return 0;
    const double v = std::log(std::log(std::log(double(n))));
    return v <= 0 ? 0 : u64(std::floor(v));
}

inline SieveConfig build_config(u64 n_start, const Tuple& tuple, const GaloisContext& context, double theta,
                                double epsilon, const SimplexPolynomial& f, std::optional<u64> d0_override = std::nullopt,
                                std::optional<double> r_override = std::nullopt) {
    if (n_start < 1) throw std::invalid_argument("build_config: N must be positive");
    if (!(theta > 0 && theta < 1)) throw std::invalid_argument("build_config: theta must lie in (0, 1)");
    if (!(epsilon > 0)) throw std::invalid_argument("build_config: epsilon must be positive");
    if (!is_admissible(tuple)) throw std::invalid_argument("build_config: tuple is not admissible");
    if (f.dimension() != int(tuple.size())) throw std::invalid_argument("build_config: F dimension differs from k");

    SieveConfig cfg;
    cfg.n_start = n_start;
    cfg.k = int(tuple.size());
    cfg.tuple = tuple;
    cfg.theta = theta;
    cfg.epsilon = epsilon;
    cfg.f = f;
    cfg.context = context;
    cfg.d0 = d0_override.value_or(default_d0(n_start));

    const BigInt w = primorial_below(cfg.d0);
    if (!w.fits_ulong_p() || w > BigInt(1) << 40) throw std::invalid_argument("build_config: W too large for desk scale");
    cfg.w_modulus = w.get_ui();
    const u64 rad = radical(context.abs_discriminant());
    if (cfg.w_modulus % rad != 0)
        throw std::invalid_argument("build_config: every prime of Delta must be <= D0");
    cfg.u_modulus = cfg.w_modulus / rad;

    // u0 by CRT from the least admissible residue modulo each prime of U
    u64 x = 0, m = 1;
    for (const auto& pp : factorize(cfg.u_modulus)) {
        const u64 p = pp.prime;
        u64 a = 0;
        for (;; ++a) {
            if (a == p) throw std::logic_error("build_config: no admissible residue");
            bool ok = true;
            for (i64 h : tuple.elements())
                if (floor_mod(i64(a) + h, p) == 0) ok = false;
            if (ok) break;
        }
        const u64 step = mulmod((a + p - x % p) % p, powmod(m % p, p - 2, p), p);
        x += m * step;
        m *= p;
    }
    cfg.u0 = x;

    if (r_override) {
        if (!(*r_override > 1)) throw std::invalid_argument("build_config: R must exceed 1");
        cfg.r_limit = *r_override;
        cfg.log_r = std::log(*r_override);
    } else {
        const double expo = theta / 2 - epsilon;
        if (!(expo > 0)) throw std::invalid_argument("build_config: theta/2 - epsilon must be positive");
        cfg.log_r = expo * std::log(double(n_start));
        cfg.r_limit = std::pow(double(n_start), expo);
    }
    return cfg;
}

// t = log(r) / log(R) as an exact rational.
inline Rational sieve_coordinate(u64 r, const SieveConfig& cfg) {
    return exact_rational(std::log(double(r)) / cfg.log_r);
}

// d < R, (d, W) = 1, d squarefree (which makes the d_i pairwise coprime).
inline bool lambda_supported(const std::vector<u64>& d, const SieveConfig& cfg) {
    if (int(d.size()) != cfg.k) throw std::invalid_argument("lambda_supported: need k entries");
    double prod = 1;
    for (u64 di : d) {
        if (di < 1) return false;
        prod *= double(di);
    }
    if (!(prod < cfg.r_limit)) return false;
    u64 total = 1;
    for (u64 di : d) {
        if (std::gcd(di, total) != 1) return false;
        total *= di;
    }
    return std::gcd(total, cfg.w_modulus) == 1 && mobius(total) != 0;
}

namespace sieve_detail {

// F at the point with coordinates log(r_i)/log(R), zero off the simplex.
inline Rational weight_f(const std::vector<u64>& r, const SieveConfig& cfg) {
    std::vector<Rational> t(r.size());
    Rational sum = 0;
    for (std::size_t i = 0; i < r.size(); ++i) {
        t[i] = sieve_coordinate(r[i], cfg);
        sum += t[i];
    }
    if (sum > 1) return 0;
    return cfg.f.evaluate<Rational>(std::span<const Rational>(t));
}

}  // namespace sieve_detail

inline Rational lambda_weight(const std::vector<u64>& d, const SieveConfig& cfg) {
    if (!lambda_supported(d, cfg)) return 0;
    Rational prefactor = 1;
    u64 base = 1;
    for (u64 di : d) {
        prefactor *= mobius(di) * Rational(di);
        base *= di;
    }
    // r_i = d_i s_i with prod r_i squarefree, coprime to W, and prod r_i <= R
    Rational total = 0;
    std::vector<u64> r(cfg.k);
    const double cap = cfg.r_limit * (1 + 1e-12);
    auto rec = [&](auto&& self, int i, u64 used, double prod, const Rational& phi_inv) -> void {
        if (i == cfg.k) {
            total += phi_inv * sieve_detail::weight_f(r, cfg);
            return;
        }
        for (u64 s = 1;; ++s) {
            const u64 ri = d[i] * s;
            const double p = prod * double(ri) / double(d[i]);
            if (p > cap) break;
            if (s > 1 && (std::gcd(s, used) != 1 || std::gcd(s, cfg.w_modulus) != 1 || mobius(s) == 0)) continue;
            r[i] = ri;
            self(self, i + 1, used * s, p, phi_inv * ratio(1, euler_phi(ri)));
        }
    };
    rec(rec, 0, base, double(base), Rational(1));
    return prefactor * total;
}

// Every supported d-vector with its nonzero lambda.
using LambdaTable = std::map<std::vector<u64>, Rational>;

inline LambdaTable lambda_table(const SieveConfig& cfg) {
    LambdaTable out;
    std::vector<u64> d(cfg.k, 1);
    auto rec = [&](auto&& self, int i, u64 used, double prod) -> void {
        if (i == cfg.k) {
            Rational v = lambda_weight(d, cfg);
            if (v != 0) out.emplace(d, std::move(v));
            return;
        }
        for (u64 di = 1; prod * double(di) < cfg.r_limit; ++di) {
            if (di > 1 && (std::gcd(di, used) != 1 || std::gcd(di, cfg.w_modulus) != 1 || mobius(di) == 0)) continue;
            d[i] = di;
            self(self, i + 1, used * di, prod * double(di));
        }
        d[i] = 1;
    };
    rec(rec, 0, 1, 1.0);
    return out;
}

enum class Arithmetic { exact, floating };

struct WeightTable {
    std::vector<u64> n;               // N <= n < 2N, n = u0 mod U
    std::vector<Rational> exact;      // filled in exact mode
    std::vector<double> approx;       // filled in floating mode
    Arithmetic mode = Arithmetic::exact;

    std::size_t size() const { return n.size(); }
    double value_d(std::size_t i) const { return mode == Arithmetic::exact ? exact[i].get_d() : approx[i]; }
};

inline std::vector<u64> progression(const SieveConfig& cfg) {
    std::vector<u64> out;
    const u64 n_lo = cfg.n_start, n_hi = 2 * cfg.n_start;
    const u64 first = n_lo + (cfg.u0 % cfg.u_modulus + cfg.u_modulus - n_lo % cfg.u_modulus) % cfg.u_modulus;
    for (u64 n = first; n < n_hi; n += cfg.u_modulus) out.push_back(n);
    return out;
}

inline WeightTable weight_table(const SieveConfig& cfg, const LambdaTable& lambdas,
                                Arithmetic mode = Arithmetic::exact, unsigned threads = 1) {
    WeightTable table;
    table.mode = mode;
    table.n = progression(cfg);
    const std::size_t count = table.n.size();
    if (mode == Arithmetic::exact)
        table.exact.assign(count, Rational(0));
    else
        table.approx.assign(count, 0.0);

    // For each shift, the primes p < R (coprime to W) dividing n + h_i, found by striding.
    std::vector<u64> primes;
    for (u64 p : small_primes(u64(std::ceil(cfg.r_limit))))
        if (double(p) < cfg.r_limit && cfg.w_modulus % p != 0) primes.push_back(p);
    std::vector<std::vector<std::vector<u64>>> factors(cfg.k, std::vector<std::vector<u64>>(count));
    if (count > 0) {
        const u64 n0 = table.n.front(), step = cfg.u_modulus;
        for (int i = 0; i < cfg.k; ++i)
            for (u64 p : primes) {
                // n0 + j*step + h_i = 0 mod p
                const u64 target = (p - (floor_mod(i64(n0 % p) + cfg.tuple[i], p))) % p;
                const u64 j0 = mulmod(target, powmod(step % p, p - 2, p), p);
                for (u64 j = j0; j < count; j += p) factors[i][j].push_back(p);
            }
    }
    std::map<std::vector<u64>, double> lambdas_d;
    if (mode == Arithmetic::floating)
        for (const auto& [d, v] : lambdas) lambdas_d.emplace(d, v.get_d());

    auto work = [&](std::size_t lo, std::size_t hi) {
        std::vector<u64> d(cfg.k, 1);
        for (std::size_t j = lo; j < hi; ++j) {
            Rational sum_exact = 0;
            double sum_d = 0;
            // d_i runs over squarefree products of the listed primes of n + h_i
            auto rec = [&](auto&& self, int i, double prod) -> void {
                if (i == cfg.k) {
                    if (mode == Arithmetic::exact) {
                        if (auto it = lambdas.find(d); it != lambdas.end()) sum_exact += it->second;
                    } else {
                        if (auto it = lambdas_d.find(d); it != lambdas_d.end()) sum_d += it->second;
                    }
                    return;
                }
                const auto& ps = factors[i][j];
                const std::size_t subsets = std::size_t(1) << ps.size();
                for (std::size_t mask = 0; mask < subsets; ++mask) {
                    u64 di = 1;
                    double pd = prod;
                    for (std::size_t b = 0; b < ps.size(); ++b)
                        if (mask >> b & 1) {
                            di *= ps[b];
                            pd *= double(ps[b]);
                        }
                    if (!(pd < cfg.r_limit)) continue;
                    d[i] = di;
                    self(self, i + 1, pd);
                }
                d[i] = 1;
            };
            rec(rec, 0, 1.0);
            if (mode == Arithmetic::exact)
                table.exact[j] = sum_exact * sum_exact;
            else
                table.approx[j] = sum_d * sum_d;
        }
    };
    threads = std::max(1u, threads);
    if (threads == 1 || count < 2 * threads) {
        work(0, count);
    } else {
        std::vector<std::thread> pool;
        const std::size_t chunk = (count + threads - 1) / threads;
        for (unsigned t = 0; t < threads; ++t) {
            const std::size_t lo = std::min(count, t * chunk), hi = std::min(count, lo + chunk);
            pool.emplace_back(work, lo, hi);
        }
        for (auto& th : pool) th.join();
    }
    return table;
}

inline WeightTable weight_table(const SieveConfig& cfg, Arithmetic mode = Arithmetic::exact, unsigned threads = 1) {
    return weight_table(cfg, lambda_table(cfg), mode, threads);
}

// Number of m with n + h_m in P, for every n of the table.
inline std::vector<int> member_hits(const SieveConfig& cfg, const WeightTable& table, const ChebotarevSpec& spec) {
    std::vector<int> hits(table.size(), 0);
    if (table.size() == 0) return hits;
    const i64 hmax = cfg.tuple.elements().back(), hmin = cfg.tuple.elements().front();
    const i64 top = i64(table.n.back()) + hmax;
    if (i64(table.n.front()) + hmin < 0) throw std::invalid_argument("member_hits: negative shifted value");
    const PrimeTable primes(u64(std::max<i64>(top, 2)));
    for (std::size_t j = 0; j < table.size(); ++j)
        for (i64 h : cfg.tuple.elements()) {
            const u64 v = u64(i64(table.n[j]) + h);
            if (v >= 2 && primes.is_prime(v) && spec.is_member(v)) ++hits[j];
        }
    return hits;
}

inline Rational sum_s1(const WeightTable& table) {
    if (table.mode != Arithmetic::exact) throw std::invalid_argument("sum_s1: exact table required");
    Rational total = 0;
    for (const auto& w : table.exact) total += w;
    return total;
}

inline Rational sum_s1(const SieveConfig& cfg) { return sum_s1(weight_table(cfg)); }

inline Rational sum_s2(const SieveConfig& cfg, const WeightTable& table, const ChebotarevSpec& spec) {
    if (table.mode != Arithmetic::exact) throw std::invalid_argument("sum_s2: exact table required");
    const auto hits = member_hits(cfg, table, spec);
    Rational total = 0;
    for (std::size_t j = 0; j < table.size(); ++j)
        if (hits[j]) total += hits[j] * table.exact[j];
    return total;
}

inline Rational sum_s2(const SieveConfig& cfg, const ChebotarevSpec& spec) {
    return sum_s2(cfg, weight_table(cfg), spec);
}

struct PredictedTerms {
    double s1;
    double s2;
    double ratio;  // s2 / s1
};

// Main terms of S_1 and S_2 with exact I_k(F) and sum_i J_k^(i)(F).
inline PredictedTerms predicted_terms(const SieveConfig& cfg, const ChebotarevSpec& spec) {
    const Rational i_val = integral_I(cfg.f);
    if (i_val == 0) throw std::invalid_argument("predicted_terms: I_k(F) vanishes");
    const Rational j_val = integral_J_sum(cfg.f);
    const GaloisContext& ctx = spec.context();
    const double rad = double(radical(ctx.abs_discriminant()));
    const double phi_rad = double(euler_phi(radical(ctx.abs_discriminant())));
    const double delta = ctx.density().get_d();
    const double w = double(cfg.w_modulus);
    const double common = std::pow(double(euler_phi(cfg.w_modulus)), cfg.k) * double(cfg.n_start) *
                          std::pow(cfg.log_r, cfg.k) / std::pow(w, cfg.k + 1);
    PredictedTerms out;
    out.s1 = rad * common * i_val.get_d();
    out.s2 = delta * phi_rad * (cfg.log_r / std::log(double(cfg.n_start))) * common * j_val.get_d();
    out.ratio = out.s2 / out.s1;
    return out;
}

// rho = M_k (delta theta phi(|Delta|) / (2 |Delta|) - epsilon)
inline double preset_rho(const SieveConfig& cfg, const ChebotarevSpec& spec, double mk) {
    const GaloisContext& ctx = spec.context();
    const u64 d = ctx.abs_discriminant();
    return mk * (ctx.density().get_d() * cfg.theta * double(euler_phi(d)) / (2.0 * double(d)) - cfg.epsilon);
}

struct Window {
    u64 n;
    int hits;
};

struct SFunctional {
    Rational s1;
    Rational s2;
    Rational rho;
    Rational value;  // s2 - rho s1
    int threshold;   // floor(rho + 1)
    std::vector<Window> windows;
};

inline SFunctional s_functional(const SieveConfig& cfg, const WeightTable& table, const ChebotarevSpec& spec,
                                double rho) {
    SFunctional out;
    out.rho = exact_rational(rho);
    out.s1 = sum_s1(table);
    const auto hits = member_hits(cfg, table, spec);
    out.s2 = 0;
    for (std::size_t j = 0; j < table.size(); ++j)
        if (hits[j]) out.s2 += hits[j] * table.exact[j];
    out.value = out.s2 - out.rho * out.s1;
    out.threshold = int(std::floor(rho + 1));
    for (std::size_t j = 0; j < table.size(); ++j)
        if (hits[j] >= out.threshold) out.windows.push_back({table.n[j], hits[j]});
    return out;
}

inline SFunctional s_functional(const SieveConfig& cfg, const ChebotarevSpec& spec, double rho) {
    return s_functional(cfg, weight_table(cfg), spec, rho);
}

}  // namespace chebgap
