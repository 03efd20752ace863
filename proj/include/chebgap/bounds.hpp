#pragma once

// Explicit constants of the gap theorem: level of distribution, the choice of
// k, r_k, the two gap bounds, and a numerical walk through the proof chain.

#include <cmath>
#include <stdexcept>
#include <string>

#include "chebgap/arith.hpp"
#include "chebgap/chebsets.hpp"
#include "chebgap/numeric.hpp"

namespace chebgap {

// |Delta| plays the role of Delta throughout.
inline Rational context_ratio(const GaloisContext& ctx) {
    const u64 d = ctx.abs_discriminant();
    return ratio(BigInt(ctx.group_order) * ctx.group_order * d, BigInt(ctx.class_size) * euler_phi(d));
}

inline void require_nonabelian(const GaloisContext& ctx, const char* who) {
    if (ctx.is_abelian()) throw std::invalid_argument(std::string(who) + ": abelian context, use gap_bound_abelian");
    if (ctx.group_order < 6)
        throw std::invalid_argument(std::string(who) + ": a nonabelian Galois group has order >= 6");
}

inline Rational level_of_distribution(const GaloisContext& ctx, const Rational& epsilon) {
    if (ctx.group_order < 4) throw std::invalid_argument("level_of_distribution: needs |G| >= 4");
    const Rational cap = ratio(2, ctx.group_order);
    if (epsilon <= 0 || epsilon >= cap) throw std::invalid_argument("level_of_distribution: need 0 < epsilon < 2/|G|");
    return cap - epsilon;
}

inline double level_of_distribution(const GaloisContext& ctx, double epsilon) {
    return level_of_distribution(ctx, exact_rational(epsilon)).get_d();
}

// Working precision (decimal digits) for r^2 e^r and friends.
inline unsigned bounds_digits(const Rational& r) { return unsigned(r.get_d() / std::log(10.0)) + 80; }

struct ChosenK {
    BigInt k;
    bool indeterminate = false;  // r^2 e^r within 1e-30 of an integer
};

inline ChosenK choose_k(const GaloisContext& ctx) {
    require_nonabelian(ctx, "choose_k");
    const Rational r = context_ratio(ctx);
    const PrecisionScope scope(bounds_digits(r));
    const Real rr = to_real(r);
    const Real x = rr * rr * exp(rr);
    const Real up = ceil(x);
    const BigInt c = to_bigint(up);
    ChosenK out;
    out.k = 125 * c;
    const Real nearest = round(x);
    out.indeterminate = abs(x - nearest) < Real("1e-30");
    return out;
}

inline Real gap_bound_nonabelian(const GaloisContext& ctx) {
    require_nonabelian(ctx, "gap_bound_nonabelian");
    const Rational r = context_ratio(ctx);
    const PrecisionScope scope(bounds_digits(r));
    const Real rr = to_real(r);
    return 825 * rr * rr * rr * exp(rr);
}

inline u64 gap_bound_abelian(u64 q) {
    if (q < 1) throw std::invalid_argument("gap_bound_abelian: q must be >= 1");
    return 600 * q;
}

// ceil(delta theta phi(|Delta|) M_k / (2 |Delta|)) with delta = |C|/|G|.
inline i64 compute_rk(const GaloisContext& ctx, double theta, double mk) {
    if (theta <= 0 || mk <= 0) throw std::invalid_argument("compute_rk: theta and M_k must be positive");
    const u64 d = ctx.abs_discriminant();
    const Rational scale = ratio(BigInt(ctx.class_size) * euler_phi(d), BigInt(ctx.group_order) * 2 * d);
    const Rational value = scale * exact_rational(theta) * exact_rational(mk);
    return ceil_rational(value).get_si();
}

struct BoundReport {
    Rational ratio;
    ChosenK k;
    Rational epsilon;        // 2 / (k |G|)
    Rational theta;          // 2/|G| - epsilon
    Real mk_bound;           // log k - 2 log log k - 2
    Real rk_argument;        // delta theta phi M_k / (2 |Delta|)
    BigInt rk;
    Real diameter_bound;     // 1.6 k log k
    Real gap_bound;          // 825 r^3 e^r
    bool rk_ok = false;      // rk_argument > 1
    bool k_ok = false;       // k >= 213
    bool diameter_ok = false;
    bool proof_ok = false;
};

inline BoundReport verify_theorem1(const GaloisContext& ctx) {
    require_nonabelian(ctx, "verify_theorem1");
    BoundReport rep;
    rep.ratio = context_ratio(ctx);
    rep.k = choose_k(ctx);
    const PrecisionScope scope(bounds_digits(rep.ratio) + unsigned(mpz_sizeinbase(rep.k.k.get_mpz_t(), 10)));
    const u64 d = ctx.abs_discriminant();
    rep.epsilon = ratio(2, rep.k.k * ctx.group_order);
    rep.theta = level_of_distribution(ctx, rep.epsilon);
    const Real k = to_real(rep.k.k);
    const Real log_k = log(k);
    rep.mk_bound = log_k - 2 * log(log_k) - 2;
    const Rational scale = ratio(BigInt(ctx.class_size) * euler_phi(d), BigInt(ctx.group_order) * 2 * d);
    rep.rk_argument = to_real(scale * rep.theta) * rep.mk_bound;
    rep.rk = to_bigint(ceil(rep.rk_argument));
    rep.diameter_bound = Real("1.6") * k * log_k;
    rep.gap_bound = gap_bound_nonabelian(ctx);
    rep.rk_ok = rep.rk_argument > 1;
    rep.k_ok = rep.k.k >= 213;
    rep.diameter_ok = rep.diameter_bound <= rep.gap_bound;
    rep.proof_ok = rep.rk_ok && rep.k_ok && rep.diameter_ok && !rep.k.indeterminate;
    return rep;
}

}  // namespace chebgap
