#pragma once

// Chebotarev sets of primes given by decidable predicates: congruence
// classes, factorization types of a polynomial mod p, representation by a
// positive-definite binary quadratic form, and congruences on newform
// coefficients. Each predicate carries its Galois data (|G|, |C|, Delta).

#include <algorithm>
#include <cmath>
#include <memory>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "chebgap/arith.hpp"
#include "chebgap/numeric.hpp"
#include "chebgap/polymod.hpp"
#include "chebgap/primes.hpp"

namespace chebgap {

struct GaloisContext {
    u64 group_order = 1;   // |G|
    u64 class_size = 1;    // |C|
    i64 discriminant = 1;  // Delta (sign ignored by every formula)
    std::optional<u64> abelian_conductor;

    GaloisContext() = default;
    GaloisContext(u64 g, u64 c, i64 disc, std::optional<u64> conductor = std::nullopt)
        : group_order(g), class_size(c), discriminant(disc), abelian_conductor(conductor) {
        validate();
    }

    void validate() const {
        if (group_order < 1) throw std::invalid_argument("GaloisContext: |G| must be positive");
        if (class_size < 1 || class_size > group_order)
            throw std::invalid_argument("GaloisContext: need 1 <= |C| <= |G|");
        if (discriminant == 0) throw std::invalid_argument("GaloisContext: discriminant must be nonzero");
        if (abelian_conductor) {
            if (*abelian_conductor < 1) throw std::invalid_argument("GaloisContext: conductor must be positive");
            if (euler_phi(*abelian_conductor) % group_order != 0)
                throw std::invalid_argument("GaloisContext: |G| must divide phi(conductor)");
        }
    }

    bool is_abelian() const { return abelian_conductor.has_value(); }
    u64 abs_discriminant() const { return abs_u64(discriminant); }
    Rational density() const { return ratio(class_size, group_order); }
};

struct Congruence {
    u64 modulus;
    std::vector<u64> residues;  // sorted, distinct, coprime to modulus
};

struct FactorizationType {
    IntPoly poly;                // monic, low-to-high
    std::vector<int> cycle_type; // ascending
};

struct QuadFormRep {
    i64 a, b, c;
    i64 form_discriminant() const { return b * b - 4 * a * c; }
};

// a_f(p) == target (mod modulus) for a newform of the given level; the
// coefficient stream holds a_f(n) mod modulus at index n.
struct NewformCongruence {
    u64 modulus;
    u64 target;
    u64 level;
    std::shared_ptr<const std::vector<u64>> coefficients;
};

using SpecVariant = std::variant<Congruence, FactorizationType, QuadFormRep, NewformCongruence>;

inline bool represents(i64 a, i64 b, i64 c, u64 p);
inline std::vector<int> factorization_type(const IntPoly& f, u64 p);

class ChebotarevSpec {
public:
    static ChebotarevSpec congruence(u64 modulus, std::vector<u64> residues, GaloisContext ctx) {
        if (modulus < 2) throw std::invalid_argument("congruence: modulus must be >= 2");
        if (residues.empty()) throw std::invalid_argument("congruence: empty residue set");
        for (auto& r : residues) {
            if (r >= modulus) throw std::invalid_argument("congruence: residue out of range");
            if (std::gcd(r, modulus) != 1) throw std::invalid_argument("congruence: residue not coprime to modulus");
        }
        std::sort(residues.begin(), residues.end());
        residues.erase(std::unique(residues.begin(), residues.end()), residues.end());
        return ChebotarevSpec(Congruence{modulus, std::move(residues)}, ctx);
    }

    static ChebotarevSpec factorization(IntPoly f, std::vector<int> cycle_type, GaloisContext ctx) {
        const int n = int_degree(f);
        if (n < 1) throw std::invalid_argument("factorization_type: degree must be >= 1");
        f.resize(std::size_t(n) + 1);
        if (f[n] != 1) throw std::invalid_argument("factorization_type: polynomial must be monic");
        if (cycle_type.empty() || std::any_of(cycle_type.begin(), cycle_type.end(), [](int d) { return d < 1; }))
            throw std::invalid_argument("factorization_type: cycle type parts must be positive");
        if (std::accumulate(cycle_type.begin(), cycle_type.end(), 0) != n)
            throw std::invalid_argument("factorization_type: cycle type must sum to the degree");
        if (n <= 4 && !is_irreducible_small(f))
            throw std::invalid_argument("factorization_type: polynomial is reducible over Q");
        std::sort(cycle_type.begin(), cycle_type.end());
        ChebotarevSpec spec(FactorizationType{std::move(f), std::move(cycle_type)}, ctx);
        spec.poly_disc_ = discriminant(std::get<FactorizationType>(spec.variant_).poly);
        return spec;
    }

    static ChebotarevSpec quad_form(i64 a, i64 b, i64 c, GaloisContext ctx) {
        if (b * b - 4 * a * c >= 0 || a <= 0)
            throw std::invalid_argument("quad_form: form must be positive definite");
        if (std::gcd(std::gcd(a, b), c) != 1) throw std::invalid_argument("quad_form: form must be primitive");
        return ChebotarevSpec(QuadFormRep{a, b, c}, ctx);
    }

    static ChebotarevSpec newform_congruence(u64 modulus, u64 target, u64 level,
                                             std::shared_ptr<const std::vector<u64>> coefficients,
                                             GaloisContext ctx) {
        if (modulus < 2) throw std::invalid_argument("newform_congruence: modulus must be >= 2");
        if (level < 1) throw std::invalid_argument("newform_congruence: level must be >= 1");
        if (!coefficients || coefficients->size() < 2)
            throw std::invalid_argument("newform_congruence: coefficient stream required");
        return ChebotarevSpec(NewformCongruence{modulus, target % modulus, level, std::move(coefficients)}, ctx);
    }

    const SpecVariant& variant() const { return variant_; }
    const GaloisContext& context() const { return ctx_; }

    // Largest p for which membership is decidable (newform streams are finite).
    u64 decidable_limit() const {
        if (const auto* nf = std::get_if<NewformCongruence>(&variant_)) return nf->coefficients->size() - 1;
        return ~u64(0);
    }

    bool is_member(u64 p) const {
        if (ctx_.abs_discriminant() % p == 0) return false;
        return std::visit([&](const auto& v) { return member(v, p); }, variant_);
    }

    std::string id() const {
        std::ostringstream os;
        std::visit(
            [&](const auto& v) {
                using T = std::decay_t<decltype(v)>;
                if constexpr (std::is_same_v<T, Congruence>) {
                    os << "congruence_" << v.modulus << "_";
                    for (std::size_t i = 0; i < v.residues.size(); ++i) os << (i ? "." : "") << v.residues[i];
                } else if constexpr (std::is_same_v<T, FactorizationType>) {
                    os << "factorization_";
                    for (std::size_t i = 0; i < v.poly.size(); ++i) os << (i ? "." : "") << v.poly[i];
                    os << "_";
                    for (std::size_t i = 0; i < v.cycle_type.size(); ++i) os << (i ? "." : "") << v.cycle_type[i];
                } else if constexpr (std::is_same_v<T, QuadFormRep>) {
                    os << "quad_form_" << v.a << "." << v.b << "." << v.c;
                } else {
                    os << "newform_" << v.level << "_" << v.target << "_mod_" << v.modulus;
                }
            },
            variant_);
        return os.str();
    }

private:
    ChebotarevSpec(SpecVariant v, GaloisContext ctx) : variant_(std::move(v)), ctx_(ctx) { ctx_.validate(); }

    bool member(const Congruence& v, u64 p) const {
        if (v.modulus % p == 0) return false;
        return std::binary_search(v.residues.begin(), v.residues.end(), p % v.modulus);
    }

    bool member(const FactorizationType& v, u64 p) const {
        if (mpz_divisible_ui_p(poly_disc_.get_mpz_t(), static_cast<unsigned long>(p))) return false;
        return factorization_type(v.poly, p) == v.cycle_type;
    }

    bool member(const QuadFormRep& v, u64 p) const {
        if (abs_u64(v.form_discriminant()) % p == 0) return false;
        return represents(v.a, v.b, v.c, p);
    }

    bool member(const NewformCongruence& v, u64 p) const {
        if (v.modulus % p == 0 || v.level % p == 0) return false;
        if (p >= v.coefficients->size()) throw std::out_of_range("newform_congruence: prime beyond coefficient stream");
        return (*v.coefficients)[p] % v.modulus == v.target;
    }

    SpecVariant variant_;
    GaloisContext ctx_;
    mpz_class poly_disc_ = 1;
};

inline bool is_member(const ChebotarevSpec& spec, u64 p) { return spec.is_member(p); }

// Degrees of the distinct irreducible factors of f mod p, ascending.
inline std::vector<int> factorization_type(const IntPoly& f, u64 p) {
    const int n = int_degree(f);
    if (n < 1) throw std::invalid_argument("factorization_type: degree must be >= 1");
    if (f[n] != 1) throw std::invalid_argument("factorization_type: polynomial must be monic");
    if (mpz_divisible_ui_p(discriminant(f).get_mpz_t(), static_cast<unsigned long>(p)))
        throw std::invalid_argument("factorization_type: p divides disc(f)");
    return polymod::distinct_degree_degrees(polymod::reduce(f, p), p);
}

// Whether a x^2 + b xy + c y^2 = n has an integer solution. For each y with
// |y| <= sqrt(4 a n / |D|) the quadratic in x is solved exactly.
inline bool represents(i64 a, i64 b, i64 c, u64 n) {
    const i64 disc = b * b - 4 * a * c;
    if (a <= 0 || disc >= 0) throw std::invalid_argument("represents: form must be positive definite");
    const __int128 four_a_n = (__int128)4 * a * (__int128)n;
    const u64 y_max = isqrt(u64(four_a_n / -disc));
    for (i64 y = -i64(y_max); y <= i64(y_max); ++y) {
        // x = (-b y +- sqrt(D y^2 + 4 a n)) / (2 a)
        const __int128 rad = (__int128)disc * y * y + four_a_n;
        if (rad < 0) continue;
        const i64 s = i64(isqrt(u64(rad)));
        if ((__int128)s * s != rad) continue;
        for (i64 sign : {1, -1}) {
            const i64 num = -b * y + sign * s;
            if (num % (2 * a) == 0) return true;
        }
    }
    return false;
}

inline u64 count_members(const ChebotarevSpec& spec, u64 lo, u64 hi) {
    u64 count = 0;
    for_each_prime(lo, hi, [&](u64 p) { count += spec.is_member(p) ? 1 : 0; });
    return count;
}

// #{p <= x : p in P} / pi(x).
inline Rational empirical_density(const ChebotarevSpec& spec, u64 x_limit) {
    if (x_limit < 100) throw std::invalid_argument("empirical_density: x_limit must be >= 100");
    u64 members = 0, primes = 0;
    for_each_prime(2, x_limit + 1, [&](u64 p) {
        ++primes;
        members += spec.is_member(p) ? 1 : 0;
    });
    return ratio(members, primes);
}

struct BvDiscrepancy {
    double value = 0;         // max_a |pi_P(n; q, a) - pi_P(n) / phi(q)|
    u64 worst_residue = 0;
    u64 total = 0;            // pi_P(n) on [n, 2n)
    u64 phi_q = 0;
    std::vector<u64> class_counts;  // indexed by residue mod q
};

// Equidistribution of P over reduced classes mod q, counted over [n, 2n).
inline BvDiscrepancy bv_discrepancy(const ChebotarevSpec& spec, u64 q, u64 n) {
    if (q < 2) throw std::invalid_argument("bv_discrepancy: q must be >= 2");
    if (std::gcd(q, spec.context().abs_discriminant()) != 1)
        throw std::invalid_argument("bv_discrepancy: q must be coprime to the discriminant");
    BvDiscrepancy out;
    out.class_counts.assign(q, 0);
    for_each_prime(n, 2 * n, [&](u64 p) {
        if (spec.is_member(p)) {
            ++out.class_counts[p % q];
            ++out.total;
        }
    });
    out.phi_q = euler_phi(q);
    const double mean = double(out.total) / double(out.phi_q);
    for (u64 a = 0; a < q; ++a) {
        if (std::gcd(a, q) != 1) continue;
        const double dev = std::fabs(double(out.class_counts[a]) - mean);
        if (out.worst_residue == 0 || dev > out.value) {
            out.value = dev;
            out.worst_residue = a;
        }
    }
    return out;
}

}  // namespace chebgap
