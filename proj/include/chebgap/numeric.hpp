#pragma once

// Exact rationals (GMP) and variable-precision reals (MPFR via Boost) plus the
// conversions between them.

#include <stdexcept>
#include <string>

#include <boost/multiprecision/mpfr.hpp>
#include <gmpxx.h>

namespace chebgap {

using Rational = mpq_class;
using BigInt = mpz_class;
using Real = boost::multiprecision::mpfr_float;

// Sets the default MPFR precision (decimal digits) for the current scope.
class PrecisionScope {
public:
    explicit PrecisionScope(unsigned digits10) : saved_(Real::default_precision()) {
        Real::default_precision(digits10);
    }
    ~PrecisionScope() { Real::default_precision(saved_); }
    PrecisionScope(const PrecisionScope&) = delete;
    PrecisionScope& operator=(const PrecisionScope&) = delete;

private:
    unsigned saved_;
};

// a / b in lowest terms (the two-argument mpq_class constructor does not reduce).
inline Rational ratio(const BigInt& a, const BigInt& b) {
    if (b == 0) throw std::domain_error("ratio: zero denominator");
    Rational q(a, b);
    q.canonicalize();
    return q;
}

inline Real to_real(const Rational& q) {
    Real r;
    mpfr_set_q(r.backend().data(), q.get_mpq_t(), MPFR_RNDN);
    return r;
}

inline Real to_real(const BigInt& z) {
    Real r;
    mpfr_set_z(r.backend().data(), z.get_mpz_t(), MPFR_RNDN);
    return r;
}

// Integer part of x, rounded toward zero.
inline BigInt to_bigint(const Real& x) {
    BigInt z;
    mpfr_get_z(z.get_mpz_t(), x.backend().data(), MPFR_RNDZ);
    return z;
}

// The exact binary value of a finite MPFR number.
inline Rational exact_rational(const Real& x) {
    BigInt mant;
    const mpfr_exp_t e = mpfr_get_z_2exp(mant.get_mpz_t(), x.backend().data());
    Rational q(mant);
    if (e >= 0)
        mpq_mul_2exp(q.get_mpq_t(), q.get_mpq_t(), mp_bitcnt_t(e));
    else
        mpq_div_2exp(q.get_mpq_t(), q.get_mpq_t(), mp_bitcnt_t(-e));
    q.canonicalize();
    return q;
}

inline Rational exact_rational(double x) {
    Rational q(x);
    q.canonicalize();
    return q;
}

inline BigInt floor_rational(const Rational& q) {
    BigInt f;
    mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return f;
}

inline BigInt ceil_rational(const Rational& q) {
    BigInt c;
    mpz_cdiv_q(c.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return c;
}

// Closest rational to x with denominator <= max_den (continued fractions with
// the final semiconvergent step).
inline Rational best_rational(const Rational& x, const BigInt& max_den) {
    if (x.get_den() <= max_den) return x;
    BigInt p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    BigInt num = x.get_num(), den = x.get_den();
    while (true) {
        BigInt a = floor_rational(Rational(num, den));
        BigInt q2 = q0 + a * q1;
        if (q2 > max_den) break;
        BigInt p2 = p0 + a * p1;
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        BigInt rem = num - a * den;
        if (rem == 0) break;
        num = den;
        den = rem;
    }
    const BigInt t = (max_den - q0) / q1;
    Rational bound1(p0 + t * p1, q0 + t * q1);
    Rational bound2(p1, q1);
    bound1.canonicalize();
    bound2.canonicalize();
    return abs(bound1 - x) < abs(bound2 - x) ? bound1 : bound2;
}

inline std::string to_string(const Rational& q) { return q.get_str(10); }
inline std::string to_string(const BigInt& z) { return z.get_str(10); }

inline std::string to_string(const Real& x, int digits = 20) {
    return x.str(digits, std::ios_base::fmtflags(0));
}

// Accepts "p", "p/q" and plain decimals such as "-0.125".
inline Rational parse_rational(const std::string& s) {
    const auto dot = s.find('.');
    if (dot != std::string::npos && s.find('/') == std::string::npos) {
        std::string digits = s.substr(0, dot) + s.substr(dot + 1);
        BigInt scale;
        mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(s.size() - dot - 1));
        return parse_rational(digits) / Rational(scale);
    }
    Rational q;
    if (s.empty() || q.set_str(s, 10) != 0) throw std::invalid_argument("not a rational: " + s);
    if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
    q.canonicalize();
    return q;
}

}  // namespace chebgap
