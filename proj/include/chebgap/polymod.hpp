#pragma once

// Dense univariate polynomials over Z and over F_p (coefficients low-to-high),
// distinct-degree factorization, and integer-polynomial discriminants.

#include <algorithm>
#include <stdexcept>
#include <vector>

#include <gmpxx.h>

#include "chebgap/arith.hpp"

namespace chebgap {

using IntPoly = std::vector<i64>;
using ModPoly = std::vector<u64>;

namespace polymod {

inline void trim(ModPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline int degree(const ModPoly& a) { return int(a.size()) - 1; }

inline ModPoly reduce(const IntPoly& f, u64 p) {
    ModPoly out(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) out[i] = floor_mod(f[i], p);
    trim(out);
    return out;
}

inline ModPoly sub(ModPoly a, const ModPoly& b, u64 p) {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + p - b[i]) % p;
    trim(a);
    return a;
}

inline ModPoly mul(const ModPoly& a, const ModPoly& b, u64 p) {
    if (a.empty() || b.empty()) return {};
    ModPoly out(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = (out[i + j] + mulmod(a[i], b[j], p)) % p;
    trim(out);
    return out;
}

// Quotient and remainder of a by a nonzero b.
inline std::pair<ModPoly, ModPoly> divmod(ModPoly a, const ModPoly& b, u64 p) {
    if (b.empty()) throw std::domain_error("polymod::divmod: division by zero polynomial");
    trim(a);
    const int db = degree(b);
    const u64 inv_lead = powmod(b.back(), p - 2, p);
    if (degree(a) < db) return {{}, a};
    ModPoly q(a.size() - b.size() + 1, 0);
    for (int i = degree(a); i >= db; --i) {
        const u64 c = mulmod(a[i], inv_lead, p);
        q[i - db] = c;
        if (c == 0) continue;
        for (int j = 0; j <= db; ++j) a[i - db + j] = (a[i - db + j] + p - mulmod(c, b[j], p)) % p;
    }
    trim(a);
    trim(q);
    return {q, a};
}

inline ModPoly rem(const ModPoly& a, const ModPoly& b, u64 p) { return divmod(a, b, p).second; }

inline ModPoly make_monic(ModPoly a, u64 p) {
    if (a.empty()) return a;
    const u64 inv = powmod(a.back(), p - 2, p);
    for (auto& c : a) c = mulmod(c, inv, p);
    return a;
}

inline ModPoly gcd(ModPoly a, ModPoly b, u64 p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        ModPoly r = rem(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return make_monic(a, p);
}

inline ModPoly derivative(const ModPoly& a, u64 p) {
    if (a.size() <= 1) return {};
    ModPoly out(a.size() - 1);
    for (std::size_t i = 1; i < a.size(); ++i) out[i - 1] = mulmod(a[i], i % p, p);
    trim(out);
    return out;
}

// base^e mod modulus by square-and-multiply in F_p[x]/(modulus).
inline ModPoly powmod(ModPoly base, u64 e, const ModPoly& modulus, u64 p) {
    ModPoly result = rem(ModPoly{1}, modulus, p);
    base = rem(base, modulus, p);
    while (e > 0) {
        if (e & 1) result = rem(mul(result, base, p), modulus, p);
        base = rem(mul(base, base, p), modulus, p);
        e >>= 1;
    }
    return result;
}

inline u64 evaluate(const ModPoly& a, u64 x, u64 p) {
    u64 acc = 0;
    for (auto it = a.rbegin(); it != a.rend(); ++it) acc = (mulmod(acc, x, p) + *it) % p;
    return acc;
}

// Degrees of the irreducible factors of a squarefree f over F_p, ascending,
// from gcd(x^(p^i) - x, f) for i = 1, 2, ...
inline std::vector<int> distinct_degree_degrees(ModPoly f, u64 p) {
    trim(f);
    if (f.empty()) throw std::invalid_argument("distinct_degree_degrees: zero polynomial");
    f = make_monic(f, p);
    std::vector<int> degrees;
    const ModPoly x{0, 1};
    ModPoly frob = rem(x, f, p);  // x^(p^i) mod f
    for (int i = 1; degree(f) >= 2 * i; ++i) {
        frob = powmod(frob, p, f, p);
        ModPoly g = gcd(sub(frob, x, p), f, p);
        const int dg = degree(g);
        if (dg > 0) {
            for (int c = 0; c < dg / i; ++c) degrees.push_back(i);
            f = divmod(f, g, p).first;
            frob = rem(frob, f, p);
        }
    }
    if (degree(f) > 0) degrees.push_back(degree(f));
    std::sort(degrees.begin(), degrees.end());
    return degrees;
}

}  // namespace polymod

// Determinant of an integer matrix by fraction-free (Bareiss) elimination.
inline mpz_class bareiss_determinant(std::vector<std::vector<mpz_class>> m) {
    const std::size_t n = m.size();
    if (n == 0) return 1;
    mpz_class sign = 1, prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t swap = k + 1;
            while (swap < n && m[swap][k] == 0) ++swap;
            if (swap == n) return 0;
            std::swap(m[k], m[swap]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                m[i][j] = m[i][j] * m[k][k] - m[i][k] * m[k][j];
                mpz_divexact(m[i][j].get_mpz_t(), m[i][j].get_mpz_t(), prev.get_mpz_t());
            }
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

inline int int_degree(const IntPoly& f) {
    int d = int(f.size()) - 1;
    while (d >= 0 && f[d] == 0) --d;
    return d;
}

// Resultant of f and g via the Sylvester matrix.
inline mpz_class resultant(const IntPoly& f, const IntPoly& g) {
    const int m = int_degree(f), n = int_degree(g);
    if (m < 0 || n < 0) return 0;
    const int size = m + n;
    if (size == 0) return 1;
    std::vector<std::vector<mpz_class>> syl(size, std::vector<mpz_class>(size, 0));
    for (int r = 0; r < n; ++r)
        for (int i = 0; i <= m; ++i) syl[r][r + i] = static_cast<long>(f[m - i]);
    for (int r = 0; r < m; ++r)
        for (int i = 0; i <= n; ++i) syl[n + r][r + i] = static_cast<long>(g[n - i]);
    return bareiss_determinant(std::move(syl));
}

inline mpz_class discriminant(const IntPoly& f) {
    const int n = int_degree(f);
    if (n < 1) throw std::invalid_argument("discriminant: degree must be >= 1");
    if (n == 1) return 1;
    IntPoly df(n);
    for (int i = 1; i <= n; ++i) df[i - 1] = f[i] * i;
    mpz_class res = resultant(IntPoly(f.begin(), f.begin() + n + 1), df);
    mpz_divexact(res.get_mpz_t(), res.get_mpz_t(), mpz_class(static_cast<long>(f[n])).get_mpz_t());
    return ((n * (n - 1) / 2) % 2 == 0) ? res : mpz_class(-res);
}

namespace detail {

inline i64 eval_int(const IntPoly& f, i64 x) {
    __int128 acc = 0;
    for (auto it = f.rbegin(); it != f.rend(); ++it) acc = acc * x + *it;
    return acc == 0 ? 0 : (acc > 0 ? 1 : -1);  // sign suffices for root tests
}

inline bool has_integer_root(const IntPoly& f) {
    const u64 c = abs_u64(f[0]);
    if (c == 0) return true;
    for (u64 d = 1; d * d <= c; ++d) {
        if (c % d) continue;
        for (u64 cand : {d, c / d})
            for (i64 s : {i64(1), i64(-1)})
                if (eval_int(f, s * i64(cand)) == 0) return true;
    }
    return false;
}

inline std::vector<i64> divisors_signed(i64 v) {
    std::vector<i64> out;
    const u64 c = abs_u64(v);
    for (u64 d = 1; d * d <= c; ++d) {
        if (c % d) continue;
        for (u64 cand : {d, c / d}) {
            out.push_back(i64(cand));
            out.push_back(-i64(cand));
        }
    }
    return out;
}

}  // namespace detail

// Irreducibility over Q of a monic integer polynomial of degree <= 4, by the
// rational root test and (degree 4) exclusion of monic quadratic factor pairs.
inline bool is_irreducible_small(const IntPoly& f) {
    const int n = int_degree(f);
    if (n < 1 || f[n] != 1) throw std::invalid_argument("is_irreducible_small: need a monic polynomial");
    if (n > 4) throw std::invalid_argument("is_irreducible_small: degree above 4");
    if (n == 1) return true;
    if (detail::has_integer_root(f)) return false;
    if (n <= 3) return true;
    // (x^2 + a x + b)(x^2 + c x + d) = x^4 + f3 x^3 + f2 x^2 + f1 x + f0
    const i64 f3 = f[3], f2 = f[2], f1 = f[1], f0 = f[0];
    for (i64 b : detail::divisors_signed(f0)) {
        const i64 d = f0 / b;
        if (d != b) {
            const i64 num = f1 - b * f3;
            if (num % (d - b) != 0) continue;
            const i64 a = num / (d - b);
            const i64 c = f3 - a;
            if (a * c + b + d == f2) return false;
        } else {
            if (f1 != b * f3) continue;
            // a^2 - f3 a + (f2 - 2b) = 0
            const i64 disc = f3 * f3 - 4 * (f2 - 2 * b);
            if (disc < 0) continue;
            const i64 s = i64(isqrt(u64(disc)));
            if (s * s == disc && (f3 + s) % 2 == 0) return false;
        }
    }
    return true;
}

}  // namespace chebgap
