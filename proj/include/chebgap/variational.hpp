#pragma once

// The Rayleigh quotient sum_i J_k^(i)(F) / I_k(F), its maximization over the
// symmetric family (1 - P1)^a P2^b, and the closed-form lower bound on M_k.
//
// The maximization is a generalized eigenproblem J v = lambda I v between two
// exact Gram matrices. It is solved in MPFR arithmetic (Cholesky reduction,
// then cyclic Jacobi), and the top eigenvector is rounded to a rational vector
// whose ratio is recomputed exactly. Only that exact ratio is reported as the
// value.

#include <cmath>
#include <optional>
#include <stdexcept>
#include <thread>
#include <utility>
#include <vector>

#include "chebgap/arith.hpp"
#include "chebgap/numeric.hpp"
#include "chebgap/simplex.hpp"

namespace chebgap {

struct RayleighResult {
    Rational value;        // numerator / denominator
    Rational numerator;    // sum_i J_k^(i)(F)
    Rational denominator;  // I_k(F)
    SimplexPolynomial witness;
};

inline RayleighResult rayleigh(const SimplexPolynomial& f) {
    if (f.is_zero()) throw std::invalid_argument("rayleigh: F must be nonzero");
    Rational i_val = integral_I(f);
    if (i_val == 0) throw std::invalid_argument("rayleigh: I_k(F) vanishes");
    Rational j_val = integral_J_sum(f);
    Rational value = j_val / i_val;
    return {value, j_val, i_val, f};
}

// (1 - P1)^a * P2^b in symmetric form.
inline SimplexPolynomial basis_element(int k, int a, int b) {
    const SimplexPolynomial p2 = SimplexPolynomial::monomial_symmetric(k, {2});
    SimplexPolynomial out = p2.pow(b);
    SimplexPolynomial shifted(k, PolyForm::symmetric);
    for (const auto& [key, c] : out.terms()) shifted.add_term(key.simplex_power + a, key.exponents, c);
    return shifted;
}

// Pairs (a, b) with a + 2b <= degree, ordered by a + 2b and then by b, so the
// list for degree d is a prefix of the list for degree d + 1.
inline std::vector<std::pair<int, int>> basis_exponents(int degree) {
    std::vector<std::pair<int, int>> out;
    for (int total = 0; total <= degree; ++total)
        for (int b = 0; 2 * b <= total; ++b) out.emplace_back(total - 2 * b, b);
    return out;
}

struct GramMatrices {
    std::vector<std::vector<Rational>> I;
    std::vector<std::vector<Rational>> J;  // sum over i of the J^(i) forms
};

// Exact Gram matrices of a list of symmetric polynomials in k variables.
inline GramMatrices gram_matrices(const std::vector<SimplexPolynomial>& basis, unsigned threads = 1) {
    const std::size_t m = basis.size();
    if (m == 0) throw std::invalid_argument("gram_matrices: empty basis");
    const int k = basis.front().dimension();
    std::vector<ReducedPolynomial> reduced;
    reduced.reserve(m);
    for (const auto& f : basis) {
        if (f.dimension() != k || f.form() != PolyForm::symmetric)
            throw std::invalid_argument("gram_matrices: basis must be symmetric in a common dimension");
        reduced.push_back(integrate_out(f, 0));
    }
    GramMatrices g{std::vector<std::vector<Rational>>(m, std::vector<Rational>(m)),
                   std::vector<std::vector<Rational>>(m, std::vector<Rational>(m))};
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i; j < m; ++j) pairs.emplace_back(i, j);
    auto work = [&](std::size_t start, std::size_t stride) {
        for (std::size_t p = start; p < pairs.size(); p += stride) {
            const auto [i, j] = pairs[p];
            g.I[i][j] = integrate_product(basis[i], basis[j]);
            g.J[i][j] = Rational(k) * integrate_product(reduced[i], reduced[j]);
        }
    };
    threads = std::max(1u, threads);
    if (threads == 1) {
        work(0, 1);
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t, threads);
        for (auto& th : pool) th.join();
    }
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < i; ++j) {
            g.I[i][j] = g.I[j][i];
            g.J[i][j] = g.J[j][i];
        }
    return g;
}

namespace variational_detail {

inline constexpr u64 kModPrime = 2305843009213693951ull;  // 2^61 - 1

inline u64 reduce_mod(const Rational& q, u64 p) {
    const BigInt pz = BigInt(std::to_string(p));
    BigInt num = q.get_num() % pz;
    if (num < 0) num += pz;
    BigInt den = q.get_den() % pz;
    if (den == 0) throw std::domain_error("reduce_mod: denominator divisible by the modulus");
    return mulmod(u64(std::stoull(num.get_str())), powmod(u64(std::stoull(den.get_str())), p - 2, p), p);
}

// Greedy choice of basis indices whose Gram matrix is nonsingular modulo a
// large prime. A dependent set over Q stays dependent modulo p, so the kept
// set is always independent over Q.
inline std::vector<std::size_t> independent_indices(const std::vector<std::vector<Rational>>& gram) {
    const u64 p = kModPrime;
    const std::size_t m = gram.size();
    std::vector<std::vector<u64>> a(m, std::vector<u64>(m));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) a[i][j] = reduce_mod(gram[i][j], p);
    // Gaussian elimination on rows in order; a row that reduces to zero
    // against the previously kept rows is dependent.
    std::vector<std::size_t> kept;
    std::vector<std::vector<u64>> echelon;
    std::vector<std::size_t> pivot_col;
    for (std::size_t r = 0; r < m; ++r) {
        std::vector<u64> row = a[r];
        for (std::size_t e = 0; e < echelon.size(); ++e) {
            const u64 c = row[pivot_col[e]];
            if (c == 0) continue;
            for (std::size_t j = 0; j < m; ++j) row[j] = (row[j] + p - mulmod(c, echelon[e][j], p)) % p;
        }
        std::size_t col = 0;
        while (col < m && row[col] == 0) ++col;
        if (col == m) continue;
        const u64 inv = powmod(row[col], p - 2, p);
        for (auto& x : row) x = mulmod(x, inv, p);
        echelon.push_back(std::move(row));
        pivot_col.push_back(col);
        kept.push_back(r);
    }
    return kept;
}

using Matrix = std::vector<std::vector<Real>>;

// Largest eigenpair of the symmetric matrix c by cyclic Jacobi rotations.
inline std::pair<Real, std::vector<Real>> top_eigenpair(Matrix c) {
    const std::size_t n = c.size();
    Matrix v(n, std::vector<Real>(n, Real(0)));
    for (std::size_t i = 0; i < n; ++i) v[i][i] = 1;
    const Real eps = pow(Real(10), -int(Real::default_precision()) + 5);
    for (int sweep = 0; sweep < 100; ++sweep) {
        Real off = 0, total = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                const Real sq = c[i][j] * c[i][j];
                total += sq;
                if (i != j) off += sq;
            }
        if (off <= eps * eps * total) break;
        for (std::size_t p = 0; p + 1 < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) {
                if (c[p][q] == 0) continue;
                const Real theta = (c[q][q] - c[p][p]) / (2 * c[p][q]);
                const Real t = (theta >= 0 ? Real(1) : Real(-1)) / (abs(theta) + sqrt(theta * theta + 1));
                const Real cs = 1 / sqrt(t * t + 1);
                const Real sn = t * cs;
                for (std::size_t r = 0; r < n; ++r) {
                    const Real crp = c[r][p], crq = c[r][q];
                    c[r][p] = cs * crp - sn * crq;
                    c[r][q] = sn * crp + cs * crq;
                }
                for (std::size_t r = 0; r < n; ++r) {
                    const Real cpr = c[p][r], cqr = c[q][r];
                    c[p][r] = cs * cpr - sn * cqr;
                    c[q][r] = sn * cpr + cs * cqr;
                }
                for (std::size_t r = 0; r < n; ++r) {
                    const Real vrp = v[r][p], vrq = v[r][q];
                    v[r][p] = cs * vrp - sn * vrq;
                    v[r][q] = sn * vrp + cs * vrq;
                }
            }
    }
    std::size_t best = 0;
    for (std::size_t i = 1; i < n; ++i)
        if (c[i][i] > c[best][best]) best = i;
    std::vector<Real> vec(n);
    for (std::size_t i = 0; i < n; ++i) vec[i] = v[i][best];
    return {c[best][best], vec};
}

// Top generalized eigenpair of (j, i) with i positive definite.
inline std::pair<Real, std::vector<Real>> generalized_top(const Matrix& i_mat, const Matrix& j_mat) {
    const std::size_t n = i_mat.size();
    Matrix l(n, std::vector<Real>(n, Real(0)));
    for (std::size_t c = 0; c < n; ++c) {
        Real d = i_mat[c][c];
        for (std::size_t s = 0; s < c; ++s) d -= l[c][s] * l[c][s];
        if (d <= 0) throw std::runtime_error("optimize_rayleigh: Gram matrix not positive definite at working precision");
        l[c][c] = sqrt(d);
        for (std::size_t r = c + 1; r < n; ++r) {
            Real x = i_mat[r][c];
            for (std::size_t s = 0; s < c; ++s) x -= l[r][s] * l[c][s];
            l[r][c] = x / l[c][c];
        }
    }
    auto forward = [&](std::vector<Real> b) {
        for (std::size_t r = 0; r < n; ++r) {
            for (std::size_t s = 0; s < r; ++s) b[r] -= l[r][s] * b[s];
            b[r] /= l[r][r];
        }
        return b;
    };
    // x = L^{-1} J, then c = L^{-1} x^T
    Matrix x(n, std::vector<Real>(n));
    for (std::size_t col = 0; col < n; ++col) {
        std::vector<Real> b(n);
        for (std::size_t r = 0; r < n; ++r) b[r] = j_mat[r][col];
        b = forward(std::move(b));
        for (std::size_t r = 0; r < n; ++r) x[r][col] = b[r];
    }
    Matrix c(n, std::vector<Real>(n));
    for (std::size_t col = 0; col < n; ++col) {
        std::vector<Real> b = forward(x[col]);
        for (std::size_t r = 0; r < n; ++r) c[r][col] = b[r];
    }
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t s = r + 1; s < n; ++s) c[r][s] = c[s][r] = (c[r][s] + c[s][r]) / 2;
    auto [lambda, y] = top_eigenpair(std::move(c));
    // v = L^{-T} y
    for (std::size_t r = n; r-- > 0;) {
        for (std::size_t s = r + 1; s < n; ++s) y[r] -= l[s][r] * y[s];
        y[r] /= l[r][r];
    }
    return {lambda, y};
}

inline Rational quadratic_form(const std::vector<std::vector<Rational>>& g, const std::vector<std::size_t>& idx,
                               const std::vector<Rational>& v) {
    Rational total = 0;
    for (std::size_t r = 0; r < idx.size(); ++r) {
        if (v[r] == 0) continue;
        Rational row = 0;
        for (std::size_t s = 0; s < idx.size(); ++s) row += g[idx[r]][idx[s]] * v[s];
        total += v[r] * row;
    }
    return total;
}

}  // namespace variational_detail

struct OptimizeResult {
    RayleighResult rayleigh{0, 0, 0, SimplexPolynomial(1, PolyForm::symmetric)};
    int k = 0;
    int degree = 0;
    std::vector<std::pair<int, int>> basis;    // kept (a, b)
    std::vector<std::pair<int, int>> dropped;  // linearly dependent (a, b)
    std::vector<Rational> coefficients;        // witness = sum c_j (1 - P1)^a_j P2^b_j
    std::string float_eigenvalue;
    BigInt denominator_bound;  // rounding bound that produced the witness
};

inline OptimizeResult optimize_rayleigh(int k, int degree, unsigned threads = 1) {
    using namespace variational_detail;
    if (k < 1) throw std::invalid_argument("optimize_rayleigh: k must be >= 1");
    if (degree < 1) throw std::invalid_argument("optimize_rayleigh: basis degree must be >= 1");

    const auto exps = basis_exponents(degree);
    std::vector<SimplexPolynomial> basis;
    for (const auto& [a, b] : exps) basis.push_back(basis_element(k, a, b));
    const GramMatrices gram = gram_matrices(basis, threads);

    OptimizeResult out;
    out.k = k;
    out.degree = degree;
    const auto kept = independent_indices(gram.I);
    std::vector<char> is_kept(exps.size(), 0);
    for (auto i : kept) is_kept[i] = 1;
    for (std::size_t i = 0; i < exps.size(); ++i) (is_kept[i] ? out.basis : out.dropped).push_back(exps[i]);

    const std::size_t n = kept.size();
    const PrecisionScope scope(60 + 8 * unsigned(degree));
    Matrix i_mat(n, std::vector<Real>(n)), j_mat(n, std::vector<Real>(n));
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t s = 0; s < n; ++s) {
            i_mat[r][s] = to_real(gram.I[kept[r]][kept[s]]);
            j_mat[r][s] = to_real(gram.J[kept[r]][kept[s]]);
        }
    auto [lambda, vec] = generalized_top(i_mat, j_mat);
    out.float_eigenvalue = to_string(lambda, 30);

    Real scale = 0;
    for (const auto& x : vec)
        if (abs(x) > scale) scale = abs(x);
    for (auto& x : vec) x /= scale;

    const Rational target = exact_rational(lambda) * Rational(1 - Rational(1, BigInt("1000000000000000")));
    std::optional<Rational> best;
    for (const char* bound_text : {"1000000", "1000000000000", "1000000000000000000000000",
                                   "1000000000000000000000000000000000000000000000000",
                                   "1000000000000000000000000000000000000000000000000000000000000000000000000000000000000000000000000"}) {
        const BigInt bound(bound_text);
        std::vector<Rational> coeffs(n);
        for (std::size_t r = 0; r < n; ++r) coeffs[r] = best_rational(exact_rational(vec[r]), bound);
        const Rational den = quadratic_form(gram.I, kept, coeffs);
        if (den <= 0) continue;
        const Rational num = quadratic_form(gram.J, kept, coeffs);
        const Rational value = num / den;
        if (!best || value > *best) {
            best = value;
            out.coefficients = coeffs;
            out.denominator_bound = bound;
            out.rayleigh.value = value;
            out.rayleigh.numerator = num;
            out.rayleigh.denominator = den;
        }
        if (value >= target) break;
    }
    if (!best) throw std::runtime_error("optimize_rayleigh: no rounded witness with positive I");

    SimplexPolynomial witness(k, PolyForm::symmetric);
    for (std::size_t r = 0; r < n; ++r) witness += basis[kept[r]] * out.coefficients[r];
    out.rayleigh.witness = std::move(witness);
    return out;
}

struct MkLowerBound {
    double simplified;          // log k - 2 log log k - 2
    std::optional<double> full; // A (1 - A e^A / (k (1 - A/(e^A - 1) - e^A/k)^2)), when positive
};

inline MkLowerBound mk_lower_bound(u64 k) {
    if (k < 16) throw std::invalid_argument("mk_lower_bound: k must be >= 16");
    const double lk = std::log(double(k));
    const double a = lk - 2 * std::log(lk);
    MkLowerBound out{a - 2, std::nullopt};
    const double inner = 1 - a / std::expm1(a) - std::exp(a) / double(k);
    const double full = a * (1 - a * std::exp(a) / (double(k) * inner * inner));
    if (inner > 0 && full > 0) out.full = full;
    return out;
}

// Smallest k >= 16 with log k - 2 log log k - 2 > 0.
inline u64 mk_threshold() {
    for (u64 k = 16;; ++k)
        if (mk_lower_bound(k).simplified > 0) return k;
}

}  // namespace chebgap
