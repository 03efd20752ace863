#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <random>

#include "chebgap/montecarlo.hpp"
#include "chebgap/simplex.hpp"
#include "chebgap/variational.hpp"

using namespace chebgap;

namespace {

// Gauss-Legendre nodes on [0, 1], exact for polynomials of degree < 2n.
struct Gauss {
    std::vector<double> x, w;
    explicit Gauss(int n) {
        for (int i = 1; i <= n; ++i) {
            double z = std::cos(M_PI * (i - 0.25) / (n + 0.5)), dp = 0;
            for (int it = 0; it < 100; ++it) {
                double p0 = 1, p1 = z;
                for (int j = 2; j <= n; ++j) {
                    const double p2 = ((2 * j - 1) * z * p1 - (j - 1) * p0) / j;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n * (z * p1 - p0) / (z * z - 1);
                const double step = p1 / dp;
                z -= step;
                if (std::fabs(step) < 1e-16) break;
            }
            x.push_back((1 - z) / 2);
            w.push_back(1 / ((1 - z * z) * dp * dp));
        }
    }
};

const Gauss& gauss() {
    static const Gauss g(16);
    return g;
}

// int over {t >= 0, sum t <= budget} in `dims` coordinates, iterated quadrature
double simplex_quad(int dims, double budget, std::vector<double>& t, const std::function<double()>& g) {
    if (dims == 0) return g();
    const Gauss& q = gauss();
    double s = 0;
    const std::size_t slot = t.size() - std::size_t(dims);
    for (std::size_t j = 0; j < q.x.size(); ++j) {
        t[slot] = budget * q.x[j];
        s += budget * q.w[j] * simplex_quad(dims - 1, budget - t[slot], t, g);
    }
    return s;
}

double eval(const SimplexPolynomial& f, const std::vector<double>& t) {
    return f.evaluate<double>(std::span<const double>(t));
}

double quad_I(const SimplexPolynomial& f) {
    std::vector<double> t(f.dimension());
    return simplex_quad(f.dimension(), 1, t, [&] {
        const double v = eval(f, t);
        return v * v;
    });
}

// J^(i), i 1-based, by quadrature over the other coordinates then the fiber
double quad_J(const SimplexPolynomial& f, int i) {
    const int k = f.dimension();
    std::vector<double> rest(k - 1);
    return simplex_quad(k - 1, 1, rest, [&] {
        double used = 0;
        for (double v : rest) used += v;
        const double len = 1 - used;
        std::vector<double> pt(k);
        double inner = 0;
        for (std::size_t j = 0; j < gauss().x.size(); ++j) {
            for (int a = 0, r = 0; a < k; ++a)
                if (a != i - 1) pt[a] = rest[r++];
            pt[i - 1] = len * gauss().x[j];
            inner += len * gauss().w[j] * eval(f, pt);
        }
        return inner * inner;
    });
}

SimplexPolynomial random_symmetric(int k, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> pw(0, 2), part(0, 2), coeff(-4, 4);
    SimplexPolynomial f(k, PolyForm::symmetric);
    while (f.is_zero()) {
        for (int t = 0; t < 3; ++t) {
            Partition lambda;
            const int parts = std::min(part(rng), k);
            for (int j = 0; j < parts; ++j) lambda.push_back(1 + part(rng));
            f.add_term(pw(rng), normalize_partition(lambda), coeff(rng));
        }
    }
    return f;
}

}  // namespace

TEST(Simplex, IntegralExamples) {
    EXPECT_EQ(integral_I(SimplexPolynomial::constant(1, 1)), 1);
    EXPECT_EQ(integral_I(SimplexPolynomial::constant(2, 1)), Rational(1, 2));
    EXPECT_EQ(integral_I(SimplexPolynomial::coordinate(2, 0)), Rational(1, 12));
    EXPECT_EQ(integral_J(SimplexPolynomial::constant(1, 1), 1), 1);
    EXPECT_EQ(integral_J(SimplexPolynomial::constant(2, 1), 1), Rational(1, 3));
    EXPECT_EQ(integral_J(SimplexPolynomial::constant(2, 1), 2), Rational(1, 3));
    EXPECT_THROW(integral_J(SimplexPolynomial::constant(2, 1), 3), std::out_of_range);
    EXPECT_THROW(integral_I(SimplexPolynomial::symmetric(2)), std::invalid_argument);
}

TEST(Simplex, DenseIntegralsMatchQuadrature) {
    std::mt19937_64 rng(21);
    for (int it = 0; it < 40; ++it) {
        const int k = 1 + it % 3;
        const SimplexPolynomial f = random_polynomial(k, 4, 4, rng);
        const double i_exact = integral_I(f).get_d();
        EXPECT_NEAR(i_exact, quad_I(f), 1e-11 * std::max(1.0, std::fabs(i_exact)));
        for (int i = 1; i <= k; ++i) {
            const double j_exact = integral_J(f, i).get_d();
            EXPECT_NEAR(j_exact, quad_J(f, i), 1e-11 * std::max(1.0, std::fabs(j_exact)));
        }
    }
}

TEST(Simplex, SymmetricIntegralsMatchQuadrature) {
    std::mt19937_64 rng(22);
    for (int it = 0; it < 20; ++it) {
        const int k = 2 + it % 2;
        const SimplexPolynomial f = random_symmetric(k, rng);
        EXPECT_NEAR(integral_I(f).get_d(), quad_I(f), 1e-10);
        EXPECT_NEAR(integral_J(f, 1).get_d(), quad_J(f, 1), 1e-10);
    }
}

TEST(Simplex, DenseSymmetricRoundTrip) {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> unit(0, 1);
    for (int it = 0; it < 30; ++it) {
        const int k = 2 + it % 3;
        const SimplexPolynomial f = random_symmetric(k, rng);
        const SimplexPolynomial d = f.to_dense();
        const auto back = d.to_symmetric();
        ASSERT_TRUE(back.has_value());
        for (int s = 0; s < 5; ++s) {
            std::vector<double> t(k);
            for (auto& x : t) x = unit(rng) / k;
            EXPECT_NEAR(eval(f, t), eval(d, t), 1e-12);
            EXPECT_NEAR(eval(*back, t), eval(f, t), 1e-12);
        }
        EXPECT_EQ(integral_I(d), integral_I(f));
        EXPECT_EQ(integral_J_sum(d), integral_J_sum(f));
    }
    EXPECT_FALSE(SimplexPolynomial::coordinate(2, 0).to_symmetric().has_value());
}

TEST(Simplex, SymmetricJSumIsKTimesOne) {
    std::mt19937_64 rng(24);
    for (int it = 0; it < 10; ++it) {
        const SimplexPolynomial f = random_symmetric(3, rng).to_dense();
        Rational sum = 0;
        for (int i = 1; i <= 3; ++i) {
            EXPECT_EQ(integral_J(f, i), integral_J(f, 1));
            sum += integral_J(f, i);
        }
        EXPECT_EQ(sum, 3 * integral_J(f, 1));
    }
}

TEST(Simplex, ArithmeticMatchesEvaluation) {
    std::mt19937_64 rng(25);
    const SimplexPolynomial f = random_polynomial(3, 3, 3, rng), g = random_polynomial(3, 3, 3, rng);
    const std::vector<Rational> t{Rational(1, 5), Rational(1, 7), Rational(2, 9)};
    const std::span<const Rational> pt(t);
    EXPECT_EQ((f * g).evaluate<Rational>(pt), f.evaluate<Rational>(pt) * g.evaluate<Rational>(pt));
    EXPECT_EQ((f + g).evaluate<Rational>(pt), f.evaluate<Rational>(pt) + g.evaluate<Rational>(pt));
    EXPECT_EQ(f.pow(3).evaluate<Rational>(pt), f.evaluate<Rational>(pt) * f.evaluate<Rational>(pt) * f.evaluate<Rational>(pt));
    EXPECT_EQ(f.expanded().evaluate<Rational>(pt), f.evaluate<Rational>(pt));
}

TEST(Rayleigh, Examples) {
    EXPECT_EQ(rayleigh(SimplexPolynomial::constant(1, 1)).value, 1);
    EXPECT_EQ(rayleigh(SimplexPolynomial::constant(2, 1)).value, Rational(4, 3));
    EXPECT_THROW(rayleigh(SimplexPolynomial::symmetric(2)), std::invalid_argument);
}

TEST(Rayleigh, OneMinusSumAgainstMonteCarlo) {
    const SimplexPolynomial f = SimplexPolynomial::one_minus_sum(2);
    const RayleighResult r = rayleigh(f);
    std::mt19937_64 rng(26);
    const McEstimate i = mc_integral_I(f, 1000000, rng);
    const McEstimate j = mc_integral_J_sum(f, 1000000, rng);
    EXPECT_NEAR(i.mean / r.denominator.get_d(), 1.0, 1e-2);
    EXPECT_NEAR(j.mean / r.numerator.get_d(), 1.0, 1e-2);
    EXPECT_NEAR((j.mean / i.mean) / r.value.get_d(), 1.0, 1e-2);
}

TEST(Rayleigh, ScaleInvariant) {
    std::mt19937_64 rng(27);
    for (int it = 0; it < 15; ++it) {
        const SimplexPolynomial f = random_polynomial(2 + it % 2, 3, 3, rng);
        const Rational c(-7, 3);
        EXPECT_EQ(rayleigh(f * c).value, rayleigh(f).value);
    }
}

TEST(Rayleigh, BoundedByK) {
    // J^(i) <= I by Cauchy-Schwarz on each fiber of length <= 1
    std::mt19937_64 rng(28);
    for (int it = 0; it < 15; ++it) {
        const int k = 1 + it % 3;
        const RayleighResult r = rayleigh(random_polynomial(k, 3, 3, rng));
        EXPECT_GE(r.value, 0);
        EXPECT_LE(r.value, k);
    }
}

TEST(Optimize, SmallCases) {
    EXPECT_GE(optimize_rayleigh(1, 1).rayleigh.value, 1);
    EXPECT_GE(optimize_rayleigh(2, 2).rayleigh.value, Rational(4, 3));
    EXPECT_THROW(optimize_rayleigh(2, 0), std::invalid_argument);
}

TEST(Optimize, WitnessIsCertified) {
    const OptimizeResult o = optimize_rayleigh(5, 4);
    EXPECT_EQ(rayleigh(o.rayleigh.witness).value, o.rayleigh.value);
    ASSERT_EQ(o.coefficients.size(), o.basis.size());
    SimplexPolynomial rebuilt(5, PolyForm::symmetric);
    for (std::size_t j = 0; j < o.basis.size(); ++j)
        rebuilt += basis_element(5, o.basis[j].first, o.basis[j].second) * o.coefficients[j];
    EXPECT_TRUE(rebuilt == o.rayleigh.witness);
}

TEST(Optimize, NestedBasesAreMonotone) {
    for (int k : {3, 6, 10}) {
        Rational prev = 0;
        for (int d = 1; d <= 5; ++d) {
            const Rational v = optimize_rayleigh(k, d).rayleigh.value;
            EXPECT_GE(v, prev * Rational(1 - 1e-14)) << k << ' ' << d;
            prev = v;
        }
    }
}

TEST(Optimize, BeatsEveryBasisElement) {
    const int k = 4, d = 4;
    const Rational best = optimize_rayleigh(k, d).rayleigh.value;
    for (const auto& [a, b] : basis_exponents(d))
        EXPECT_GE(best, rayleigh(basis_element(k, a, b)).value * Rational(1 - 1e-14)) << a << ' ' << b;
}

TEST(Optimize, BasisOrderIsNested) {
    for (int d = 1; d < 8; ++d) {
        const auto a = basis_exponents(d), b = basis_exponents(d + 1);
        ASSERT_TRUE(std::equal(a.begin(), a.end(), b.begin()));
    }
}

TEST(MkLowerBound, Examples) {
    EXPECT_NEAR(mk_lower_bound(213).simplified, 0.0028, 1e-4);
    EXPECT_GT(mk_lower_bound(213).simplified, 0);
    EXPECT_LT(mk_lower_bound(212).simplified, 0);
    EXPECT_NEAR(mk_lower_bound(1000000).simplified, 6.564, 1e-3);
    EXPECT_EQ(mk_threshold(), 213u);
    EXPECT_THROW(mk_lower_bound(15), std::invalid_argument);
}

TEST(MkLowerBound, MonotoneAboveThreshold) {
    double prev = mk_lower_bound(213).simplified;
    for (u64 k = 214; k < 20000; k += 37) {
        const double v = mk_lower_bound(k).simplified;
        EXPECT_GT(v, prev);
        prev = v;
    }
}
