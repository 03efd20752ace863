#include <gtest/gtest.h>

#include <cmath>
#include <map>

#include "chebgap/sieve.hpp"

using namespace chebgap;

namespace {

int mu_slow(u64 n) {
    int m = 1;
    for (u64 p = 2; p * p <= n; ++p)
        if (n % p == 0) {
            n /= p;
            if (n % p == 0) return 0;
            m = -m;
        }
    return n > 1 ? -m : m;
}

u64 phi_slow(u64 n) {
    u64 c = 0;
    for (u64 a = 1; a <= n; ++a) c += std::gcd(a, n) == 1;
    return c;
}

// k = 2, F = 1 - t1 - t2, coordinates quantized through double as in the library
struct Oracle {
    u64 w;
    double r_limit;
    double log_r;
    std::map<std::pair<u64, u64>, Rational> memo;

    Rational lambda(u64 d1, u64 d2) {
        if (!(double(d1) * double(d2) < r_limit)) return 0;
        if (std::gcd(d1 * d2, w) != 1 || mu_slow(d1 * d2) == 0) return 0;
        if (auto it = memo.find({d1, d2}); it != memo.end()) return it->second;
        Rational sum = 0;
        for (u64 r1 = d1; double(r1) <= r_limit; r1 += d1)
            for (u64 r2 = d2; double(r1) * double(r2) <= r_limit; r2 += d2) {
                if (std::gcd(r1 * r2, w) != 1 || mu_slow(r1 * r2) == 0) continue;
                const Rational t1 = exact_rational(std::log(double(r1)) / log_r);
                const Rational t2 = exact_rational(std::log(double(r2)) / log_r);
                if (t1 + t2 > 1) continue;
                sum += (1 - t1 - t2) / Rational(phi_slow(r1) * phi_slow(r2));
            }
        Rational v = Rational(mu_slow(d1) * i64(d1) * mu_slow(d2) * i64(d2)) * sum;
        v.canonicalize();
        memo.emplace(std::make_pair(d1, d2), v);
        return v;
    }

    Rational weight(u64 n, i64 h1, i64 h2) {
        Rational s = 0;
        const u64 a = n + u64(h1), b = n + u64(h2);
        for (u64 d1 = 1; d1 <= a && double(d1) < r_limit; ++d1)
            if (a % d1 == 0)
                for (u64 d2 = 1; d2 <= b && double(d1 * d2) < r_limit; ++d2)
                    if (b % d2 == 0) s += lambda(d1, d2);
        return s * s;
    }
};

SieveConfig r30_config(u64 n_start) {
    return build_config(n_start, Tuple({0, 4}), GaloisContext(1, 1, 1), 0.4, 0.05, SimplexPolynomial::one_minus_sum(2),
                        3, 30.0);
}

bool trial_prime(u64 n) {
    if (n < 2) return false;
    for (u64 d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

}  // namespace

TEST(SieveConfig, Examples) {
    const SieveConfig a = build_config(1000000, Tuple({0, 4, 6}), GaloisContext(1, 1, 1), 0.4, 0.05,
                                       SimplexPolynomial::one_minus_sum(3), 5);
    EXPECT_EQ(a.w_modulus, 30u);
    EXPECT_EQ(a.u_modulus, 30u);
    EXPECT_EQ(std::gcd((a.u0) * (a.u0 + 4) * (a.u0 + 6), a.u_modulus), 1u);
    EXPECT_NEAR(a.r_limit, std::pow(1e6, 0.15), 1e-9);

    const SieveConfig b = build_config(1000000, Tuple({0, 4}), GaloisContext(2, 1, 6), 0.4, 0.05,
                                       SimplexPolynomial::one_minus_sum(2), 5);
    EXPECT_EQ(b.u_modulus, 5u);
    EXPECT_EQ(b.w_modulus % b.u_modulus, 0u);

    EXPECT_THROW(build_config(1000, Tuple({0, 1}), GaloisContext(1, 1, 1), 0.4, 0.05,
                              SimplexPolynomial::one_minus_sum(2), 2),
                 std::invalid_argument);
    // a prime of Delta above D0
    EXPECT_THROW(build_config(1000, Tuple({0, 2}), GaloisContext(2, 1, 7), 0.4, 0.05,
                              SimplexPolynomial::one_minus_sum(2), 5),
                 std::invalid_argument);
}

TEST(SieveConfig, U0IsAdmissibleForManyTuples) {
    for (const auto& h : std::vector<std::vector<i64>>{{0, 2}, {0, 2, 6}, {0, 4, 6, 10, 12, 16}, {0, 6}}) {
        const SieveConfig c = build_config(100000, Tuple(h), GaloisContext(1, 1, 1), 0.4, 0.05,
                                           SimplexPolynomial::one_minus_sum(int(h.size())), 13);
        EXPECT_LT(c.u0, c.u_modulus);
        u64 prod = 1;
        for (i64 x : h) prod = mulmod(prod, (c.u0 + u64(x)) % c.u_modulus, c.u_modulus);
        for (u64 p : {2u, 3u, 5u, 7u, 11u, 13u})
            for (i64 x : h) EXPECT_NE((c.u0 + u64(x)) % p, 0u);
    }
    EXPECT_EQ(default_d0(10), 0u);
    EXPECT_EQ(default_d0(100000), 0u);
}

TEST(Lambda, SupportRules) {
    const SieveConfig c = r30_config(1000);
    EXPECT_EQ(lambda_weight({2, 1}, c), 0);   // shares a factor with W = 6
    EXPECT_EQ(lambda_weight({5, 7}, c), 0);   // 35 >= R
    EXPECT_EQ(lambda_weight({25, 1}, c), 0);  // not squarefree
    EXPECT_FALSE(lambda_supported({5, 5}, c));
    EXPECT_TRUE(lambda_supported({5, 1}, c));
}

TEST(Lambda, MatchesOracle) {
    const SieveConfig c = r30_config(1000);
    Oracle o{c.w_modulus, c.r_limit, c.log_r, {}};
    EXPECT_EQ(lambda_weight({1, 1}, c), Rational("386906226320808132259/249679563341420298240"));
    EXPECT_EQ(lambda_weight({1, 1}, c), o.lambda(1, 1));
    const LambdaTable table = lambda_table(c);
    EXPECT_FALSE(table.empty());
    for (u64 d1 = 1; d1 < 30; ++d1)
        for (u64 d2 = 1; d1 * d2 < 30; ++d2) {
            const Rational want = o.lambda(d1, d2);
            EXPECT_EQ(lambda_weight({d1, d2}, c), want) << d1 << ' ' << d2;
            const auto it = table.find({d1, d2});
            EXPECT_EQ(it == table.end() ? Rational(0) : it->second, want);
        }
}

TEST(Weights, MatchOracleAndAreSquares) {
    const SieveConfig c = r30_config(1000);
    Oracle o{c.w_modulus, c.r_limit, c.log_r, {}};
    const WeightTable t = weight_table(c);
    ASSERT_FALSE(t.n.empty());
    Rational sum = 0;
    for (std::size_t j = 0; j < t.size(); ++j) {
        EXPECT_EQ(t.n[j] % c.u_modulus, c.u0);
        EXPECT_GE(t.n[j], 1000u);
        EXPECT_LT(t.n[j], 2000u);
        EXPECT_GE(t.exact[j], 0);
        EXPECT_EQ(t.exact[j], o.weight(t.n[j], 0, 4)) << t.n[j];
        sum += t.exact[j];
    }
    EXPECT_EQ(sum_s1(t), sum);
    EXPECT_GT(sum_s1(t), 0);
}

TEST(Weights, FloatingAndThreadedAgree) {
    const SieveConfig c = r30_config(5000);
    const WeightTable exact = weight_table(c);
    const WeightTable threaded = weight_table(c, Arithmetic::exact, 3);
    const WeightTable approx = weight_table(c, Arithmetic::floating, 2);
    ASSERT_EQ(exact.n, threaded.n);
    ASSERT_EQ(exact.n, approx.n);
    for (std::size_t j = 0; j < exact.size(); ++j) {
        EXPECT_EQ(exact.exact[j], threaded.exact[j]);
        EXPECT_NEAR(approx.approx[j], exact.exact[j].get_d(), 1e-9 * std::max(1.0, exact.exact[j].get_d()));
    }
}

TEST(Sums, ZeroPolynomialGivesZero) {
    const SieveConfig c = build_config(1000, Tuple({0, 4}), GaloisContext(1, 1, 1), 0.4, 0.05,
                                       SimplexPolynomial::symmetric(2), 3, 30.0);
    EXPECT_EQ(sum_s1(c), 0);
}

TEST(Sums, S2AgainstDirectCount) {
    const SieveConfig c = r30_config(2000);
    const auto spec = ChebotarevSpec::congruence(4, {1}, GaloisContext(2, 1, -4, 4));
    const WeightTable t = weight_table(c);
    Rational want = 0;
    for (std::size_t j = 0; j < t.size(); ++j)
        for (i64 h : c.tuple.elements()) {
            const u64 m = t.n[j] + u64(h);
            if (trial_prime(m) && m % 4 == 1) want += t.exact[j];
        }
    EXPECT_EQ(sum_s2(c, t, spec), want);
    EXPECT_LE(sum_s2(c, t, spec), c.k * sum_s1(t));
}

TEST(Sums, SingleElementTupleCountsPrimes) {
    const SieveConfig c = build_config(3000, Tuple({0}), GaloisContext(1, 1, 1), 0.4, 0.05,
                                       SimplexPolynomial::one_minus_sum(1), 3, 20.0);
    const auto all = ChebotarevSpec::congruence(2, {1}, GaloisContext(1, 1, 1, 2));
    const WeightTable t = weight_table(c);
    Rational want = 0;
    for (std::size_t j = 0; j < t.size(); ++j)
        if (trial_prime(t.n[j])) want += t.exact[j];
    EXPECT_EQ(sum_s2(c, t, all), want);
}

TEST(Predicted, RatioIdentity) {
    const SieveConfig c = build_config(100000, Tuple({0, 4}), GaloisContext(2, 1, -4, 4), 0.4, 0.05,
                                       SimplexPolynomial::one_minus_sum(2), 5);
    const auto spec = ChebotarevSpec::congruence(4, {1}, GaloisContext(2, 1, -4, 4));
    const PredictedTerms p = predicted_terms(c, spec);
    const double jsum = integral_J_sum(c.f).get_d(), i = integral_I(c.f).get_d();
    const double want = 0.5 * (1.0 / 2.0) * (c.log_r / std::log(1e5)) * jsum / i;
    EXPECT_NEAR(p.ratio, want, 1e-12);
    EXPECT_NEAR(p.s2 / p.s1, p.ratio, 1e-12);
}

TEST(SFunctional, RhoExtremes) {
    const SieveConfig c = r30_config(2000);
    const auto spec = ChebotarevSpec::congruence(2, {1}, GaloisContext(1, 1, 1, 2));
    EXPECT_GE(s_functional(c, spec, 0).value, 0);
    EXPECT_LE(s_functional(c, spec, 2).value, 0);
    const SFunctional s = s_functional(c, spec, 1);
    EXPECT_EQ(s.threshold, 2);
    for (const auto& w : s.windows) {
        EXPECT_TRUE(trial_prime(w.n));
        EXPECT_TRUE(trial_prime(w.n + 4));
    }
}
