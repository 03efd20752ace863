#include <gtest/gtest.h>

#include <random>

#include "chebgap/arith.hpp"
#include "chebgap/primes.hpp"

using namespace chebgap;

namespace {

bool trial_prime(u64 n) {
    if (n < 2) return false;
    for (u64 d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

}  // namespace

TEST(Primes, SieveRangeSmall) {
    EXPECT_EQ(sieve_range(2, 11), (std::vector<u64>{2, 3, 5, 7}));
    EXPECT_EQ(sieve_range(2, 3), (std::vector<u64>{2}));
    EXPECT_EQ(sieve_range(90, 100), (std::vector<u64>{97}));
    EXPECT_TRUE(sieve_range(24, 29).empty());
}

TEST(Primes, SegmentsAgreeWithTrialDivision) {
    // tiny segments force many seams
    const auto got = sieve_range(1000, 5000, 97);
    std::vector<u64> want;
    for (u64 n = 1000; n < 5000; ++n)
        if (trial_prime(n)) want.push_back(n);
    EXPECT_EQ(got, want);
    EXPECT_EQ(sieve_range_parallel(1000, 5000, 3), want);
}

TEST(Primes, RandomWindows) {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<u64> start(0, 2000000), len(1, 3000);
    for (int it = 0; it < 30; ++it) {
        const u64 lo = start(rng), hi = lo + len(rng);
        std::vector<u64> want;
        for (u64 n = lo; n < hi; ++n)
            if (trial_prime(n)) want.push_back(n);
        EXPECT_EQ(sieve_range(lo, hi, 256), want) << lo << ".." << hi;
    }
}

TEST(Primes, TableMembershipAndCounts) {
    const PrimeTable t(20000);
    u64 count = 0;
    for (u64 n = 0; n <= 20000; ++n) {
        ASSERT_EQ(t.is_prime(n), trial_prime(n)) << n;
        count += trial_prime(n);
        ASSERT_EQ(t.count(n), count) << n;
    }
    EXPECT_EQ(t.total(), count);
    EXPECT_THROW(t.is_prime(20001), std::out_of_range);
}

TEST(Primes, PrimeCount) {
    EXPECT_EQ(prime_count(1), 0u);
    EXPECT_EQ(prime_count(10), 4u);
    EXPECT_EQ(prime_count(213), 47u);
    EXPECT_EQ(prime_count(1000000), 78498u);
}

TEST(Primes, NthPrime) {
    EXPECT_EQ(nth_prime(1), 2u);
    EXPECT_EQ(nth_prime(6), 13u);
    EXPECT_EQ(nth_prime(48), 223u);
    EXPECT_EQ(nth_prime(10000), 104729u);
    // q_n is the n-th entry of the trial-division list
    u64 n = 0;
    for (u64 p = 2; n < 500; ++p)
        if (trial_prime(p)) {
            ASSERT_EQ(nth_prime(++n), p);
        }
}

TEST(Primes, Primorial) {
    EXPECT_EQ(primorial_below(2), 2);
    EXPECT_EQ(primorial_below(10), 210);
    EXPECT_EQ(primorial_below(13), 30030);
    EXPECT_EQ(primorial_below(1), 1);
}

TEST(Primes, Dusart) {
    const auto small = verify_dusart(6, 6);
    EXPECT_TRUE(small.pass());
    EXPECT_FALSE(small.pi_checked);
    EXPECT_TRUE(verify_dusart(6, 10000).pass());
    const auto pi = verify_dusart(355991, 356991);
    EXPECT_TRUE(pi.pi_checked);
    EXPECT_TRUE(pi.pass());
    EXPECT_THROW(verify_dusart(5, 10), std::invalid_argument);
}

TEST(Arith, PhiAgainstCount) {
    EXPECT_EQ(euler_phi(1), 1u);
    EXPECT_EQ(euler_phi(12), 4u);
    for (u64 n = 1; n < 400; ++n) {
        u64 c = 0;
        for (u64 a = 1; a <= n; ++a) c += std::gcd(a, n) == 1;
        ASSERT_EQ(euler_phi(n), c) << n;
    }
    for (u64 p : {2u, 3u, 101u, 65537u}) EXPECT_EQ(euler_phi(p), p - 1);
}

TEST(Arith, PhiOfRadicalOverRadicalIsMultiplicative) {
    // phi(rad n)/rad n = prod_{p | n} (1 - 1/p)
    for (u64 n = 1; n < 2000; ++n) {
        const u64 r = radical(n);
        double want = 1;
        for (u64 p = 2; p <= n; ++p)
            if (n % p == 0 && trial_prime(p)) want *= 1 - 1.0 / double(p);
        ASSERT_NEAR(double(euler_phi(r)) / double(r), want, 1e-12) << n;
    }
}

TEST(Arith, Mobius) {
    EXPECT_EQ(mobius(1), 1);
    EXPECT_EQ(mobius(6), 1);
    EXPECT_EQ(mobius(30), -1);
    EXPECT_EQ(mobius(12), 0);
    // sum_{d | n} mu(d) = [n = 1]
    for (u64 n = 1; n < 500; ++n) {
        int s = 0;
        for (u64 d = 1; d <= n; ++d)
            if (n % d == 0) s += mobius(d);
        ASSERT_EQ(s, n == 1 ? 1 : 0) << n;
    }
}

TEST(Arith, ModularHelpers) {
    EXPECT_EQ(floor_mod(-24, 1000000), 999976u);
    EXPECT_EQ(powmod(3, 11, 691), 177147u % 691);
    EXPECT_EQ(isqrt(99), 9u);
    EXPECT_EQ(isqrt(100), 10u);
    EXPECT_EQ(isqrt(~u64(0)), 4294967295u);
}
