#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <random>

#include "chebgap/admissible.hpp"

using namespace chebgap;

namespace {

// Direct definition: some residue class mod p is missed, for every p <= 2k.
bool admissible_oracle(const std::vector<i64>& h) {
    const i64 k = i64(h.size());
    for (i64 p = 2; p <= 2 * k + 2; ++p) {
        bool prime = true;
        for (i64 d = 2; d * d <= p; ++d) prime &= p % d != 0;
        if (!prime) continue;
        std::vector<bool> hit(p, false);
        for (i64 x : h) hit[((x % p) + p) % p] = true;
        if (std::all_of(hit.begin(), hit.end(), [](bool b) { return b; })) return false;
    }
    return true;
}

}  // namespace

TEST(Admissible, Examples) {
    EXPECT_TRUE(is_admissible({0, 2}));
    EXPECT_FALSE(is_admissible({0, 2, 4}));
    EXPECT_TRUE(is_admissible({0, 4, 6, 10, 12, 16}));
    EXPECT_FALSE(is_admissible({0, 1}));
    EXPECT_THROW(is_admissible({0, 2, 2}), std::invalid_argument);
}

TEST(Admissible, RandomAgainstOracle) {
    std::mt19937_64 rng(11);
    for (int it = 0; it < 2000; ++it) {
        std::uniform_int_distribution<int> size(1, 8);
        std::uniform_int_distribution<i64> elem(-60, 60);
        std::set<i64> s;
        const int n = size(rng);
        while (int(s.size()) < n) s.insert(elem(rng));
        const std::vector<i64> h(s.begin(), s.end());
        ASSERT_EQ(is_admissible(h), admissible_oracle(h));
    }
}

TEST(Admissible, TranslationInvariance) {
    std::mt19937_64 rng(12);
    std::uniform_int_distribution<i64> shift(-1000, 1000);
    const std::vector<std::vector<i64>> samples{{0, 2, 6}, {0, 2, 4}, {0, 4, 6, 10, 12, 16}, {1, 3, 7, 9}};
    for (const auto& h : samples) {
        const Tuple t(h);
        for (int i = 0; i < 10; ++i) {
            const Tuple s = t.shifted(shift(rng));
            EXPECT_EQ(is_admissible(s), is_admissible(t));
            EXPECT_TRUE(s == t);
        }
    }
}

TEST(Admissible, ShiftedPrimeTuple) {
    EXPECT_EQ(shifted_prime_tuple(1).elements(), (std::vector<i64>{2}));
        // pi(5) = 3, so q_4 .. q_8
    EXPECT_EQ(shifted_prime_tuple(5).elements(), (std::vector<i64>{7, 11, 13, 17, 19}));
    const Tuple t = shifted_prime_tuple(213);
    EXPECT_EQ(t.size(), 213u);
    EXPECT_EQ(t[0], 223);
    EXPECT_TRUE(is_admissible(t));
    EXPECT_LE(diameter(t), 1827);
}

TEST(Admissible, ShiftedPrimeTuplesAreAdmissible) {
    for (u64 k = 1; k <= 120; ++k) EXPECT_TRUE(is_admissible(shifted_prime_tuple(k))) << k;
}

TEST(Admissible, Diameter) {
    EXPECT_EQ(diameter(Tuple({0, 2})), 2);
    EXPECT_EQ(diameter(shifted_prime_tuple(5)), 12);
}

TEST(Admissible, DiameterBound) {
    EXPECT_TRUE(verify_diameter_bound(213, 213).pass);
    const auto r = verify_diameter_bound(1000, 1000);
    EXPECT_TRUE(r.pass);
    EXPECT_EQ(r.min_slack_k, 1000u);
    EXPECT_NEAR(r.min_slack, 1.6 * 1000 * std::log(1000.0) - double(diameter(shifted_prime_tuple(1000))), 1e-6);
    EXPECT_THROW(verify_diameter_bound(212, 300), std::invalid_argument);
}

TEST(Admissible, Determinant) {
    // each unordered pair appears twice, once negated: -(2*6*4)^2 for three elements
    EXPECT_EQ(tuple_determinant(Tuple({0, 2, 6})), -2304);
    EXPECT_EQ(tuple_determinant(Tuple({0, 2})), -4);
}
