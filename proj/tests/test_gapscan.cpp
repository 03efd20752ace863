#include <gtest/gtest.h>

#include <sstream>

#include "chebgap/gapscan.hpp"

using namespace chebgap;

namespace {

bool trial_prime(u64 n) {
    if (n < 2) return false;
    for (u64 d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

const GaloisContext kMod8(4, 1, 8, 8);

void check_invariants(const GapReport& r) {
    u64 total = 0;
    for (const auto& [g, n] : r.histogram) total += n;
    EXPECT_EQ(total + r.overflow + (r.prime_count ? 1 : 0), r.prime_count);
    if (r.min_gap) {
        EXPECT_EQ(*r.min_gap, r.histogram.begin()->first);
        EXPECT_EQ(r.min_gap_pair->second - r.min_gap_pair->first, *r.min_gap);
    }
}

}  // namespace

TEST(Scan, SmallHeightThroughChunks) {
    // the public scan starts at 10^3; the chunk routine has no floor
    const auto spec = ChebotarevSpec::congruence(8, {3}, kMod8);
    const auto c = gapscan_detail::scan_chunk(spec, 2, 101, 4800);
    EXPECT_EQ(c.count, 7u);
    EXPECT_EQ(*c.min_gap, 8u);
    EXPECT_EQ(c.min_pair, std::make_pair(u64(3), u64(11)));
    EXPECT_EQ(c.within, 6u);

    const auto c2 = gapscan_detail::scan_chunk(ChebotarevSpec::congruence(8, {5, 7}, kMod8), 2, 101, 4800);
    EXPECT_EQ(*c2.min_gap, 2u);
    EXPECT_EQ(c2.min_pair, std::make_pair(u64(5), u64(7)));
}

TEST(Scan, AgainstTrialDivision) {
    const auto spec = ChebotarevSpec::congruence(8, {3}, kMod8);
    const GapReport r = scan(spec, 20000, 40);
    std::vector<u64> members;
    for (u64 n = 2; n <= 20000; ++n)
        if (trial_prime(n) && n % 8 == 3) members.push_back(n);
    EXPECT_EQ(r.prime_count, members.size());
    u64 within = 0, best = ~u64(0);
    for (std::size_t i = 1; i < members.size(); ++i) {
        const u64 g = members[i] - members[i - 1];
        within += g <= 40;
        best = std::min(best, g);
    }
    EXPECT_EQ(r.pairs_within_bound, within);
    EXPECT_EQ(*r.min_gap, best);
    EXPECT_EQ(r.min_gap_pair->first, 3u);
    check_invariants(r);
    EXPECT_THROW(scan(spec, 999, 40), std::invalid_argument);
}

TEST(Scan, ThreadsDoNotChangeTheReport) {
    const auto spec = ChebotarevSpec::congruence(28, {3, 19, 27}, GaloisContext(6, 1, 28, 28));
    const GapReport a = scan(spec, 300000, 16800, 1);
    for (unsigned t : {2u, 3u, 7u}) {
        const GapReport b = scan(spec, 300000, 16800, t);
        EXPECT_EQ(a.prime_count, b.prime_count);
        EXPECT_EQ(a.min_gap, b.min_gap);
        EXPECT_EQ(a.min_gap_pair, b.min_gap_pair);
        EXPECT_EQ(a.pairs_within_bound, b.pairs_within_bound);
        EXPECT_EQ(a.histogram, b.histogram);
    }
    EXPECT_GE(a.pairs_within_bound, 1u);
    check_invariants(a);
}

TEST(Scan, EmptySet) {
    // no prime <= 5000 is 1000002 mod 1000003
    const auto spec = ChebotarevSpec::congruence(1000003, {1000002}, GaloisContext(1, 1, 1));
    const GapReport r = scan(spec, 5000, 10);
    EXPECT_EQ(r.prime_count, 0u);
    EXPECT_FALSE(r.min_gap.has_value());
    EXPECT_TRUE(r.histogram.empty());
}

TEST(MTuples, Examples) {
    const auto spec = ChebotarevSpec::congruence(8, {3}, kMod8);
    EXPECT_EQ(scan_m_tuples(spec, 20000, 1).min_span, scan(spec, 20000, 8).min_gap);
    const auto mod4 = ChebotarevSpec::congruence(4, {1}, GaloisContext(2, 1, -4, 4));
    const MTupleReport r = scan_m_tuples(mod4, 100000, 2);
    EXPECT_TRUE(r.sufficient);
    ASSERT_TRUE(r.min_span.has_value());
    EXPECT_EQ(r.min_pair->second - r.min_pair->first, *r.min_span);
    const auto lonely = ChebotarevSpec::congruence(1000, {997}, GaloisContext(1, 1, 1));
    const MTupleReport l = scan_m_tuples(lonely, 1500, 1);
    EXPECT_EQ(l.prime_count, 1u);
    EXPECT_FALSE(l.sufficient);
    EXPECT_FALSE(l.min_span.has_value());
}

TEST(Tau, ParityAndSmallestGap) {
    const GapReport r = tau_gap_scan(2, 10000, 100);
    EXPECT_EQ(r.prime_count, prime_count(10000) - 1);
    EXPECT_EQ(*r.min_gap, 2u);
    EXPECT_EQ(r.min_gap_pair, std::make_pair(u64(3), u64(5)));
    EXPECT_THROW(tau_spec(1, 1000), std::invalid_argument);
}

TEST(Tau, Mod691MembersSatisfySigma11) {
    const ChebotarevSpec s = tau_spec(691, 100000);
    u64 members = 0;
    for_each_prime(2, 100001, [&](u64 p) {
        const bool by_sigma = p != 691 && (1 + powmod(p % 691, 11, 691)) % 691 == 0;
        EXPECT_EQ(s.is_member(p), by_sigma) << p;
        members += by_sigma;
    });
    EXPECT_GT(members, 0u);
}

TEST(Csv, SummaryAndHistogram) {
    const auto spec = ChebotarevSpec::congruence(8, {3}, kMod8);
    const GapReport r = scan(spec, 1000, 4800);
    std::ostringstream a, b;
    write_summary_csv(a, r);
    write_histogram_csv(b, r);
    EXPECT_EQ(a.str().substr(0, a.str().find('\n')),
              "spec_id,x_limit,prime_count,min_gap,min_p1,min_p2,pairs_within_bound,bound_used");
    EXPECT_NE(a.str().find(",8,3,11,"), std::string::npos);
    EXPECT_EQ(b.str().rfind("gap,count\n", 0), 0u);
}
