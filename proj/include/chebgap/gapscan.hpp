#pragma once

// Gaps between consecutive members of a Chebotarev set up to a height.

#include <algorithm>
#include <deque>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "chebgap/arith.hpp"
#include "chebgap/chebsets.hpp"
#include "chebgap/primes.hpp"
#include "chebgap/tau.hpp"

namespace chebgap {

inline constexpr u64 kHistogramCap = 1000000;  // gaps above this land in the overflow bucket

struct GapReport {
    std::string spec_id;
    u64 x_limit = 0;
    u64 prime_count = 0;
    std::optional<u64> min_gap;
    std::optional<std::pair<u64, u64>> min_gap_pair;
    u64 pairs_within_bound = 0;
    u64 bound_used = 0;
    std::map<u64, u64> histogram;
    u64 overflow = 0;  // gaps > kHistogramCap
};

namespace gapscan_detail {

struct Chunk {
    std::optional<u64> first, last;
    u64 count = 0;
    std::optional<u64> min_gap;
    std::optional<std::pair<u64, u64>> min_pair;
    u64 within = 0;
    std::map<u64, u64> histogram;
    u64 overflow = 0;

    void add_gap(u64 p, u64 q, u64 bound) {
        const u64 g = q - p;
        if (!min_gap || g < *min_gap) {
            min_gap = g;
            min_pair = {p, q};
        }
        if (g <= bound) ++within;
        if (g <= kHistogramCap)
            ++histogram[g];
        else
            ++overflow;
    }

    void add_member(u64 p, u64 bound) {
        if (last) add_gap(*last, p, bound);
        if (!first) first = p;
        last = p;
        ++count;
    }
};

inline Chunk scan_chunk(const ChebotarevSpec& spec, u64 lo, u64 hi, u64 bound) {
    Chunk c;
    if (lo < hi) for_each_prime(lo, hi, [&](u64 p) {
            if (spec.is_member(p)) c.add_member(p, bound);
        });
    return c;
}

// Appends b after a; the gap across the seam is counted here.
inline void merge_into(Chunk& a, const Chunk& b, u64 bound) {
    if (!b.first) return;
    if (a.last) a.add_gap(*a.last, *b.first, bound);
    if (!a.first) a.first = b.first;
    a.last = b.last;
    a.count += b.count;
    if (b.min_gap && (!a.min_gap || *b.min_gap < *a.min_gap)) {
        a.min_gap = b.min_gap;
        a.min_pair = b.min_pair;
    }
    a.within += b.within;
    for (const auto& [g, n] : b.histogram) a.histogram[g] += n;
    a.overflow += b.overflow;
}

}  // namespace gapscan_detail

inline GapReport scan(const ChebotarevSpec& spec, u64 x_limit, u64 bound, unsigned threads = 1) {
    using namespace gapscan_detail;
    if (x_limit < 1000) throw std::invalid_argument("scan: x_limit must be >= 1000");
    if (x_limit > spec.decidable_limit()) throw std::invalid_argument("scan: x_limit beyond the decidable range");
    threads = std::max(1u, threads);
    const u64 hi = x_limit + 1;
    std::vector<Chunk> chunks(threads);
    if (threads == 1) {
        chunks[0] = scan_chunk(spec, 2, hi, bound);
    } else {
        const u64 width = (hi - 2 + threads - 1) / threads;
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) {
            const u64 lo = std::min(hi, 2 + t * width), top = std::min(hi, lo + width);
            pool.emplace_back([&, t, lo, top] { chunks[t] = scan_chunk(spec, lo, top, bound); });
        }
        for (auto& th : pool) th.join();
    }
    Chunk total;
    for (const auto& c : chunks) merge_into(total, c, bound);

    GapReport rep;
    rep.spec_id = spec.id();
    rep.x_limit = x_limit;
    rep.prime_count = total.count;
    rep.min_gap = total.min_gap;
    rep.min_gap_pair = total.min_pair;
    rep.pairs_within_bound = total.within;
    rep.bound_used = bound;
    rep.histogram = std::move(total.histogram);
    rep.overflow = total.overflow;
    return rep;
}

struct MTupleReport {
    std::string spec_id;
    u64 x_limit = 0;
    u64 m = 0;
    u64 prime_count = 0;
    bool sufficient = false;  // more than m members found
    std::optional<u64> min_span;  // min q_{n+m} - q_n
    std::optional<std::pair<u64, u64>> min_pair;
};

inline MTupleReport scan_m_tuples(const ChebotarevSpec& spec, u64 x_limit, u64 m) {
    if (m < 1) throw std::invalid_argument("scan_m_tuples: m must be >= 1");
    if (x_limit > spec.decidable_limit()) throw std::invalid_argument("scan_m_tuples: x_limit beyond the decidable range");
    MTupleReport rep;
    rep.spec_id = spec.id();
    rep.x_limit = x_limit;
    rep.m = m;
    std::deque<u64> window;
    for_each_prime(2, x_limit + 1, [&](u64 p) {
        if (!spec.is_member(p)) return;
        ++rep.prime_count;
        window.push_back(p);
        if (window.size() > m + 1) window.pop_front();
        if (window.size() == m + 1) {
            const u64 span = window.back() - window.front();
            if (!rep.min_span || span < *rep.min_span) {
                rep.min_span = span;
                rep.min_pair = {window.front(), window.back()};
            }
        }
    });
    rep.sufficient = rep.prime_count > m;
    return rep;
}

// Primes p with tau(p) = 0 mod d, excluding p | d.
inline ChebotarevSpec tau_spec(u64 d, u64 x_limit) {
    if (d < 2) throw std::invalid_argument("tau_spec: modulus must be >= 2");
    if (x_limit > 10000000) throw std::invalid_argument("tau_spec: x_limit above 10^7");
    auto stream = std::make_shared<const std::vector<u64>>(tau_mod_stream(d, x_limit));
    // The Galois data of the mod-d representation is not needed to decide membership.
    return ChebotarevSpec::newform_congruence(d, 0, 1, std::move(stream), GaloisContext(1, 1, 1));
}

inline GapReport tau_gap_scan(u64 d, u64 x_limit, u64 bound = ~u64(0), unsigned threads = 1) {
    return scan(tau_spec(d, x_limit), x_limit, bound, threads);
}

// CSV: one summary row, and the histogram as (gap, count) rows.
inline void write_summary_csv(std::ostream& os, const GapReport& r) {
    os << "spec_id,x_limit,prime_count,min_gap,min_p1,min_p2,pairs_within_bound,bound_used\n";
    os << r.spec_id << ',' << r.x_limit << ',' << r.prime_count << ',';
    if (r.min_gap)
        os << *r.min_gap << ',' << r.min_gap_pair->first << ',' << r.min_gap_pair->second;
    else
        os << ",,";
    os << ',' << r.pairs_within_bound << ',' << r.bound_used << '\n';
}

inline void write_histogram_csv(std::ostream& os, const GapReport& r) {
    os << "gap,count\n";
    for (const auto& [g, n] : r.histogram) os << g << ',' << n << '\n';
    if (r.overflow) os << "overflow," << r.overflow << '\n';
}

}  // namespace chebgap
