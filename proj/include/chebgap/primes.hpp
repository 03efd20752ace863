#pragma once

// Prime generation: a segmented sieve of Eratosthenes, an immutable bit table
// with cumulative counts for pi(x) and nth-prime queries, primorials, and a
// checker for the explicit Dusart bounds on q_n and pi(n).

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <optional>
#include <stdexcept>
#include <thread>
#include <vector>

#include <gmpxx.h>

#include "chebgap/arith.hpp"

namespace chebgap {

inline constexpr std::size_t kDefaultSegmentSize = std::size_t(1) << 20;

// Primes <= limit by the plain sieve; used for sieving primes of segments.
inline std::vector<u64> small_primes(u64 limit) {
    std::vector<u64> out;
    if (limit < 2) return out;
    std::vector<bool> composite(limit + 1, false);
    for (u64 p = 2; p <= limit; ++p) {
        if (composite[p]) continue;
        out.push_back(p);
        for (u64 m = p * p; m <= limit; m += p) composite[m] = true;
    }
    return out;
}

// Calls visit(p) for each prime p in [lo, hi), ascending. Memory is one
// segment plus the primes up to sqrt(hi).
inline void for_each_prime(u64 lo, u64 hi, const std::function<void(u64)>& visit,
                           std::size_t segment_size = kDefaultSegmentSize) {
    if (lo >= hi) return;
    lo = std::max<u64>(lo, 2);
    if (lo >= hi) return;
    const auto base = small_primes(isqrt(hi - 1));
    std::vector<unsigned char> seg(segment_size);
    for (u64 start = lo; start < hi; start += segment_size) {
        const u64 end = std::min<u64>(hi, start + segment_size);
        const std::size_t len = end - start;
        std::fill(seg.begin(), seg.begin() + len, 1);
        for (u64 p : base) {
            if (p * p >= end) break;
            u64 first = std::max(p * p, (start + p - 1) / p * p);
            for (u64 m = first; m < end; m += p) seg[m - start] = 0;
        }
        for (std::size_t i = 0; i < len; ++i)
            if (seg[i]) visit(start + i);
    }
}

inline std::vector<u64> sieve_range(u64 lo, u64 hi, std::size_t segment_size = kDefaultSegmentSize) {
    if (lo >= hi) throw std::invalid_argument("sieve_range: require lo < hi");
    std::vector<u64> out;
    for_each_prime(lo, hi, [&](u64 p) { out.push_back(p); }, segment_size);
    return out;
}

// Splits [lo, hi) into `threads` disjoint intervals sieved independently.
inline std::vector<u64> sieve_range_parallel(u64 lo, u64 hi, unsigned threads) {
    if (lo >= hi) throw std::invalid_argument("sieve_range: require lo < hi");
    threads = std::max(1u, threads);
    if (threads == 1) return sieve_range(lo, hi);
    const u64 span = (hi - lo + threads - 1) / threads;
    std::vector<std::vector<u64>> parts(threads);
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) {
        const u64 a = lo + t * span;
        const u64 b = std::min(hi, a + span);
        if (a >= b) break;
        pool.emplace_back([&parts, t, a, b] {
            for_each_prime(a, b, [&](u64 p) { parts[t].push_back(p); });
        });
    }
    for (auto& th : pool) th.join();
    std::vector<u64> out;
    for (auto& part : parts) out.insert(out.end(), part.begin(), part.end());
    return out;
}

// Immutable primality bitmap over [0, limit] with per-word cumulative counts.
class PrimeTable {
public:
    explicit PrimeTable(u64 limit) : limit_(limit), words_(limit / 64 + 1, 0), prefix_(limit / 64 + 2, 0) {
        if (limit < 2) throw std::invalid_argument("PrimeTable: limit must be >= 2");
        for_each_prime(2, limit + 1, [this](u64 p) { words_[p / 64] |= u64(1) << (p % 64); });
        for (std::size_t w = 0; w < words_.size(); ++w)
            prefix_[w + 1] = prefix_[w] + std::popcount(words_[w]);
    }

    u64 limit() const { return limit_; }

    bool is_prime(u64 n) const {
        check(n);
        return (words_[n / 64] >> (n % 64)) & 1;
    }

    // pi(x) for x <= limit.
    u64 count(u64 x) const {
        check(x);
        const u64 w = x / 64;
        const unsigned bit = unsigned(x % 64);
        const u64 mask = bit == 63 ? ~u64(0) : ((u64(1) << (bit + 1)) - 1);
        return prefix_[w] + std::popcount(words_[w] & mask);
    }

    u64 total() const { return prefix_[words_.size()]; }

    // q_n, the n-th prime (q_1 = 2); requires n <= total().
    u64 nth(u64 n) const {
        if (n == 0 || n > total()) throw std::out_of_range("PrimeTable::nth: index outside table");
        // first word whose cumulative count reaches n
        const auto it = std::lower_bound(prefix_.begin() + 1, prefix_.end(), n);
        const std::size_t w = std::size_t(it - prefix_.begin()) - 1;
        u64 word = words_[w];
        for (u64 need = n - prefix_[w]; need > 1; --need) word &= word - 1;
        return w * 64 + std::countr_zero(word);
    }

    std::vector<u64> primes() const {
        std::vector<u64> out;
        out.reserve(total());
        for (std::size_t w = 0; w < words_.size(); ++w)
            for (u64 word = words_[w]; word; word &= word - 1) out.push_back(w * 64 + std::countr_zero(word));
        return out;
    }

private:
    void check(u64 n) const {
        if (n > limit_) throw std::out_of_range("PrimeTable: query above limit");
    }

    u64 limit_;
    std::vector<u64> words_;
    std::vector<u64> prefix_;
};

inline u64 prime_count(u64 x) {
    if (x < 2) return 0;
    u64 n = 0;
    for_each_prime(2, x + 1, [&](u64) { ++n; });
    return n;
}

// Sieve limit that safely contains q_n: the Dusart upper bound padded by 5%.
inline u64 nth_prime_upper_bound(u64 n) {
    if (n < 6) return 15;
    const double x = double(n);
    return u64(1.05 * x * (std::log(x) + std::log(std::log(x)))) + 100;
}

inline u64 nth_prime(u64 n) {
    if (n == 0) throw std::invalid_argument("nth_prime: n must be >= 1");
    return PrimeTable(nth_prime_upper_bound(n)).nth(n);
}

// Product of all primes <= d0; the empty product 1 when d0 < 2.
inline mpz_class primorial_below(u64 d0) {
    mpz_class w = 1;
    if (d0 < 2) return w;
    for (u64 p : small_primes(d0)) w *= static_cast<unsigned long>(p);
    return w;
}

struct DusartReport {
    u64 n_lo = 0;
    u64 n_hi = 0;
    bool nth_prime_ok = true;
    std::optional<u64> nth_prime_violation;
    // pi bound only applies for n >= 355991
    bool pi_checked = false;
    bool pi_ok = true;
    std::optional<u64> pi_violation;
    // smallest relative distance of q_n to either nth-prime bound
    double min_relative_slack = INFINITY;

    bool pass() const { return nth_prime_ok && pi_ok; }
};

inline constexpr u64 kDusartPiThreshold = 355991;
inline constexpr double kDusartMargin = 1e-9;

// Checks n log n + n loglog n - n < q_n < n log n + n loglog n for n in
// [n_lo, n_hi], and the two-sided pi(n) bound for n in [max(n_lo, 355991), n_hi].
// A bound is declared violated only when missed by more than 1e-9 relative.
inline DusartReport verify_dusart(u64 n_lo, u64 n_hi) {
    if (n_lo < 6) throw std::invalid_argument("verify_dusart: n_lo must be >= 6");
    if (n_hi < n_lo) throw std::invalid_argument("verify_dusart: n_hi < n_lo");
    DusartReport rep;
    rep.n_lo = n_lo;
    rep.n_hi = n_hi;
    const u64 table_limit = std::max(nth_prime_upper_bound(n_hi), n_hi + 1);
    const PrimeTable table(table_limit);

    for (u64 n = n_lo; n <= n_hi; ++n) {
        const double x = double(n);
        const double upper = x * std::log(x) + x * std::log(std::log(x));
        const double lower = upper - x;
        const double q = double(table.nth(n));
        const double tol = kDusartMargin * upper;
        rep.min_relative_slack = std::min(rep.min_relative_slack, std::min(q - lower, upper - q) / upper);
        if (!(q > lower - tol && q < upper + tol)) {
            rep.nth_prime_ok = false;
            rep.nth_prime_violation = n;
            break;
        }
    }

    const u64 pi_lo = std::max(n_lo, kDusartPiThreshold);
    if (pi_lo <= n_hi) {
        rep.pi_checked = true;
        for (u64 n = pi_lo; n <= n_hi; ++n) {
            const double x = double(n);
            const double l = std::log(x);
            const double lower = x / l * (1 + 1 / l);
            const double upper = x / l * (1 + 1 / l + 2.51 / (l * l));
            const double pi = double(table.count(n));
            const double tol = kDusartMargin * upper;
            if (!(pi >= lower - tol && pi <= upper + tol)) {
                rep.pi_ok = false;
                rep.pi_violation = n;
                break;
            }
        }
    }
    return rep;
}

}  // namespace chebgap
