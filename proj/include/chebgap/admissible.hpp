#pragma once

// Admissible k-tuples and the shifted-prime construction
// h_j = q_{pi(k) + j}, 1 <= j <= k, with its diameter bound 1.6 k log k.

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include <gmpxx.h>

#include "chebgap/arith.hpp"
#include "chebgap/primes.hpp"

namespace chebgap {

// Strictly increasing h_1 < ... < h_k. Equality compares the zero-normalized
// form, so tuples that differ by a translation are equal.
class Tuple {
public:
    explicit Tuple(std::vector<i64> elements) : elements_(std::move(elements)) {
        if (elements_.empty()) throw std::invalid_argument("Tuple: must be nonempty");
        std::sort(elements_.begin(), elements_.end());
        if (std::adjacent_find(elements_.begin(), elements_.end()) != elements_.end())
            throw std::invalid_argument("Tuple: elements must be distinct");
    }

    const std::vector<i64>& elements() const { return elements_; }
    std::size_t size() const { return elements_.size(); }
    i64 operator[](std::size_t i) const { return elements_[i]; }

    std::vector<i64> normalized() const {
        std::vector<i64> out(elements_);
        for (auto& h : out) h -= elements_.front();
        return out;
    }

    Tuple shifted(i64 c) const {
        std::vector<i64> out(elements_);
        for (auto& h : out) h += c;
        return Tuple(std::move(out));
    }

    friend bool operator==(const Tuple& a, const Tuple& b) { return a.normalized() == b.normalized(); }

private:
    std::vector<i64> elements_;
};

// True iff for every prime p <= k the residues h_i mod p miss a class.
// Primes p > k cannot be covered by k residues.
inline bool is_admissible(const std::vector<i64>& h) {
    const Tuple t(h);  // rejects duplicates
    const u64 k = t.size();
    std::vector<char> seen;
    for (u64 p : small_primes(k)) {
        seen.assign(p, 0);
        u64 distinct = 0;
        for (i64 x : t.elements()) {
            char& s = seen[floor_mod(x, p)];
            if (!s) {
                s = 1;
                ++distinct;
            }
        }
        if (distinct == p) return false;
    }
    return true;
}

inline bool is_admissible(const Tuple& t) { return is_admissible(t.elements()); }

// Table large enough for q_{pi(k) + k}.
inline PrimeTable shifted_tuple_table(u64 k_max) {
    return PrimeTable(std::max<u64>(nth_prime_upper_bound(prime_count(k_max) + k_max), 16));
}

inline Tuple shifted_prime_tuple(u64 k, const PrimeTable& table) {
    if (k < 1) throw std::invalid_argument("shifted_prime_tuple: k must be >= 1");
    const u64 base = k <= table.limit() ? table.count(k) : prime_count(k);
    std::vector<i64> h(k);
    for (u64 j = 1; j <= k; ++j) h[j - 1] = i64(table.nth(base + j));
    return Tuple(std::move(h));
}

inline Tuple shifted_prime_tuple(u64 k) { return shifted_prime_tuple(k, shifted_tuple_table(k)); }

inline i64 diameter(const Tuple& t) { return t.elements().back() - t.elements().front(); }

// prod_{i != j} (h_i - h_j)
inline mpz_class tuple_determinant(const Tuple& t) {
    mpz_class det = 1;
    const auto& h = t.elements();
    for (std::size_t i = 0; i < h.size(); ++i)
        for (std::size_t j = 0; j < h.size(); ++j)
            if (i != j) det *= static_cast<long>(h[i] - h[j]);
    return det;
}

struct DiameterReport {
    u64 k_lo = 0;
    u64 k_hi = 0;
    bool pass = true;
    std::optional<u64> first_failure;
    // smallest 1.6 k log k - diameter over the range, and where
    double min_slack = INFINITY;
    u64 min_slack_k = 0;
};

// diameter(shifted_prime_tuple(k)) <= 1.6 k log k for k in [k_lo, k_hi].
inline DiameterReport verify_diameter_bound(u64 k_lo, u64 k_hi) {
    if (k_lo < 213) throw std::invalid_argument("verify_diameter_bound: k_lo must be >= 213");
    if (k_hi < k_lo) throw std::invalid_argument("verify_diameter_bound: k_hi < k_lo");
    DiameterReport rep;
    rep.k_lo = k_lo;
    rep.k_hi = k_hi;
    const PrimeTable table = shifted_tuple_table(k_hi);
    for (u64 k = k_lo; k <= k_hi; ++k) {
        const u64 base = table.count(k);
        const double diam = double(table.nth(base + k) - table.nth(base + 1));
        const double bound = 1.6 * double(k) * std::log(double(k));
        const double slack = bound - diam;
        if (slack < rep.min_slack) {
            rep.min_slack = slack;
            rep.min_slack_k = k;
        }
        if (slack < 0 && rep.pass) {
            rep.pass = false;
            rep.first_failure = k;
        }
    }
    return rep;
}

}  // namespace chebgap
