#pragma once

// Elementary multiplicative number theory on 64-bit integers: trial-division
// factorization, Euler's totient, radical, Moebius, and modular helpers.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace chebgap {

using u64 = std::uint64_t;
using i64 = std::int64_t;

struct PrimePower {
    u64 prime;
    int exponent;
};

inline std::vector<PrimePower> factorize(u64 n) {
    if (n == 0) throw std::invalid_argument("factorize: n must be positive");
    std::vector<PrimePower> out;
    auto strip = [&](u64 p) {
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        if (e > 0) out.push_back({p, e});
    };
    strip(2);
    strip(3);
    for (u64 p = 5; p <= n / p; p += 6) {
        strip(p);
        strip(p + 2);
    }
    if (n > 1) out.push_back({n, 1});
    return out;
}

inline u64 euler_phi(u64 n) {
    if (n == 0) throw std::invalid_argument("euler_phi: n must be positive");
    u64 phi = n;
    for (const auto& [p, e] : factorize(n)) phi = phi / p * (p - 1);
    return phi;
}

inline u64 radical(u64 n) {
    u64 r = 1;
    for (const auto& [p, e] : factorize(n)) r *= p;
    return r;
}

inline int mobius(u64 n) {
    int mu = 1;
    for (const auto& [p, e] : factorize(n)) {
        if (e > 1) return 0;
        mu = -mu;
    }
    return mu;
}

inline u64 abs_u64(i64 v) { return v < 0 ? u64(0) - u64(v) : u64(v); }

// Representative of a mod m in [0, m).
inline u64 floor_mod(i64 a, u64 m) {
    const i64 r = a % i64(m);
    return r < 0 ? u64(r + i64(m)) : u64(r);
}

inline u64 mulmod(u64 a, u64 b, u64 m) {
    return u64((unsigned __int128)a * b % m);
}

inline u64 powmod(u64 base, u64 exp, u64 m) {
    u64 result = 1 % m;
    base %= m;
    while (exp > 0) {
        if (exp & 1) result = mulmod(result, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return result;
}

inline bool is_prime_trial(u64 n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (u64 d = 3; d <= n / d; d += 2)
        if (n % d == 0) return false;
    return true;
}

inline u64 isqrt(u64 n) {
    u64 r = std::min<u64>(u64(__builtin_sqrtl((long double)n)), 0xFFFFFFFFull);
    while (r * r > n) --r;
    while (r < 0xFFFFFFFFull && (r + 1) * (r + 1) <= n) ++r;
    return r;
}

}  // namespace chebgap
