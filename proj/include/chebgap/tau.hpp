#pragma once

// Ramanujan tau modulo d from Delta = q * prod_{n>=1} (1 - q^n)^24.
//
// prod (1 - q^n)^3 has the sparse Jacobi expansion
//     sum_{m>=0} (-1)^m (2m + 1) q^{m(m+1)/2},
// so the 24th power is assembled from that series. Two routes:
//   direct: eight multiplications by the sparse cube, O(L^1.5) each;
//   ntt:    sparse square to the 6th power, then two dense squarings by
//           number-theoretic transforms over three primes with CRT.
// All coefficient arithmetic is reduced mod d.

#include <algorithm>
#include <array>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "chebgap/arith.hpp"

namespace chebgap {

enum class TauMethod { automatic, direct, ntt };

namespace tau_detail {

struct SparseTerm {
    std::size_t degree;
    u64 coeff;
};

inline std::vector<SparseTerm> eta_cubed(std::size_t limit, u64 d) {
    std::vector<SparseTerm> out;
    for (u64 m = 0;; ++m) {
        const u64 deg = m * (m + 1) / 2;
        if (deg > limit) break;
        const u64 mag = (2 * m + 1) % d;
        const u64 c = (m % 2 == 0) ? mag : (d - mag) % d;
        if (c != 0) out.push_back({std::size_t(deg), c});
    }
    return out;
}

// Dense times sparse, truncated at degree limit.
inline std::vector<u64> mul_sparse(const std::vector<u64>& a, const std::vector<SparseTerm>& b,
                                   std::size_t limit, u64 d) {
    std::vector<u64> out(limit + 1, 0);
    for (const auto& t : b) {
        for (std::size_t i = 0; i + t.degree <= limit && i < a.size(); ++i) {
            if (a[i] == 0) continue;
            u64& slot = out[i + t.degree];
            slot = (slot + mulmod(a[i], t.coeff, d)) % d;
        }
    }
    return out;
}

struct NttPrime {
    std::uint32_t p;
    std::uint32_t g;
};

inline constexpr std::array<NttPrime, 3> kNttPrimes{{{167772161u, 3u}, {469762049u, 3u}, {2013265921u, 31u}}};

inline void ntt(std::vector<std::uint32_t>& a, bool invert, std::uint32_t p, std::uint32_t g) {
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        u64 w = powmod(g, (p - 1) / len, p);
        if (invert) w = powmod(w, p - 2, p);
        for (std::size_t i = 0; i < n; i += len) {
            u64 wn = 1;
            for (std::size_t j = 0; j < len / 2; ++j) {
                const u64 u = a[i + j];
                const u64 v = a[i + j + len / 2] * wn % p;
                a[i + j] = std::uint32_t((u + v) % p);
                a[i + j + len / 2] = std::uint32_t((u + p - v) % p);
                wn = wn * w % p;
            }
        }
    }
    if (invert) {
        const u64 inv_n = powmod(n % p, p - 2, p);
        for (auto& x : a) x = std::uint32_t(x * inv_n % p);
    }
}

// a^2 mod d truncated at degree limit; needs d < 2^30 and limit < 2^24 so
// the integer convolution stays below the product of the three primes.
inline std::vector<u64> square_ntt(const std::vector<u64>& a, std::size_t limit, u64 d) {
    std::size_t size = 1;
    while (size < 2 * (limit + 1)) size <<= 1;
    std::array<std::vector<std::uint32_t>, 3> residues;
    for (std::size_t k = 0; k < 3; ++k) {
        const auto [p, g] = kNttPrimes[k];
        std::vector<std::uint32_t> buf(size, 0);
        for (std::size_t i = 0; i <= limit && i < a.size(); ++i) buf[i] = std::uint32_t(a[i] % p);
        ntt(buf, false, p, g);
        for (auto& x : buf) x = std::uint32_t(u64(x) * x % p);
        ntt(buf, true, p, g);
        buf.resize(limit + 1);
        residues[k] = std::move(buf);
    }
    const u64 p1 = kNttPrimes[0].p, p2 = kNttPrimes[1].p, p3 = kNttPrimes[2].p;
    const u64 inv_p1_mod_p2 = powmod(p1 % p2, p2 - 2, p2);
    const u64 p1p2_mod_p3 = mulmod(p1, p2, p3);
    const u64 inv_p1p2_mod_p3 = powmod(p1p2_mod_p3, p3 - 2, p3);
    std::vector<u64> out(limit + 1);
    for (std::size_t i = 0; i <= limit; ++i) {
        const u64 r1 = residues[0][i], r2 = residues[1][i], r3 = residues[2][i];
        const u64 t2 = mulmod((r2 + p2 - r1 % p2) % p2, inv_p1_mod_p2, p2);
        const u64 x12_mod_p3 = (r1 % p3 + mulmod(p1 % p3, t2, p3)) % p3;
        const u64 t3 = mulmod((r3 + p3 - x12_mod_p3) % p3, inv_p1p2_mod_p3, p3);
        const unsigned __int128 x = (unsigned __int128)r1 + (unsigned __int128)p1 * t2 +
                                    (unsigned __int128)p1 * p2 * t3;
        out[i] = u64(x % d);
    }
    return out;
}

}  // namespace tau_detail

// Entry n (1 <= n <= limit) is tau(n) mod d; entry 0 is unused and zero.
inline std::vector<u64> tau_mod_stream(u64 d, std::size_t limit, TauMethod method = TauMethod::automatic) {
    using namespace tau_detail;
    if (d < 2) throw std::invalid_argument("tau_mod_stream: modulus must be >= 2");
    if (limit < 1) throw std::invalid_argument("tau_mod_stream: limit must be >= 1");
    const std::size_t deg = limit - 1;  // Delta's q-shift
    const auto cube = eta_cubed(deg, d);
    if (method == TauMethod::automatic)
        method = (limit > 20000 && d < (u64(1) << 30) && limit < (std::size_t(1) << 24)) ? TauMethod::ntt
                                                                                         : TauMethod::direct;
    if (method == TauMethod::ntt && (d >= (u64(1) << 30) || limit >= (std::size_t(1) << 24)))
        throw std::invalid_argument("tau_mod_stream: ntt route needs d < 2^30 and limit < 2^24");

    std::vector<u64> power(deg + 1, 0);
    power[0] = 1 % d;
    if (method == TauMethod::direct) {
        for (int i = 0; i < 8; ++i) power = mul_sparse(power, cube, deg, d);
    } else {
        power = mul_sparse(mul_sparse(power, cube, deg, d), cube, deg, d);  // 6th power
        power = square_ntt(power, deg, d);                                  // 12th
        power = square_ntt(power, deg, d);                                  // 24th
    }
    std::vector<u64> out(limit + 1, 0);
    for (std::size_t n = 1; n <= limit; ++n) out[n] = power[n - 1];
    return out;
}

}  // namespace chebgap
