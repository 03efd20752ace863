#pragma once

// Polynomials on the simplex R_k = {t in [0,1]^k : t_1 + ... + t_k <= 1} with
// exact rational integration.
//
// A term is c * (1 - P1)^A * t^alpha with P1 = t_1 + ... + t_k. In dense form
// alpha is an exponent vector of length k; in symmetric form alpha is a
// partition lambda and t^alpha stands for the monomial symmetric function
// m_lambda(t_1, ..., t_k). Everything rests on the Dirichlet integral
//
//     int_{R_n} (1 - P1)^A prod t_i^{a_i} dt = A! prod a_i! / (n + |a| + A)!
//
// and on integrating one variable t_i from 0 to 1 - (sum of the others):
//
//     int_0^L (L - t)^A t^e dt = A! e! / (A + e + 1)! * L^(A + e + 1),
//
// which maps (1 - P1)^A t^alpha in k variables to a single term
// (1 - P1')^(A + a_i + 1) t'^alpha' in the remaining k - 1 variables. For
// m_lambda the integrated variable either carries one of the parts of lambda
// or carries exponent zero, so the symmetric form is closed under the same
// operation and never has to be expanded.

#include <algorithm>
#include <compare>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "chebgap/numeric.hpp"

namespace chebgap {

using Partition = std::vector<int>;  // descending, positive parts

inline BigInt factorial(unsigned long n) {
    BigInt f;
    mpz_fac_ui(f.get_mpz_t(), n);
    return f;
}

inline Partition normalize_partition(std::vector<int> parts) {
    parts.erase(std::remove(parts.begin(), parts.end(), 0), parts.end());
    if (std::any_of(parts.begin(), parts.end(), [](int p) { return p < 0; }))
        throw std::invalid_argument("partition parts must be non-negative");
    std::sort(parts.begin(), parts.end(), std::greater<>());
    return parts;
}

// Number of distinct exponent vectors in n variables that rearrange lambda.
inline BigInt arrangements(const Partition& lambda, int n) {
    const int len = int(lambda.size());
    if (len > n) return 0;
    BigInt r = factorial(n) / factorial(n - len);
    for (std::size_t i = 0; i < lambda.size();) {
        std::size_t j = i;
        while (j < lambda.size() && lambda[j] == lambda[i]) ++j;
        r /= factorial(j - i);
        i = j;
    }
    return r;
}

namespace simplex_detail {

// Visits every distinct vector of length `slots` whose nonzero entries
// rearrange `parts`, subject to entry <= cap[pos].
template <typename Visit>
void for_each_arrangement(const Partition& parts, int slots, const std::vector<int>& cap, Visit&& visit) {
    std::vector<int> values;
    std::vector<int> counts;
    for (int p : parts) {
        if (values.empty() || values.back() != p) {
            values.push_back(p);
            counts.push_back(0);
        }
        ++counts.back();
    }
    int zeros = slots - int(parts.size());
    if (zeros < 0) return;
    std::vector<int> current(slots, 0);
    auto rec = [&](auto&& self, int pos) -> void {
        if (pos == slots) {
            visit(current);
            return;
        }
        if (zeros > 0) {
            --zeros;
            current[pos] = 0;
            self(self, pos + 1);
            ++zeros;
        }
        for (std::size_t v = 0; v < values.size(); ++v) {
            if (counts[v] == 0 || values[v] > cap[pos]) continue;
            --counts[v];
            current[pos] = values[v];
            self(self, pos + 1);
            ++counts[v];
        }
        current[pos] = 0;
    };
    rec(rec, 0);
}

struct ProductTerm {
    Partition nu;
    BigInt coeff;
};

// Structure constants m_lambda * m_mu = sum_nu c_nu m_nu, valid in any number
// of variables n >= len(nu) (terms with len(nu) > n vanish there).
inline std::vector<ProductTerm> compute_monomial_product(const Partition& lambda, const Partition& mu) {
    const int n = int(lambda.size() + mu.size());
    std::vector<int> base(n, 0);
    std::copy(lambda.begin(), lambda.end(), base.begin());
    std::vector<Partition> candidates;
    const std::vector<int> no_cap(n, 1 << 30);
    for_each_arrangement(mu, n, no_cap, [&](const std::vector<int>& beta) {
        std::vector<int> sum(n);
        for (int i = 0; i < n; ++i) sum[i] = base[i] + beta[i];
        candidates.push_back(normalize_partition(std::move(sum)));
    });
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    std::vector<ProductTerm> out;
    for (const auto& nu : candidates) {
        const int len = int(nu.size());
        BigInt count = 0;
        for_each_arrangement(mu, len, nu, [&](const std::vector<int>& beta) {
            std::vector<int> rest(len);
            for (int i = 0; i < len; ++i) rest[i] = nu[i] - beta[i];
            if (normalize_partition(std::move(rest)) == lambda) ++count;
        });
        if (count != 0) out.push_back({nu, count});
    }
    return out;
}

inline const std::vector<ProductTerm>& monomial_product(const Partition& lambda, const Partition& mu) {
    static std::mutex mutex;
    static std::map<std::pair<Partition, Partition>, std::vector<ProductTerm>> cache;
    auto key = lambda < mu ? std::make_pair(lambda, mu) : std::make_pair(mu, lambda);
    std::lock_guard lock(mutex);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, compute_monomial_product(key.first, key.second)).first;
    return it->second;
}

}  // namespace simplex_detail

enum class PolyForm { dense, symmetric };

struct TermKey {
    int simplex_power = 0;       // A in (1 - P1)^A
    std::vector<int> exponents;  // dense: length k; symmetric: partition

    auto operator<=>(const TermKey&) const = default;
};

class SimplexPolynomial {
public:
    using TermMap = std::map<TermKey, Rational>;

    SimplexPolynomial(int k, PolyForm form) : k_(k), form_(form) {
        if (k < 1) throw std::invalid_argument("SimplexPolynomial: dimension must be >= 1");
    }

    static SimplexPolynomial dense(int k) { return {k, PolyForm::dense}; }
    static SimplexPolynomial symmetric(int k) { return {k, PolyForm::symmetric}; }

    static SimplexPolynomial constant(int k, const Rational& c, PolyForm form = PolyForm::symmetric) {
        SimplexPolynomial f(k, form);
        f.add_term(0, form == PolyForm::dense ? std::vector<int>(k, 0) : std::vector<int>{}, c);
        return f;
    }

    // t_i (0-based), dense form.
    static SimplexPolynomial coordinate(int k, int i) {
        if (i < 0 || i >= k) throw std::out_of_range("coordinate: index out of range");
        SimplexPolynomial f(k, PolyForm::dense);
        std::vector<int> e(k, 0);
        e[i] = 1;
        f.add_term(0, std::move(e), 1);
        return f;
    }

    // 1 - (t_1 + ... + t_k)
    static SimplexPolynomial one_minus_sum(int k, PolyForm form = PolyForm::symmetric) {
        SimplexPolynomial f(k, form);
        f.add_term(1, form == PolyForm::dense ? std::vector<int>(k, 0) : std::vector<int>{}, 1);
        return f;
    }

    // m_lambda, symmetric form.
    static SimplexPolynomial monomial_symmetric(int k, const Partition& lambda) {
        SimplexPolynomial f(k, PolyForm::symmetric);
        f.add_term(0, lambda, 1);
        return f;
    }

    int dimension() const { return k_; }
    PolyForm form() const { return form_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(int simplex_power, std::vector<int> exponents, const Rational& c) {
        if (simplex_power < 0) throw std::invalid_argument("add_term: negative simplex power");
        if (form_ == PolyForm::dense) {
            if (int(exponents.size()) != k_) throw std::invalid_argument("add_term: exponent vector length must be k");
            if (std::any_of(exponents.begin(), exponents.end(), [](int e) { return e < 0; }))
                throw std::invalid_argument("add_term: negative exponent");
        } else {
            exponents = normalize_partition(std::move(exponents));
            if (int(exponents.size()) > k_) return;  // m_lambda vanishes in fewer than len(lambda) variables
        }
        if (c == 0) return;
        TermKey key{simplex_power, std::move(exponents)};
        auto [it, inserted] = terms_.try_emplace(std::move(key), c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    SimplexPolynomial& operator+=(const SimplexPolynomial& o) {
        check_compatible(o);
        for (const auto& [key, c] : o.terms_) add_term(key.simplex_power, key.exponents, c);
        return *this;
    }

    SimplexPolynomial& operator-=(const SimplexPolynomial& o) { return *this += o * Rational(-1); }

    friend SimplexPolynomial operator+(SimplexPolynomial a, const SimplexPolynomial& b) { return a += b; }
    friend SimplexPolynomial operator-(SimplexPolynomial a, const SimplexPolynomial& b) { return a -= b; }

    friend SimplexPolynomial operator*(const SimplexPolynomial& f, const Rational& s) {
        SimplexPolynomial out(f.k_, f.form_);
        if (s == 0) return out;
        for (const auto& [key, c] : f.terms_) out.terms_.emplace(key, c * s);
        return out;
    }
    friend SimplexPolynomial operator*(const Rational& s, const SimplexPolynomial& f) { return f * s; }

    friend SimplexPolynomial operator*(const SimplexPolynomial& f, const SimplexPolynomial& g) {
        f.check_compatible(g);
        SimplexPolynomial out(f.k_, f.form_);
        for (const auto& [kf, cf] : f.terms_)
            for (const auto& [kg, cg] : g.terms_) {
                const int power = kf.simplex_power + kg.simplex_power;
                if (f.form_ == PolyForm::dense) {
                    std::vector<int> e(f.k_);
                    for (int i = 0; i < f.k_; ++i) e[i] = kf.exponents[i] + kg.exponents[i];
                    out.add_term(power, std::move(e), cf * cg);
                } else {
                    for (const auto& t : simplex_detail::monomial_product(kf.exponents, kg.exponents))
                        if (int(t.nu.size()) <= f.k_) out.add_term(power, t.nu, cf * cg * Rational(t.coeff));
                }
            }
        return out;
    }

    SimplexPolynomial pow(int e) const {
        if (e < 0) throw std::invalid_argument("pow: negative exponent");
        SimplexPolynomial out = constant(k_, 1, form_);
        for (int i = 0; i < e; ++i) out = out * *this;
        return out;
    }

    // Value at a point; T is double or Rational. The polynomial is evaluated
    // as written, without truncation to the simplex.
    template <typename T>
    T evaluate(std::span<const T> t) const {
        if (int(t.size()) != k_) throw std::invalid_argument("evaluate: point dimension mismatch");
        T sum = T(0);
        for (const auto& x : t) sum += x;
        const T slack = T(1) - sum;
        T total = T(0);
        for (const auto& [key, c] : terms_) {
            T v = to_scalar<T>(c);
            for (int a = 0; a < key.simplex_power; ++a) v *= slack;
            if (form_ == PolyForm::dense) {
                for (int i = 0; i < k_; ++i)
                    for (int e = 0; e < key.exponents[i]; ++e) v *= t[i];
            } else {
                v *= monomial_symmetric_value<T>(key.exponents, t);
            }
            total += v;
        }
        return total;
    }

    // Expands symmetric form into dense form (feasible for small k).
    SimplexPolynomial to_dense() const {
        if (form_ == PolyForm::dense) return *this;
        SimplexPolynomial out(k_, PolyForm::dense);
        const std::vector<int> no_cap(k_, 1 << 30);
        for (const auto& [key, c] : terms_)
            simplex_detail::for_each_arrangement(key.exponents, k_, no_cap, [&](const std::vector<int>& alpha) {
                out.add_term(key.simplex_power, alpha, c);
            });
        return out;
    }

    // Symmetric form of a dense polynomial, or nullopt when it is not symmetric.
    std::optional<SimplexPolynomial> to_symmetric() const {
        if (form_ == PolyForm::symmetric) return *this;
        const SimplexPolynomial plain = expanded();
        SimplexPolynomial out(k_, PolyForm::symmetric);
        for (const auto& [key, c] : plain.terms_) {
            TermKey sorted{key.simplex_power, normalize_partition(key.exponents)};
            auto it = out.terms_.find(sorted);
            if (it == out.terms_.end()) {
                out.terms_.emplace(std::move(sorted), c);
            } else if (it->second != c) {
                return std::nullopt;
            }
        }
        if (out.to_dense().expanded() != plain) return std::nullopt;
        return out;
    }

    // Dense form with every (1 - P1)^A multiplied out, so all simplex powers
    // are zero. This representation is unique.
    SimplexPolynomial expanded() const {
        const SimplexPolynomial dense_form = to_dense();
        SimplexPolynomial slack = constant(k_, 1, PolyForm::dense);
        for (int i = 0; i < k_; ++i) slack -= coordinate(k_, i);
        std::map<int, SimplexPolynomial> slack_powers;
        SimplexPolynomial out(k_, PolyForm::dense);
        for (const auto& [key, c] : dense_form.terms_) {
            auto it = slack_powers.find(key.simplex_power);
            if (it == slack_powers.end()) it = slack_powers.emplace(key.simplex_power, slack.pow(key.simplex_power)).first;
            for (const auto& [sk, sc] : it->second.terms_) {
                std::vector<int> e(k_);
                for (int i = 0; i < k_; ++i) e[i] = key.exponents[i] + sk.exponents[i];
                out.add_term(0, std::move(e), c * sc);
            }
        }
        return out;
    }

    friend bool operator==(const SimplexPolynomial& a, const SimplexPolynomial& b) {
        return a.k_ == b.k_ && a.form_ == b.form_ && a.terms_ == b.terms_;
    }

private:
    template <typename T>
    static T to_scalar(const Rational& c) {
        if constexpr (std::is_same_v<T, double>)
            return c.get_d();
        else
            return T(c);
    }

    // m_lambda(t) by a pass over the variables with the multiset of unused parts as state.
    template <typename T>
    static T monomial_symmetric_value(const Partition& lambda, std::span<const T> t) {
        std::vector<int> values, counts;
        for (int p : lambda) {
            if (values.empty() || values.back() != p) {
                values.push_back(p);
                counts.push_back(0);
            }
            ++counts.back();
        }
        // state index: mixed radix over counts[v] + 1
        std::vector<std::size_t> radix(values.size() + 1, 1);
        for (std::size_t v = 0; v < values.size(); ++v) radix[v + 1] = radix[v] * std::size_t(counts[v] + 1);
        const std::size_t states = radix.back();
        std::vector<T> dp(states, T(0)), next(states, T(0));
        dp[states - 1] = T(1);  // all parts still to place
        for (const T& x : t) {
            std::vector<T> powers(values.empty() ? 1 : std::size_t(values.front()) + 1, T(1));
            for (std::size_t e = 1; e < powers.size(); ++e) powers[e] = powers[e - 1] * x;
            next = dp;
            for (std::size_t s = 0; s < states; ++s) {
                if (dp[s] == T(0)) continue;
                for (std::size_t v = 0; v < values.size(); ++v) {
                    const std::size_t have = (s / radix[v]) % std::size_t(counts[v] + 1);
                    if (have == 0) continue;
                    next[s - radix[v]] += dp[s] * powers[values[v]];
                }
            }
            std::swap(dp, next);
        }
        return dp[0];
    }

    void check_compatible(const SimplexPolynomial& o) const {
        if (k_ != o.k_) throw std::invalid_argument("SimplexPolynomial: dimension mismatch");
        if (form_ != o.form_) throw std::invalid_argument("SimplexPolynomial: form mismatch");
    }

    int k_;
    PolyForm form_;
    TermMap terms_;
};

// --- integration ---------------------------------------------------------

namespace simplex_detail {

inline Rational dirichlet_dense(int n, int simplex_power, const std::vector<int>& alpha) {
    BigInt num = factorial(simplex_power);
    long degree = simplex_power;
    for (int a : alpha) {
        num *= factorial(a);
        degree += a;
    }
    Rational q(num, factorial(n + degree));
    q.canonicalize();
    return q;
}

inline Rational dirichlet_symmetric(int n, int simplex_power, const Partition& lambda) {
    static std::mutex mutex;
    static std::map<std::tuple<int, int, Partition>, Rational> cache;
    std::tuple<int, int, Partition> key{n, simplex_power, lambda};
    {
        std::lock_guard lock(mutex);
        if (auto it = cache.find(key); it != cache.end()) return it->second;
    }
    const BigInt count = arrangements(lambda, n);
    Rational v = count == 0 ? Rational(0) : Rational(count) * dirichlet_dense(n, simplex_power, lambda);
    v.canonicalize();
    std::lock_guard lock(mutex);
    cache.emplace(std::move(key), v);
    return v;
}

}  // namespace simplex_detail

// int_{R_k} f dt
inline Rational integrate(const SimplexPolynomial& f) {
    Rational total = 0;
    const int n = f.dimension();
    for (const auto& [key, c] : f.terms()) {
        total += c * (f.form() == PolyForm::dense ? simplex_detail::dirichlet_dense(n, key.simplex_power, key.exponents)
                                                  : simplex_detail::dirichlet_symmetric(n, key.simplex_power, key.exponents));
    }
    return total;
}

// int_{R_k} f g dt without materializing f g.
inline Rational integrate_product(const SimplexPolynomial& f, const SimplexPolynomial& g) {
    if (f.dimension() != g.dimension() || f.form() != g.form())
        throw std::invalid_argument("integrate_product: incompatible polynomials");
    const int n = f.dimension();
    Rational total = 0;
    for (const auto& [kf, cf] : f.terms())
        for (const auto& [kg, cg] : g.terms()) {
            const int power = kf.simplex_power + kg.simplex_power;
            if (f.form() == PolyForm::dense) {
                std::vector<int> e(n);
                for (int i = 0; i < n; ++i) e[i] = kf.exponents[i] + kg.exponents[i];
                total += cf * cg * simplex_detail::dirichlet_dense(n, power, e);
            } else {
                Rational inner = 0;
                for (const auto& t : simplex_detail::monomial_product(kf.exponents, kg.exponents))
                    if (int(t.nu.size()) <= n)
                        inner += Rational(t.coeff) * simplex_detail::dirichlet_symmetric(n, power, t.nu);
                total += cf * cg * inner;
            }
        }
    return total;
}

// A polynomial in the k - 1 variables other than t_i, together with its
// dimension (which may be 0 when k = 1: the single point R_0).
struct ReducedPolynomial {
    int dimension;
    PolyForm form;
    SimplexPolynomial::TermMap terms;
};

// int_0^{1 - sum_{j != i} t_j} f dt_i, as a polynomial in the other variables.
inline ReducedPolynomial integrate_out(const SimplexPolynomial& f, int i) {
    const int k = f.dimension();
    if (i < 0 || i >= k) throw std::out_of_range("integrate_out: variable index out of range");
    ReducedPolynomial out{k - 1, f.form(), {}};
    auto add = [&](int power, std::vector<int> e, const Rational& c) {
        if (c == 0) return;
        auto [it, inserted] = out.terms.try_emplace(TermKey{power, std::move(e)}, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) out.terms.erase(it);
        }
    };
    auto weight = [](int a, int e) {
        Rational w(factorial(a) * factorial(e), factorial(a + e + 1));
        w.canonicalize();
        return w;
    };
    for (const auto& [key, c] : f.terms()) {
        const int a = key.simplex_power;
        if (f.form() == PolyForm::dense) {
            const int e = key.exponents[i];
            std::vector<int> rest;
            rest.reserve(k - 1);
            for (int j = 0; j < k; ++j)
                if (j != i) rest.push_back(key.exponents[j]);
            add(a + e + 1, std::move(rest), c * weight(a, e));
        } else {
            const Partition& lambda = key.exponents;
            for (std::size_t j = 0; j < lambda.size(); ++j) {
                if (j > 0 && lambda[j] == lambda[j - 1]) continue;
                Partition rest(lambda);
                rest.erase(rest.begin() + long(j));
                add(a + lambda[j] + 1, std::move(rest), c * weight(a, lambda[j]));
            }
            if (int(lambda.size()) <= k - 1) add(a + 1, lambda, c * weight(a, 0));
        }
    }
    return out;
}

// int_{R_n} f g over reduced polynomials of equal dimension n >= 0.
inline Rational integrate_product(const ReducedPolynomial& f, const ReducedPolynomial& g) {
    if (f.dimension != g.dimension || f.form != g.form)
        throw std::invalid_argument("integrate_product: incompatible reduced polynomials");
    const int n = f.dimension;
    Rational total = 0;
    for (const auto& [kf, cf] : f.terms)
        for (const auto& [kg, cg] : g.terms) {
            const int power = kf.simplex_power + kg.simplex_power;
            if (f.form == PolyForm::dense) {
                std::vector<int> e(n);
                for (int i = 0; i < n; ++i) e[i] = kf.exponents[i] + kg.exponents[i];
                total += cf * cg * simplex_detail::dirichlet_dense(n, power, e);
            } else {
                Rational inner = 0;
                for (const auto& t : simplex_detail::monomial_product(kf.exponents, kg.exponents))
                    if (int(t.nu.size()) <= n)
                        inner += Rational(t.coeff) * simplex_detail::dirichlet_symmetric(n, power, t.nu);
                total += cf * cg * inner;
            }
        }
    return total;
}

// I_k(F) = int_{R_k} F^2
inline Rational integral_I(const SimplexPolynomial& f) {
    if (f.is_zero()) throw std::invalid_argument("integral_I: F must be nonzero");
    return integrate_product(f, f);
}

// J_k^(i)(F) = int_{R_{k-1}} (int_0^{1 - sum_{j != i} t_j} F dt_i)^2, i is 1-based.
inline Rational integral_J(const SimplexPolynomial& f, int i) {
    if (i < 1 || i > f.dimension()) throw std::out_of_range("integral_J: index must lie in [1, k]");
    const auto inner = integrate_out(f, i - 1);
    return integrate_product(inner, inner);
}

// sum_i J_k^(i)(F); symmetric F has all J equal.
inline Rational integral_J_sum(const SimplexPolynomial& f) {
    if (f.form() == PolyForm::symmetric) return Rational(f.dimension()) * integral_J(f, 1);
    Rational total = 0;
    for (int i = 1; i <= f.dimension(); ++i) total += integral_J(f, i);
    return total;
}

}  // namespace chebgap
