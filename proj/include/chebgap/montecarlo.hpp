#pragma once

// Monte Carlo estimates of I_k(F) and J_k^(i)(F), independent of the exact
// Dirichlet-integral route. Points are uniform on R_k (normalized
// exponentials with one slack coordinate); the inner integral of J is
// estimated from two independent uniform draws along the fiber, whose product
// is an unbiased estimate of its square.

#include <cmath>
#include <random>
#include <vector>

#include "chebgap/simplex.hpp"

namespace chebgap {

struct McEstimate {
    double mean = 0;
    double std_error = 0;
};

class CompiledPolynomial {
public:
    explicit CompiledPolynomial(const SimplexPolynomial& f) : k_(f.dimension()) {
        const SimplexPolynomial dense = f.to_dense();
        for (const auto& [key, c] : dense.terms()) terms_.push_back({c.get_d(), key.simplex_power, key.exponents});
    }

    int dimension() const { return k_; }

    // Zero off the simplex.
    double operator()(const double* t) const {
        double s = 0;
        for (int i = 0; i < k_; ++i) s += t[i];
        if (s > 1) return 0;
        const double slack = 1 - s;
        double total = 0;
        for (const auto& term : terms_) {
            double v = term.coeff * std::pow(slack, term.power);
            for (int i = 0; i < k_; ++i)
                if (term.exponents[i]) v *= std::pow(t[i], term.exponents[i]);
            total += v;
        }
        return total;
    }

private:
    struct Term {
        double coeff;
        int power;
        std::vector<int> exponents;
    };
    int k_;
    std::vector<Term> terms_;
};

// Uniform point of R_n written to out[0..n).
template <typename Rng>
void sample_simplex(int n, Rng& rng, double* out) {
    std::exponential_distribution<double> expo(1.0);
    double total = expo(rng);  // slack coordinate
    for (int i = 0; i < n; ++i) {
        out[i] = expo(rng);
        total += out[i];
    }
    for (int i = 0; i < n; ++i) out[i] /= total;
}

inline double simplex_volume(int n) { return 1.0 / std::tgamma(double(n) + 1); }

namespace mc_detail {

struct Accumulator {
    double sum = 0, sum_sq = 0;
    std::size_t n = 0;
    void add(double x) {
        sum += x;
        sum_sq += x * x;
        ++n;
    }
    McEstimate scaled(double volume) const {
        const double mean = sum / double(n);
        const double var = std::max(0.0, sum_sq / double(n) - mean * mean);
        return {mean * volume, std::sqrt(var / double(n)) * volume};
    }
};

}  // namespace mc_detail

template <typename Rng>
McEstimate mc_integral_I(const SimplexPolynomial& f, std::size_t samples, Rng& rng) {
    const CompiledPolynomial g(f);
    const int k = g.dimension();
    std::vector<double> t(k);
    mc_detail::Accumulator acc;
    for (std::size_t s = 0; s < samples; ++s) {
        sample_simplex(k, rng, t.data());
        const double v = g(t.data());
        acc.add(v * v);
    }
    return acc.scaled(simplex_volume(k));
}

// Estimate of sum_{i in indices} J_k^(i)(F), indices 1-based.
template <typename Rng>
McEstimate mc_integral_J(const SimplexPolynomial& f, const std::vector<int>& indices, std::size_t samples, Rng& rng) {
    const CompiledPolynomial g(f);
    const int k = g.dimension();
    std::vector<double> rest(std::max(k - 1, 0)), point(k);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    mc_detail::Accumulator acc;
    for (std::size_t s = 0; s < samples; ++s) {
        sample_simplex(k - 1, rng, rest.data());
        double used = 0;
        for (double x : rest) used += x;
        const double len = 1 - used;
        double total = 0;
        for (int i : indices) {
            // point = rest with t_i inserted
            for (int j = 0, r = 0; j < k; ++j)
                if (j != i - 1) point[j] = rest[r++];
            point[i - 1] = len * unit(rng);
            const double a = g(point.data());
            point[i - 1] = len * unit(rng);
            const double b = g(point.data());
            total += len * len * a * b;
        }
        acc.add(total);
    }
    return acc.scaled(simplex_volume(k - 1));
}

template <typename Rng>
McEstimate mc_integral_J_sum(const SimplexPolynomial& f, std::size_t samples, Rng& rng) {
    std::vector<int> all(f.dimension());
    for (int i = 0; i < f.dimension(); ++i) all[i] = i + 1;
    return mc_integral_J(f, all, samples, rng);
}

// Dense polynomial in k variables with 1..max_terms terms, each a monomial of
// total degree <= max_degree times a small integer ratio coefficient.
template <typename Rng>
SimplexPolynomial random_polynomial(int k, int max_degree, int max_terms, Rng& rng) {
    std::uniform_int_distribution<int> n_terms(1, max_terms), num(-5, 5), den(1, 4), coin(0, 1);
    SimplexPolynomial f(k, PolyForm::dense);
    while (f.is_zero()) {
        const int terms = n_terms(rng);
        for (int t = 0; t < terms; ++t) {
            std::uniform_int_distribution<int> degree_dist(0, max_degree);
            int budget = degree_dist(rng);
            std::vector<int> e(k, 0);
            std::uniform_int_distribution<int> var(0, k);  // k means the slack factor
            int power = 0;
            while (budget-- > 0) {
                const int v = var(rng);
                if (v == k)
                    ++power;
                else
                    ++e[v];
            }
            int c = num(rng);
            if (c == 0) c = coin(rng) ? 1 : -1;
            f.add_term(power, std::move(e), ratio(c, den(rng)));
        }
    }
    return f;
}

}  // namespace chebgap
