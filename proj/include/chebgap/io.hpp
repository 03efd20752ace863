#pragma once

// JSON conversions. Exact rationals travel as "p/q" (or "p") strings.

#include <fstream>
#include <memory>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "chebgap/admissible.hpp"
#include "chebgap/bounds.hpp"
#include "chebgap/chebsets.hpp"
#include "chebgap/gapscan.hpp"
#include "chebgap/numeric.hpp"
#include "chebgap/sieve.hpp"
#include "chebgap/simplex.hpp"
#include "chebgap/tau.hpp"
#include "chebgap/variational.hpp"

namespace chebgap {

using json = nlohmann::ordered_json;

inline json rational_json(const Rational& q) { return to_string(q); }

inline Rational rational_from(const json& j) {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<long>());
    throw std::invalid_argument("expected a rational as a string or an integer");
}

// --- context and specs ---

inline json to_json(const GaloisContext& c) {
    json j{{"group_order", c.group_order}, {"class_size", c.class_size}, {"discriminant", c.discriminant}};
    j["abelian_conductor"] = c.abelian_conductor ? json(*c.abelian_conductor) : json(nullptr);
    return j;
}

inline GaloisContext context_from_json(const json& j) {
    std::optional<u64> conductor;
    if (j.contains("abelian_conductor") && !j.at("abelian_conductor").is_null())
        conductor = j.at("abelian_conductor").get<u64>();
    return GaloisContext(j.at("group_order").get<u64>(), j.at("class_size").get<u64>(),
                         j.at("discriminant").get<i64>(), conductor);
}

inline json to_json(const ChebotarevSpec& s) {
    json j;
    std::visit(
        [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Congruence>) {
                j["variant"] = "congruence";
                j["modulus"] = v.modulus;
                j["residues"] = v.residues;
            } else if constexpr (std::is_same_v<T, FactorizationType>) {
                j["variant"] = "factorization_type";
                j["poly"] = v.poly;
                j["cycle_type"] = v.cycle_type;
            } else if constexpr (std::is_same_v<T, QuadFormRep>) {
                j["variant"] = "quad_form";
                j["a"] = v.a;
                j["b"] = v.b;
                j["c"] = v.c;
            } else {
                j["variant"] = "newform_congruence";
                j["d"] = v.modulus;
                j["target"] = v.target;
                j["level"] = v.level;
                j["limit"] = v.coefficients->size() - 1;
            }
        },
        s.variant());
    j["context"] = to_json(s.context());
    return j;
}

// newform_congruence needs either "coefficients" (a_f(n) for n = 0, 1, ...)
// or, at level 1, a "limit" for the built-in tau stream.
inline ChebotarevSpec spec_from_json(const json& j) {
    const std::string variant = j.at("variant").get<std::string>();
    const GaloisContext ctx = context_from_json(j.at("context"));
    if (variant == "congruence")
        return ChebotarevSpec::congruence(j.at("modulus").get<u64>(), j.at("residues").get<std::vector<u64>>(), ctx);
    if (variant == "factorization_type")
        return ChebotarevSpec::factorization(j.at("poly").get<IntPoly>(), j.at("cycle_type").get<std::vector<int>>(), ctx);
    if (variant == "quad_form")
        return ChebotarevSpec::quad_form(j.at("a").get<i64>(), j.at("b").get<i64>(), j.at("c").get<i64>(), ctx);
    if (variant == "newform_congruence") {
        const u64 d = j.at("d").get<u64>();
        const u64 level = j.at("level").get<u64>();
        std::shared_ptr<const std::vector<u64>> coeffs;
        if (j.contains("coefficients")) {
            std::vector<u64> c;
            for (const auto& x : j.at("coefficients")) c.push_back(floor_mod(x.get<i64>(), d));
            coeffs = std::make_shared<const std::vector<u64>>(std::move(c));
        } else if (level == 1 && j.contains("limit")) {
            coeffs = std::make_shared<const std::vector<u64>>(tau_mod_stream(d, j.at("limit").get<std::size_t>()));
        } else {
            throw std::invalid_argument("newform_congruence: give \"coefficients\", or \"limit\" at level 1");
        }
        return ChebotarevSpec::newform_congruence(d, j.at("target").get<u64>(), level, std::move(coeffs), ctx);
    }
    throw std::invalid_argument("unknown spec variant: " + variant);
}

// --- polynomials, tuples ---

inline json to_json(const SimplexPolynomial& f) {
    json terms = json::array();
    for (const auto& [key, c] : f.terms()) {
        json t{{"simplex_power", key.simplex_power}};
        t[f.form() == PolyForm::dense ? "exponents" : "partition"] = key.exponents;
        t["coeff"] = rational_json(c);
        terms.push_back(std::move(t));
    }
    return {{"k", f.dimension()}, {"form", f.form() == PolyForm::dense ? "dense" : "symmetric"}, {"terms", terms}};
}

inline SimplexPolynomial polynomial_from_json(const json& j) {
    const int k = j.at("k").get<int>();
    const std::string form = j.value("form", std::string("symmetric"));
    if (form != "dense" && form != "symmetric") throw std::invalid_argument("polynomial form must be dense or symmetric");
    SimplexPolynomial f(k, form == "dense" ? PolyForm::dense : PolyForm::symmetric);
    for (const auto& t : j.at("terms")) {
        const auto& exps = t.contains("partition") ? t.at("partition") : t.at("exponents");
        f.add_term(t.value("simplex_power", 0), exps.get<std::vector<int>>(), rational_from(t.at("coeff")));
    }
    return f;
}

inline json to_json(const Tuple& t) { return t.elements(); }
inline Tuple tuple_from_json(const json& j) { return Tuple(j.get<std::vector<i64>>()); }

// --- results ---

inline json to_json(const RayleighResult& r) {
    return {{"value", rational_json(r.value)},
            {"value_decimal", r.value.get_d()},
            {"numerator", rational_json(r.numerator)},
            {"denominator", rational_json(r.denominator)},
            {"witness", to_json(r.witness)}};
}

inline json to_json(const OptimizeResult& o) {
    json basis = json::array(), dropped = json::array(), coeffs = json::array();
    for (const auto& [a, b] : o.basis) basis.push_back({a, b});
    for (const auto& [a, b] : o.dropped) dropped.push_back({a, b});
    for (const auto& c : o.coefficients) coeffs.push_back(rational_json(c));
    return {{"k", o.k},
            {"degree", o.degree},
            {"result", to_json(o.rayleigh)},
            {"float_eigenvalue", o.float_eigenvalue},
            {"denominator_bound", to_string(o.denominator_bound)},
            {"basis", basis},
            {"dropped", dropped},
            {"coefficients", coeffs}};
}

inline json to_json(const BoundReport& r) {
    return {{"ratio", rational_json(r.ratio)},
            {"ratio_decimal", r.ratio.get_d()},
            {"k_chosen", to_string(r.k.k)},
            {"k_indeterminate", r.k.indeterminate},
            {"epsilon", rational_json(r.epsilon)},
            {"theta", rational_json(r.theta)},
            {"mk_bound", to_string(r.mk_bound, 20)},
            {"rk_argument", to_string(r.rk_argument, 20)},
            {"rk", to_string(r.rk)},
            {"diameter_bound", to_string(r.diameter_bound, 20)},
            {"gap_bound", to_string(r.gap_bound, 20)},
            {"rk_ok", r.rk_ok},
            {"k_ok", r.k_ok},
            {"diameter_ok", r.diameter_ok},
            {"proof_ok", r.proof_ok}};
}

inline json to_json(const GapReport& r) {
    json hist = json::object();
    for (const auto& [g, n] : r.histogram) hist[std::to_string(g)] = n;
    json j{{"spec_id", r.spec_id},
           {"x_limit", r.x_limit},
           {"prime_count", r.prime_count},
           {"min_gap", r.min_gap ? json(*r.min_gap) : json(nullptr)},
           {"min_gap_pair", r.min_gap_pair ? json{r.min_gap_pair->first, r.min_gap_pair->second} : json(nullptr)},
           {"pairs_within_bound", r.pairs_within_bound},
           {"bound_used", r.bound_used},
           {"histogram", hist},
           {"overflow", r.overflow}};
    return j;
}

inline json to_json(const SieveConfig& c) {
    return {{"n_start", c.n_start},
            {"k", c.k},
            {"tuple", to_json(c.tuple)},
            {"theta", c.theta},
            {"epsilon", c.epsilon},
            {"d0", c.d0},
            {"w_modulus", c.w_modulus},
            {"u_modulus", c.u_modulus},
            {"u0", c.u0},
            {"r_limit", c.r_limit},
            {"f", to_json(c.f)},
            {"context", to_json(c.context)}};
}

// A sieve run description: n_start, tuple, theta, epsilon, optional d0 and
// r_limit, f, context, and the set P being counted.
struct SieveRun {
    SieveConfig config;
    ChebotarevSpec spec;
    std::optional<double> rho;
};

inline SieveRun sieve_run_from_json(const json& j) {
    std::optional<u64> d0;
    if (j.contains("d0") && !j.at("d0").is_null()) d0 = j.at("d0").get<u64>();
    std::optional<double> r_override;
    if (j.contains("r_limit") && !j.at("r_limit").is_null()) r_override = j.at("r_limit").get<double>();
    const Tuple tuple = tuple_from_json(j.at("tuple"));
    if (j.contains("k") && j.at("k").get<std::size_t>() != tuple.size())
        throw std::invalid_argument("sieve config: k differs from the tuple size");
    SieveConfig cfg = build_config(j.at("n_start").get<u64>(), tuple, context_from_json(j.at("context")),
                                   j.at("theta").get<double>(), j.at("epsilon").get<double>(),
                                   polynomial_from_json(j.at("f")), d0, r_override);
    std::optional<double> rho;
    if (j.contains("rho") && !j.at("rho").is_null()) rho = j.at("rho").get<double>();
    return {std::move(cfg), spec_from_json(j.at("spec")), rho};
}

inline json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    return json::parse(in);
}

}  // namespace chebgap
