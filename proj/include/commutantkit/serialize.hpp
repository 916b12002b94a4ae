#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "commutantkit/algebra.hpp"
#include "commutantkit/field.hpp"
#include "commutantkit/group.hpp"
#include "commutantkit/matrix.hpp"
#include "commutantkit/padic.hpp"
#include "commutantkit/rep.hpp"
#include "commutantkit/ultranorm.hpp"

namespace ck {

using json = nlohmann::json;

inline Rational parse_scalar(const Rational&, const std::string& s) { return Rational::parse(s); }
inline GaussianRational parse_scalar(const GaussianRational&, const std::string& s) {
    return GaussianRational::parse(s);
}
inline Fp parse_scalar(const Fp& ex, const std::string& s) {
    return Fp(ex.modulus(), std::stol(s));
}

/// Field tags: "Q", "Fp:<p>", "Qi".  The tag both names the field and, for
/// Fp, fixes the modulus needed to reconstruct elements.
template <class K>
std::string field_tag(const K& ex) {
    return field_tag_of<K>::tag(ex);
}

inline Rational exemplar_for_tag_q(const std::string& tag) {
    if (tag != "Q") throw std::invalid_argument("expected field tag Q, got '" + tag + "'");
    return Rational(0);
}

/// Parses "Q" | "Qi" | "Fp:<p>" and dispatches `fn(exemplar)`; the caller
/// provides a generic lambda.
template <class Fn>
auto dispatch_field_tag(const std::string& tag, Fn&& fn) {
    if (tag == "Q") return fn(Rational(0));
    if (tag == "Qi") return fn(GaussianRational(0));
    if (tag.rfind("Fp:", 0) == 0) {
        unsigned long p = std::stoul(tag.substr(3));
        if (!is_prime(p)) throw std::invalid_argument("field tag Fp:<p> needs a prime modulus");
        return fn(Fp(p, 0));
    }
    throw std::invalid_argument("unknown field tag '" + tag + "'");
}

template <class K>
json vector_to_json(const std::vector<K>& v) {
    json out = json::array();
    for (const K& x : v) out.push_back(scalar_str(x));
    return out;
}

template <class K>
std::vector<K> vector_from_json(const json& j, const K& ex) {
    if (!j.is_array()) throw std::invalid_argument("vector: expected a JSON array");
    std::vector<K> out;
    for (const auto& e : j) out.push_back(parse_scalar(ex, e.get<std::string>()));
    return out;
}

/// Matrices are arrays of arrays of scalar strings, row by row.
template <class K>
json matrix_to_json(const Matrix<K>& m) {
    json out = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(scalar_str(m(i, j)));
        out.push_back(std::move(row));
    }
    return out;
}

template <class K>
Matrix<K> matrix_from_json(const json& j, const K& ex) {
    if (!j.is_array() || j.empty() || !j[0].is_array())
        throw std::invalid_argument("matrix: expected an array of arrays");
    std::size_t rows = j.size(), cols = j[0].size();
    Matrix<K> m(rows, cols, zero_like(ex));
    for (std::size_t i = 0; i < rows; ++i) {
        if (j[i].size() != cols) throw std::invalid_argument("matrix: ragged rows");
        for (std::size_t c = 0; c < cols; ++c)
            m(i, c) = parse_scalar(ex, j[i][c].get<std::string>());
    }
    return m;
}

/// The shared envelope {field, data}.
template <class K>
json envelope(const K& ex, json data) {
    return json{{"field", field_tag(ex)}, {"data", std::move(data)}};
}

inline json group_to_json(const FiniteGroup& g) {
    json cayley = json::array();
    for (std::size_t x = 0; x < g.order(); ++x) {
        json row = json::array();
        for (std::size_t y = 0; y < g.order(); ++y) row.push_back(g.op(x, y));
        cayley.push_back(std::move(row));
    }
    return json{{"order", g.order()}, {"labels", g.labels()}, {"cayley", std::move(cayley)}};
}

/// Accepts either an explicit Cayley table or permutation generators.
inline FiniteGroup group_from_json(const json& j) {
    if (j.contains("permutation_generators")) {
        std::vector<std::vector<std::size_t>> gens;
        for (const auto& g : j.at("permutation_generators"))
            gens.push_back(g.get<std::vector<std::size_t>>());
        return group_from_permutations(gens).group;
    }
    std::size_t m = j.at("order").get<std::size_t>();
    std::vector<std::vector<std::size_t>> table(m);
    const json& cayley = j.at("cayley");
    if (cayley.size() != m) throw std::invalid_argument("group: cayley table size != order");
    for (std::size_t x = 0; x < m; ++x) table[x] = cayley[x].get<std::vector<std::size_t>>();
    std::vector<std::string> labels;
    if (j.contains("labels")) labels = j.at("labels").get<std::vector<std::string>>();
    return FiniteGroup(table, labels);
}

template <class K>
json representation_to_json(const Representation<K>& rho) {
    json mats = json::object();
    for (std::size_t x = 0; x < rho.group().order(); ++x)
        mats[rho.group().label(x)] = matrix_to_json(rho.matrix(x));
    return json{{"group", group_to_json(rho.group())},
                {"field", field_tag(rho.exemplar())},
                {"matrices", std::move(mats)}};
}

template <class K>
Representation<K> representation_from_json(const json& j, const K& ex) {
    FiniteGroup g = group_from_json(j.at("group"));
    const json& mats = j.at("matrices");
    std::vector<Matrix<K>> images;
    for (std::size_t x = 0; x < g.order(); ++x) {
        const std::string& label = g.label(x);
        if (!mats.contains(label))
            throw std::invalid_argument("representation: missing matrix for '" + label + "'");
        images.push_back(matrix_from_json(mats.at(label), ex));
    }
    return Representation<K>(g, std::move(images));
}

template <class K>
json algebra_to_json(const OperatorAlgebra<K>& a) {
    json basis = json::array();
    for (const auto& m : a.basis()) basis.push_back(matrix_to_json(m));
    return json{{"field", field_tag(a.exemplar())}, {"n", a.ambient_dim()},
                {"basis", std::move(basis)}};
}

/// Reads {field, n, basis}; the basis is closed under generation so inputs
/// may list generators rather than a full basis.
template <class K>
OperatorAlgebra<K> algebra_from_json(const json& j, const K& ex) {
    std::size_t n = j.at("n").get<std::size_t>();
    std::vector<Matrix<K>> gens;
    for (const auto& m : j.at("basis")) gens.push_back(matrix_from_json(m, ex));
    return generate_algebra(n, gens, ex);
}

inline json padic_to_json(const PadicApprox& x) {
    return json{{"p", x.prime()}, {"valuation", x.valuation()}, {"digits", x.digits()},
                {"precision", x.precision()}};
}

inline PadicApprox padic_from_json(const json& j) {
    return PadicApprox(j.at("p").get<unsigned long>(), j.at("valuation").get<long>(),
                       j.at("digits").get<std::vector<unsigned long>>());
}

/// Norm specs: {n, absval: {kind, p}, form, weights[, functionals | basis]}.
/// "weighted_max" is the functional-max form (functionals default to the
/// standard coordinates); "normalized" gives a basis with per-vector norms
/// and converts to functional form through the inverse basis matrix.
inline json normspec_to_json(const UltranormSpec& spec) {
    return json{{"n", spec.dim()},
                {"absval", json{{"kind", "p_adic"}, {"p", spec.p()}}},
                {"form", "weighted_max"},
                {"weights", vector_to_json(spec.weights())},
                {"functionals", matrix_to_json(spec.functionals())}};
}

inline UltranormSpec normspec_from_json(const json& j) {
    const json& av = j.at("absval");
    if (av.at("kind").get<std::string>() != "p_adic")
        throw std::invalid_argument("norm spec: only p-adic absolute values are supported here");
    unsigned long p = av.at("p").get<unsigned long>();
    std::size_t n = j.at("n").get<std::size_t>();
    Rational ex(0);
    std::string form = j.value("form", std::string("weighted_max"));
    std::vector<Rational> weights;
    if (j.contains("weights")) weights = vector_from_json(j.at("weights"), ex);
    if (form == "weighted_max") {
        Matrix<Rational> g = j.contains("functionals")
                                 ? matrix_from_json(j.at("functionals"), ex)
                                 : Matrix<Rational>::identity(n, ex);
        if (weights.empty()) weights.assign(g.rows(), Rational(1));
        return UltranormSpec(p, std::move(weights), std::move(g));
    }
    if (form == "normalized") {
        std::vector<std::vector<Rational>> rows;
        for (const auto& b : j.at("basis")) rows.push_back(vector_from_json(b, ex));
        Matrix<Rational> bmat = Matrix<Rational>::from_rows(rows).transpose();
        auto binv = inverse(bmat);
        if (!binv) throw std::invalid_argument("norm spec: basis is not invertible");
        if (weights.empty()) weights.assign(n, Rational(1));
        return UltranormSpec(p, std::move(weights), *binv);
    }
    throw std::invalid_argument("norm spec: unknown form '" + form + "'");
}

}  // namespace ck
