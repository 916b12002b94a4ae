#pragma once

#include <algorithm>
#include <cstddef>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "commutantkit/absval.hpp"
#include "commutantkit/innerprod.hpp"
#include "commutantkit/serialize.hpp"

namespace ck {

/// code 0: all verdicts verified; 1: some verdict failed or was left
/// inconclusive; input errors are thrown and mapped to 2 by the callers.
struct CommandOutcome {
    int code = 0;
    json report;
};

namespace cmd {

inline json basis_to_json(const std::vector<std::vector<Rational>>& basis) {
    json out = json::array();
    for (const auto& v : basis) out.push_back(vector_to_json(v));
    return out;
}

template <class K>
json kbasis_to_json(const std::vector<std::vector<K>>& basis) {
    json out = json::array();
    for (const auto& v : basis) out.push_back(vector_to_json(v));
    return out;
}

template <class K>
std::vector<std::vector<K>> kbasis_from_json(const json& j, const K& ex) {
    std::vector<std::vector<K>> out;
    for (const auto& v : j) out.push_back(vector_from_json(v, ex));
    return out;
}

inline CommandOutcome padic_command(const std::string& verb, const json& args) {
    unsigned long p = args.at("p").get<unsigned long>();
    std::size_t prec = args.value("precision", std::size_t{8});
    json report{{"command", "padic " + verb}, {"p", p}, {"precision", prec}};
    bool ok = true;
    if (verb == "expand") {
        Rational x = Rational::parse(args.at("value").get<std::string>());
        PadicApprox e = padic_from_rational(x, p, prec);
        report["value"] = x.str();
        report["expansion"] = padic_to_json(e);
        report["property"] = "x = sum_j d_j p^(l+j) with 0 <= d_j < p, d_0 != 0";
    } else if (verb == "add" || verb == "mul") {
        Rational a = Rational::parse(args.at("a").get<std::string>());
        Rational b = Rational::parse(args.at("b").get<std::string>());
        PadicApprox ea = padic_from_rational(a, p, prec), eb = padic_from_rational(b, p, prec);
        PadicApprox r = verb == "add" ? padic_add(ea, eb) : padic_mul(ea, eb);
        Rational exact = verb == "add" ? a + b : a * b;
        PadicApprox check = padic_from_rational(exact, p, r.precision());
        ok = r.same_representation(check);
        report["result"] = padic_to_json(r.canonicalized());
        report["matches_rational_recomputation"] = ok;
        report["property"] = verb == "add"
                                 ? "termwise sum with carries equals the expansion of a + b"
                                 : "Cauchy product with carries equals the expansion of a * b";
    } else if (verb == "inv") {
        Rational x = Rational::parse(args.at("value").get<std::string>());
        PadicApprox e = padic_from_rational(x, p, prec);
        PadicApprox iv = padic_inv(e);
        PadicApprox check = padic_from_rational(x.inverse(), p, iv.precision());
        ok = iv.same_representation(check);
        report["result"] = padic_to_json(iv.canonicalized());
        report["matches_rational_inverse"] = ok;
        report["property"] = "w * inv(w) = 1 via the geometric series for (1 - u)^(-1)";
    } else if (verb == "dist") {
        Rational a = Rational::parse(args.at("a").get<std::string>());
        Rational b = Rational::parse(args.at("b").get<std::string>());
        PadicDistance d =
            padic_dist(padic_from_rational(a, p, prec), padic_from_rational(b, p, prec));
        report["distance"] = d.value.str();
        report["upper_bound_only"] = d.upper_bound_only;
        report["property"] = "d_p(a, b) = p^(-j0) at the first differing digit";
    } else {
        throw std::invalid_argument("padic: unknown verb '" + verb + "'");
    }
    return {ok ? 0 : 1, std::move(report)};
}

inline json group_summary(const FiniteGroup& g) {
    json orders = json::array();
    for (std::size_t x = 0; x < g.order(); ++x) orders.push_back(g.element_order(x));
    return json{{"order", g.order()},
                {"identity", g.label(g.identity())},
                {"abelian", g.is_abelian()},
                {"element_orders", std::move(orders)}};
}

inline CommandOutcome group_command(const std::string& verb, const json& args) {
    json report{{"command", "group " + verb}};
    if (verb == "make") {
        FiniteGroup g = group_from_json(args.at("group"));
        report["group"] = group_to_json(g);
        report["summary"] = group_summary(g);
        report["property"] = "closure, identity, inverses, associativity all verified";
    } else if (verb == "classes") {
        FiniteGroup g = group_from_json(args.at("group"));
        json classes = json::array();
        for (const auto& cls : conjugacy_classes(g)) {
            json c = json::array();
            for (std::size_t x : cls) c.push_back(g.label(x));
            classes.push_back(std::move(c));
        }
        report["class_count"] = classes.size();
        report["classes"] = std::move(classes);
        report["property"] = "orbits of x -> g x g^{-1} partition the group";
    } else if (verb == "product") {
        FiniteGroup g = product_group(group_from_json(args.at("a")), group_from_json(args.at("b")));
        report["group"] = group_to_json(g);
        report["summary"] = group_summary(g);
        report["property"] = "componentwise products form a group of order |A||B|";
    } else {
        throw std::invalid_argument("group: unknown verb '" + verb + "'");
    }
    return {0, std::move(report)};
}

template <class K>
CommandOutcome rep_command_typed(const std::string& verb, const json& args, const K& ex) {
    json report{{"command", "rep " + verb}};
    bool ok = true;
    if (verb == "regular") {
        FiniteGroup g = group_from_json(args.at("group"));
        std::string side = args.value("side", std::string("left"));
        auto rho = regular_representation(
            g, ex, side == "right" ? RegularSide::right : RegularSide::left);
        report["side"] = side;
        report["representation"] = representation_to_json(rho);
        report["property"] = "x -> (phi_w -> phi_xw) is a verified homomorphism";
        return {0, std::move(report)};
    }
    if (verb == "perm") {
        auto pg = group_from_permutations(
            args.at("permutation_generators").get<std::vector<std::vector<std::size_t>>>());
        auto rho = permutation_representation(pg.group, pg.perms, ex);
        report["representation"] = representation_to_json(rho);
        report["property"] = "0/1 matrices of the permutation action; verified homomorphism";
        return {0, std::move(report)};
    }
    auto rho = representation_from_json(args.at("representation"), ex);
    if (verb == "decompose") {
        auto dec = decompose_into_irreducibles(rho);
        json pieces = json::array();
        std::size_t total = 0;
        for (const auto& piece : dec.pieces) {
            pieces.push_back(json{{"dim", piece.basis.size()},
                                  {"isotypic_class", piece.isotypic_class},
                                  {"basis", kbasis_to_json(piece.basis)}});
            total += piece.basis.size();
        }
        auto a = generate_algebra(rho.degree(), rho.matrices(), ex);
        ok = (total == rho.degree());
        auto dims = dec.dims();
        std::sort(dims.begin(), dims.end());
        report["dims"] = dims;
        report["pieces"] = std::move(pieces);
        report["center_dim"] = center(a).dim();
        report["dims_sum_to_degree"] = ok;
        report["property"] = "V splits into irreducible invariant pieces (Maschke recursion)";
    } else if (verb == "maschke") {
        auto w = kbasis_from_json(args.at("subspace"), ex);
        auto res = maschke_complement(rho, w);
        report["projection"] = matrix_to_json(res.projection);
        report["complement"] = kbasis_to_json(res.complement);
        report["property"] =
            "P = (1/|G|) sum_x rho_x P0 rho_x^{-1} is an equivariant projection onto W";
    } else if (verb == "intertwine") {
        auto rho2 = representation_from_json(args.at("representation2"), ex);
        auto basis = intertwiner_space(rho, rho2);
        auto iso = are_isomorphic(rho, rho2);
        json jb = json::array();
        for (const auto& t : basis) jb.push_back(matrix_to_json(t));
        report["intertwiner_dim"] = basis.size();
        report["intertwiners"] = std::move(jb);
        report["status"] = iso.status == IsoStatus::isomorphic      ? "isomorphic"
                           : iso.status == IsoStatus::not_isomorphic ? "not_isomorphic"
                                                                     : "inconclusive";
        if (iso.intertwiner) report["invertible_intertwiner"] = matrix_to_json(*iso.intertwiner);
        ok = iso.status != IsoStatus::inconclusive;
        report["property"] = "T rho1(x) = rho2(x) T for all x; invertible T gives isomorphism";
    } else if (verb == "embed-regular") {
        auto lambda = vector_from_json(args.at("functional"), ex);
        auto emb = embed_in_regular(rho, lambda);
        ok = emb.injective;
        report["map"] = matrix_to_json(emb.map);
        report["u_basis"] = kbasis_to_json(emb.u_basis);
        report["injective"] = emb.injective;
        report["property"] = "v -> f_v, f_v(y) = lambda(sigma_{y^{-1}} v) intertwines with L";
    } else if (verb == "quotient") {
        auto w = kbasis_from_json(args.at("subspace"), ex);
        auto q = quotient_representation(rho, w);
        report["representation"] = representation_to_json(q);
        report["property"] = "block-triangular form in an adapted basis; lower block is V/W";
    } else {
        throw std::invalid_argument("rep: unknown verb '" + verb + "'");
    }
    return {ok ? 0 : 1, std::move(report)};
}

inline CommandOutcome rep_command(const std::string& verb, const json& args) {
    std::string tag = args.value("field", std::string("Q"));
    if (args.contains("representation") && args.at("representation").contains("field"))
        tag = args.at("representation").at("field").get<std::string>();
    return dispatch_field_tag(tag,
                              [&](auto ex) { return rep_command_typed(verb, args, ex); });
}

template <class K>
CommandOutcome algebra_command_typed(const std::string& verb, const json& args, const K& ex) {
    json report{{"command", "algebra " + verb}};
    bool ok = true;
    if (verb == "flag") {
        std::size_t n = args.at("n").get<std::size_t>();
        std::vector<std::vector<std::vector<K>>> chain;
        for (const auto& step : args.at("chain")) chain.push_back(kbasis_from_json(step, ex));
        auto fa = flag_algebra(n, chain, ex);
        report["algebra"] = algebra_to_json(fa);
        report["dim"] = fa.dim();
        report["commutant_dim"] = commutant(fa).dim();
        report["property"] = "operators preserving every subspace of the flag form an algebra";
        return {0, std::move(report)};
    }
    auto a = algebra_from_json(args.at("algebra"), ex);
    if (verb == "generate") {
        report["algebra"] = algebra_to_json(a);
        report["dim"] = a.dim();
        report["contains_identity"] = true;
        report["property"] = "span closed under products and containing I";
    } else if (verb == "commutant") {
        auto ap = commutant(a);
        report["commutant"] = algebra_to_json(ap);
        report["dim_a"] = a.dim();
        report["dim_commutant"] = ap.dim();
        report["property"] = "A' = {T : TS = ST for all S in A} is an algebra";
    } else if (verb == "double-commutant") {
        auto rep2 = double_commutant_report(a);
        ok = rep2.a_equals_bicommutant && rep2.triple_equals_prime;
        report["dim_a"] = a.dim();
        report["dim_aprime"] = rep2.aprime.dim();
        report["dim_adoubleprime"] = rep2.adoubleprime.dim();
        report["a_subset_of_bicommutant"] = rep2.a_subset_of_bicommutant;
        report["a_equals_bicommutant"] = rep2.a_equals_bicommutant;
        report["triple_equals_prime"] = rep2.triple_equals_prime;
        report["property"] = "A'' = A and A''' = A' for very nice algebras";
    } else if (verb == "expand") {
        std::size_t copies = args.value("copies", std::size_t{2});
        ok = expansion_check(a, copies);
        report["copies"] = copies;
        report["expansion_commutes_with_bicommutant"] = ok;
        report["property"] = "(A'')_n = (A_n)'' for the n-fold diagonal expansion";
    } else if (verb == "center") {
        auto z = center(a);
        report["center"] = algebra_to_json(z);
        report["dim_center"] = z.dim();
        report["property"] = "Gamma = A intersect A'";
    } else if (verb == "division") {
        auto dv = division_algebra_analysis(a);
        ok = dv.verdict != DivisionVerdict::inconclusive;
        report["verdict"] = dv.verdict == DivisionVerdict::division      ? "division"
                            : dv.verdict == DivisionVerdict::not_division ? "not_division"
                                                                          : "inconclusive";
        report["method"] = dv.method;
        report["dim_b"] = dv.dim_b;
        if (dv.zero_divisor) report["zero_divisor"] = matrix_to_json(*dv.zero_divisor);
        if (dv.is_division) {
            report["b_independent_basis"] = kbasis_to_json(dv.b_basis);
            report["ell"] = dv.ell;
            report["dim_bprime"] = dv.dim_bprime;
            report["dim_identity_holds"] = dv.dim_identity_holds;
            report["bicommutant_is_b"] = dv.bicommutant_is_b;
        }
        report["property"] =
            "B division iff no zero divisors; then dim V = l dim B and dim B' dim B = n^2";
    } else if (verb == "bimodule") {
        auto bm = center_bimodule_analysis(a);
        ok = bm.a1_prime_is_a2 && bm.a2_prime_is_a1 && bm.gamma0_is_intersection &&
             bm.a12_is_gamma0_prime && bm.dim_identity_holds;
        report["dim_a"] = bm.dim_a;
        report["dim_gamma"] = bm.dim_gamma;
        report["dim_a12"] = bm.dim_a12;
        report["a1_prime_is_a2"] = bm.a1_prime_is_a2;
        report["a2_prime_is_a1"] = bm.a2_prime_is_a1;
        report["gamma0_is_intersection"] = bm.gamma0_is_intersection;
        report["a12_is_gamma0_prime"] = bm.a12_is_gamma0_prime;
        report["dim_identity_holds"] = bm.dim_identity_holds;
        report["property"] =
            "A1' = A2, Gamma0 = A1 intersect A2, A12 = Gamma0', dim A12 dim Gamma = r^2";
    } else if (verb == "combined") {
        auto b = algebra_from_json(args.at("algebra2"), ex);
        auto cmb = combined_algebra(a, b);
        ok = cmb.dim() == a.dim() * b.dim();
        report["combined"] = algebra_to_json(cmb);
        report["dim"] = cmb.dim();
        report["dim_product"] = a.dim() * b.dim();
        report["dim_is_product"] = ok;
        report["property"] = "Hom-space algebra B (x) A^op has dimension rs";
    } else if (verb == "dual-extension") {
        auto de = dual_extension(a);
        ok = de.forms_nondegenerate && de.transpose_identities_hold && de.t_algebra;
        report["ahat"] = algebra_to_json(de.ahat);
        report["dim_ahat"] = de.ahat.dim();
        report["gram_b1"] = matrix_to_json(de.gram_b1);
        report["gram_b2"] = matrix_to_json(de.gram_b2);
        report["forms_nondegenerate"] = de.forms_nondegenerate;
        report["transpose_identities_hold"] = de.transpose_identities_hold;
        report["t_algebra"] = de.t_algebra;
        report["property"] = "B_i(R u, v) = B_i(u, R^t v) on V + V* with R^t = diag(T, S~)";
    } else {
        throw std::invalid_argument("algebra: unknown verb '" + verb + "'");
    }
    return {ok ? 0 : 1, std::move(report)};
}

inline CommandOutcome algebra_command(const std::string& verb, const json& args) {
    std::string tag = args.value("field", std::string("Q"));
    if (args.contains("algebra") && args.at("algebra").contains("field"))
        tag = args.at("algebra").at("field").get<std::string>();
    return dispatch_field_tag(tag,
                              [&](auto ex) { return algebra_command_typed(verb, args, ex); });
}

inline CommandOutcome norm_command(const std::string& verb, const json& args) {
    json report{{"command", "norm " + verb}};
    bool ok = true;
    Rational ex(0);
    if (verb == "invariant") {
        auto rho = representation_from_json(args.at("representation"), ex);
        auto seed = normspec_from_json(args.at("seed"));
        auto inv = invariant_norm_from_rep(rho, seed);
        bool all = true;
        for (const auto& t : rho.matrices()) all = all && is_isometry(t, inv);
        ok = all;
        report["spec"] = normspec_to_json(inv);
        report["group_acts_by_isometries"] = all;
        report["property"] = "N(v) = max_a seed(rho_a v) is G-invariant";
        return {ok ? 0 : 1, std::move(report)};
    }
    auto spec = normspec_from_json(args.at("spec"));
    if (verb == "eval") {
        auto v = vector_from_json(args.at("vector"), ex);
        report["value"] = spec.eval(v).str();
        report["property"] = "N(v) = max_t c_t |g_t(v)|_p";
    } else if (verb == "opnorm") {
        auto t = matrix_from_json(args.at("matrix"), ex);
        auto target = args.contains("target") ? normspec_from_json(args.at("target")) : spec;
        auto val = operator_norm(t, spec, target);
        report["value"] = val.value.str();
        report["witness"] = vector_to_json(val.witness);
        report["property"] = "||T|| = max_j N'(T x_j)/N(x_j) over a normalized basis";
    } else if (verb == "isometry") {
        auto t = matrix_from_json(args.at("matrix"), ex);
        ok = is_isometry(t, spec);
        report["isometry"] = ok;
        report["property"] = "T invertible with ||T|| <= 1 and ||T^{-1}|| <= 1";
    } else if (verb == "normalize") {
        auto nb = normalized_basis(spec);
        json norms = json::array();
        for (const auto& c : nb.norms) norms.push_back(c.str());
        report["basis"] = basis_to_json(nb.basis);
        report["duals"] = matrix_to_json(nb.duals);
        report["norms"] = std::move(norms);
        report["property"] = "N(sum a_j x_j) = max_j N(x_j) |a_j|_p";
    } else if (verb == "extend") {
        auto w = cmd::kbasis_from_json(args.at("subspace"), ex);
        auto t = matrix_from_json(args.at("map"), ex);
        Rational bound = Rational::parse(args.at("bound").get<std::string>());
        auto target = args.contains("target") ? normspec_from_json(args.at("target")) : spec;
        auto ext = extend_bounded_map(w, t, bound, spec, target);
        ok = !(operator_norm(ext, spec, target).value > bound);
        report["extension"] = matrix_to_json(ext);
        report["bound_preserved"] = ok;
        report["property"] = "T extends to T P with the same bound, P a norm-one projection";
    } else {
        throw std::invalid_argument("norm: unknown verb '" + verb + "'");
    }
    return {ok ? 0 : 1, std::move(report)};
}

inline json quaternion_algebra_fixture() {
    // Left multiplications by i, j, k on the basis 1, i, j, k:
    // i^2 = j^2 = k^2 = -1, ij = -ji = k.
    json basis = json::array();
    basis.push_back(json::parse(
        R"([["0","-1","0","0"],["1","0","0","0"],["0","0","0","-1"],["0","0","1","0"]])"));
    basis.push_back(json::parse(
        R"([["0","0","-1","0"],["0","0","0","1"],["1","0","0","0"],["0","-1","0","0"]])"));
    basis.push_back(json::parse(
        R"([["0","0","0","-1"],["0","0","-1","0"],["0","1","0","0"],["1","0","0","0"]])"));
    return json{{"field", "Q"}, {"n", 4}, {"basis", std::move(basis)}};
}

inline CommandOutcome fixtures_command(const std::string& verb, const json& args) {
    if (verb != "emit") throw std::invalid_argument("fixtures: unknown verb '" + verb + "'");
    std::string dir = args.value("dir", std::string("."));
    Rational ex(0);
    auto s3 = symmetric_group_s3();
    json files = json::object();
    files["s3.json"] = json{{"group", group_to_json(s3.group)}};
    files["s3_regular.json"] =
        representation_to_json(regular_representation(s3.group, ex, RegularSide::left));
    files["z2_regular.json"] = representation_to_json(
        regular_representation(FiniteGroup::cyclic(2), ex, RegularSide::left));
    files["z5.json"] = json{{"group", group_to_json(FiniteGroup::cyclic(5))}};
    files["klein_four.json"] = json{{"group", group_to_json(klein_four())}};
    files["quaternion_algebra.json"] = quaternion_algebra_fixture();
    files["scalars2.json"] = json{
        {"field", "Q"}, {"n", 2},
        {"basis", json::array({matrix_to_json(Matrix<Rational>::identity(2, ex))})}};
    files["flag_chain.json"] = json::parse(
        R"({"field":"Q","n":3,"chain":[[["1","0","0"]],[["1","0","0"],["0","1","0"]]]})");
    files["weighted_norm.json"] = normspec_to_json(
        UltranormSpec::weighted_max(5, {Rational(1), Rational(5), Rational(1, 5)}));
    json written = json::array();
    for (auto it = files.begin(); it != files.end(); ++it) {
        std::string path = dir + "/" + it.key();
        std::ofstream out(path);
        if (!out) throw std::invalid_argument("fixtures emit: cannot write " + path);
        out << it.value().dump(2) << "\n";
        written.push_back(path);
    }
    return {0, json{{"command", "fixtures emit"}, {"written", std::move(written)}}};
}

}  // namespace cmd

/// Request: {"command": "<module> <verb>", "args": {...}, "seed": optional}.
/// Pipelines are deterministic; the seed is echoed for reproducibility
/// bookkeeping only.
inline CommandOutcome run_command(const json& request) {
    std::string command = request.at("command").get<std::string>();
    auto space = command.find(' ');
    if (space == std::string::npos)
        throw std::invalid_argument("command must be '<module> <verb>'");
    std::string module = command.substr(0, space), verb = command.substr(space + 1);
    json args = request.value("args", json::object());
    CommandOutcome out;
    if (module == "padic") out = cmd::padic_command(verb, args);
    else if (module == "group") out = cmd::group_command(verb, args);
    else if (module == "rep") out = cmd::rep_command(verb, args);
    else if (module == "algebra") out = cmd::algebra_command(verb, args);
    else if (module == "norm") out = cmd::norm_command(verb, args);
    else if (module == "fixtures") out = cmd::fixtures_command(verb, args);
    else throw std::invalid_argument("unknown module '" + module + "'");
    if (request.contains("seed")) out.report["seed"] = request.at("seed");
    out.report["exit_code"] = out.code;
    return out;
}

}  // namespace ck
