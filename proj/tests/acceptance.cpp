// Acceptance checks: one line per criterion, nonzero exit if any fail.
#include <algorithm>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "commutantkit/absval.hpp"
#include "commutantkit/algebra.hpp"
#include "commutantkit/innerprod.hpp"
#include "commutantkit/padic.hpp"
#include "commutantkit/poly.hpp"
#include "commutantkit/ultranorm.hpp"

using namespace ck;

namespace {

int failures = 0;

void report(int index, const std::string& name, bool ok) {
    std::printf("criterion %2d  %-52s %s\n", index, name.c_str(), ok ? "PASS" : "FAIL");
    if (!ok) ++failures;
}

Matrix<Rational> qmat(std::initializer_list<std::initializer_list<long>> rows) {
    std::size_t r = rows.size(), c = rows.begin()->size();
    Matrix<Rational> m(r, c, Rational(0));
    std::size_t i = 0;
    for (const auto& row : rows) {
        std::size_t j = 0;
        for (long v : row) m(i, j++) = Rational(v);
        ++i;
    }
    return m;
}

OperatorAlgebra<Rational> quaternion_left_algebra() {
    auto li = qmat({{0, -1, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, -1}, {0, 0, 1, 0}});
    auto lj = qmat({{0, 0, -1, 0}, {0, 0, 0, 1}, {1, 0, 0, 0}, {0, -1, 0, 0}});
    return generate_algebra(4, {li, lj, li * lj}, Rational(0));
}

OperatorAlgebra<Rational> full_matrix_algebra(std::size_t n) {
    Rational ex(0);
    return commutant(generate_algebra(n, {Matrix<Rational>::identity(n, ex)}, ex));
}

std::vector<Representation<Rational>> fixture_representations() {
    Rational ex(0);
    std::vector<Representation<Rational>> reps;
    auto s3 = symmetric_group_s3();
    reps.push_back(regular_representation(s3.group, ex, RegularSide::left));
    reps.push_back(permutation_representation(s3.group, s3.perms, ex));
    reps.push_back(regular_representation(FiniteGroup::cyclic(2), ex, RegularSide::left));
    reps.push_back(regular_representation(FiniteGroup::cyclic(4), ex, RegularSide::left));
    reps.push_back(regular_representation(FiniteGroup::cyclic(5), ex, RegularSide::left));
    reps.push_back(regular_representation(klein_four(), ex, RegularSide::left));
    return reps;
}

template <class K>
bool maps_into_span(const std::vector<Matrix<K>>& ops,
                    const std::vector<std::vector<K>>& w) {
    auto c = canonical_span_basis(w);
    for (const auto& t : ops)
        for (const auto& v : w)
            if (!in_span(c, t.apply(v))) return false;
    return true;
}

Rational random_rational(std::mt19937& rng, long span = 20) {
    return Rational((long)(rng() % (2 * span + 1)) - span, 1 + rng() % 7);
}

std::vector<Rational> random_vector(std::mt19937& rng, std::size_t n, long span = 20) {
    std::vector<Rational> v;
    for (std::size_t i = 0; i < n; ++i) v.push_back(random_rational(rng, span));
    return v;
}

// ------------------------------------------------------------------ criteria

bool criterion_regular_commutant() {
    Rational ex(0);
    std::vector<FiniteGroup> groups = {FiniteGroup::cyclic(2), FiniteGroup::cyclic(4),
                                       symmetric_group_s3().group, klein_four()};
    for (const auto& g : groups) {
        auto left = regular_representation(g, ex, RegularSide::left);
        auto right = regular_representation(g, ex, RegularSide::right);
        auto al = generate_algebra(g.order(), left.matrices(), ex);
        auto ar = generate_algebra(g.order(), right.matrices(), ex);
        if (commutant(al) != ar) return false;
        if (commutant(ar) != al) return false;
        if (commutant(commutant(al)) != al) return false;
    }
    return true;
}

bool criterion_double_commutant() {
    for (const auto& rho : fixture_representations()) {
        auto a = generate_algebra(rho.degree(), rho.matrices(), rho.exemplar());
        auto rep = double_commutant_report(a);
        if (!rep.a_equals_bicommutant || !rep.triple_equals_prime) return false;
        if (!expansion_check(a, 2) || !expansion_check(a, 3)) return false;
    }
    return true;
}

bool criterion_center() {
    Rational ex(0);
    auto s3 = symmetric_group_s3();
    auto left = regular_representation(s3.group, ex, RegularSide::left);
    if (center(generate_algebra(6, left.matrices(), ex)).dim() != 3) return false;
    for (std::size_t n : {2, 3, 4, 5, 6}) {
        auto zn = regular_representation(FiniteGroup::cyclic(n), ex, RegularSide::left);
        if (center(generate_algebra(n, zn.matrices(), ex)).dim() != n) return false;
    }
    return true;
}

bool criterion_maschke() {
    std::mt19937 rng(4242);
    Rational ex(0);
    std::size_t done = 0;
    for (const auto& rho : fixture_representations()) {
        auto dec = decompose_into_irreducibles(rho);
        // proper invariant subspaces: single pieces and prefixes of pieces
        std::vector<std::vector<std::vector<Rational>>> subspaces;
        std::vector<std::vector<Rational>> prefix;
        for (std::size_t k = 0; k < dec.pieces.size(); ++k) {
            subspaces.push_back(dec.pieces[k].basis);
            for (const auto& v : dec.pieces[k].basis) prefix.push_back(v);
            if (k + 1 < dec.pieces.size()) subspaces.push_back(prefix);
        }
        for (const auto& w_raw : subspaces) {
            if (done >= 20) break;
            auto w = canonical_span_basis(w_raw);
            std::size_t n = rho.degree(), d = w.size();
            if (d == 0 || d == n) continue;
            // random seed projection onto W along a random complement
            Matrix<Rational> b(n, n, ex);
            std::optional<Matrix<Rational>> binv;
            do {
                for (std::size_t j = 0; j < d; ++j)
                    for (std::size_t i = 0; i < n; ++i) b(i, j) = w[j][i];
                for (std::size_t j = d; j < n; ++j)
                    for (std::size_t i = 0; i < n; ++i)
                        b(i, j) = Rational((long)(rng() % 11) - 5);
                binv = inverse(b);
            } while (!binv);
            Matrix<Rational> diag = Matrix<Rational>::zero(n, n, ex);
            for (std::size_t j = 0; j < d; ++j) diag(j, j) = Rational(1);
            Matrix<Rational> seed = b * diag * *binv;
            MaschkeResult<Rational> res =
                maschke_complement(rho, w, std::optional<Matrix<Rational>>(seed));
            const Matrix<Rational>& p = res.projection;
            if (p * p != p) return false;
            std::vector<std::vector<Rational>> cols;
            for (std::size_t k = 0; k < n; ++k) cols.push_back(p.column(k));
            if (canonical_span_basis(cols) != w) return false;
            for (std::size_t y = 0; y < rho.group().order(); ++y) {
                const auto& r = rho.matrix(y);
                if (r * p != p * r) return false;
            }
            if (!maps_into_span(rho.matrices(), res.complement)) return false;
            ++done;
        }
    }
    return done >= 20;
}

bool criterion_s3_decomposition() {
    Rational ex(0);
    auto s3 = symmetric_group_s3();
    auto left = regular_representation(s3.group, ex, RegularSide::left);
    auto dec = decompose_into_irreducibles(left);
    auto dims = dec.dims();
    std::sort(dims.begin(), dims.end());
    if (dims != std::vector<std::size_t>{1, 1, 2, 2}) return false;
    std::vector<std::size_t> cls1, cls2;
    for (const auto& piece : dec.pieces)
        (piece.basis.size() == 1 ? cls1 : cls2).push_back(piece.isotypic_class);
    if (cls2.size() != 2 || cls2[0] != cls2[1]) return false;
    if (cls1.size() != 2 || cls1[0] == cls1[1]) return false;
    if (generate_algebra(6, left.matrices(), ex).dim() != 6) return false;
    for (const auto& piece : dec.pieces) {
        if (piece.basis.size() != 2) continue;
        auto small = restrict_operators(left.matrices(), piece.basis);
        auto b = generate_algebra(2, small, ex);
        if (b.dim() != 4) return false;
        if (commutant(b).dim() != 1) return false;
        break;
    }
    return true;
}

bool criterion_division() {
    auto qi = generate_algebra(2, {qmat({{0, -1}, {1, 0}})}, Rational(0));
    auto dq = division_algebra_analysis(qi);
    if (dq.verdict != DivisionVerdict::division) return false;
    if (dq.dim_b != 2 || dq.ell != 1 || dq.dim_bprime != 2) return false;
    if (!dq.bicommutant_is_b || !dq.dim_identity_holds) return false;

    auto h = quaternion_left_algebra();
    auto dh = division_algebra_analysis(h);
    if (dh.verdict != DivisionVerdict::division) return false;
    if (dh.dim_b != 4 || dh.dim_bprime != 4) return false;
    if (!dh.bicommutant_is_b || !dh.dim_identity_holds) return false;
    if (center(h).dim() != 1) return false;
    auto bm = center_bimodule_analysis(h);
    return bm.dim_a12 == 16 && bm.dim_identity_holds;
}

bool criterion_combined() {
    std::mt19937 rng(777);
    Rational ex(0);
    std::vector<OperatorAlgebra<Rational>> pool;
    pool.push_back(generate_algebra(2, {qmat({{0, -1}, {1, 0}})}, ex));        // Q(i)
    pool.push_back(full_matrix_algebra(2));                                    // M_2
    pool.push_back(generate_algebra(2, {Matrix<Rational>::identity(2, ex)}, ex));
    pool.push_back(generate_algebra(3, {Matrix<Rational>::identity(3, ex)}, ex));
    pool.push_back(generate_algebra(2, {qmat({{0, 1}, {0, 0}})}, ex));         // Q[N]
    auto z3 = regular_representation(FiniteGroup::cyclic(3), ex, RegularSide::left);
    pool.push_back(generate_algebra(3, z3.matrices(), ex));
    for (int k = 0; k < 10; ++k) {
        const auto& a = pool[rng() % pool.size()];
        const auto& b = pool[rng() % pool.size()];
        if (combined_algebra(a, b).dim() != a.dim() * b.dim()) return false;
    }
    // A = L(V), B = L(W): the combined algebra is L(H) and (A_{H,1})' = B_{H,2}
    auto lv = full_matrix_algebra(2);
    auto lw = full_matrix_algebra(2);
    auto c = combined_algebra(lv, lw);
    if (c.dim() != 16 || c != full_matrix_algebra(4)) return false;
    auto scalars2 = generate_algebra(2, {Matrix<Rational>::identity(2, ex)}, ex);
    auto ah1 = combined_algebra(lv, scalars2);
    auto bh2 = combined_algebra(scalars2, lw);
    return commutant(ah1) == bh2 && commutant(bh2) == ah1;
}

bool criterion_flag_dual() {
    Rational ex(0);
    std::vector<std::vector<std::vector<Rational>>> chain = {
        {{Rational(1), Rational(0), Rational(0)}},
        {{Rational(1), Rational(0), Rational(0)}, {Rational(0), Rational(1), Rational(0)}}};
    auto fa = flag_algebra(3, chain, ex);
    if (fa.dim() != 6 || commutant(fa).dim() != 1) return false;

    std::mt19937 rng(555);
    std::vector<OperatorAlgebra<Rational>> pool;
    pool.push_back(generate_algebra(2, {qmat({{0, -1}, {1, 0}})}, ex));
    pool.push_back(full_matrix_algebra(2));
    pool.push_back(generate_algebra(2, {qmat({{0, 1}, {0, 0}})}, ex));
    std::vector<DualExtensionReport<Rational>> exts;
    for (const auto& a : pool) {
        auto de = dual_extension(a);
        if (!de.forms_nondegenerate || !de.transpose_identities_hold || !de.t_algebra)
            return false;
        exts.push_back(std::move(de));
    }
    for (int k = 0; k < 100; ++k) {
        const auto& de = exts[rng() % exts.size()];
        std::size_t m = de.ahat.ambient_dim();
        // random element of Ahat and random probe vectors
        Matrix<Rational> r = Matrix<Rational>::zero(m, m, ex);
        for (const auto& base : de.ahat.basis()) r = r + base.scaled(random_rational(rng, 4));
        auto u = random_vector(rng, m);
        auto v = random_vector(rng, m);
        for (const Matrix<Rational>* g : {&de.gram_b1, &de.gram_b2}) {
            Matrix<Rational> rt = *inverse(*g) * r.transpose() * *g;
            if (!de.ahat.contains(rt)) return false;
            // B(R u, v) = B(u, R^t v)
            auto form = [&](const std::vector<Rational>& x, const std::vector<Rational>& y) {
                Rational s(0);
                auto gy = g->apply(y);
                for (std::size_t i = 0; i < m; ++i) s += x[i] * gy[i];
                return s;
            };
            if (form(r.apply(u), v) != form(u, rt.apply(v))) return false;
        }
    }
    return true;
}

bool criterion_padic() {
    std::mt19937 rng(999);
    for (unsigned long p : {2ul, 3ul, 5ul}) {
        for (int k = 0; k < 100; ++k) {
            long num = (long)(rng() % 2001) - 1000;
            long den = 1 + rng() % 200;
            while (den % p == 0) den = 1 + rng() % 200;
            if (num == 0) num = 1;
            Rational x(num, den);
            auto e = padic_from_rational(x, p, 14);
            for (std::size_t n = 0; n <= 12; ++n) {
                PadicApprox sn(p, e.valuation(),
                               std::vector<unsigned long>(e.digits().begin(),
                                                          e.digits().begin() + n + 1));
                Rational bound = Rational::pow(Rational((long)p), -(long)(n + 1));
                if (abs_p(sn.partial_sum() - x, p) > bound) return false;
            }
            // arithmetic round-trips against exact rationals
            Rational y(1 + (long)(rng() % 50), den);
            auto ea = padic_from_rational(x, p, 12), eb = padic_from_rational(y, p, 12);
            auto window = [&](const PadicApprox& r, const Rational& exact) {
                Rational tol = Rational::pow(Rational((long)p),
                                             r.valuation() + (long)r.precision());
                return !(abs_p(r.partial_sum() - exact, p) > tol);
            };
            if (!window(padic_add(ea, eb), x + y)) return false;
            if (!window(padic_mul(ea, eb), x * y)) return false;
            if (!window(padic_inv(ea), x.inverse())) return false;
        }
        // digits of -1 are all p - 1
        auto m1 = padic_from_rational(Rational(-1), p, 10);
        for (unsigned long d : m1.digits())
            if (d != p - 1) return false;
    }
    // ultrametric inequality on 1000 pairs
    for (int k = 0; k < 1000; ++k) {
        unsigned long p = std::vector<unsigned long>{2, 3, 5}[rng() % 3];
        Rational a = random_rational(rng, 500), b = random_rational(rng, 500);
        if (abs_p(a + b, p) > std::max(abs_p(a, p), abs_p(b, p))) return false;
    }
    return true;
}

bool criterion_ultranorm() {
    std::mt19937 rng(321);
    auto n1 = UltranormSpec::n1(5, 3);
    // operator norm = max-entry formula for N1; bound on 500 probes with
    // equality attained at a standard basis vector
    for (int k = 0; k < 25; ++k) {
        Matrix<Rational> t(3, 3, Rational(0));
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j) t(i, j) = random_rational(rng, 9);
        auto nv = operator_norm(t, n1);
        Rational max_entry(0);
        std::size_t jstar = 0;
        for (std::size_t j = 0; j < 3; ++j) {
            Rational cn = n1.eval(t.column(j));
            if (cn > max_entry) { max_entry = cn; jstar = j; }
        }
        if (nv.value != max_entry) return false;
        std::vector<Rational> e(3, Rational(0));
        e[jstar] = Rational(1);
        if (n1.eval(t.apply(e)) != nv.value) return false;
        for (int q = 0; q < 20; ++q) {
            auto v = random_vector(rng, 3);
            if (n1.eval(t.apply(v)) > nv.value * n1.eval(v)) return false;
        }
    }
    // isometry criterion vs brute force on 200 probes
    for (int k = 0; k < 200; ++k) {
        Matrix<Rational> t(3, 3, Rational(0));
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j) t(i, j) = Rational((long)(rng() % 11) - 5);
        auto ti = inverse(t);
        if (!ti) continue;
        // probes include e_j and T^{-1} e_j: norm preservation there forces
        // ||T|| = ||T^{-1}|| = 1, so this set decides the isometry property
        std::vector<std::vector<Rational>> probes;
        for (std::size_t j = 0; j < 3; ++j) {
            std::vector<Rational> e(3, Rational(0));
            e[j] = Rational(1);
            probes.push_back(ti->apply(e));
            probes.push_back(std::move(e));
        }
        for (int q = 0; q < 25; ++q) probes.push_back(random_vector(rng, 3));
        bool brute = true;
        for (const auto& v : probes) brute = brute && n1.eval(t.apply(v)) == n1.eval(v);
        if (is_isometry(t, n1) != brute) return false;
    }
    // normalized-basis reconstruction on 100 probes
    auto spec = UltranormSpec::weighted_max(5, {Rational(1), Rational(5), Rational(1, 5)});
    auto nb = normalized_basis(spec);
    for (int k = 0; k < 100; ++k) {
        auto v = random_vector(rng, 3);
        auto f = nb.duals.apply(v);
        Rational m(0);
        for (std::size_t j = 0; j < 3; ++j) {
            Rational term = nb.norms[j] * abs_p(f[j], 5);
            if (term > m) m = term;
        }
        if (m != spec.eval(v)) return false;
    }
    // perturbation bound instances
    for (int k = 0; k < 50; ++k) {
        Matrix<Rational> t(3, 3, Rational(0)), s(3, 3, Rational(0));
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j) {
                t(i, j) = random_rational(rng, 6);
                s(i, j) = random_rational(rng, 6);
            }
        Rational nt = operator_norm(t, n1).value, ns = operator_norm(s, n1).value;
        if (operator_norm(t * s, n1).value > nt * ns) return false;
        if (operator_norm(t + s, n1).value > std::max(nt, ns)) return false;
        auto ti = inverse(t);
        if (ti && !nt.is_zero() && operator_norm(*ti, n1).value * nt < Rational(1))
            return false;
    }
    {
        auto t = qmat({{1, 5}, {10, 1}});
        auto n12 = UltranormSpec::n1(5, 2);
        auto diff = t - Matrix<Rational>::identity(2, Rational(0));
        if (!(operator_norm(diff, n12).value < Rational(1))) return false;
        if (!is_isometry(t, n12)) return false;
    }
    // conjugating by a scaled normalized basis turns an invariant norm into N1
    auto s3 = symmetric_group_s3();
    auto perm = permutation_representation(s3.group, s3.perms, Rational(0));
    auto seed = UltranormSpec::weighted_max(5, {Rational(1), Rational(5), Rational(1, 5)});
    auto inv = invariant_norm_from_rep(perm, seed);
    auto inb = normalized_basis(inv);
    Matrix<Rational> c(3, 3, Rational(0));
    for (std::size_t j = 0; j < 3; ++j)
        for (std::size_t i = 0; i < 3; ++i) c(i, j) = inb.basis[j][i] * inb.norms[j];
    auto cinv = inverse(c);
    if (!cinv) return false;
    for (std::size_t a = 0; a < s3.group.order(); ++a)
        if (!is_isometry(*cinv * perm.matrix(a) * c, n1)) return false;
    return true;
}

bool criterion_char_p() {
    for (unsigned long p : {2ul, 3ul, 5ul, 7ul}) {
        auto fr = frobenius_check(p, 1);
        if (!fr.passed()) return false;
        auto fr2 = frobenius_check(p, 2);
        if (!fr2.root_of_unity_forces_one) return false;
    }
    // order factorization of a 6-cycle over F_2: 6 = 2 * 3
    Matrix<Fp> s(6, 6, Fp(2, 0));
    for (std::size_t i = 0; i < 6; ++i) s((i + 1) % 6, i) = Fp(2, 1);
    auto of = order_factorization(s, 6);
    auto id = Matrix<Fp>::identity(6, Fp(2, 0));
    if (of.s1.pow(2) != id || of.s2.pow(3) != id) return false;
    if (of.s1 * of.s2 != s || of.s1 * of.s2 != of.s2 * of.s1) return false;
    // Z/2 over F_2: W = span{e1} is invariant but has no invariant complement
    Fp z(2, 0), o(2, 1);
    Matrix<Fp> shear(2, 2, z);
    shear(0, 0) = shear(1, 1) = shear(0, 1) = o;
    Representation<Fp> rho(FiniteGroup::cyclic(2), {Matrix<Fp>::identity(2, z), shear});
    std::vector<std::vector<Fp>> w = {{o, z}};
    if (!maps_into_span(rho.matrices(), w)) return false;
    // the only candidate complements are the other two lines of F_2^2
    for (const std::vector<Fp>& gen : {std::vector<Fp>{z, o}, std::vector<Fp>{o, o}}) {
        if (maps_into_span(rho.matrices(), {gen})) return false;
    }
    bool threw = false;
    try {
        maschke_complement(rho, w);
    } catch (const std::invalid_argument&) {
        threw = true;
    }
    return threw;
}

}  // namespace

int main() {
    report(1, "regular representation commutants: A_L' = A_R", criterion_regular_commutant());
    report(2, "double commutant A'' = A and expansion", criterion_double_commutant());
    report(3, "center dimension = number of conjugacy classes", criterion_center());
    report(4, "Maschke averaging from 20 seeded projections", criterion_maschke());
    report(5, "decomposition of the regular rep of S3", criterion_s3_decomposition());
    report(6, "division algebras Q(i) and quaternions", criterion_division());
    report(7, "combined algebras have dimension rs", criterion_combined());
    report(8, "flag algebras and dual extensions", criterion_flag_dual());
    report(9, "p-adic expansions, arithmetic, ultrametric", criterion_padic());
    report(10, "ultrametric norms and operator norms", criterion_ultranorm());
    report(11, "positive characteristic controls", criterion_char_p());
    if (failures > 0) {
        std::printf("%d criterion(s) failed\n", failures);
        return 1;
    }
    std::printf("all criteria passed\n");
    return 0;
}
