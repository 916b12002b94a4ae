#include <doctest.h>

#include <algorithm>
#include <random>

#include "commutantkit/ultranorm.hpp"

using namespace ck;

namespace {

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

std::vector<Rational> random_vector(std::mt19937& rng, std::size_t n) {
    std::uniform_int_distribution<long> num(-50, 50);
    std::uniform_int_distribution<long> den(1, 24);
    std::vector<Rational> v;
    for (std::size_t i = 0; i < n; ++i) v.emplace_back(num(rng), den(rng));
    return v;
}

}  // namespace

TEST_CASE("weighted max norm: frozen values") {
    auto spec = UltranormSpec::weighted_max(
        5, {Rational(1), Rational(5), Rational(1, 5)});
    CHECK(spec.eval({Rational(5), Rational(1, 5), Rational(3)}) == Rational(25));
    CHECK(spec.eval({Rational(1), Rational(0), Rational(0)}) == Rational(1));
    CHECK(spec.eval({Rational(0), Rational(0), Rational(0)}).is_zero());
    CHECK(spec.eval({Rational(0), Rational(0), Rational(1, 25)}) == Rational(5));
    CHECK_THROWS(UltranormSpec::weighted_max(6, {Rational(1)}));
    CHECK_THROWS(UltranormSpec::weighted_max(5, {Rational(-1)}));
}

TEST_CASE("norm axioms on random probes") {
    std::mt19937 rng(11);
    auto spec = UltranormSpec::weighted_max(
        3, {Rational(1), Rational(3), Rational(1, 9)});
    for (int k = 0; k < 200; ++k) {
        auto v = random_vector(rng, 3);
        auto w = random_vector(rng, 3);
        Rational a(rng() % 41 - 20, 1 + rng() % 9);
        std::vector<Rational> av(3), sum(3);
        for (std::size_t i = 0; i < 3; ++i) {
            av[i] = a * v[i];
            sum[i] = v[i] + w[i];
        }
        CHECK(spec.eval(av) == abs_p(a, 3) * spec.eval(v));
        CHECK(spec.eval(sum) <= std::max(spec.eval(v), spec.eval(w)));
    }
}

TEST_CASE("operator norm attains its value at the witness") {
    std::mt19937 rng(23);
    auto spec = UltranormSpec::weighted_max(
        5, {Rational(1), Rational(5), Rational(1, 5)});
    // frozen instance: diag(1/5, 1, 5)
    auto d = qmat({{0, 0, 0}, {0, 1, 0}, {0, 0, 5}});
    d(0, 0) = Rational(1, 5);
    auto on = operator_norm(d, spec);
    CHECK(on.value == Rational(5));
    CHECK(spec.eval(d.apply(on.witness)) == on.value * spec.eval(on.witness));
    // random operators: value is an upper bound on probes, attained at witness
    for (int k = 0; k < 25; ++k) {
        Matrix<Rational> t(3, 3, Rational(0));
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j)
                t(i, j) = Rational((long)(rng() % 19) - 9, 1 + rng() % 5);
        auto nv = operator_norm(t, spec);
        CHECK(spec.eval(t.apply(nv.witness)) == nv.value * spec.eval(nv.witness));
        for (int q = 0; q < 20; ++q) {
            auto v = random_vector(rng, 3);
            CHECK(spec.eval(t.apply(v)) <= nv.value * spec.eval(v));
        }
    }
}

TEST_CASE("isometry verdicts") {
    auto n1 = UltranormSpec::n1(5, 2);
    CHECK(is_isometry(qmat({{0, 1}, {1, 0}}), n1));       // permutation
    CHECK(is_isometry(qmat({{1, 5}, {0, 1}}), n1));       // unimodular shear
    CHECK(is_isometry(qmat({{2, 0}, {0, 3}}), n1));       // p-adic units
    CHECK(!is_isometry(qmat({{5, 0}, {0, 1}}), n1));      // scales e1 by 1/5
    auto half = qmat({{1, 0}, {0, 0}});
    half(1, 1) = Rational(1, 5);
    CHECK(!is_isometry(half, n1));
    CHECK(!is_isometry(qmat({{1, 1}, {1, 1}}), n1));      // singular
    // brute comparison on a deciding probe set: e_j and T^{-1} e_j, where
    // norm preservation forces ||T|| = ||T^{-1}|| = 1
    std::mt19937 rng(7);
    for (int k = 0; k < 40; ++k) {
        Matrix<Rational> t(2, 2, Rational(0));
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 2; ++j) t(i, j) = Rational((long)(rng() % 11) - 5);
        auto ti = inverse(t);
        if (!ti) {
            CHECK(!is_isometry(t, n1));
            continue;
        }
        std::vector<std::vector<Rational>> probes;
        for (std::size_t j = 0; j < 2; ++j) {
            std::vector<Rational> e(2, Rational(0));
            e[j] = Rational(1);
            probes.push_back(ti->apply(e));
            probes.push_back(std::move(e));
        }
        for (int q = 0; q < 10; ++q) probes.push_back(random_vector(rng, 2));
        bool brute = true;
        for (const auto& v : probes) brute = brute && n1.eval(t.apply(v)) == n1.eval(v);
        CHECK(is_isometry(t, n1) == brute);
    }
}

TEST_CASE("normalized basis reconstructs the norm") {
    auto spec = UltranormSpec::weighted_max(
        5, {Rational(1), Rational(5), Rational(1, 5)});
    auto nb = normalized_basis(spec);
    REQUIRE(nb.basis.size() == 3);
    // duality f_j(x_k) = delta_jk
    for (std::size_t j = 0; j < 3; ++j) {
        auto vals = nb.duals.apply(nb.basis[j]);
        for (std::size_t k = 0; k < 3; ++k)
            CHECK(vals[k] == (k == j ? Rational(1) : Rational(0)));
    }
    std::mt19937 rng(31);
    for (int k = 0; k < 100; ++k) {
        auto v = random_vector(rng, 3);
        auto f = nb.duals.apply(v);
        Rational m(0);
        for (std::size_t j = 0; j < 3; ++j) {
            Rational term = nb.norms[j] * abs_p(f[j], 5);
            CHECK(term <= spec.eval(v));
            if (term > m) m = term;
        }
        CHECK(m == spec.eval(v));
    }
    // the normalized spec defines the same norm
    auto nspec = normalized_spec(spec);
    for (int k = 0; k < 50; ++k) {
        auto v = random_vector(rng, 3);
        CHECK(nspec.eval(v) == spec.eval(v));
    }
}

TEST_CASE("group averaging produces an invariant norm") {
    auto s3 = symmetric_group_s3();
    auto perm = permutation_representation(s3.group, s3.perms, Rational(0));
    auto seed = UltranormSpec::weighted_max(5, {Rational(1), Rational(5), Rational(1, 5)});
    auto inv = invariant_norm_from_rep(perm, seed);
    std::mt19937 rng(41);
    for (std::size_t a = 0; a < s3.group.order(); ++a) {
        CHECK(is_isometry(perm.matrix(a), inv));
        for (int k = 0; k < 10; ++k) {
            auto v = random_vector(rng, 3);
            CHECK(inv.eval(perm.matrix(a).apply(v)) == inv.eval(v));
        }
    }
}

TEST_CASE("norm-one projection and nearest point") {
    auto n1 = UltranormSpec::n1(5, 2);
    std::vector<std::vector<Rational>> w = {{Rational(1), Rational(0)}};
    auto p = norm_one_projection(w, n1);
    CHECK(p * p == p);
    CHECK(p.apply(w[0]) == w[0]);
    CHECK(!(operator_norm(p, n1).value > Rational(1)));
    // frozen nearest point: z = (1/5, 1), W = span{e1}
    auto np = nearest_point(w, {Rational(1, 5), Rational(1)}, n1);
    CHECK(np.point == std::vector<Rational>{Rational(1, 5), Rational(0)});
    CHECK(np.distance == Rational(1));
    // minimality against sampled points of W
    std::mt19937 rng(53);
    for (int k = 0; k < 100; ++k) {
        Rational c((long)(rng() % 101) - 50, 1 + rng() % 24);
        std::vector<Rational> diff = {Rational(1, 5) - c, Rational(1)};
        CHECK(np.distance <= n1.eval(diff));
    }
    CHECK_THROWS(nearest_point(w, {Rational(2), Rational(0)}, n1));  // z in W
}

TEST_CASE("bounded maps extend without increasing the bound") {
    auto n1 = UltranormSpec::n1(5, 3);
    auto target = UltranormSpec::n1(5, 2);
    std::vector<std::vector<Rational>> w = {{Rational(1), Rational(0), Rational(0)},
                                            {Rational(0), Rational(1), Rational(5)}};
    auto t_on_w = qmat({{1, 0}, {0, 5}});
    Rational bound(1);
    auto ext = extend_bounded_map(w, t_on_w, bound, n1, target);
    CHECK(ext.rows() == 2);
    CHECK(ext.cols() == 3);
    for (std::size_t j = 0; j < 2; ++j)
        CHECK(ext.apply(w[j]) == t_on_w.column(j));
    CHECK(!(operator_norm(ext, n1, target).value > bound));
    // a map violating the bound on W is rejected
    CHECK_THROWS(extend_bounded_map(w, qmat({{1, 0}, {0, 1}}).scaled(Rational(1, 5)),
                                    Rational(1, 25), n1, target));
}

TEST_CASE("submultiplicativity and perturbation bounds") {
    std::mt19937 rng(61);
    auto spec = UltranormSpec::weighted_max(3, {Rational(1), Rational(3)});
    for (int k = 0; k < 60; ++k) {
        Matrix<Rational> t(2, 2, Rational(0)), s(2, 2, Rational(0));
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 2; ++j) {
                t(i, j) = Rational((long)(rng() % 13) - 6, 1 + rng() % 4);
                s(i, j) = Rational((long)(rng() % 13) - 6, 1 + rng() % 4);
            }
        Rational nt = operator_norm(t, spec).value;
        Rational ns = operator_norm(s, spec).value;
        CHECK(operator_norm(t * s, spec).value <= nt * ns);
        CHECK(operator_norm(t + s, spec).value <= std::max(nt, ns));
        auto tinv = inverse(t);
        if (tinv && !nt.is_zero())
            CHECK(!(operator_norm(*tinv, spec).value * nt < Rational(1)));
    }
    // ||T - I|| < 1 forces T to be an invertible isometry
    auto t = qmat({{1, 3}, {9, 1}});
    auto diff = t - Matrix<Rational>::identity(2, Rational(0));
    CHECK(operator_norm(diff, spec).value < Rational(1));
    CHECK(is_isometry(t, spec));
}
