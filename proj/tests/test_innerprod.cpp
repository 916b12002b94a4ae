#include <doctest.h>

#include "commutantkit/innerprod.hpp"

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

}  // namespace

TEST_CASE("positivity is certified at construction") {
    CHECK_NOTHROW(InnerProductSpace<Rational>(qmat({{2, 1}, {1, 2}})));
    CHECK_THROWS(InnerProductSpace<Rational>(qmat({{1, 2}, {2, 1}})));   // indefinite
    CHECK_THROWS(InnerProductSpace<Rational>(qmat({{1, 1}, {0, 1}})));   // not symmetric
    CHECK_THROWS(InnerProductSpace<Rational>(qmat({{1, 1}, {1, 1}})));   // degenerate
    // over Q(i) the Gram matrix must be conjugate-symmetric
    GaussianRational gi(Rational(0), Rational(1)), g1(Rational(1), Rational(0));
    Matrix<GaussianRational> g(2, 2, GaussianRational());
    g(0, 0) = g(1, 1) = GaussianRational(Rational(2), Rational(0));
    g(0, 1) = gi;
    g(1, 0) = ck::conj(gi);
    CHECK_NOTHROW((void)InnerProductSpace<GaussianRational>(g));
    g(1, 0) = gi;
    CHECK_THROWS((void)InnerProductSpace<GaussianRational>(g));
}

TEST_CASE("Gram-Schmidt produces an orthogonal basis with the same span") {
    auto space = InnerProductSpace<Rational>(qmat({{2, 1, 0}, {1, 2, 1}, {0, 1, 2}}));
    std::vector<std::vector<Rational>> v = {{Rational(1), Rational(0), Rational(0)},
                                            {Rational(1), Rational(1), Rational(0)},
                                            {Rational(1), Rational(1), Rational(1)}};
    auto u = gram_schmidt(space, v);
    REQUIRE(u.size() == 3);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < i; ++j) CHECK(space.inner(u[i], u[j]).is_zero());
    CHECK(canonical_span_basis(u) == canonical_span_basis(v));
    std::vector<std::vector<Rational>> dep = {{Rational(1), Rational(0), Rational(0)},
                                              {Rational(2), Rational(0), Rational(0)}};
    CHECK_THROWS(gram_schmidt(space, dep));
}

TEST_CASE("orthogonal projection and complement") {
    auto space = InnerProductSpace<Rational>::standard(3, Rational(0));
    std::vector<std::vector<Rational>> u = {{Rational(1), Rational(1), Rational(0)}};
    auto p = orthogonal_projection(space, u);
    CHECK(p * p == p);
    CHECK(adjoint(p, space) == p);
    CHECK(p.apply(u[0]) == u[0]);
    auto comp = orthogonal_complement(space, u);
    CHECK(comp.size() == 2);
    for (const auto& w : comp) {
        CHECK(space.inner(w, u[0]).is_zero());
        bool all_zero = true;
        for (const auto& c : p.apply(w))
            if (!c.is_zero()) all_zero = false;
        CHECK(all_zero);
    }
    CHECK(orthogonal_complement(space, {}).size() == 3);
}

TEST_CASE("adjoint satisfies the defining identity") {
    auto space = InnerProductSpace<Rational>(qmat({{2, 1}, {1, 2}}));
    auto t = qmat({{1, 2}, {3, 4}});
    auto ts = adjoint(t, space);
    std::vector<std::vector<Rational>> probes = {{Rational(1), Rational(0)},
                                                 {Rational(0), Rational(1)},
                                                 {Rational(2), Rational(-3)}};
    for (const auto& v : probes)
        for (const auto& w : probes)
            CHECK(space.inner(t.apply(v), w) == space.inner(v, ts.apply(w)));
    CHECK(adjoint(ts, space) == t);
    CHECK(adjoint(t * ts, space) == t * ts);  // T T* is self-adjoint
}

TEST_CASE("adjoint over Q(i) conjugates scalars") {
    auto space = InnerProductSpace<GaussianRational>::standard(2, GaussianRational());
    GaussianRational i(Rational(0), Rational(1));
    Matrix<GaussianRational> t(2, 2, GaussianRational());
    t(0, 0) = i;
    t(1, 0) = GaussianRational(Rational(2), Rational(0));
    t(1, 1) = i;
    auto ts = adjoint(t, space);
    CHECK(ts(0, 0) == ck::conj(i));
    CHECK(ts(0, 1) == GaussianRational(Rational(2), Rational(0)));
    CHECK(ts(1, 0) == GaussianRational());
    CHECK(ts(1, 1) == ck::conj(i));
}

TEST_CASE("averaged inner product is invariant and yields a *-algebra") {
    auto s3 = symmetric_group_s3();
    auto perm = permutation_representation(s3.group, s3.perms, Rational(0));
    auto seed = InnerProductSpace<Rational>(qmat({{1, 0, 0}, {0, 2, 0}, {0, 0, 5}}));
    auto inv = invariant_inner_product(perm, seed);
    for (std::size_t x = 0; x < s3.group.order(); ++x) {
        const auto& r = perm.matrix(x);
        CHECK(r.transpose() * inv.gram() * r == inv.gram());
        CHECK(adjoint(r, inv) == perm.matrix(s3.group.inverse(x)));
    }
    auto star = star_algebra_from_rep(perm, inv);
    CHECK(star_closure_check(star, inv));
    // the seed itself is not invariant, so building the *-algebra from it fails
    CHECK_THROWS(star_algebra_from_rep(perm, seed));
}

TEST_CASE("commutant structure of the plane rotation: complex type") {
    // Z/4 acting by the rotation J on Q^2: A' = Q[J], J* = -J, J^2 = -I
    auto j = qmat({{0, -1}, {1, 0}});
    auto a = generate_algebra(2, {j}, Rational(0));
    auto space = InnerProductSpace<Rational>::standard(2, Rational(0));
    auto rep = commutant_structure_report(a, space);
    CHECK(rep.dim_commutant == 2);
    CHECK(rep.dim_symmetric == 1);
    CHECK(rep.dim_antisymmetric == 1);
    CHECK(rep.split_exact);
    CHECK(rep.pairing_scalar);
    CHECK(rep.j_squared_identity);
}

TEST_CASE("commutant structure of the quaternions: anticommuting triple") {
    auto li = qmat({{0, -1, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, -1}, {0, 0, 1, 0}});
    auto lj = qmat({{0, 0, -1, 0}, {0, 0, 0, 1}, {1, 0, 0, 0}, {0, -1, 0, 0}});
    auto a = generate_algebra(4, {li, lj, li * lj}, Rational(0));
    auto space = InnerProductSpace<Rational>::standard(4, Rational(0));
    auto rep = commutant_structure_report(a, space);
    CHECK(rep.dim_commutant == 4);
    CHECK(rep.dim_symmetric == 1);
    CHECK(rep.dim_antisymmetric == 3);
    CHECK(rep.split_exact);
    CHECK(rep.pairing_scalar);
    CHECK(rep.anticommutation);
}

TEST_CASE("real type: a symmetric commutant has no antisymmetric part") {
    // trivial algebra on Q^1 inflated: A = scalars on Q^2 has A' = M_2;
    // instead take A = M_2 itself, whose commutant is the scalars
    Rational ex(0);
    auto full = commutant(generate_algebra(2, {Matrix<Rational>::identity(2, ex)}, ex));
    auto space = InnerProductSpace<Rational>::standard(2, ex);
    auto rep = commutant_structure_report(full, space);
    CHECK(rep.dim_commutant == 1);
    CHECK(rep.dim_symmetric == 1);
    CHECK(rep.dim_antisymmetric == 0);
    CHECK(rep.split_exact);
}
