#include <doctest.h>

#include <random>

#include "commutantkit/matrix.hpp"
#include "commutantkit/poly.hpp"

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

TEST_CASE("rref, rank, and nullspace") {
    auto m = qmat({{1, 2, 3}, {2, 4, 6}, {1, 0, 1}});
    auto r = rref(m);
    CHECK(r.rank == 2);
    auto ns = nullspace(m);
    REQUIRE(ns.size() == 1);
    // (1, 1, -1) spans the kernel
    for (std::size_t i = 0; i < 3; ++i) {
        Rational acc(0);
        for (std::size_t j = 0; j < 3; ++j) acc += m(i, j) * ns[0][j];
        CHECK(acc.is_zero());
    }
}

TEST_CASE("solve, det, inverse") {
    auto a = qmat({{2, 1}, {1, 1}});
    CHECK(det(a) == Rational(1));
    auto x = solve(a, {Rational(3), Rational(2)});
    REQUIRE(x);
    CHECK((*x)[0] == Rational(1));
    CHECK((*x)[1] == Rational(1));
    auto inv = inverse(a);
    REQUIRE(inv);
    CHECK(*inv * a == Matrix<Rational>::identity(2, Rational(0)));
    CHECK(!inverse(qmat({{1, 2}, {2, 4}})));
    CHECK(!solve(qmat({{1, 1}, {1, 1}}), {Rational(0), Rational(1)}));
}

TEST_CASE("canonical span basis decides subspace equality") {
    std::vector<std::vector<Rational>> a = {{Rational(1), Rational(1)}, {Rational(1), Rational(-1)}};
    std::vector<std::vector<Rational>> b = {{Rational(2), Rational(0)}, {Rational(0), Rational(3)}};
    CHECK(canonical_span_basis(a) == canonical_span_basis(b));
    CHECK(in_span(a, {Rational(5), Rational(7)}));
}

TEST_CASE("minimal and characteristic polynomials") {
    auto d = qmat({{1, 0, 0}, {0, 1, 0}, {0, 0, 2}});
    auto mp = minimal_polynomial(d);
    // (x-1)(x-2) = x^2 - 3x + 2
    CHECK(mp.coeffs() == std::vector<Rational>{Rational(2), Rational(-3), Rational(1)});
    auto cp = characteristic_polynomial(d);
    CHECK(cp.degree() == 3);
    CHECK(cp.evaluate(Rational(1)).is_zero());
    CHECK(cp.evaluate(Rational(2)).is_zero());
    CHECK(cp.evaluate(d).is_zero_matrix());  // Cayley-Hamilton
    // char p: companion matrix of x^2 + 1 over F_2
    Matrix<Fp> c(2, 2, Fp(2, 0));
    c(0, 1) = Fp(2, 1);
    c(1, 0) = Fp(2, 1);
    auto cp2 = characteristic_polynomial(c);
    CHECK(cp2.evaluate(c).is_zero_matrix());
}

TEST_CASE("random characteristic polynomials satisfy Cayley-Hamilton") {
    std::mt19937 rng(29);
    std::uniform_int_distribution<long> ent(-4, 4);
    for (int trial = 0; trial < 25; ++trial) {
        Matrix<Rational> m(4, 4, Rational(0));
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j) m(i, j) = Rational(ent(rng));
        auto cp = characteristic_polynomial(m);
        CHECK(cp.evaluate(m).is_zero_matrix());
        CHECK(cp.coeff(0) == (4 % 2 ? -det(m) : det(m)));
    }
}

TEST_CASE("factorization over Q (Kronecker)") {
    // x^4 - 1 = (x-1)(x+1)(x^2+1)
    Polynomial<Rational> f({Rational(-1), Rational(0), Rational(0), Rational(0), Rational(1)});
    auto fac = factor_polynomial(f);
    CHECK(fac.factors.size() == 3);
    CHECK(fac.product() == f);
    for (const auto& pf : fac.factors) CHECK(factor_polynomial(pf.factor).factors.size() == 1);
    // x^2 + x + 1 irreducible
    Polynomial<Rational> g({Rational(1), Rational(1), Rational(1)});
    CHECK(factor_polynomial(g).factors.size() == 1);
    // repeated factors: (x-1)^2
    Polynomial<Rational> h({Rational(1), Rational(-2), Rational(1)});
    auto fh = factor_polynomial(h);
    REQUIRE(fh.factors.size() == 1);
    CHECK(fh.factors[0].multiplicity == 2);
}

TEST_CASE("factorization over F_p (Berlekamp)") {
    // x^2 + 1 = (x+2)(x+3) mod 5
    Polynomial<Fp> f({Fp(5, 1), Fp(5, 0), Fp(5, 1)});
    auto fac = factor_polynomial(f);
    CHECK(fac.factors.size() == 2);
    CHECK(fac.product() == f);
    // x^2 + 1 irreducible mod 7
    Polynomial<Fp> g({Fp(7, 1), Fp(7, 0), Fp(7, 1)});
    CHECK(factor_polynomial(g).factors.size() == 1);
    // x^4 + x^2 = x^2 (x^2 + 1) = x^2 (x+1)^2 over F_2
    Polynomial<Fp> h({Fp(2, 0), Fp(2, 0), Fp(2, 1), Fp(2, 0), Fp(2, 1)});
    auto fh = factor_polynomial(h);
    CHECK(fh.product() == h);
    for (const auto& pf : fh.factors) CHECK(pf.factor.degree() == 1);
}

TEST_CASE("quadratic splitting over Q(i)") {
    GaussianRational z(Rational(0), Rational(0)), one(1);
    GaussianRational i(Rational(0), Rational(1));
    // x^2 + 1 = (x - i)(x + i)
    Polynomial<GaussianRational> f({one, z, one});
    auto fac = factor_polynomial(f);
    CHECK(fac.factors.size() == 2);
    CHECK(fac.product() == f);
    // x^2 - i has no root in Q(i); stays irreducible here
    Polynomial<GaussianRational> g({GaussianRational(Rational(0), Rational(-1)), z, one});
    CHECK(factor_polynomial(g).factors.size() == 1);
}

TEST_CASE("inverse via minimal polynomial") {
    auto a = qmat({{2, 1}, {1, 1}});
    auto inv = inverse_via_polynomial(a);
    REQUIRE(inv);
    CHECK(inv->inverse * a == Matrix<Rational>::identity(2, Rational(0)));
    CHECK(inv->expression.evaluate(a) == inv->inverse);
    CHECK(!inverse_via_polynomial(qmat({{1, 1}, {1, 1}})));
}

TEST_CASE("order factorization S = S1 S2 in characteristic p") {
    // 6-cycle permutation matrix over F_2: order 6 = 2 * 3
    Matrix<Fp> s(6, 6, Fp(2, 0));
    for (std::size_t j = 0; j < 6; ++j) s((j + 1) % 6, j) = Fp(2, 1);
    auto of = order_factorization(s, 6);
    CHECK(of.s1 * of.s2 == s);
    CHECK(of.s2 * of.s1 == s);
    CHECK(of.s1.pow(2) == Matrix<Fp>::identity(6, Fp(2, 0)));
    CHECK(of.s2.pow(3) == Matrix<Fp>::identity(6, Fp(2, 0)));
}
