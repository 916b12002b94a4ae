#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "commutantkit/algebra.hpp"
#include "commutantkit/gaussian.hpp"
#include "commutantkit/matrix.hpp"
#include "commutantkit/rep.hpp"

namespace ck {

/// Positivity on the fixed subfield of the conjugation: positive rationals.
inline bool is_positive(const Rational& x) { return x > Rational(0); }
inline bool is_positive(const GaussianRational& x) {
    return x.im().is_zero() && x.re() > Rational(0);
}
inline bool is_positive(const Fp&) { return false; }  // no order; never a symmetric field

/// <v, w> = v^T G conj(w) with G conjugate-symmetric and positive definite;
/// positivity is certified on construction by Gram-Schmidt over the
/// standard basis producing positive pivots.
template <class K>
class InnerProductSpace {
public:
    explicit InnerProductSpace(Matrix<K> gram) : gram_(std::move(gram)) {
        n_ = gram_.rows();
        if (gram_.cols() != n_ || n_ == 0)
            throw std::invalid_argument("inner product: Gram matrix must be square");
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < n_; ++j)
                if (gram_(j, i) != ck::conj(gram_(i, j)))
                    throw std::invalid_argument("inner product: Gram not conjugate-symmetric");
        certify_positive();
    }

    static InnerProductSpace standard(std::size_t n, const K& exemplar) {
        return InnerProductSpace(Matrix<K>::identity(n, exemplar));
    }

    std::size_t dim() const { return n_; }
    const Matrix<K>& gram() const { return gram_; }
    const K& exemplar() const { return gram_.exemplar(); }

    K inner(const std::vector<K>& v, const std::vector<K>& w) const {
        if (v.size() != n_ || w.size() != n_)
            throw std::invalid_argument("inner: dimension mismatch");
        K s = zero_like(exemplar());
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < n_; ++j) s += v[i] * gram_(i, j) * ck::conj(w[j]);
        return s;
    }

private:
    void certify_positive() const {
        std::vector<std::vector<K>> ortho;
        for (std::size_t j = 0; j < n_; ++j) {
            std::vector<K> e(n_, zero_like(exemplar()));
            e[j] = one_like(exemplar());
            for (const auto& u : ortho) {
                K c = inner(e, u) * inverse_of(inner(u, u));
                for (std::size_t i = 0; i < n_; ++i) e[i] -= c * u[i];
            }
            if (!is_positive(inner(e, e)))
                throw std::invalid_argument("inner product: Gram matrix not positive definite");
            ortho.push_back(std::move(e));
        }
    }

    std::size_t n_;
    Matrix<K> gram_;
};

/// The inductive construction u_{m+1} = v_{m+1} - P(v_{m+1}).
template <class K>
std::vector<std::vector<K>> gram_schmidt(const InnerProductSpace<K>& space,
                                         const std::vector<std::vector<K>>& vectors) {
    if (span_rank(vectors) != vectors.size())
        throw std::invalid_argument("gram_schmidt: input not linearly independent");
    std::vector<std::vector<K>> ortho;
    for (auto v : vectors) {
        for (const auto& u : ortho) {
            K c = space.inner(v, u) * inverse_of(space.inner(u, u));
            for (std::size_t i = 0; i < v.size(); ++i) v[i] -= c * u[i];
        }
        ortho.push_back(std::move(v));
    }
    return ortho;
}

/// P(v) = sum_j <v, u_j>/<u_j, u_j> u_j over an orthogonal basis of U.
template <class K>
Matrix<K> orthogonal_projection(const InnerProductSpace<K>& space,
                                const std::vector<std::vector<K>>& u_spanning) {
    std::size_t n = space.dim();
    const K& ex = space.exemplar();
    auto u = canonical_span_basis(u_spanning);
    Matrix<K> p = Matrix<K>::zero(n, n, ex);
    if (u.empty()) return p;
    auto ortho = gram_schmidt(space, u);
    for (std::size_t k = 0; k < n; ++k) {
        std::vector<K> e(n, zero_like(ex));
        e[k] = one_like(ex);
        for (const auto& uj : ortho) {
            K c = space.inner(e, uj) * inverse_of(space.inner(uj, uj));
            for (std::size_t i = 0; i < n; ++i) p(i, k) += c * uj[i];
        }
    }
    if (p * p != p) throw std::logic_error("orthogonal_projection: not idempotent");
    return p;
}

template <class K>
std::vector<std::vector<K>> orthogonal_complement(const InnerProductSpace<K>& space,
                                                  const std::vector<std::vector<K>>& u_spanning) {
    std::size_t n = space.dim();
    const K& ex = space.exemplar();
    auto u = canonical_span_basis(u_spanning);
    if (u.empty()) {
        std::vector<std::vector<K>> all;
        for (std::size_t j = 0; j < n; ++j) {
            std::vector<K> e(n, zero_like(ex));
            e[j] = one_like(ex);
            all.push_back(std::move(e));
        }
        return all;
    }
    // v with <v, u_j> = 0: rows are (G conj(u_j)) transposed.
    Matrix<K> sys(u.size(), n, zero_like(ex));
    for (std::size_t r = 0; r < u.size(); ++r)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                sys(r, i) += space.gram()(i, j) * ck::conj(u[r][j]);
    return canonical_span_basis(nullspace(sys));
}

/// <T v, w> = <v, T* w> solved through the Gram matrix:
/// T* = conj(G^{-1} T^T G).
template <class K>
Matrix<K> adjoint(const Matrix<K>& t, const InnerProductSpace<K>& space) {
    Matrix<K> g = space.gram();
    return (*inverse(g) * t.transpose() * g).conjugate();
}

/// T : V1 -> V2; the adjoint maps V2 -> V1 via T* = conj(G1^{-1} T^T G2).
template <class K>
Matrix<K> adjoint_between(const Matrix<K>& t, const InnerProductSpace<K>& space1,
                          const InnerProductSpace<K>& space2) {
    return (*inverse(space1.gram()) * t.transpose() * space2.gram()).conjugate();
}

template <class K>
bool star_closure_check(const OperatorAlgebra<K>& a, const InnerProductSpace<K>& space) {
    for (const auto& t : a.basis())
        if (!a.contains(adjoint(t, space))) return false;
    return true;
}

/// For a rho-invariant inner product, (rho_x)* = rho_{x^{-1}}, making the
/// group algebra a *-algebra.
template <class K>
OperatorAlgebra<K> star_algebra_from_rep(const Representation<K>& rho,
                                         const InnerProductSpace<K>& space) {
    for (std::size_t x = 0; x < rho.group().order(); ++x)
        if (adjoint(rho.matrix(x), space) != rho.matrix(rho.group().inverse(x)))
            throw std::invalid_argument("star_algebra_from_rep: inner product not invariant");
    auto a = generate_algebra(rho.degree(), rho.matrices(), rho.exemplar());
    if (!star_closure_check(a, space))
        throw std::logic_error("star_algebra_from_rep: algebra not *-closed");
    return a;
}

/// <v, w> = sum_y <rho_y v, rho_y w>_0; Gram matrix sum_y rho_y^T G0 conj(rho_y).
template <class K>
InnerProductSpace<K> invariant_inner_product(const Representation<K>& rho,
                                             const InnerProductSpace<K>& seed) {
    if (seed.dim() != rho.degree())
        throw std::invalid_argument("invariant_inner_product: dimension mismatch");
    Matrix<K> g = Matrix<K>::zero(rho.degree(), rho.degree(), rho.exemplar());
    for (std::size_t y = 0; y < rho.group().order(); ++y) {
        const Matrix<K>& r = rho.matrix(y);
        g = g + r.transpose() * seed.gram() * r.conjugate();
    }
    InnerProductSpace<K> out(g);
    for (std::size_t x = 0; x < rho.group().order(); ++x) {
        const Matrix<K>& r = rho.matrix(x);
        if (r.transpose() * g * r.conjugate() != g)
            throw std::logic_error("invariant_inner_product: invariance failed");
    }
    return out;
}

template <class K>
struct CommutantStructureReport {
    std::size_t dim_commutant = 0;
    std::size_t dim_symmetric = 0;        // T* = T part
    std::size_t dim_antisymmetric = 0;    // T* = -T part
    bool split_exact = false;             // dims add up
    bool pairing_scalar = false;          // (R*T + T*R)/2 scalar on the antisym basis
    bool j_squared_identity = false;      // dim 1: J^2 = -(J,J) I with (J,J) positive
    bool anticommutation = false;         // dim 3: pairwise R1 R2 = -R2 R1 after
                                          // orthogonalizing the pairing
};

/// Splits A' into symmetric and antisymmetric parts under T -> T* and probes
/// the quaternion-flavored identities on the antisymmetric part.
template <class K>
CommutantStructureReport<K> commutant_structure_report(const OperatorAlgebra<K>& a,
                                                       const InnerProductSpace<K>& space) {
    if (characteristic(a.exemplar()) == 2)
        throw std::invalid_argument("commutant_structure_report: characteristic 2");
    OperatorAlgebra<K> ap = commutant(a);
    CommutantStructureReport<K> out;
    out.dim_commutant = ap.dim();
    const K& ex = a.exemplar();
    K half = inverse_of(from_int(ex, 2));
    std::vector<std::vector<K>> sym, anti;
    for (const auto& t : ap.basis()) {
        Matrix<K> ts = adjoint(t, space);
        sym.push_back(((t + ts).scaled(half)).flatten());
        anti.push_back(((t - ts).scaled(half)).flatten());
    }
    sym = canonical_span_basis(sym);
    anti = canonical_span_basis(anti);
    out.dim_symmetric = sym.size();
    out.dim_antisymmetric = anti.size();
    out.split_exact = sym.size() + anti.size() == ap.dim();
    std::size_t n = a.ambient_dim();
    std::vector<Matrix<K>> rs;
    for (const auto& v : anti) rs.push_back(Matrix<K>::unflatten(v, n, n));
    // (R*T + T*R)/2 = (R, T) I on the antisymmetric part.
    bool scalar = true;
    for (const auto& r : rs)
        for (const auto& t : rs) {
            Matrix<K> m = (adjoint(r, space) * t + adjoint(t, space) * r).scaled(half);
            K lambda = m(0, 0);
            if (m != Matrix<K>::identity(n, ex).scaled(lambda)) scalar = false;
        }
    out.pairing_scalar = scalar;
    if (scalar && rs.size() == 1) {
        const auto& j = rs[0];
        K jj = (adjoint(j, space) * j)(0, 0);
        out.j_squared_identity =
            is_positive(jj) && j * j == Matrix<K>::identity(n, ex).scaled(-jj);
    }
    if (scalar && rs.size() == 3) {
        // Orthogonalize under the pairing, then check R1 R2 = -R2 R1.
        auto pair = [&](const Matrix<K>& r, const Matrix<K>& t) {
            return ((adjoint(r, space) * t + adjoint(t, space) * r).scaled(half))(0, 0);
        };
        std::vector<Matrix<K>> ortho;
        for (auto r : rs) {
            for (const auto& u : ortho) r = r - u.scaled(pair(r, u) * inverse_of(pair(u, u)));
            ortho.push_back(r);
        }
        bool anti_ok = true;
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = i + 1; j < 3; ++j)
                anti_ok = anti_ok && ortho[i] * ortho[j] == -(ortho[j] * ortho[i]);
        out.anticommutation = anti_ok;
    }
    return out;
}

}  // namespace ck
