#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "commutantkit/group.hpp"
#include "commutantkit/matrix.hpp"

namespace ck {

/// A verified homomorphism x -> rho_x into GL(n).  Verification is
/// exhaustive over all |G|^2 pairs and always on.
template <class K>
class Representation {
public:
    Representation(FiniteGroup group, std::vector<Matrix<K>> matrices)
        : group_(std::move(group)), mats_(std::move(matrices)) {
        if (mats_.size() != group_.order())
            throw std::invalid_argument("representation: one matrix per group element required");
        degree_ = mats_.front().rows();
        for (const auto& m : mats_)
            if (m.rows() != degree_ || m.cols() != degree_)
                throw std::invalid_argument("representation: matrices must be square, equal size");
        Matrix<K> id = Matrix<K>::identity(degree_, exemplar());
        if (mats_[group_.identity()] != id)
            throw std::invalid_argument("representation: rho_e != I");
        for (std::size_t x = 0; x < group_.order(); ++x)
            for (std::size_t y = 0; y < group_.order(); ++y)
                if (mats_[x] * mats_[y] != mats_[group_.op(x, y)])
                    throw std::invalid_argument("representation: rho_xy != rho_x rho_y");
    }

    const FiniteGroup& group() const { return group_; }
    std::size_t degree() const { return degree_; }
    const Matrix<K>& matrix(std::size_t x) const { return mats_[x]; }
    const std::vector<Matrix<K>>& matrices() const { return mats_; }
    const K& exemplar() const { return mats_.front().exemplar(); }

private:
    FiniteGroup group_;
    std::size_t degree_;
    std::vector<Matrix<K>> mats_;
};

enum class RegularSide { left, right };

/// L_x(phi_w) = phi_{xw};  R_x(phi_w) = phi_{w x^{-1}}.
template <class K>
Representation<K> regular_representation(const FiniteGroup& g, const K& exemplar,
                                         RegularSide side = RegularSide::left) {
    std::size_t m = g.order();
    std::vector<Matrix<K>> mats;
    for (std::size_t x = 0; x < m; ++x) {
        Matrix<K> mat = Matrix<K>::zero(m, m, exemplar);
        for (std::size_t w = 0; w < m; ++w) {
            std::size_t target = side == RegularSide::left ? g.op(x, w) : g.op(w, g.inverse(x));
            mat(target, w) = one_like(exemplar);
        }
        mats.push_back(std::move(mat));
    }
    return Representation<K>(g, std::move(mats));
}

/// Pi_x(psi_b) = psi_{pi_x(b)} for an action pi of G on a finite set.
template <class K>
Representation<K> permutation_representation(const FiniteGroup& g,
                                             const std::vector<Permutation>& perms,
                                             const K& exemplar) {
    if (perms.size() != g.order())
        throw std::invalid_argument("permutation_representation: one permutation per element");
    std::size_t k = perms.front().size();
    std::vector<Matrix<K>> mats;
    for (std::size_t x = 0; x < g.order(); ++x) {
        Matrix<K> mat = Matrix<K>::zero(k, k, exemplar);
        for (std::size_t b = 0; b < k; ++b) mat(perms[x][b], b) = one_like(exemplar);
        mats.push_back(std::move(mat));
    }
    return Representation<K>(g, std::move(mats));
}

/// Matrix of the dual operator in dual coordinates: the transpose.
template <class K>
Matrix<K> dual_operator(const Matrix<K>& t) {
    return t.transpose();
}

/// x -> transpose of rho_{x^{-1}}, which restores the homomorphism property
/// reversed by dualization.
template <class K>
Representation<K> dual_representation(const Representation<K>& rho) {
    std::vector<Matrix<K>> mats;
    for (std::size_t x = 0; x < rho.group().order(); ++x)
        mats.push_back(rho.matrix(rho.group().inverse(x)).transpose());
    return Representation<K>(rho.group(), std::move(mats));
}

template <class K>
bool subspace_invariant(const std::vector<Matrix<K>>& operators,
                        const std::vector<std::vector<K>>& w_basis) {
    for (const auto& t : operators)
        for (const auto& w : w_basis)
            if (!in_span(w_basis, t.apply(w))) return false;
    return true;
}

/// Completes w_basis to a basis of k^n with standard vectors; the change of
/// basis puts every rho_x in block-triangular form and the lower-right block
/// is the quotient action on V/W.
template <class K>
Representation<K> quotient_representation(const Representation<K>& rho,
                                          const std::vector<std::vector<K>>& w_basis) {
    std::size_t n = rho.degree();
    const K& ex = rho.exemplar();
    std::vector<std::vector<K>> w = canonical_span_basis(w_basis);
    if (!subspace_invariant(rho.matrices(), w))
        throw std::invalid_argument("quotient_representation: W is not invariant");
    std::size_t d = w.size();
    if (d == n) throw std::invalid_argument("quotient_representation: W = V gives a zero space");
    std::vector<std::vector<K>> full = w;
    for (std::size_t j = 0; j < n && full.size() < n; ++j) {
        std::vector<K> e(n, zero_like(ex));
        e[j] = one_like(ex);
        if (!in_span(full, e)) full.push_back(std::move(e));
    }
    Matrix<K> c(n, n, zero_like(ex));
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) c(i, j) = full[j][i];
    Matrix<K> cinv = *inverse(c);
    std::vector<Matrix<K>> mats;
    for (const auto& t : rho.matrices()) {
        Matrix<K> b = cinv * t * c;
        for (std::size_t i = d; i < n; ++i)
            for (std::size_t j = 0; j < d; ++j)
                if (!is_zero(b(i, j)))
                    throw std::logic_error("quotient_representation: block structure violated");
        Matrix<K> q(n - d, n - d, zero_like(ex));
        for (std::size_t i = d; i < n; ++i)
            for (std::size_t j = d; j < n; ++j) q(i - d, j - d) = b(i, j);
        mats.push_back(std::move(q));
    }
    return Representation<K>(rho.group(), std::move(mats));
}

/// Basis of {T : T rho1_x = rho2_x T for all x}, as n2 x n1 matrices.
template <class K>
std::vector<Matrix<K>> intertwiner_space(const Representation<K>& rho1,
                                         const Representation<K>& rho2) {
    if (rho1.group().order() != rho2.group().order() ||
        rho1.group().table() != rho2.group().table())
        throw std::invalid_argument("intertwiner_space: different groups");
    std::size_t n1 = rho1.degree(), n2 = rho2.degree(), m = rho1.group().order();
    const K& ex = rho1.exemplar();
    std::size_t unknowns = n1 * n2;
    Matrix<K> sys(m * unknowns, unknowns, zero_like(ex));
    // Unknown T(i,k) lives at column i*n1 + k.
    for (std::size_t x = 0; x < m; ++x) {
        const Matrix<K>& a = rho1.matrix(x);
        const Matrix<K>& b = rho2.matrix(x);
        for (std::size_t i = 0; i < n2; ++i)
            for (std::size_t j = 0; j < n1; ++j) {
                std::size_t row = x * unknowns + i * n1 + j;
                for (std::size_t k = 0; k < n1; ++k) sys(row, i * n1 + k) += a(k, j);
                for (std::size_t k = 0; k < n2; ++k) sys(row, k * n1 + j) -= b(i, k);
            }
    }
    std::vector<Matrix<K>> basis;
    for (auto& v : nullspace(sys)) basis.push_back(Matrix<K>::unflatten(v, n2, n1));
    return basis;
}

enum class IsoStatus { isomorphic, not_isomorphic, inconclusive };

template <class K>
struct IsoResult {
    IsoStatus status = IsoStatus::not_isomorphic;
    std::optional<Matrix<K>> intertwiner;  // invertible when isomorphic
};

/// Searches the intertwiner space for an invertible element: basis elements,
/// sums of two, then small-integer combinations with coefficients in [-4, 4].
/// For irreducible pairs a nonzero intertwiner is automatically invertible,
/// so the basis pass is already complete in that case.
template <class K>
IsoResult<K> are_isomorphic(const Representation<K>& rho1, const Representation<K>& rho2) {
    IsoResult<K> out;
    if (rho1.degree() != rho2.degree()) return out;
    auto basis = intertwiner_space(rho1, rho2);
    if (basis.empty()) return out;
    auto try_mat = [&](const Matrix<K>& t) {
        if (!inverse(t)) return false;
        out.status = IsoStatus::isomorphic;
        out.intertwiner = t;
        return true;
    };
    for (const auto& t : basis)
        if (try_mat(t)) return out;
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = i + 1; j < basis.size(); ++j)
            if (try_mat(basis[i] + basis[j])) return out;
    if (characteristic(rho1.exemplar()) == 0 && basis.size() <= 4) {
        std::vector<long> c(basis.size(), -4);
        while (true) {
            Matrix<K> t = Matrix<K>::zero(rho1.degree(), rho1.degree(), rho1.exemplar());
            for (std::size_t i = 0; i < basis.size(); ++i)
                t = t + basis[i].scaled(from_int(rho1.exemplar(), c[i]));
            if (!t.is_zero_matrix() && try_mat(t)) return out;
            std::size_t k = 0;
            while (k < c.size() && ++c[k] > 4) c[k++] = -4;
            if (k == c.size()) break;
        }
    }
    out.status = IsoStatus::inconclusive;  // nonzero space, no invertible element found
    return out;
}

template <class K>
struct RegularEmbedding {
    std::vector<std::vector<K>> u_basis;  // subspace of functions on G
    Matrix<K> map;                        // v -> f_v, an |G| x n matrix
    bool injective = false;
};

/// f_v(y) = lambda(sigma_{y^{-1}}(v)); intertwines sigma with the left
/// regular representation restricted to U = image.
template <class K>
RegularEmbedding<K> embed_in_regular(const Representation<K>& sigma,
                                     const std::vector<K>& lambda) {
    std::size_t n = sigma.degree(), m = sigma.group().order();
    if (lambda.size() != n) throw std::invalid_argument("embed_in_regular: functional size");
    bool all_zero = true;
    for (const K& c : lambda) all_zero = all_zero && is_zero(c);
    if (all_zero) throw std::invalid_argument("embed_in_regular: zero functional");
    Matrix<K> e(m, n, zero_like(sigma.exemplar()));
    for (std::size_t y = 0; y < m; ++y) {
        const Matrix<K>& s = sigma.matrix(sigma.group().inverse(y));
        for (std::size_t j = 0; j < n; ++j) {
            K v = zero_like(sigma.exemplar());
            for (std::size_t i = 0; i < n; ++i) v += lambda[i] * s(i, j);
            e(y, j) = v;
        }
    }
    RegularEmbedding<K> out{{}, e, false};
    std::vector<std::vector<K>> cols;
    for (std::size_t j = 0; j < n; ++j) cols.push_back(e.column(j));
    out.u_basis = canonical_span_basis(cols);
    out.injective = out.u_basis.size() == n;
    // Intertwining identity L_x f_v = f_{sigma_x v}, checked for all x.
    auto lreg = regular_representation(sigma.group(), sigma.exemplar(), RegularSide::left);
    for (std::size_t x = 0; x < m; ++x)
        if (lreg.matrix(x) * e != e * sigma.matrix(x))
            throw std::logic_error("embed_in_regular: intertwining identity failed");
    return out;
}

/// Representation of G1 x G2 on Hom(V, W) (row-major vectorized):
/// rho_{(x,y)}(R) = tau_y R sigma_x^{-1}.
template <class K>
Representation<K> hom_representation(const Representation<K>& sigma,
                                     const Representation<K>& tau) {
    std::size_t nv = sigma.degree(), nw = tau.degree();
    std::size_t dim = nv * nw;
    FiniteGroup prod = product_group(sigma.group(), tau.group());
    const K& ex = sigma.exemplar();
    std::vector<Matrix<K>> mats;
    for (std::size_t x = 0; x < sigma.group().order(); ++x) {
        Matrix<K> sinv = sigma.matrix(sigma.group().inverse(x));
        for (std::size_t y = 0; y < tau.group().order(); ++y) {
            const Matrix<K>& t = tau.matrix(y);
            Matrix<K> big(dim, dim, zero_like(ex));
            for (std::size_t a = 0; a < nw; ++a)
                for (std::size_t b = 0; b < nv; ++b) {
                    // image of the matrix unit E_ab under R -> t R sinv
                    for (std::size_t i = 0; i < nw; ++i)
                        for (std::size_t j = 0; j < nv; ++j)
                            big(i * nv + j, a * nv + b) = t(i, a) * sinv(b, j);
                }
            mats.push_back(std::move(big));
        }
    }
    return Representation<K>(std::move(prod), std::move(mats));
}

}  // namespace ck
