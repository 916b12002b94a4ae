#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "commutantkit/matrix.hpp"
#include "commutantkit/padic.hpp"
#include "commutantkit/rep.hpp"

namespace ck {

/// Ultrametric norm on Q^n over |.|_p in functional-max form:
///   N(v) = max_t  c_t * |g_t(v)|_p
/// with positive rational weights c_t and functionals g_t of full column
/// rank.  Weighted-max norms are the case g = identity; normalized-basis
/// norms are the case g = dual basis; the form is closed under the
/// invariant-norm construction, which stacks more functionals.
class UltranormSpec {
public:
    UltranormSpec(unsigned long p, std::vector<Rational> weights, Matrix<Rational> functionals)
        : p_(p), weights_(std::move(weights)), functionals_(std::move(functionals)) {
        if (!is_prime(p_)) throw std::invalid_argument("norm: p must be prime");
        if (weights_.size() != functionals_.rows())
            throw std::invalid_argument("norm: one weight per functional");
        for (const Rational& c : weights_)
            if (!(c > Rational(0))) throw std::invalid_argument("norm: weights must be positive");
        if (rref(functionals_).rank != functionals_.cols())
            throw std::invalid_argument("norm: functionals must have full column rank");
    }

    static UltranormSpec weighted_max(unsigned long p, const std::vector<Rational>& w) {
        return UltranormSpec(p, w, Matrix<Rational>::identity(w.size(), Rational(0)));
    }
    static UltranormSpec n1(unsigned long p, std::size_t n) {
        return weighted_max(p, std::vector<Rational>(n, Rational(1)));
    }

    unsigned long p() const { return p_; }
    std::size_t dim() const { return functionals_.cols(); }
    const std::vector<Rational>& weights() const { return weights_; }
    const Matrix<Rational>& functionals() const { return functionals_; }

    Rational eval(const std::vector<Rational>& v) const {
        if (v.size() != dim()) throw std::invalid_argument("norm: dimension mismatch");
        Rational best(0);
        for (std::size_t t = 0; t < weights_.size(); ++t) {
            Rational g(0);
            for (std::size_t j = 0; j < dim(); ++j) g += functionals_(t, j) * v[j];
            Rational val = weights_[t] * abs_p(g, p_);
            if (val > best) best = val;
        }
        return best;
    }

private:
    unsigned long p_;
    std::vector<Rational> weights_;
    Matrix<Rational> functionals_;
};

/// N(rho_b v) = N(v) for all b, by taking the max over the orbit.
inline UltranormSpec invariant_norm_from_rep(const Representation<Rational>& rho,
                                             const UltranormSpec& seed) {
    if (seed.dim() != rho.degree())
        throw std::invalid_argument("invariant_norm_from_rep: dimension mismatch");
    std::vector<Rational> weights;
    std::vector<std::vector<Rational>> rows;
    for (std::size_t a = 0; a < rho.group().order(); ++a) {
        Matrix<Rational> stacked = seed.functionals() * rho.matrix(a);
        for (std::size_t t = 0; t < stacked.rows(); ++t) {
            weights.push_back(seed.weights()[t]);
            rows.push_back(stacked.row(t));
        }
    }
    return UltranormSpec(seed.p(), std::move(weights), Matrix<Rational>::from_rows(rows));
}

struct NormalizedBasis {
    std::vector<std::vector<Rational>> basis;   // x_j
    Matrix<Rational> duals;                     // rows f_j, f_j(x_k) = delta
    std::vector<Rational> norms;                // N(x_j)
};

namespace detail {

/// Core of the greedy construction shared by normalized_basis and
/// norm_one_projection.  Starting from the residual map R = I, repeatedly:
/// pick b = R(seed) nonzero, take a functional g attaining N(b), and peel
/// off the rank-one projection v -> (g(Rv)/g(b)) b, which has norm <= 1
/// because c_g |g(w)| <= N(w) with equality at w = b.
struct GreedyState {
    const UltranormSpec& spec;
    Matrix<Rational> residual;                  // R_k
    std::vector<std::vector<Rational>> xs;      // chosen b_k
    std::vector<std::vector<Rational>> fs;      // ambient functionals f_k

    explicit GreedyState(const UltranormSpec& s)
        : spec(s), residual(Matrix<Rational>::identity(s.dim(), Rational(0))) {}

    bool step(const std::vector<Rational>& seed_vec) {
        std::size_t n = spec.dim();
        std::vector<Rational> b = residual.apply(seed_vec);
        bool zero = true;
        for (const Rational& x : b) zero = zero && x.is_zero();
        if (zero) return false;
        // pivot functional attaining N(b)
        Rational best(0);
        std::size_t tstar = spec.weights().size();
        for (std::size_t t = 0; t < spec.weights().size(); ++t) {
            Rational g(0);
            for (std::size_t j = 0; j < n; ++j) g += spec.functionals()(t, j) * b[j];
            Rational val = spec.weights()[t] * abs_p(g, spec.p());
            if (val > best) { best = val; tstar = t; }
        }
        if (tstar == spec.weights().size())
            throw std::logic_error("norm: degenerate spec, N(b) = 0 for b != 0");
        Rational gb(0);
        for (std::size_t j = 0; j < n; ++j) gb += spec.functionals()(tstar, j) * b[j];
        Rational gb_inv = gb.inverse();
        // f(v) = g(R v) / g(b)
        std::vector<Rational> f(n, Rational(0));
        for (std::size_t j = 0; j < n; ++j) {
            Rational s(0);
            for (std::size_t i = 0; i < n; ++i) s += spec.functionals()(tstar, i) * residual(i, j);
            f[j] = s * gb_inv;
        }
        // R <- R - b f
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) residual(i, j) -= b[i] * f[j];
        xs.push_back(std::move(b));
        fs.push_back(std::move(f));
        return true;
    }
};

}  // namespace detail

/// Basis x_j with duals f_j such that N(v) = max_j N(x_j)|f_j(v)|_p and
/// N(x_j)|f_j(v)|_p <= N(v) for every v.
inline NormalizedBasis normalized_basis(const UltranormSpec& spec) {
    std::size_t n = spec.dim();
    detail::GreedyState st(spec);
    while (st.xs.size() < n) {
        bool advanced = false;
        for (std::size_t j = 0; j < n && !advanced; ++j) {
            std::vector<Rational> e(n, Rational(0));
            e[j] = Rational(1);
            advanced = st.step(e);
        }
        if (!advanced) throw std::logic_error("normalized_basis: residual vanished early");
    }
    NormalizedBasis out{st.xs, Matrix<Rational>::from_rows(st.fs), {}};
    for (const auto& x : st.xs) out.norms.push_back(spec.eval(x));
    return out;
}

/// The normalized-basis form of the same norm, usable as a spec.
inline UltranormSpec normalized_spec(const UltranormSpec& spec) {
    NormalizedBasis nb = normalized_basis(spec);
    return UltranormSpec(spec.p(), nb.norms, nb.duals);
}

struct OperatorNormValue {
    Rational value;
    std::vector<Rational> witness;  // nonzero vector attaining the value
};

/// Exact operator norm between functional-max specs:
/// max_j N_target(T x_j) / N(x_j) over a normalized basis of the domain,
/// attained at the maximizing x_j.  For N1 this is the max-entry formula.
inline OperatorNormValue operator_norm(const Matrix<Rational>& t, const UltranormSpec& domain,
                                       const UltranormSpec& target) {
    if (t.cols() != domain.dim() || t.rows() != target.dim())
        throw std::invalid_argument("operator_norm: shape mismatch");
    NormalizedBasis nb = normalized_basis(domain);
    OperatorNormValue out{Rational(0), nb.basis.front()};
    for (std::size_t j = 0; j < nb.basis.size(); ++j) {
        Rational val = target.eval(t.apply(nb.basis[j])) / nb.norms[j];
        if (val > out.value) {
            out.value = val;
            out.witness = nb.basis[j];
        }
    }
    return out;
}

inline OperatorNormValue operator_norm(const Matrix<Rational>& t, const UltranormSpec& spec) {
    return operator_norm(t, spec, spec);
}

/// N(Tv) = N(v) for all v, decided as ||T|| <= 1 and ||T^{-1}|| <= 1; for
/// the plain N1 spec this coincides with ||T|| <= 1 and |det T|_p = 1.
inline bool is_isometry(const Matrix<Rational>& t, const UltranormSpec& spec) {
    if (t.rows() != t.cols() || t.rows() != spec.dim())
        throw std::invalid_argument("is_isometry: square matrix required");
    auto tinv = inverse(t);
    if (!tinv) return false;
    Rational one(1);
    return !(operator_norm(t, spec).value > one) && !(operator_norm(*tinv, spec).value > one);
}

/// Projection onto W with N(P v) <= N(v), from the greedy construction with
/// seeds inside W.
inline Matrix<Rational> norm_one_projection(const std::vector<std::vector<Rational>>& w_basis,
                                            const UltranormSpec& spec) {
    std::size_t n = spec.dim();
    auto w = canonical_span_basis(w_basis);
    detail::GreedyState st(spec);
    while (st.xs.size() < w.size()) {
        bool advanced = false;
        for (const auto& wv : w) {
            if (st.step(wv)) { advanced = true; break; }
        }
        if (!advanced) throw std::logic_error("norm_one_projection: ran out of seeds");
    }
    // P = I - R_final
    Matrix<Rational> p = Matrix<Rational>::identity(n, Rational(0)) - st.residual;
    if (p * p != p) throw std::logic_error("norm_one_projection: not idempotent");
    for (const auto& wv : w)
        if (p.apply(wv) != wv) throw std::logic_error("norm_one_projection: does not fix W");
    return p;
}

struct NearestPoint {
    std::vector<Rational> point;   // x0 in W
    Rational distance;             // N(z - x0), minimal
};

/// x0 = P(z) for a norm-one projection P onto W: for any x in W,
/// z - P z = (I - P)(z - x), so N(z - P z) <= N(z - x).
inline NearestPoint nearest_point(const std::vector<std::vector<Rational>>& w_basis,
                                  const std::vector<Rational>& z, const UltranormSpec& spec) {
    auto w = canonical_span_basis(w_basis);
    if (in_span(w, z)) throw std::invalid_argument("nearest_point: z lies in W");
    if (w.empty())
        return NearestPoint{std::vector<Rational>(spec.dim(), Rational(0)), spec.eval(z)};
    Matrix<Rational> p = norm_one_projection(w, spec);
    std::vector<Rational> x0 = p.apply(z);
    std::vector<Rational> diff(z);
    for (std::size_t i = 0; i < diff.size(); ++i) diff[i] -= x0[i];
    return NearestPoint{std::move(x0), spec.eval(diff)};
}

/// T : W -> Q^m with N_target(T w) <= bound * N(w) extends to T1 = T P on
/// all of Q^n with the same bound; T1 agrees with T on W.
inline Matrix<Rational> extend_bounded_map(const std::vector<std::vector<Rational>>& w_basis,
                                           const Matrix<Rational>& t_on_w, const Rational& bound,
                                           const UltranormSpec& domain,
                                           const UltranormSpec& target) {
    auto w = canonical_span_basis(w_basis);
    if (t_on_w.cols() != w.size())
        throw std::invalid_argument("extend_bounded_map: one column per basis vector of W");
    std::size_t n = domain.dim(), d = w.size();
    for (std::size_t j = 0; j < d; ++j) {
        std::vector<Rational> img = t_on_w.column(j);
        if (target.eval(img) > bound * domain.eval(w[j]))
            throw std::invalid_argument("extend_bounded_map: bound violated on W basis");
    }
    Matrix<Rational> p = norm_one_projection(w, domain);
    // coordinates of P v in the basis of W
    Matrix<Rational> bw(n, d, Rational(0));
    for (std::size_t j = 0; j < d; ++j)
        for (std::size_t i = 0; i < n; ++i) bw(i, j) = w[j][i];
    Matrix<Rational> coords(d, n, Rational(0));
    for (std::size_t k = 0; k < n; ++k) {
        auto x = solve(bw, p.column(k));
        if (!x) throw std::logic_error("extend_bounded_map: projection image escaped W");
        for (std::size_t i = 0; i < d; ++i) coords(i, k) = (*x)[i];
    }
    return t_on_w * coords;
}

}  // namespace ck
