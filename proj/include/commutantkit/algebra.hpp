#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

#include "commutantkit/matrix.hpp"
#include "commutantkit/poly.hpp"
#include "commutantkit/rep.hpp"

namespace ck {

/// Span of finitely many operators, closed under products and containing I.
/// The stored basis is the RREF-canonical basis of the vectorized span, so
/// two algebras are equal exactly when their bases coincide.
template <class K>
class OperatorAlgebra {
public:
    OperatorAlgebra(std::size_t n, std::vector<Matrix<K>> spanning, const K& exemplar)
        : n_(n), exemplar_(exemplar) {
        std::vector<std::vector<K>> flats;
        for (const auto& m : spanning) {
            if (m.rows() != n_ || m.cols() != n_)
                throw std::invalid_argument("algebra: wrong matrix size");
            flats.push_back(m.flatten());
        }
        for (const auto& v : canonical_span_basis(flats))
            basis_.push_back(Matrix<K>::unflatten(v, n_, n_));
        verify_closed();
    }

    std::size_t ambient_dim() const { return n_; }
    std::size_t dim() const { return basis_.size(); }
    const std::vector<Matrix<K>>& basis() const { return basis_; }
    const K& exemplar() const { return exemplar_; }

    bool contains(const Matrix<K>& t) const {
        return in_span(flat_basis(), t.flatten());
    }
    bool operator==(const OperatorAlgebra& o) const {
        if (n_ != o.n_ || basis_.size() != o.basis_.size()) return false;
        for (std::size_t i = 0; i < basis_.size(); ++i)
            if (basis_[i] != o.basis_[i]) return false;
        return true;
    }
    bool operator!=(const OperatorAlgebra& o) const { return !(*this == o); }
    bool subset_of(const OperatorAlgebra& o) const {
        for (const auto& b : basis_)
            if (!o.contains(b)) return false;
        return true;
    }

    std::vector<std::vector<K>> flat_basis() const {
        std::vector<std::vector<K>> f;
        for (const auto& b : basis_) f.push_back(b.flatten());
        return f;
    }

    /// Coordinates of t in the stored basis, if t lies in the span.
    std::optional<std::vector<K>> coordinates(const Matrix<K>& t) const {
        std::size_t nn = n_ * n_;
        Matrix<K> m(nn, basis_.size(), zero_like(exemplar_));
        auto fb = flat_basis();
        for (std::size_t i = 0; i < nn; ++i)
            for (std::size_t j = 0; j < basis_.size(); ++j) m(i, j) = fb[j][i];
        return solve(m, t.flatten());
    }

private:
    void verify_closed() {
        Matrix<K> id = Matrix<K>::identity(n_, exemplar_);
        auto fb = flat_basis();
        if (!in_span(fb, id.flatten()))
            throw std::invalid_argument("algebra: identity not in span");
        for (const auto& a : basis_)
            for (const auto& b : basis_)
                if (!in_span(fb, (a * b).flatten()))
                    throw std::invalid_argument("algebra: span not closed under products");
    }

    std::size_t n_;
    K exemplar_;
    std::vector<Matrix<K>> basis_;
};

/// Span closure of {I} and the generators under multiplication, iterated
/// until the dimension stabilizes.
template <class K>
OperatorAlgebra<K> generate_algebra(std::size_t n, const std::vector<Matrix<K>>& generators,
                                    const K& exemplar) {
    std::vector<std::vector<K>> span;
    span.push_back(Matrix<K>::identity(n, exemplar).flatten());
    for (const auto& g : generators) {
        if (g.rows() != n || g.cols() != n)
            throw std::invalid_argument("generate_algebra: wrong matrix size");
        span.push_back(g.flatten());
    }
    span = canonical_span_basis(span);
    while (true) {
        std::vector<std::vector<K>> next = span;
        for (const auto& a : span)
            for (const auto& b : span)
                next.push_back((Matrix<K>::unflatten(a, n, n) *
                                Matrix<K>::unflatten(b, n, n)).flatten());
        next = canonical_span_basis(next);
        if (next.size() == span.size()) break;
        span = std::move(next);
    }
    std::vector<Matrix<K>> mats;
    for (const auto& v : span) mats.push_back(Matrix<K>::unflatten(v, n, n));
    return OperatorAlgebra<K>(n, std::move(mats), exemplar);
}

/// {T : TA = AT for all A in the generating set}, as the nullspace of the
/// stacked linear system in the n^2-dimensional operator space.
template <class K>
OperatorAlgebra<K> commutant(std::size_t n, const std::vector<Matrix<K>>& set,
                             const K& exemplar) {
    std::size_t nn = n * n;
    Matrix<K> sys(std::max<std::size_t>(1, set.size() * nn), nn, zero_like(exemplar));
    for (std::size_t s = 0; s < set.size(); ++s) {
        const Matrix<K>& a = set[s];
        if (a.rows() != n || a.cols() != n)
            throw std::invalid_argument("commutant: wrong matrix size");
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                std::size_t row = s * nn + i * n + j;
                for (std::size_t k = 0; k < n; ++k) {
                    sys(row, i * n + k) += a(k, j);   // (TA)_{ij}
                    sys(row, k * n + j) -= a(i, k);   // (AT)_{ij}
                }
            }
    }
    std::vector<Matrix<K>> basis;
    for (auto& v : nullspace(sys)) basis.push_back(Matrix<K>::unflatten(v, n, n));
    return OperatorAlgebra<K>(n, std::move(basis), exemplar);
}

template <class K>
OperatorAlgebra<K> commutant(const OperatorAlgebra<K>& a) {
    return commutant(a.ambient_dim(), a.basis(), a.exemplar());
}

template <class K>
struct DoubleCommutantReport {
    OperatorAlgebra<K> aprime;
    OperatorAlgebra<K> adoubleprime;
    bool a_subset_of_bicommutant = false;
    bool a_equals_bicommutant = false;
    bool triple_equals_prime = false;
};

template <class K>
DoubleCommutantReport<K> double_commutant_report(const OperatorAlgebra<K>& a) {
    OperatorAlgebra<K> ap = commutant(a);
    OperatorAlgebra<K> app = commutant(ap);
    OperatorAlgebra<K> appp = commutant(app);
    DoubleCommutantReport<K> out{ap, app, a.subset_of(app), a == app, appp == ap};
    return out;
}

/// Block-diagonal embedding T -> diag(T, ..., T) on V^copies.
template <class K>
Matrix<K> expand_operator(const Matrix<K>& t, std::size_t copies) {
    std::size_t n = t.rows();
    Matrix<K> big = Matrix<K>::zero(n * copies, n * copies, t.exemplar());
    for (std::size_t c = 0; c < copies; ++c)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) big(c * n + i, c * n + j) = t(i, j);
    return big;
}

template <class K>
OperatorAlgebra<K> expand_algebra(const OperatorAlgebra<K>& a, std::size_t copies) {
    if (copies == 0) throw std::invalid_argument("expand_algebra: copies must be positive");
    std::vector<Matrix<K>> basis;
    for (const auto& b : a.basis()) basis.push_back(expand_operator(b, copies));
    return OperatorAlgebra<K>(a.ambient_dim() * copies, std::move(basis), a.exemplar());
}

/// (A'')_n = (A_n)'', both sides computed outright.
template <class K>
bool expansion_check(const OperatorAlgebra<K>& a, std::size_t copies) {
    OperatorAlgebra<K> lhs = expand_algebra(commutant(commutant(a)), copies);
    OperatorAlgebra<K> rhs = commutant(commutant(expand_algebra(a, copies)));
    return lhs == rhs;
}

/// A-span of v: iterate images of v under the algebra basis (I is in the
/// span, so the result contains v).
template <class K>
std::vector<std::vector<K>> spin(const std::vector<Matrix<K>>& algebra_basis,
                                 const std::vector<K>& v) {
    std::vector<std::vector<K>> images;
    for (const auto& b : algebra_basis) images.push_back(b.apply(v));
    return canonical_span_basis(images);
}

template <class K>
struct MaschkeResult {
    Matrix<K> projection;                     // P: image W, rho-equivariant
    std::vector<std::vector<K>> complement;   // Z = ker P, invariant
};

/// P = (1/m) sum_x rho_x P0 rho_x^{-1} with P0 any projection onto W.
template <class K>
MaschkeResult<K> maschke_complement(const Representation<K>& rho,
                                    const std::vector<std::vector<K>>& w_basis,
                                    const std::optional<Matrix<K>>& seed = std::nullopt) {
    std::size_t n = rho.degree(), m = rho.group().order();
    const K& ex = rho.exemplar();
    unsigned long p = characteristic(ex);
    if (p != 0 && m % p == 0)
        throw std::invalid_argument("maschke_complement: characteristic divides group order");
    std::vector<std::vector<K>> w = canonical_span_basis(w_basis);
    if (w.empty()) throw std::invalid_argument("maschke_complement: W = 0");
    if (!subspace_invariant(rho.matrices(), w))
        throw std::invalid_argument("maschke_complement: W is not invariant");
    std::size_t d = w.size();
    std::vector<std::vector<K>> full = w;
    for (std::size_t j = 0; j < n && full.size() < n; ++j) {
        std::vector<K> e(n, zero_like(ex));
        e[j] = one_like(ex);
        if (!in_span(full, e)) full.push_back(std::move(e));
    }
    Matrix<K> c(n, n, zero_like(ex));
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) c(i, j) = full[j][i];
    Matrix<K> diag = Matrix<K>::zero(n, n, ex);
    for (std::size_t i = 0; i < d; ++i) diag(i, i) = one_like(ex);
    Matrix<K> p0 = c * diag * *inverse(c);
    if (seed) {
        // Any projection onto W works; the average is independent of it on
        // the equivariance and image checks below.
        if (*seed * *seed != *seed)
            throw std::invalid_argument("maschke_complement: seed is not a projection");
        std::vector<std::vector<K>> seed_img;
        for (std::size_t j = 0; j < n; ++j) seed_img.push_back(seed->column(j));
        if (canonical_span_basis(seed_img) != w)
            throw std::invalid_argument("maschke_complement: seed image is not W");
        p0 = *seed;
    }
    Matrix<K> sum = Matrix<K>::zero(n, n, ex);
    for (std::size_t x = 0; x < m; ++x)
        sum = sum + rho.matrix(x) * p0 * rho.matrix(rho.group().inverse(x));
    Matrix<K> proj = sum.scaled(inverse_of(from_int(ex, static_cast<long>(m))));
    if (proj * proj != proj) throw std::logic_error("maschke: P^2 != P");
    for (std::size_t x = 0; x < m; ++x)
        if (rho.matrix(x) * proj != proj * rho.matrix(x))
            throw std::logic_error("maschke: P not equivariant");
    // image(P) = W
    std::vector<std::vector<K>> img;
    for (std::size_t j = 0; j < n; ++j) img.push_back(proj.column(j));
    if (canonical_span_basis(img) != w) throw std::logic_error("maschke: image(P) != W");
    MaschkeResult<K> out{proj, nullspace(proj)};
    return out;
}

enum class IrrStatus { reducible, irreducible, inconclusive };

template <class K>
struct InvariantSearchResult {
    IrrStatus status = IrrStatus::inconclusive;
    std::vector<std::vector<K>> subspace;  // proper invariant W when reducible
    std::string certificate;               // human-readable reason
};

/// Meataxe-style search with Norton's certificate.  Reducibility witnesses:
/// a proper spin, the kernel or image of a singular commutant element, or
/// the annihilator of a proper transpose-spin.  Irreducibility is certified
/// on a "good" element: an irreducible factor f of the minimal polynomial of
/// some S in the sweep with nullity(f(S)) = deg f; then every nonzero kernel
/// vector has conjugate spin, so full spins on both sides are conclusive.
template <class K>
InvariantSearchResult<K> invariant_subspace_search(const OperatorAlgebra<K>& a) {
    std::size_t n = a.ambient_dim();
    const K& ex = a.exemplar();
    InvariantSearchResult<K> out;
    if (n == 1) {
        out.status = IrrStatus::irreducible;
        out.certificate = "dimension 1";
        return out;
    }
    auto found = [&](std::vector<std::vector<K>> w, const std::string& why) {
        out.status = IrrStatus::reducible;
        out.subspace = std::move(w);
        out.certificate = why;
        return out;
    };
    // Cheap pass: spins of standard basis vectors.
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<K> e(n, zero_like(ex));
        e[j] = one_like(ex);
        auto w = spin(a.basis(), e);
        if (w.size() < n) return found(std::move(w), "proper spin of a standard basis vector");
    }
    OperatorAlgebra<K> ap = commutant(a);
    // Kernels of singular commutant elements are invariant outright.
    for (const auto& c : ap.basis()) {
        auto ker = nullspace(c);
        if (!ker.empty() && ker.size() < n)
            return found(canonical_span_basis(ker), "kernel of a singular commutant element");
    }
    // Sweep candidates: algebra basis, pairwise sums and products.
    std::vector<Matrix<K>> sweep = a.basis();
    for (std::size_t i = 0; i < a.basis().size(); ++i)
        for (std::size_t j = i + 1; j < a.basis().size(); ++j) {
            sweep.push_back(a.basis()[i] + a.basis()[j]);
            sweep.push_back(a.basis()[i] * a.basis()[j]);
        }
    std::vector<Matrix<K>> tbasis;
    for (const auto& b : a.basis()) tbasis.push_back(b.transpose());
    for (const auto& s : sweep) {
        Polynomial<K> mp = minimal_polynomial(s);
        auto factors = factor_polynomial(mp);
        for (const auto& pf : factors.factors) {
            Matrix<K> m = pf.factor.evaluate(s);
            auto ker = nullspace(m);
            if (ker.empty()) continue;
            for (const auto& v : ker) {
                auto w = spin(a.basis(), v);
                if (w.size() < n) return found(std::move(w), "proper spin of a kernel vector");
            }
            if (ker.size() != static_cast<std::size_t>(pf.factor.degree()))
                continue;  // not a good element; spins being full proves nothing yet
            auto tker = nullspace(m.transpose());
            auto tspin = spin(tbasis, tker.front());
            if (tspin.size() == n) {
                out.status = IrrStatus::irreducible;
                out.certificate = "Norton certificate: full spins on both sides of f(S) "
                                  "with nullity(f(S)) = deg f";
                return out;
            }
            // Annihilator of the transpose-spin is a proper invariant subspace.
            Matrix<K> rows = Matrix<K>::from_rows(tspin);
            auto w = canonical_span_basis(nullspace(rows));
            return found(std::move(w), "annihilator of a proper transpose-spin");
        }
    }
    out.status = IrrStatus::inconclusive;
    out.certificate = "sweep exhausted without a good element";
    return out;
}

/// Matrices of the restrictions of ops to the invariant subspace spanned by
/// w_basis, in the w_basis coordinates.
template <class K>
std::vector<Matrix<K>> restrict_operators(const std::vector<Matrix<K>>& ops,
                                          const std::vector<std::vector<K>>& w_basis) {
    if (w_basis.empty()) throw std::invalid_argument("restrict_operators: empty basis");
    std::size_t n = w_basis.front().size(), d = w_basis.size();
    const K& ex = ops.front().exemplar();
    Matrix<K> bw(n, d, zero_like(ex));
    for (std::size_t j = 0; j < d; ++j)
        for (std::size_t i = 0; i < n; ++i) bw(i, j) = w_basis[j][i];
    std::vector<Matrix<K>> out;
    for (const auto& t : ops) {
        Matrix<K> r(d, d, zero_like(ex));
        for (std::size_t j = 0; j < d; ++j) {
            auto x = solve(bw, t.apply(w_basis[j]));
            if (!x) throw std::invalid_argument("restrict_operators: subspace not invariant");
            for (std::size_t i = 0; i < d; ++i) r(i, j) = (*x)[i];
        }
        out.push_back(std::move(r));
    }
    return out;
}

template <class K>
struct IrreduciblePiece {
    std::vector<std::vector<K>> basis;  // ambient coordinates
    std::size_t isotypic_class = 0;     // pieces with equal class are isomorphic
};

template <class K>
struct Decomposition {
    std::vector<IrreduciblePiece<K>> pieces;
    std::vector<std::size_t> dims() const {
        std::vector<std::size_t> d;
        for (const auto& p : pieces) d.push_back(p.basis.size());
        return d;
    }
};

template <class K>
Representation<K> restriction_representation(const Representation<K>& rho,
                                             const std::vector<std::vector<K>>& w_basis) {
    return Representation<K>(rho.group(), restrict_operators(rho.matrices(), w_basis));
}

/// Recursive Maschke splitting; pieces grouped into isotypic classes by
/// pairwise isomorphism tests on the restricted representations.
template <class K>
Decomposition<K> decompose_into_irreducibles(const Representation<K>& rho) {
    std::size_t n = rho.degree();
    const K& ex = rho.exemplar();
    unsigned long p = characteristic(ex);
    if (p != 0 && rho.group().order() % p == 0)
        throw std::invalid_argument("decompose: characteristic divides group order");
    Decomposition<K> out;
    std::vector<std::vector<std::vector<K>>> stack;
    std::vector<std::vector<K>> fullv;
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<K> e(n, zero_like(ex));
        e[j] = one_like(ex);
        fullv.push_back(std::move(e));
    }
    stack.push_back(std::move(fullv));
    while (!stack.empty()) {
        auto wb = std::move(stack.back());
        stack.pop_back();
        auto restricted = restrict_operators(rho.matrices(), wb);
        OperatorAlgebra<K> alg = generate_algebra(wb.size(), restricted, ex);
        auto search = invariant_subspace_search(alg);
        if (search.status == IrrStatus::inconclusive)
            throw std::runtime_error("decompose: irreducibility test inconclusive");
        if (search.status == IrrStatus::irreducible) {
            out.pieces.push_back({wb, 0});
            continue;
        }
        // Lift the found subspace, build its Maschke complement inside wb.
        Representation<K> sub(rho.group(), restricted);
        auto maschke = maschke_complement(sub, search.subspace);
        auto lift = [&](const std::vector<std::vector<K>>& local) {
            std::vector<std::vector<K>> ambient;
            for (const auto& v : local) {
                std::vector<K> a(n, zero_like(ex));
                for (std::size_t j = 0; j < v.size(); ++j)
                    for (std::size_t i = 0; i < n; ++i) a[i] += v[j] * wb[j][i];
                ambient.push_back(std::move(a));
            }
            return canonical_span_basis(ambient);
        };
        stack.push_back(lift(search.subspace));
        stack.push_back(lift(maschke.complement));
    }
    // Isotypic grouping.
    std::vector<Representation<K>> restrictions;
    for (const auto& piece : out.pieces)
        restrictions.push_back(restriction_representation(rho, piece.basis));
    std::size_t next_class = 0;
    std::vector<bool> assigned(out.pieces.size(), false);
    for (std::size_t i = 0; i < out.pieces.size(); ++i) {
        if (assigned[i]) continue;
        out.pieces[i].isotypic_class = next_class;
        assigned[i] = true;
        for (std::size_t j = i + 1; j < out.pieces.size(); ++j) {
            if (assigned[j]) continue;
            if (are_isomorphic(restrictions[i], restrictions[j]).status ==
                IsoStatus::isomorphic) {
                out.pieces[j].isotypic_class = next_class;
                assigned[j] = true;
            }
        }
        ++next_class;
    }
    return out;
}

/// Center = A intersect A', computed inside the coordinates of A.
template <class K>
OperatorAlgebra<K> center(const OperatorAlgebra<K>& a) {
    std::size_t r = a.dim(), n = a.ambient_dim(), nn = n * n;
    const K& ex = a.exemplar();
    Matrix<K> sys(std::max<std::size_t>(1, r * nn), r, zero_like(ex));
    for (std::size_t k = 0; k < r; ++k) {
        for (std::size_t j = 0; j < r; ++j) {
            Matrix<K> comm = a.basis()[j] * a.basis()[k] - a.basis()[k] * a.basis()[j];
            auto flat = comm.flatten();
            for (std::size_t i = 0; i < nn; ++i) sys(k * nn + i, j) += flat[i];
        }
    }
    std::vector<Matrix<K>> central;
    for (const auto& c : nullspace(sys)) {
        Matrix<K> t = Matrix<K>::zero(n, n, ex);
        for (std::size_t j = 0; j < r; ++j) t = t + a.basis()[j].scaled(c[j]);
        central.push_back(std::move(t));
    }
    return OperatorAlgebra<K>(n, std::move(central), ex);
}

template <class K>
struct ClassFunctionReport {
    bool coefficient_map_faithful = false;  // dim A = |G|
    bool central_coeffs_constant_on_classes = false;
    std::size_t center_dim = 0;
    std::size_t class_count = 0;
    bool passed() const {
        return coefficient_map_faithful && central_coeffs_constant_on_classes &&
               center_dim == class_count;
    }
};

/// Central elements of the group algebra have conjugation-constant
/// coefficients, and dim(center) = number of conjugacy classes.
template <class K>
ClassFunctionReport<K> class_function_check(const Representation<K>& rho) {
    std::size_t m = rho.group().order(), n = rho.degree(), nn = n * n;
    const K& ex = rho.exemplar();
    OperatorAlgebra<K> a = generate_algebra(n, rho.matrices(), ex);
    ClassFunctionReport<K> out;
    out.coefficient_map_faithful = a.dim() == m;
    auto classes = conjugacy_classes(rho.group());
    out.class_count = classes.size();
    OperatorAlgebra<K> z = center(a);
    out.center_dim = z.dim();
    if (!out.coefficient_map_faithful) return out;
    // Solve sum_x a_x rho_x = central element for the coefficients a_x.
    Matrix<K> sys(nn, m, zero_like(ex));
    for (std::size_t x = 0; x < m; ++x) {
        auto flat = rho.matrix(x).flatten();
        for (std::size_t i = 0; i < nn; ++i) sys(i, x) = flat[i];
    }
    bool constant = true;
    for (const auto& t : z.basis()) {
        auto coeffs = solve(sys, t.flatten());
        if (!coeffs) { constant = false; break; }
        for (const auto& cls : classes) {
            for (std::size_t idx : cls)
                if ((*coeffs)[idx] != (*coeffs)[cls.front()]) constant = false;
        }
    }
    out.central_coeffs_constant_on_classes = constant;
    return out;
}

enum class DivisionVerdict { division, not_division, inconclusive };

template <class K>
struct DivisionReport {
    DivisionVerdict verdict = DivisionVerdict::inconclusive;
    bool is_division = false;
    std::string method;                        // how the verdict was certified
    std::optional<Matrix<K>> zero_divisor;     // nonzero singular element when not division
    std::vector<std::vector<K>> b_basis;       // B-independent vectors that B-span V
    std::size_t ell = 0;                       // number of B-basis vectors
    std::size_t dim_b = 0;
    std::size_t dim_bprime = 0;
    bool dim_identity_holds = false;           // dim V = ell * dim B, dim B' = n^2 / dim B
    bool bicommutant_is_b = false;
};

namespace detail {

/// Hilbert symbol (a, b)_p over Q for squarefree nonzero integers, p prime
/// or 0 for the real place.
inline int hilbert_symbol(mpz_class a, mpz_class b, unsigned long p) {
    auto legendre = [](const mpz_class& u, unsigned long q) {
        mpz_class m(static_cast<long>(q));
        return mpz_legendre(u.get_mpz_t(), m.get_mpz_t());
    };
    if (p == 0) return (a < 0 && b < 0) ? -1 : 1;
    long alpha = 0, beta = 0;
    mpz_class pp(static_cast<long>(p));
    while (a % pp == 0) { a /= pp; ++alpha; }
    while (b % pp == 0) { b /= pp; ++beta; }
    if (p != 2) {
        int s = 1;
        if ((alpha & 1) && (beta & 1) && ((p - 1) / 2) % 2 == 1) s = -s;
        if (beta & 1) s *= legendre(a, p);
        if (alpha & 1) s *= legendre(b, p);
        return s;
    }
    auto eps = [](const mpz_class& u) { return mpz_class((u - 1) / 2) % 2 != 0; };
    auto omega = [](const mpz_class& u) { return mpz_class((u * u - 1) / 8) % 2 != 0; };
    bool exp = (eps(a) && eps(b));
    if (alpha & 1) exp = exp != omega(b);
    if (beta & 1) exp = exp != omega(a);
    return exp ? -1 : 1;
}

/// Squarefree integer with the same square class as the rational x.
inline mpz_class square_class(const Rational& x) {
    mpz_class n = x.num() * x.den();
    mpz_class out = n < 0 ? -1 : 1;
    n = abs(n);
    mpz_class d = 2;
    while (d * d <= n) {
        if (n % d == 0) {
            int e = 0;
            while (n % d == 0) { n /= d; ++e; }
            if (e & 1) out *= d;
        }
        d += (d == 2) ? 1 : 2;
    }
    if (n > 10000000) {
        if (mpz_probab_prime_p(n.get_mpz_t(), 40) == 0)
            throw std::runtime_error("square_class: value too hard to factor");
    }
    return out * n;
}

/// Is x^2 - a y^2 - b z^2 isotropic over Q, i.e. does the quaternion
/// algebra (a, b / Q) split?  Decided by Hilbert symbols at 2, infinity,
/// and the odd primes of the squarefree parts.
inline bool quaternion_splits_over_q(const Rational& a, const Rational& b) {
    mpz_class sa = square_class(a), sb = square_class(b);
    std::vector<unsigned long> places{0, 2};
    for (mpz_class v : {sa, sb}) {
        v = abs(v);
        mpz_class d = 3;
        while (d * d <= v) {
            if (v % d == 0) {
                places.push_back(mpz_get_ui(d.get_mpz_t()));
                while (v % d == 0) v /= d;
            }
            d += 2;
        }
        if (v > 2) places.push_back(mpz_get_ui(v.get_mpz_t()));
    }
    for (unsigned long p : places)
        if (hilbert_symbol(sa, sb, p) == -1) return false;
    return true;
}

}  // namespace detail

/// Division is decided by a chain of certificates: a zero-divisor sweep
/// (elements with reducible minimal polynomials yield explicit singular
/// elements), the trace-form radical in characteristic 0, exhaustive
/// enumeration over small prime fields, a primitive-element field test for
/// the commutative part, and Hilbert symbols for quaternion algebras over
/// Q.  Anything not certified either way is reported inconclusive.
template <class K>
DivisionReport<K> division_algebra_analysis(const OperatorAlgebra<K>& b) {
    std::size_t r = b.dim(), n = b.ambient_dim();
    const K& ex = b.exemplar();
    DivisionReport<K> out;
    out.dim_b = r;
    auto settle_not_division = [&](Matrix<K> witness, const std::string& how) {
        if (witness.is_zero_matrix() || inverse(witness))
            throw std::logic_error("division_algebra_analysis: bad zero-divisor witness");
        out.verdict = DivisionVerdict::not_division;
        out.is_division = false;
        out.zero_divisor = std::move(witness);
        out.method = how;
    };
    // An element with reducible minimal polynomial P = f1 f2 gives the
    // explicit zero divisor f1(m), since f1(m) (f2...)(m) = 0.
    auto screen_one = [&](const Matrix<K>& m) {
        if (m.is_zero_matrix()) return false;
        if (!inverse(m)) {
            settle_not_division(m, "singular element in sweep");
            return true;
        }
        auto mp = minimal_polynomial(m);
        auto factors = factor_polynomial(mp);
        if (factors.factors.size() == 1 && factors.factors.front().multiplicity == 1)
            return false;
        Matrix<K> zd = factors.factors.front().factor.evaluate(m);
        if (zd.is_zero_matrix()) return false;  // possible only for non-minimal input
        settle_not_division(zd, "element with reducible minimal polynomial");
        return true;
    };
    std::vector<Matrix<K>> sweep = b.basis();
    for (std::size_t i = 0; i < b.basis().size(); ++i)
        for (std::size_t j = i + 1; j < b.basis().size(); ++j) {
            sweep.push_back(b.basis()[i] + b.basis()[j]);
            sweep.push_back(b.basis()[i] - b.basis()[j]);
            sweep.push_back(b.basis()[i] * b.basis()[j]);
        }
    for (const auto& m : sweep)
        if (screen_one(m)) return out;
    // Left multiplication matrices in the coordinates of the basis of B.
    std::vector<Matrix<K>> left;
    for (std::size_t j = 0; j < r; ++j) {
        Matrix<K> lj(r, r, zero_like(ex));
        for (std::size_t l = 0; l < r; ++l) {
            auto coords = b.coordinates(b.basis()[j] * b.basis()[l]);
            if (!coords) throw std::logic_error("division_algebra_analysis: basis not closed");
            for (std::size_t k = 0; k < r; ++k) lj(k, l) = (*coords)[k];
        }
        left.push_back(std::move(lj));
    }
    auto element_of = [&](const std::vector<K>& coords) {
        Matrix<K> t = Matrix<K>::zero(n, n, ex);
        for (std::size_t j = 0; j < r; ++j) t = t + b.basis()[j].scaled(coords[j]);
        return t;
    };
    unsigned long p = characteristic(ex);
    if (p == 0) {
        // Trace-form radical = Jacobson radical in characteristic 0; a
        // nonzero radical element is nilpotent, hence a zero divisor.
        Matrix<K> tf(r, r, zero_like(ex));
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < r; ++j) tf(i, j) = (left[i] * left[j]).trace();
        auto rad = nullspace(tf);
        if (!rad.empty()) {
            settle_not_division(element_of(rad.front()), "trace-form radical element");
            return out;
        }
    } else {
        // Small prime fields: enumerate all elements outright.
        double total = 1;
        for (std::size_t i = 0; i < r; ++i) total *= static_cast<double>(p);
        if (total <= 1048576.0) {
            std::vector<std::int64_t> c(r, 0);
            bool division = true;
            while (true) {
                std::vector<K> coords;
                for (std::size_t i = 0; i < r; ++i) coords.push_back(from_int(ex, c[i]));
                Matrix<K> t = element_of(coords);
                if (!t.is_zero_matrix() && !inverse(t)) {
                    settle_not_division(t, "exhaustive enumeration over the prime field");
                    return out;
                }
                std::size_t k = 0;
                while (k < r && ++c[k] >= static_cast<std::int64_t>(p)) c[k++] = 0;
                if (k == r) break;
            }
            if (division) {
                out.verdict = DivisionVerdict::division;
                out.is_division = true;
                out.method = "exhaustive enumeration over the prime field";
            }
        }
    }
    // Commutative B: field iff some element has irreducible minimal
    // polynomial of full degree (then B = K[b]).
    bool commutative = true;
    for (std::size_t i = 0; i < r && commutative; ++i)
        for (std::size_t j = i + 1; j < r; ++j)
            if (b.basis()[i] * b.basis()[j] != b.basis()[j] * b.basis()[i]) {
                commutative = false;
                break;
            }
    if (out.verdict == DivisionVerdict::inconclusive && commutative) {
        for (const auto& m : sweep) {
            auto mp = minimal_polynomial(m);
            if (mp.degree() == static_cast<long>(r)) {
                // sweep already certified irreducibility of mp
                out.verdict = DivisionVerdict::division;
                out.is_division = true;
                out.method = "primitive element with irreducible minimal polynomial";
                break;
            }
        }
    }
    if (out.verdict == DivisionVerdict::inconclusive && !commutative && p == 0) {
        OperatorAlgebra<K> z = center(b);
        // Semisimple with a field center means simple; dimension over the
        // center is a square m^2, and m = 2 is the quaternion case.
        bool center_field = false;
        for (const auto& m : z.basis())
            if (minimal_polynomial(m).degree() == static_cast<long>(z.dim())) {
                center_field = true;  // irreducibility follows from the screen above
                break;
            }
        if (center_field && z.dim() == 1 && r == 4) {
            if constexpr (std::is_same_v<K, Rational>) {
                // Quaternion algebra over Q: find i with i^2 = alpha scalar,
                // j anticommuting with i, j^2 = beta; division iff the form
                // x^2 - alpha y^2 - beta z^2 is anisotropic.
                Matrix<K> id = Matrix<K>::identity(n, ex);
                std::optional<Matrix<K>> iele;
                for (const auto& m : b.basis()) {
                    auto mp = minimal_polynomial(m);
                    if (mp.degree() != 2) continue;
                    K tr_half = mp.coeff(1) * inverse_of(from_int(ex, -2));
                    Matrix<K> cand = m - id.scaled(tr_half);
                    if (!cand.is_zero_matrix()) { iele = cand; break; }
                }
                if (iele) {
                    K alpha = ((*iele) * (*iele))(0, 0);
                    // j: solve i j + j i = 0 within B.
                    Matrix<K> sys(n * n, r, zero_like(ex));
                    for (std::size_t j = 0; j < r; ++j) {
                        auto anti = ((*iele) * b.basis()[j] + b.basis()[j] * (*iele)).flatten();
                        for (std::size_t i = 0; i < n * n; ++i) sys(i, j) = anti[i];
                    }
                    auto sols = nullspace(sys);
                    if (!sols.empty()) {
                        Matrix<K> jele = element_of(sols.front());
                        K beta = (jele * jele)(0, 0);
                        if (jele * jele == id.scaled(beta) &&
                            (*iele) * (*iele) == id.scaled(alpha) && !is_zero(beta)) {
                            if (detail::quaternion_splits_over_q(alpha, beta)) {
                                // Isotropy gives t + x i + y j of norm 0; small search.
                                for (long t = 0; t <= 60 && !out.zero_divisor; ++t)
                                    for (long x = -60; x <= 60 && !out.zero_divisor; ++x)
                                        for (long y = -60; y <= 60; ++y) {
                                            if (t == 0 && x == 0 && y == 0) continue;
                                            if (Rational(t * t) !=
                                                alpha * Rational(x * x) + beta * Rational(y * y))
                                                continue;
                                            Matrix<K> q = id.scaled(from_int(ex, t)) +
                                                          iele->scaled(from_int(ex, x)) +
                                                          jele.scaled(from_int(ex, y));
                                            settle_not_division(
                                                std::move(q),
                                                "isotropic vector of the quaternion norm form");
                                            break;
                                        }
                            } else {
                                out.verdict = DivisionVerdict::division;
                                out.is_division = true;
                                out.method = "anisotropic quaternion norm form (Hilbert symbols)";
                            }
                        }
                    }
                }
            }
        }
    }
    if (out.verdict != DivisionVerdict::division) return out;
    // Greedy B-independent spanning vectors; ties broken by the first
    // standard basis vector outside the current B-span.
    std::vector<std::vector<K>> bspan;
    while (true) {
        std::size_t pick = n;
        for (std::size_t j = 0; j < n; ++j) {
            std::vector<K> e(n, zero_like(ex));
            e[j] = one_like(ex);
            if (!in_span(bspan, e)) { pick = j; break; }
        }
        if (pick == n) break;
        std::vector<K> u(n, zero_like(ex));
        u[pick] = one_like(ex);
        out.b_basis.push_back(u);
        for (const auto& m : b.basis()) bspan.push_back(m.apply(u));
        bspan = canonical_span_basis(bspan);
    }
    out.ell = out.b_basis.size();
    OperatorAlgebra<K> bp = commutant(b);
    out.dim_bprime = bp.dim();
    out.dim_identity_holds = (n == out.ell * r) && (out.dim_bprime * r == n * n);
    out.bicommutant_is_b = commutant(bp) == b;
    return out;
}

template <class K>
struct BimoduleReport {
    std::size_t dim_a = 0;
    std::size_t dim_gamma = 0;     // center of A
    std::size_t dim_a12 = 0;
    bool a1_prime_is_a2 = false;
    bool a2_prime_is_a1 = false;
    bool gamma0_is_intersection = false;
    bool a12_is_gamma0_prime = false;
    bool dim_identity_holds = false;  // dim A12 = (dim A)^2 / dim Gamma
};

/// Left and right multiplications of a division algebra A acting on Y = A.
template <class K>
BimoduleReport<K> center_bimodule_analysis(const OperatorAlgebra<K>& a) {
    auto division = division_algebra_analysis(a);
    if (!division.is_division)
        throw std::invalid_argument("center_bimodule_analysis: not a division algebra");
    std::size_t r = a.dim();
    const K& ex = a.exemplar();
    std::vector<Matrix<K>> left, right;
    for (std::size_t j = 0; j < r; ++j) {
        Matrix<K> lj(r, r, zero_like(ex)), rj(r, r, zero_like(ex));
        for (std::size_t l = 0; l < r; ++l) {
            auto lc = a.coordinates(a.basis()[j] * a.basis()[l]);
            auto rc = a.coordinates(a.basis()[l] * a.basis()[j]);
            for (std::size_t k = 0; k < r; ++k) {
                lj(k, l) = (*lc)[k];
                rj(k, l) = (*rc)[k];
            }
        }
        left.push_back(std::move(lj));
        right.push_back(std::move(rj));
    }
    OperatorAlgebra<K> a1(r, left, ex), a2(r, right, ex);
    BimoduleReport<K> out;
    out.dim_a = r;
    out.dim_gamma = center(a).dim();
    out.a1_prime_is_a2 = commutant(a1) == a2;
    out.a2_prime_is_a1 = commutant(a2) == a1;
    // Gamma0 = A1 cap A2: left multiplications that are also right ones.
    std::vector<std::vector<K>> inter;
    {
        // span(a1) cap span(a2) via the nullspace of [f1 | -f2].
        auto f1 = a1.flat_basis();
        auto f2 = a2.flat_basis();
        std::size_t rr = r * r;
        Matrix<K> sys(rr, a1.dim() + a2.dim(), zero_like(ex));
        for (std::size_t i = 0; i < rr; ++i) {
            for (std::size_t j = 0; j < a1.dim(); ++j) sys(i, j) = f1[j][i];
            for (std::size_t j = 0; j < a2.dim(); ++j) sys(i, a1.dim() + j) = -f2[j][i];
        }
        for (const auto& c : nullspace(sys)) {
            std::vector<K> v(rr, zero_like(ex));
            for (std::size_t j = 0; j < a1.dim(); ++j)
                for (std::size_t i = 0; i < rr; ++i) v[i] += c[j] * f1[j][i];
            bool zero = true;
            for (const K& x : v) zero = zero && is_zero(x);
            if (!zero) inter.push_back(std::move(v));
        }
        inter = canonical_span_basis(inter);
    }
    std::vector<Matrix<K>> gamma0;
    for (const auto& v : inter) gamma0.push_back(Matrix<K>::unflatten(v, r, r));
    OperatorAlgebra<K> g0(r, gamma0, ex);
    out.gamma0_is_intersection = g0.dim() == out.dim_gamma;
    std::vector<Matrix<K>> both = left;
    for (const auto& m : right) both.push_back(m);
    OperatorAlgebra<K> a12 = generate_algebra(r, both, ex);
    out.dim_a12 = a12.dim();
    out.a12_is_gamma0_prime = commutant(g0) == a12;
    out.dim_identity_holds = out.dim_a12 * out.dim_gamma == r * r;
    return out;
}

/// Operators R -> B_j R A_l on Hom(V, W), vectorized row-major as nw x nv.
template <class K>
OperatorAlgebra<K> combined_algebra(const OperatorAlgebra<K>& a, const OperatorAlgebra<K>& b) {
    std::size_t nv = a.ambient_dim(), nw = b.ambient_dim(), dim = nv * nw;
    const K& ex = a.exemplar();
    std::vector<Matrix<K>> gens;
    for (const auto& bj : b.basis())
        for (const auto& al : a.basis()) {
            Matrix<K> big(dim, dim, zero_like(ex));
            for (std::size_t i = 0; i < nw; ++i)
                for (std::size_t j = 0; j < nv; ++j)
                    for (std::size_t s = 0; s < nw; ++s)
                        for (std::size_t t = 0; t < nv; ++t)
                            big(i * nv + j, s * nv + t) = bj(i, s) * al(t, j);
            gens.push_back(std::move(big));
        }
    return OperatorAlgebra<K>(dim, std::move(gens), ex);
}

/// Operators preserving every subspace of the chain V_1 subset ... subset V_l.
template <class K>
OperatorAlgebra<K> flag_algebra(std::size_t n,
                                const std::vector<std::vector<std::vector<K>>>& chain,
                                const K& ex) {
    std::size_t prev_rank = 0;
    std::vector<std::vector<std::vector<K>>> canon;
    for (const auto& sub : chain) {
        auto c = canonical_span_basis(sub);
        if (c.size() <= prev_rank || c.size() >= n)
            throw std::invalid_argument("flag_algebra: chain must be strictly increasing and proper");
        if (prev_rank > 0 && !canon.empty())
            for (const auto& v : canon.back())
                if (!in_span(c, v))
                    throw std::invalid_argument("flag_algebra: chain not nested");
        prev_rank = c.size();
        canon.push_back(std::move(c));
    }
    std::size_t nn = n * n;
    std::vector<std::vector<K>> rows;
    for (const auto& sub : canon) {
        // Annihilator functionals of V_j applied to T(w) for spanning w.
        Matrix<K> wmat = Matrix<K>::from_rows(sub);
        auto ann = nullspace(wmat);  // vectors c with sub . c = 0, i.e. functionals
        for (const auto& c : ann)
            for (const auto& w : sub) {
                std::vector<K> row(nn, zero_like(ex));
                for (std::size_t i = 0; i < n; ++i)
                    for (std::size_t k = 0; k < n; ++k) row[i * n + k] = c[i] * w[k];
                rows.push_back(std::move(row));
            }
    }
    std::vector<Matrix<K>> basis;
    if (rows.empty()) {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                Matrix<K> e = Matrix<K>::zero(n, n, ex);
                e(i, j) = one_like(ex);
                basis.push_back(std::move(e));
            }
    } else {
        Matrix<K> sys = Matrix<K>::from_rows(rows);
        for (const auto& v : nullspace(sys)) basis.push_back(Matrix<K>::unflatten(v, n, n));
    }
    return OperatorAlgebra<K>(n, std::move(basis), ex);
}

template <class K>
struct DualExtensionReport {
    OperatorAlgebra<K> ahat;       // on V + V*
    Matrix<K> gram_b1;             // symmetric, nondegenerate
    Matrix<K> gram_b2;             // antisymmetric, nondegenerate
    bool forms_nondegenerate = false;
    bool transpose_identities_hold = false;  // B_i(R u, v) = B_i(u, R^t v), both forms
    bool t_algebra = false;                  // R^t in Ahat whenever R is
};

/// Ahat = algebra of (u, phi) -> (S(u), T~(phi)) for S, T in A, with the
/// forms B1((u,phi),(v,psi)) = psi(u) + phi(v) and B2 = psi(u) - phi(v).
/// The transpose of R = diag(S, T~) is diag(T, S~) for both forms.
template <class K>
DualExtensionReport<K> dual_extension(const OperatorAlgebra<K>& a) {
    std::size_t n = a.ambient_dim();
    const K& ex = a.exemplar();
    K one = one_like(ex);
    auto embed = [&](const Matrix<K>& s, const Matrix<K>& t) {
        Matrix<K> big = Matrix<K>::zero(2 * n, 2 * n, ex);
        Matrix<K> tt = t.transpose();
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                big(i, j) = s(i, j);
                big(n + i, n + j) = tt(i, j);
            }
        return big;
    };
    std::vector<Matrix<K>> gens;
    Matrix<K> zero = Matrix<K>::zero(n, n, ex);
    for (const auto& s : a.basis()) {
        gens.push_back(embed(s, zero));
        gens.push_back(embed(zero, s));
    }
    OperatorAlgebra<K> ahat(2 * n, gens, ex);
    Matrix<K> g1 = Matrix<K>::zero(2 * n, 2 * n, ex), g2 = g1;
    for (std::size_t i = 0; i < n; ++i) {
        g1(i, n + i) = one;
        g1(n + i, i) = one;
        g2(i, n + i) = one;
        g2(n + i, i) = -one;
    }
    DualExtensionReport<K> out{ahat, g1, g2};
    out.forms_nondegenerate = !is_zero(det(g1)) && !is_zero(det(g2));
    bool identities = true, talg = true;
    for (const auto& s : a.basis())
        for (const auto& t : a.basis()) {
            Matrix<K> r = embed(s, t);
            Matrix<K> rt = embed(t, s);
            // B(R u, v) = B(u, R^t v) reads R^T G = G R^t.
            identities = identities && r.transpose() * g1 == g1 * rt &&
                         r.transpose() * g2 == g2 * rt;
            talg = talg && ahat.contains(rt);
        }
    out.transpose_identities_hold = identities;
    out.t_algebra = talg;
    return out;
}

}  // namespace ck
