#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "commutantkit/field.hpp"
#include "commutantkit/gaussian.hpp"
#include "commutantkit/matrix.hpp"

namespace ck {

/// Coefficients stored low degree first; at least one coefficient is always
/// kept so an exemplar of the field context survives in the zero polynomial.
template <class K>
class Polynomial {
public:
    explicit Polynomial(const K& constant) : coeffs_{constant} {}
    explicit Polynomial(std::vector<K> coeffs) : coeffs_(std::move(coeffs)) {
        if (coeffs_.empty()) throw std::invalid_argument("Polynomial: empty coefficient list");
        trim();
    }

    static Polynomial zero(const K& exemplar) { return Polynomial(zero_like(exemplar)); }
    static Polynomial one(const K& exemplar) { return Polynomial(one_like(exemplar)); }
    static Polynomial x(const K& exemplar) {
        return Polynomial(std::vector<K>{zero_like(exemplar), one_like(exemplar)});
    }

    const std::vector<K>& coeffs() const { return coeffs_; }
    const K& exemplar() const { return coeffs_.front(); }
    bool is_zero_poly() const { return coeffs_.size() == 1 && is_zero(coeffs_[0]); }
    long degree() const {
        return is_zero_poly() ? -1 : static_cast<long>(coeffs_.size()) - 1;
    }
    const K& leading() const { return coeffs_.back(); }
    K coeff(std::size_t j) const {
        return j < coeffs_.size() ? coeffs_[j] : zero_like(exemplar());
    }

    bool operator==(const Polynomial& o) const { return coeffs_ == o.coeffs_; }
    bool operator!=(const Polynomial& o) const { return !(*this == o); }

    Polynomial operator+(const Polynomial& o) const {
        std::vector<K> c(std::max(coeffs_.size(), o.coeffs_.size()), zero_like(exemplar()));
        for (std::size_t j = 0; j < c.size(); ++j) c[j] = coeff(j) + o.coeff(j);
        return Polynomial(std::move(c));
    }
    Polynomial operator-(const Polynomial& o) const {
        std::vector<K> c(std::max(coeffs_.size(), o.coeffs_.size()), zero_like(exemplar()));
        for (std::size_t j = 0; j < c.size(); ++j) c[j] = coeff(j) - o.coeff(j);
        return Polynomial(std::move(c));
    }
    Polynomial operator*(const Polynomial& o) const {
        if (is_zero_poly() || o.is_zero_poly()) return zero(exemplar());
        std::vector<K> c(coeffs_.size() + o.coeffs_.size() - 1, zero_like(exemplar()));
        for (std::size_t i = 0; i < coeffs_.size(); ++i)
            for (std::size_t j = 0; j < o.coeffs_.size(); ++j)
                c[i + j] += coeffs_[i] * o.coeffs_[j];
        return Polynomial(std::move(c));
    }
    Polynomial scaled(const K& c) const {
        std::vector<K> r = coeffs_;
        for (K& a : r) a = a * c;
        return Polynomial(std::move(r));
    }
    Polynomial operator-() const { return scaled(-one_like(exemplar())); }

    Polynomial monic() const {
        if (is_zero_poly()) throw std::domain_error("Polynomial: monic of zero");
        return scaled(inverse_of(leading()));
    }

    Polynomial derivative() const {
        if (coeffs_.size() == 1) return zero(exemplar());
        std::vector<K> c(coeffs_.size() - 1, zero_like(exemplar()));
        for (std::size_t j = 1; j < coeffs_.size(); ++j)
            c[j - 1] = from_int(exemplar(), static_cast<long>(j)) * coeffs_[j];
        return Polynomial(std::move(c));
    }

    K evaluate(const K& z) const {
        K v = zero_like(exemplar());
        for (std::size_t j = coeffs_.size(); j-- > 0;) v = v * z + coeffs_[j];
        return v;
    }

    Matrix<K> evaluate(const Matrix<K>& t) const {
        if (t.rows() != t.cols()) throw std::invalid_argument("Polynomial: non-square argument");
        Matrix<K> v = Matrix<K>::zero(t.rows(), t.cols(), t.exemplar());
        for (std::size_t j = coeffs_.size(); j-- > 0;) {
            v = v * t;
            for (std::size_t i = 0; i < t.rows(); ++i) v(i, i) += coeffs_[j];
        }
        return v;
    }

    std::string str() const {
        if (is_zero_poly()) return "0";
        std::string s;
        for (std::size_t j = coeffs_.size(); j-- > 0;) {
            if (is_zero(coeffs_[j])) continue;
            if (!s.empty()) s += " + ";
            std::string c = scalar_str(coeffs_[j]);
            if (j == 0) {
                s += c;
            } else {
                if (c != "1") s += "(" + c + ")*";
                s += j == 1 ? "x" : "x^" + std::to_string(j);
            }
        }
        return s;
    }

private:
    void trim() {
        while (coeffs_.size() > 1 && is_zero(coeffs_.back())) coeffs_.pop_back();
    }
    std::vector<K> coeffs_;
};

template <class K>
std::pair<Polynomial<K>, Polynomial<K>> divmod(const Polynomial<K>& a, const Polynomial<K>& b) {
    if (b.is_zero_poly()) throw std::domain_error("divmod: division by zero polynomial");
    Polynomial<K> q = Polynomial<K>::zero(a.exemplar());
    Polynomial<K> r = a;
    K lead_inv = inverse_of(b.leading());
    while (r.degree() >= b.degree()) {
        long d = r.degree() - b.degree();
        K c = r.leading() * lead_inv;
        std::vector<K> mono(static_cast<std::size_t>(d) + 1, zero_like(a.exemplar()));
        mono.back() = c;
        Polynomial<K> m(std::move(mono));
        q = q + m;
        r = r - m * b;
    }
    return {q, r};
}

template <class K>
Polynomial<K> operator/(const Polynomial<K>& a, const Polynomial<K>& b) {
    auto [q, r] = divmod(a, b);
    if (!r.is_zero_poly()) throw std::domain_error("polynomial division with remainder");
    return q;
}

template <class K>
Polynomial<K> operator%(const Polynomial<K>& a, const Polynomial<K>& b) {
    return divmod(a, b).second;
}

/// Monic gcd by the Euclidean algorithm.
template <class K>
Polynomial<K> poly_gcd(Polynomial<K> a, Polynomial<K> b) {
    while (!b.is_zero_poly()) {
        Polynomial<K> r = a % b;
        a = b;
        b = r;
    }
    if (a.is_zero_poly()) return a;
    return a.monic();
}

template <class K>
Polynomial<K> poly_pow_mod(const Polynomial<K>& base, unsigned long e, const Polynomial<K>& mod) {
    Polynomial<K> r = Polynomial<K>::one(base.exemplar());
    Polynomial<K> b = base % mod;
    while (e) {
        if (e & 1) r = r * b % mod;
        b = b * b % mod;
        e >>= 1;
    }
    return r;
}

/// Lowest-degree monic annihilator, found as the first linear dependence
/// among I, T, T^2, ...
template <class K>
Polynomial<K> minimal_polynomial(const Matrix<K>& t) {
    if (t.rows() != t.cols())
        throw std::invalid_argument("minimal_polynomial: non-square matrix");
    std::size_t n = t.rows();
    std::size_t nn = n * n;
    Matrix<K> p = Matrix<K>::identity(n, t.exemplar());
    std::vector<std::vector<K>> powers;
    for (std::size_t k = 0; k <= nn; ++k) {
        std::vector<K> flat = p.flatten();
        if (k > 0) {
            Matrix<K> m(nn, k, zero_like(t.exemplar()));
            for (std::size_t i = 0; i < nn; ++i)
                for (std::size_t j = 0; j < k; ++j) m(i, j) = powers[j][i];
            if (auto x = solve(m, flat)) {
                std::vector<K> c(k + 1, zero_like(t.exemplar()));
                for (std::size_t j = 0; j < k; ++j) c[j] = -(*x)[j];
                c[k] = one_like(t.exemplar());
                return Polynomial<K>(std::move(c));
            }
        }
        powers.push_back(std::move(flat));
        p = p * t;
    }
    throw std::logic_error("minimal_polynomial: no dependence found");
}

/// det(xI - T) by similarity reduction to Hessenberg form and the standard
/// leading-minor recurrence; valid in any characteristic.
template <class K>
Polynomial<K> characteristic_polynomial(const Matrix<K>& t) {
    if (t.rows() != t.cols())
        throw std::invalid_argument("characteristic_polynomial: non-square matrix");
    std::size_t n = t.rows();
    const K& ex = t.exemplar();
    if (n == 0) return Polynomial<K>::one(ex);
    Matrix<K> h = t;
    for (std::size_t c = 0; c + 2 < n; ++c) {
        std::size_t piv = c + 1;
        while (piv < n && is_zero(h(piv, c))) ++piv;
        if (piv == n) continue;
        if (piv != c + 1) {
            for (std::size_t j = 0; j < n; ++j) std::swap(h(piv, j), h(c + 1, j));
            for (std::size_t i = 0; i < n; ++i) std::swap(h(i, piv), h(i, c + 1));
        }
        K pinv = inverse_of(h(c + 1, c));
        for (std::size_t i = c + 2; i < n; ++i) {
            if (is_zero(h(i, c))) continue;
            K f = h(i, c) * pinv;
            for (std::size_t j = 0; j < n; ++j) h(i, j) -= f * h(c + 1, j);
            for (std::size_t j = 0; j < n; ++j) h(j, c + 1) += f * h(j, i);
        }
    }
    std::vector<Polynomial<K>> p;
    p.push_back(Polynomial<K>::one(ex));
    Polynomial<K> x = Polynomial<K>::x(ex);
    for (std::size_t m = 1; m <= n; ++m) {
        Polynomial<K> q = (x - Polynomial<K>(h(m - 1, m - 1))) * p[m - 1];
        K sub = one_like(ex);
        for (std::size_t i = m - 1; i-- > 0;) {
            sub = sub * h(i + 1, i);
            if (!is_zero(h(i, m - 1)))
                q = q - p[i].scaled(h(i, m - 1) * sub);
        }
        p.push_back(std::move(q));
    }
    return p[n];
}

template <class K>
struct PolyFactor {
    Polynomial<K> factor;
    unsigned long multiplicity = 1;
};

template <class K>
struct Factorization {
    K unit;
    std::vector<PolyFactor<K>> factors;
    Polynomial<K> product() const {
        Polynomial<K> p(unit);
        for (const auto& f : factors)
            for (unsigned long i = 0; i < f.multiplicity; ++i) p = p * f.factor;
        return p;
    }
};

namespace detail {

template <class K>
void merge_factor(std::vector<PolyFactor<K>>& out, const Polynomial<K>& f, unsigned long mult) {
    for (auto& pf : out)
        if (pf.factor == f) {
            pf.multiplicity += mult;
            return;
        }
    out.push_back({f, mult});
}

// --- Berlekamp over F_p ------------------------------------------------

inline std::vector<Polynomial<Fp>> berlekamp_split(const Polynomial<Fp>& f) {
    long n = f.degree();
    if (n <= 1) return {f};
    unsigned long p = f.exemplar().modulus();
    if (p > 1000000)
        throw std::invalid_argument("factor_polynomial: prime field too large");
    Fp z(p, 0), o(p, 1);
    Polynomial<Fp> xp = poly_pow_mod(Polynomial<Fp>::x(z), p, f);
    // Column j of q holds x^(jp) mod f; the Berlekamp subalgebra is ker(q - I).
    Matrix<Fp> q(static_cast<std::size_t>(n), static_cast<std::size_t>(n), z);
    Polynomial<Fp> t = Polynomial<Fp>::one(z);
    for (long j = 0; j < n; ++j) {
        for (long i = 0; i < n; ++i) q(i, j) = t.coeff(static_cast<std::size_t>(i));
        t = t * xp % f;
    }
    for (long i = 0; i < n; ++i) q(i, i) -= o;
    auto ns = nullspace(q);
    if (ns.size() <= 1) return {f};
    Polynomial<Fp> v = Polynomial<Fp>::zero(z);
    for (const auto& vec : ns) {
        Polynomial<Fp> cand((std::vector<Fp>(vec)));
        if (cand.degree() >= 1) { v = cand; break; }
    }
    std::vector<Polynomial<Fp>> out;
    for (unsigned long s = 0; s < p; ++s) {
        Polynomial<Fp> d = poly_gcd(f, v - Polynomial<Fp>(Fp(p, static_cast<std::int64_t>(s))));
        if (d.degree() >= 1 && d.degree() < n)
            for (auto& piece : berlekamp_split(d)) out.push_back(piece);
        else if (d.degree() == n)
            return {f};  // defensive; a non-constant v always splits
    }
    return out;
}

inline std::vector<PolyFactor<Fp>> factor_monic_fp(const Polynomial<Fp>& f) {
    std::vector<PolyFactor<Fp>> out;
    if (f.degree() <= 0) return out;
    Polynomial<Fp> fp = f.derivative();
    if (fp.is_zero_poly()) {
        // f(x) = h(x^p) = h(x)^p since c^p = c for every coefficient.
        unsigned long p = f.exemplar().modulus();
        std::vector<Fp> h;
        for (long j = 0; j * static_cast<long>(p) <= f.degree(); ++j)
            h.push_back(f.coeff(static_cast<std::size_t>(j) * p));
        auto sub = factor_monic_fp(Polynomial<Fp>(std::move(h)));
        for (auto& pf : sub) merge_factor(out, pf.factor, pf.multiplicity * p);
        return out;
    }
    Polynomial<Fp> g = poly_gcd(f, fp);
    if (g.degree() <= 0) {
        for (auto& piece : berlekamp_split(f)) merge_factor(out, piece.monic(), 1ul);
        return out;
    }
    for (auto& pf : factor_monic_fp(g)) merge_factor(out, pf.factor, pf.multiplicity);
    for (auto& pf : factor_monic_fp(f / g)) merge_factor(out, pf.factor, pf.multiplicity);
    return out;
}

// --- Kronecker over Q --------------------------------------------------

inline std::vector<mpz_class> all_divisors(const mpz_class& n_in) {
    mpz_class n = abs(n_in);
    if (n == 0) throw std::invalid_argument("all_divisors of zero");
    std::vector<std::pair<mpz_class, unsigned>> pf;
    mpz_class d = 2;
    while (d * d <= n && d < 1000000) {
        if (n % d == 0) {
            unsigned e = 0;
            while (n % d == 0) { n /= d; ++e; }
            pf.push_back({d, e});
        }
        d += (d == 2) ? 1 : 2;
    }
    if (n > 1) {
        if (mpz_probab_prime_p(n.get_mpz_t(), 40) == 0)
            throw std::runtime_error("factor_polynomial: sample value too hard to factor");
        pf.push_back({n, 1});
    }
    std::vector<mpz_class> divs{1};
    for (auto& [prm, e] : pf) {
        std::size_t sz = divs.size();
        mpz_class pw = 1;
        for (unsigned i = 1; i <= e; ++i) {
            pw *= prm;
            for (std::size_t j = 0; j < sz; ++j) divs.push_back(divs[j] * pw);
        }
    }
    return divs;
}

inline std::vector<mpz_class> primitive_integer_poly(const Polynomial<Rational>& f) {
    mpz_class l = 1;
    for (const Rational& c : f.coeffs()) l = lcm(l, c.den());
    std::vector<mpz_class> v;
    mpz_class g = 0;
    for (const Rational& c : f.coeffs()) {
        mpz_class n = c.num() * (l / c.den());
        v.push_back(n);
        g = gcd(g, n);
    }
    if (g > 1)
        for (mpz_class& n : v) n /= g;
    return v;
}

inline mpz_class eval_int_poly(const std::vector<mpz_class>& f, long t) {
    mpz_class v = 0;
    for (std::size_t j = f.size(); j-- > 0;) v = v * t + f[j];
    return v;
}

/// One proper factor (monic, degree between 1 and deg/2) of a squarefree
/// rational polynomial, by Kronecker's divisor search, or nullopt if
/// irreducible.  Intended for the small degrees that arise from minimal
/// polynomials of desk-scale operators.
inline std::optional<Polynomial<Rational>> kronecker_find_factor(const Polynomial<Rational>& g) {
    long n = g.degree();
    if (n <= 1) return std::nullopt;
    std::vector<mpz_class> gi = primitive_integer_poly(g);
    // Sample points 0, 1, -1, 2, -2, ...; a zero value hands us a root.
    std::vector<long> pts;
    std::vector<std::vector<mpz_class>> divlists;
    long t = 0;
    while (static_cast<long>(pts.size()) < n / 2 + 1) {
        mpz_class v = eval_int_poly(gi, t);
        if (v == 0) {
            Rational rt(static_cast<long>(t));
            return Polynomial<Rational>(std::vector<Rational>{-rt, Rational(1)});
        }
        pts.push_back(t);
        divlists.push_back(all_divisors(v));
        t = t > 0 ? -t : -t + 1;
    }
    for (long d = 1; d <= n / 2; ++d) {
        std::size_t m = static_cast<std::size_t>(d) + 1;
        // Odometer over signed divisor choices; the first point's sign is
        // fixed since g and -g generate the same factor.
        std::vector<std::size_t> idx(m, 0);
        std::vector<int> sgn(m, 1);
        unsigned long long combos = 0;
        while (true) {
            if (++combos > 20000000ull)
                throw std::runtime_error("factor_polynomial: Kronecker search too large");
            // Lagrange interpolation through (pts[i], sgn[i]*div).
            Polynomial<Rational> cand = Polynomial<Rational>::zero(Rational(0));
            for (std::size_t i = 0; i < m; ++i) {
                Polynomial<Rational> li = Polynomial<Rational>::one(Rational(0));
                Rational denom(1);
                for (std::size_t j = 0; j < m; ++j) {
                    if (j == i) continue;
                    li = li * Polynomial<Rational>(std::vector<Rational>{
                        Rational(-pts[j]), Rational(1)});
                    denom *= Rational(pts[i] - pts[j]);
                }
                Rational val = Rational(sgn[i] == 1 ? divlists[i][idx[i]]
                                                     : mpz_class(-divlists[i][idx[i]]));
                cand = cand + li.scaled(val / denom);
            }
            if (cand.degree() == d && divmod(g, cand).second.is_zero_poly())
                return cand.monic();
            // advance odometer
            std::size_t k = 0;
            for (; k < m; ++k) {
                if (k > 0 && sgn[k] == 1) { sgn[k] = -1; break; }
                sgn[k] = 1;
                if (++idx[k] < divlists[k].size()) break;
                idx[k] = 0;
            }
            if (k == m) break;
        }
    }
    return std::nullopt;
}

inline std::vector<PolyFactor<Rational>> factor_monic_q(const Polynomial<Rational>& f) {
    std::vector<PolyFactor<Rational>> out;
    if (f.degree() <= 0) return out;
    Polynomial<Rational> g = poly_gcd(f, f.derivative());
    if (g.degree() > 0) {
        for (auto& pf : factor_monic_q(g)) merge_factor(out, pf.factor, pf.multiplicity);
        for (auto& pf : factor_monic_q(f / g)) merge_factor(out, pf.factor, pf.multiplicity);
        return out;
    }
    std::vector<Polynomial<Rational>> stack{f};
    while (!stack.empty()) {
        Polynomial<Rational> h = stack.back();
        stack.pop_back();
        if (h.degree() == 1) {
            merge_factor(out, h.monic(), 1ul);
            continue;
        }
        if (auto fac = kronecker_find_factor(h)) {
            stack.push_back(*fac);
            stack.push_back(h / *fac);
        } else {
            merge_factor(out, h.monic(), 1ul);
        }
    }
    return out;
}

// --- Gaussian rationals -------------------------------------------------

inline std::optional<Rational> rational_sqrt(const Rational& x) {
    if (x < Rational(0)) return std::nullopt;
    if (x.is_zero()) return Rational(0);
    mpz_class n = x.num(), d = x.den();
    if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t()))
        return std::nullopt;
    mpz_class rn, rd;
    mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
    return Rational(mpq_class(rn) / mpq_class(rd));
}

inline std::optional<GaussianRational> gaussian_sqrt(const GaussianRational& w) {
    // (c+di)^2 = a+bi: c^2 - d^2 = a, 2cd = b, (c^2+d^2)^2 = a^2 + b^2.
    const Rational& a = w.re();
    const Rational& b = w.im();
    auto nrm = rational_sqrt(a * a + b * b);
    if (!nrm) return std::nullopt;
    Rational half(mpq_class(1, 2));
    auto c = rational_sqrt((a + *nrm) * half);
    if (!c) return std::nullopt;
    if (c->is_zero()) {
        auto d = rational_sqrt(-a);
        if (!d || !b.is_zero()) return std::nullopt;
        return GaussianRational(Rational(0), *d);
    }
    Rational d = b / (Rational(2) * *c);
    GaussianRational r(*c, d);
    if (r * r != w) return std::nullopt;
    return r;
}

inline std::vector<Polynomial<GaussianRational>> split_quadratic_qi(
    const Polynomial<GaussianRational>& f) {
    // Monic x^2 + bx + c; splits exactly when the discriminant is a square.
    GaussianRational b = f.coeff(1), c = f.coeff(0);
    GaussianRational quarter(Rational(mpq_class(1, 4)), Rational(0));
    GaussianRational half(Rational(mpq_class(1, 2)), Rational(0));
    auto s = gaussian_sqrt(b * b * quarter - c);
    if (!s) return {f};
    GaussianRational r1 = -b * half + *s, r2 = -b * half - *s;
    auto lin = [](const GaussianRational& r) {
        return Polynomial<GaussianRational>(
            std::vector<GaussianRational>{-r, GaussianRational(1)});
    };
    return {lin(r1), lin(r2)};
}

inline std::vector<PolyFactor<GaussianRational>> factor_monic_qi(
    const Polynomial<GaussianRational>& f) {
    std::vector<PolyFactor<GaussianRational>> out;
    if (f.degree() <= 0) return out;
    Polynomial<GaussianRational> g = poly_gcd(f, f.derivative());
    if (g.degree() > 0) {
        for (auto& pf : factor_monic_qi(g)) merge_factor(out, pf.factor, pf.multiplicity);
        for (auto& pf : factor_monic_qi(f / g)) merge_factor(out, pf.factor, pf.multiplicity);
        return out;
    }
    bool real_coeffs = true;
    for (const GaussianRational& c : f.coeffs()) real_coeffs = real_coeffs && c.im().is_zero();
    std::vector<Polynomial<GaussianRational>> pieces;
    if (real_coeffs && f.degree() > 2) {
        std::vector<Rational> rc;
        for (const GaussianRational& c : f.coeffs()) rc.push_back(c.re());
        for (auto& pf : factor_monic_q(Polynomial<Rational>(std::move(rc)))) {
            std::vector<GaussianRational> gc;
            for (const Rational& c : pf.factor.coeffs()) gc.push_back(GaussianRational(c, Rational(0)));
            pieces.push_back(Polynomial<GaussianRational>(std::move(gc)));
        }
    } else {
        pieces.push_back(f);
    }
    for (auto& piece : pieces) {
        if (piece.degree() == 2)
            for (auto& q : split_quadratic_qi(piece)) merge_factor(out, q.monic(), 1ul);
        else
            merge_factor(out, piece.monic(), 1ul);
    }
    return out;
}

}  // namespace detail

inline Factorization<Fp> factor_polynomial(const Polynomial<Fp>& p) {
    if (p.is_zero_poly()) throw std::invalid_argument("factor_polynomial: zero polynomial");
    Factorization<Fp> out{p.leading(), detail::factor_monic_fp(p.monic())};
    return out;
}

inline Factorization<Rational> factor_polynomial(const Polynomial<Rational>& p) {
    if (p.is_zero_poly()) throw std::invalid_argument("factor_polynomial: zero polynomial");
    Factorization<Rational> out{p.leading(), detail::factor_monic_q(p.monic())};
    return out;
}

inline Factorization<GaussianRational> factor_polynomial(const Polynomial<GaussianRational>& p) {
    if (p.is_zero_poly()) throw std::invalid_argument("factor_polynomial: zero polynomial");
    Factorization<GaussianRational> out{p.leading(), detail::factor_monic_qi(p.monic())};
    return out;
}

template <class K>
struct PolynomialInverse {
    Matrix<K> inverse;        // T^{-1}
    Polynomial<K> expression; // polynomial Q with Q(T) = T^{-1}
};

/// Inverse as a polynomial in T, when the minimal polynomial has nonzero
/// constant term.  P(z) - P(0) = z Q1(z) gives the candidate +/- P(0)^{-1}
/// Q1(T); the sign is settled by multiplying out.
template <class K>
std::optional<PolynomialInverse<K>> inverse_via_polynomial(const Matrix<K>& t) {
    Polynomial<K> p = minimal_polynomial(t);
    K p0 = p.coeff(0);
    if (is_zero(p0)) return std::nullopt;
    std::vector<K> q1(p.coeffs().begin() + 1, p.coeffs().end());
    Polynomial<K> q(std::move(q1));
    Matrix<K> id = Matrix<K>::identity(t.rows(), t.exemplar());
    for (int sign : {-1, +1}) {
        K c = inverse_of(p0);
        if (sign < 0) c = -c;
        Polynomial<K> expr = q.scaled(c);
        Matrix<K> m = expr.evaluate(t);
        if (t * m == id && m * t == id) return PolynomialInverse<K>{m, expr};
    }
    return std::nullopt;  // unreachable when P is the minimal polynomial
}

template <class K>
struct OrderFactorization {
    Matrix<K> s1;      // p-part: s1^(p^l) = I
    Matrix<K> s2;      // prime-to-p part: s2^m = I
    unsigned long l = 0;
    unsigned long m = 1;
    long a = 0, b = 0;  // Bezout: a*m + b*p^l = 1
};

template <class K>
OrderFactorization<K> order_factorization(const Matrix<K>& s, unsigned long n) {
    unsigned long p = characteristic(s.exemplar());
    if (p == 0)
        throw std::invalid_argument("order_factorization: field must have positive characteristic");
    if (n == 0 || s.rows() != s.cols())
        throw std::invalid_argument("order_factorization: bad input");
    Matrix<K> id = Matrix<K>::identity(s.rows(), s.exemplar());
    if (s.pow(n) != id) throw std::invalid_argument("order_factorization: S^n != I");
    OrderFactorization<K> out{id, id};
    unsigned long m = n;
    while (m % p == 0) { m /= p; ++out.l; }
    out.m = m;
    unsigned long pl = 1;
    for (unsigned long i = 0; i < out.l; ++i) pl *= p;
    // Extended Euclid on (m, p^l); they are coprime.
    long r0 = static_cast<long>(m), r1 = static_cast<long>(pl);
    long a0 = 1, a1 = 0, b0 = 0, b1 = 1;
    while (r1 != 0) {
        long qd = r0 / r1;
        long r2 = r0 - qd * r1, a2 = a0 - qd * a1, b2 = b0 - qd * b1;
        r0 = r1; r1 = r2;
        a0 = a1; a1 = a2;
        b0 = b1; b1 = b2;
    }
    out.a = a0;
    out.b = b0;
    auto pow_mod_n = [&](long e) {
        long r = e % static_cast<long>(n);
        if (r < 0) r += static_cast<long>(n);
        return s.pow(static_cast<unsigned long>(r));
    };
    out.s1 = pow_mod_n(out.a * static_cast<long>(m));
    out.s2 = pow_mod_n(out.b * static_cast<long>(pl));
    if (out.s1 * out.s2 != s || out.s2 * out.s1 != s ||
        out.s1.pow(pl) != id || out.s2.pow(m) != id)
        throw std::logic_error("order_factorization: verification failed");
    return out;
}

}  // namespace ck
