#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "commutantkit/rational.hpp"

namespace ck {

/// Truncated p-adic expansion sum_{j<N} d_j p^(l+j), known modulo p^(l+N).
///
/// The exact zero carries a dedicated flag instead of a spurious valuation.
/// Arithmetic keeps whatever leading zero digits it produces (they encode
/// "congruent to 0 at this precision"); canonicalized() absorbs them into
/// the valuation, which is the form padic_from_rational emits.
class PadicApprox {
public:
    PadicApprox(unsigned long p, long valuation, std::vector<unsigned long> digits)
        : p_(p), zero_(false), val_(valuation), digits_(std::move(digits)) {
        if (!is_prime(p_)) throw std::invalid_argument("PadicApprox: p must be prime");
        if (digits_.empty()) throw std::invalid_argument("PadicApprox: precision must be >= 1");
        for (unsigned long d : digits_)
            if (d >= p_) throw std::invalid_argument("PadicApprox: digit out of range");
    }

    static PadicApprox zero(unsigned long p, std::size_t precision = 1) {
        PadicApprox z(p, 0, std::vector<unsigned long>(precision, 0));
        z.zero_ = true;
        return z;
    }

    unsigned long prime() const { return p_; }
    bool is_exact_zero() const { return zero_; }
    long valuation() const { return val_; }
    const std::vector<unsigned long>& digits() const { return digits_; }
    std::size_t precision() const { return digits_.size(); }

    /// True when every known digit is zero (exact zero included).
    bool indistinguishable_from_zero() const {
        for (unsigned long d : digits_) if (d) return false;
        return true;
    }

    /// Leading zero digits absorbed into the valuation; precision shrinks
    /// accordingly.  An all-zero nonexact value keeps one zero digit.
    PadicApprox canonicalized() const {
        if (zero_) return *this;
        std::size_t lead = 0;
        while (lead + 1 < digits_.size() && digits_[lead] == 0) ++lead;
        if (lead == 0) return *this;
        PadicApprox r(p_, val_ + static_cast<long>(lead),
                      std::vector<unsigned long>(digits_.begin() + lead, digits_.end()));
        return r;
    }

    /// The partial sum as an exact rational.
    Rational partial_sum() const {
        if (zero_) return Rational(0);
        mpz_class acc = 0;
        for (std::size_t j = digits_.size(); j-- > 0;) {
            acc *= static_cast<unsigned long>(p_);
            acc += digits_[j];
        }
        return Rational(acc) * Rational::pow(Rational(static_cast<long>(p_)), val_);
    }

    bool same_representation(const PadicApprox& o) const {
        if (p_ != o.p_) return false;
        if (zero_ || o.zero_) return zero_ == o.zero_ ? true : o.indistinguishable_from_zero() ||
                                                              indistinguishable_from_zero();
        PadicApprox a = canonicalized(), b = o.canonicalized();
        return a.val_ == b.val_ && a.digits_ == b.digits_;
    }

    std::string str() const;

private:
    friend PadicApprox padic_mul(const PadicApprox&, const PadicApprox&);
    unsigned long p_;
    bool zero_;
    long val_;
    std::vector<unsigned long> digits_;
};

/// |x|_p = p^(-k) for x = (a/b) p^k with a, b coprime to p; |0|_p = 0.
inline Rational abs_p(const Rational& x, unsigned long p) {
    if (!is_prime(p)) throw std::invalid_argument("abs_p: p must be prime");
    if (x.is_zero()) return Rational(0);
    return Rational::pow(Rational(static_cast<long>(p)), -padic_valuation(x, p));
}

/// Digit-by-digit greedy expansion: at each step the digit solves
/// a = alpha * b (mod p) for the current remainder a/b, so the partial sums
/// satisfy |s_n - x|_p <= p^(-n-1).
inline PadicApprox padic_from_rational(const Rational& x, unsigned long p, std::size_t n_digits) {
    if (!is_prime(p)) throw std::invalid_argument("padic_from_rational: p must be prime");
    if (n_digits == 0) throw std::invalid_argument("padic_from_rational: precision must be >= 1");
    if (x.is_zero()) return PadicApprox::zero(p, n_digits);
    long l = padic_valuation(x, p);
    Rational r = x / Rational::pow(Rational(static_cast<long>(p)), l);
    std::vector<unsigned long> digits;
    digits.reserve(n_digits);
    mpz_class pz(static_cast<unsigned long>(p));
    for (std::size_t j = 0; j < n_digits; ++j) {
        // r = a/b with b coprime to p; digit d solves a = d b mod p.
        mpz_class a = r.num() % pz, b = r.den() % pz, binv;
        if (a < 0) a += pz;
        if (mpz_invert(binv.get_mpz_t(), b.get_mpz_t(), pz.get_mpz_t()) == 0)
            throw std::logic_error("padic_from_rational: denominator not coprime to p");
        mpz_class d = (a * binv) % pz;
        digits.push_back(d.get_ui());
        r = (r - Rational(d)) / Rational(static_cast<long>(p));
    }
    return PadicApprox(p, l, std::move(digits));
}

/// Rewrites arbitrary nonnegative coefficients into digits in [0, p-1];
/// the running difference of partial sums stays a nonnegative multiple of
/// p^(n+1), exactly as in the carry construction.
inline PadicApprox carry_normalize(unsigned long p, long valuation,
                                   const std::vector<mpz_class>& coeffs,
                                   std::size_t n_digits) {
    if (!is_prime(p)) throw std::invalid_argument("carry_normalize: p must be prime");
    if (n_digits == 0) throw std::invalid_argument("carry_normalize: precision must be >= 1");
    for (const mpz_class& c : coeffs)
        if (c < 0)
            throw std::invalid_argument("carry_normalize: negative coefficient");
    mpz_class carry = 0, pz(static_cast<unsigned long>(p));
    std::vector<unsigned long> digits;
    digits.reserve(n_digits);
    for (std::size_t j = 0; j < n_digits; ++j) {
        mpz_class t = carry + (j < coeffs.size() ? coeffs[j] : mpz_class(0));
        mpz_class d = t % pz;
        digits.push_back(d.get_ui());
        carry = (t - d) / pz;
    }
    return PadicApprox(p, valuation, std::move(digits));
}

namespace detail {
inline void require_same_prime(const PadicApprox& a, const PadicApprox& b) {
    if (a.prime() != b.prime())
        throw std::invalid_argument("p-adic operation: prime mismatch");
}
}  // namespace detail

/// Termwise sum followed by carry normalization; the result is known on the
/// overlap of the inputs' known ranges.
inline PadicApprox padic_add(const PadicApprox& a, const PadicApprox& b) {
    detail::require_same_prime(a, b);
    if (a.is_exact_zero()) return b;
    if (b.is_exact_zero()) return a;
    long l = std::min(a.valuation(), b.valuation());
    long end = std::min(a.valuation() + static_cast<long>(a.precision()),
                        b.valuation() + static_cast<long>(b.precision()));
    if (end <= l) end = l + 1;  // degenerate overlap; one known digit survives
    std::vector<mpz_class> coeffs(static_cast<std::size_t>(end - l), mpz_class(0));
    for (std::size_t j = 0; j < a.precision(); ++j) {
        long pos = a.valuation() + static_cast<long>(j);
        if (pos < end) coeffs[static_cast<std::size_t>(pos - l)] += a.digits()[j];
    }
    for (std::size_t j = 0; j < b.precision(); ++j) {
        long pos = b.valuation() + static_cast<long>(j);
        if (pos < end) coeffs[static_cast<std::size_t>(pos - l)] += b.digits()[j];
    }
    return carry_normalize(a.prime(), l, coeffs, coeffs.size());
}

/// Cauchy product of the digit sequences followed by carry normalization;
/// valuations add and the precision is the conservative minimum.
inline PadicApprox padic_mul(const PadicApprox& a, const PadicApprox& b) {
    detail::require_same_prime(a, b);
    if (a.is_exact_zero() || b.is_exact_zero())
        return PadicApprox::zero(a.prime(), std::min(a.precision(), b.precision()));
    std::size_t n = std::min(a.precision(), b.precision());
    std::vector<mpz_class> cauchy(n, mpz_class(0));
    for (std::size_t j = 0; j < a.precision() && j < n; ++j)
        for (std::size_t k = 0; k < b.precision() && j + k < n; ++k)
            cauchy[j + k] += mpz_class(a.digits()[j]) * b.digits()[k];
    return carry_normalize(a.prime(), a.valuation() + b.valuation(), cauchy, n);
}

/// -x as multiplication by the expansion of -1 (all digits p-1).
inline PadicApprox padic_neg(const PadicApprox& a) {
    if (a.is_exact_zero()) return a;
    PadicApprox minus_one(a.prime(), 0,
                          std::vector<unsigned long>(a.precision(), a.prime() - 1));
    return padic_mul(a, minus_one);
}

inline PadicApprox padic_sub(const PadicApprox& a, const PadicApprox& b) {
    return padic_add(a, padic_neg(b));
}

/// Inverse via the geometric-series construction: choose c with
/// c d_0 = -1 (mod p), expand c p^(-l) / (1 - (c w p^(-l) - 1)) as a series
/// with nonnegative coefficients, carry-normalize, and negate.
inline PadicApprox padic_inv(const PadicApprox& w_in) {
    PadicApprox w = w_in.canonicalized();
    if (w.is_exact_zero() || w.digits()[0] == 0)
        throw std::domain_error("padic_inv: division by zero (or by a value "
                                "indistinguishable from zero at this precision)");
    const unsigned long p = w.prime();
    const std::size_t n = w.precision();
    // c with c * d0 = -1 mod p, and beta with c * d0 + 1 = beta * p.
    unsigned long c = 0;
    for (unsigned long t = 1; t < p; ++t)
        if ((t * w.digits()[0] + 1) % p == 0) { c = t; break; }
    mpz_class beta = (mpz_class(c) * w.digits()[0] + 1) / p;

    // u = beta p + sum_{i>=1} c d_i p^i, a series with u_0 = 0.
    std::vector<mpz_class> u(n, mpz_class(0));
    if (n > 1) u[1] = beta;
    for (std::size_t i = 1; i < n; ++i) u[i] += mpz_class(c) * w.digits()[i];

    // sum_{j=0}^{n-1} u^j, truncated; u has positive valuation so this is
    // exact through position n-1.
    std::vector<mpz_class> geo(n, mpz_class(0)), upow(n, mpz_class(0));
    geo[0] = 1;
    upow[0] = 1;
    for (std::size_t j = 1; j < n; ++j) {
        std::vector<mpz_class> next(n, mpz_class(0));
        for (std::size_t s = 0; s < n; ++s)
            if (upow[s] != 0)
                for (std::size_t t = 0; s + t < n; ++t)
                    if (u[t] != 0) next[s + t] += upow[s] * u[t];
        upow = std::move(next);
        for (std::size_t s = 0; s < n; ++s) geo[s] += upow[s];
    }
    for (std::size_t s = 0; s < n; ++s) geo[s] *= c;
    PadicApprox minus_inv = carry_normalize(p, -w.valuation(), geo, n);
    return padic_neg(minus_inv).canonicalized();
}

struct PadicDistance {
    Rational value;
    /// Set when the digits agree through the shared precision but equality
    /// is unproven: value is then only an upper bound.
    bool upper_bound_only = false;
};

/// d_p(a, b) = p^(-j0) at the first differing digit position j0.
inline PadicDistance padic_dist(const PadicApprox& a_in, const PadicApprox& b_in) {
    detail::require_same_prime(a_in, b_in);
    PadicApprox a = a_in.canonicalized(), b = b_in.canonicalized();
    const Rational p(static_cast<long>(a.prime()));
    auto value_at = [&](long j) { return Rational::pow(p, -j); };

    auto one_sided = [&](const PadicApprox& nz, const PadicApprox& z) -> PadicDistance {
        // distance to (a value indistinguishable from) zero
        if (nz.indistinguishable_from_zero()) {
            if (nz.is_exact_zero() && z.is_exact_zero()) return {Rational(0), false};
            long bound = std::min(
                nz.is_exact_zero() ? std::numeric_limits<long>::max()
                                   : nz.valuation() + static_cast<long>(nz.precision()),
                z.is_exact_zero() ? std::numeric_limits<long>::max()
                                  : z.valuation() + static_cast<long>(z.precision()));
            return {value_at(bound), true};
        }
        return {value_at(nz.valuation()), false};
    };
    if (a.indistinguishable_from_zero() || b.indistinguishable_from_zero())
        return a.indistinguishable_from_zero() ? one_sided(b, a) : one_sided(a, b);

    if (a.valuation() != b.valuation())
        return {value_at(std::min(a.valuation(), b.valuation())), false};

    long shared_end = std::min(a.valuation() + static_cast<long>(a.precision()),
                               b.valuation() + static_cast<long>(b.precision()));
    for (long j = a.valuation(); j < shared_end; ++j) {
        unsigned long da = a.digits()[static_cast<std::size_t>(j - a.valuation())];
        unsigned long db = b.digits()[static_cast<std::size_t>(j - b.valuation())];
        if (da != db) return {value_at(j), false};
    }
    return {value_at(shared_end), true};
}

inline std::string PadicApprox::str() const {
    if (zero_) return "0";
    std::string s = "[";
    for (std::size_t j = 0; j < digits_.size(); ++j) {
        if (j) s += ",";
        s += std::to_string(digits_[j]);
    }
    s += "]*" + std::to_string(p_) + "^" + std::to_string(val_);
    return s;
}

}  // namespace ck
