#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "commutantkit/fp.hpp"
#include "commutantkit/rational.hpp"

namespace ck {

/// Rational function in t over a prime field, given as coefficient lists
/// (low degree first).  Only the t-adic valuation structure is exposed.
class TAdicRationalFunction {
public:
    TAdicRationalFunction(std::vector<Fp> num, std::vector<Fp> den)
        : num_(std::move(num)), den_(std::move(den)) {
        bool den_nonzero = false;
        for (const Fp& c : den_) den_nonzero = den_nonzero || !c.is_zero();
        if (!den_nonzero)
            throw std::invalid_argument("TAdicRationalFunction: zero denominator");
    }

    const std::vector<Fp>& num() const { return num_; }
    const std::vector<Fp>& den() const { return den_; }

    bool is_zero() const {
        for (const Fp& c : num_)
            if (!c.is_zero()) return false;
        return true;
    }

    /// ord_t of a nonzero coefficient list.
    static long ord(const std::vector<Fp>& coeffs) {
        for (std::size_t j = 0; j < coeffs.size(); ++j)
            if (!coeffs[j].is_zero()) return static_cast<long>(j);
        throw std::domain_error("ord_t of the zero polynomial");
    }

    /// P1 Q2 == P2 Q1, the canonical equality of fractions.
    bool equals(const TAdicRationalFunction& o) const {
        auto mul = [](const std::vector<Fp>& a, const std::vector<Fp>& b) {
            std::vector<Fp> r;
            if (a.empty() || b.empty()) return r;
            Fp z = zero_coeff(a, b);
            r.assign(a.size() + b.size() - 1, z);
            for (std::size_t i = 0; i < a.size(); ++i)
                for (std::size_t j = 0; j < b.size(); ++j)
                    r[i + j] += a[i] * b[j];
            return r;
        };
        auto lhs = mul(num_, o.den_), rhs = mul(o.num_, den_);
        std::size_t n = std::max(lhs.size(), rhs.size());
        for (std::size_t j = 0; j < n; ++j) {
            bool lz = j >= lhs.size() || lhs[j].is_zero();
            bool rz = j >= rhs.size() || rhs[j].is_zero();
            if (lz != rz) return false;
            if (!lz && lhs[j] != rhs[j]) return false;
        }
        return true;
    }

private:
    static Fp zero_coeff(const std::vector<Fp>& a, const std::vector<Fp>& b) {
        for (const Fp& c : a) if (c.modulus()) return Fp(c.modulus(), 0);
        for (const Fp& c : b) if (c.modulus()) return Fp(c.modulus(), 0);
        throw std::invalid_argument("TAdicRationalFunction: no field context");
    }
    std::vector<Fp> num_, den_;
};

/// ord_t(num) - ord_t(den) for f = t^l P0/Q0.
inline long t_adic_valuation(const TAdicRationalFunction& f) {
    if (f.is_zero()) throw std::domain_error("t_adic_valuation of zero");
    return TAdicRationalFunction::ord(f.num()) - TAdicRationalFunction::ord(f.den());
}

/// base^(-valuation); 0 for the zero function.  base > 1 required.
inline Rational t_adic_abs(const TAdicRationalFunction& f, const Rational& base) {
    if (base <= Rational(1)) throw std::invalid_argument("t_adic_abs: base must be > 1");
    if (f.is_zero()) return Rational(0);
    return Rational::pow(base, -t_adic_valuation(f));
}

/// An exact ultrametric absolute value: trivial, p-adic, or t-adic with a
/// rational base > 1.  Values are always exact rationals base^(-v).
class AbsoluteValue {
public:
    enum class Kind { trivial, p_adic, t_adic };

    static AbsoluteValue trivial() { return AbsoluteValue(Kind::trivial, 0, Rational(1)); }
    static AbsoluteValue p_adic(unsigned long p) {
        if (!is_prime(p)) throw std::invalid_argument("AbsoluteValue: p must be prime");
        return AbsoluteValue(Kind::p_adic, p, Rational(static_cast<long>(p)));
    }
    static AbsoluteValue t_adic(const Rational& base = Rational(2)) {
        if (base <= Rational(1)) throw std::invalid_argument("AbsoluteValue: base must be > 1");
        return AbsoluteValue(Kind::t_adic, 0, base);
    }

    Kind kind() const { return kind_; }
    unsigned long prime() const { return p_; }
    const Rational& base() const { return base_; }

    Rational operator()(const Rational& x) const {
        switch (kind_) {
            case Kind::trivial:
                return x.is_zero() ? Rational(0) : Rational(1);
            case Kind::p_adic:
                return abs_p_value(x);
            case Kind::t_adic:
                throw std::invalid_argument("t-adic absolute value applies to rational functions");
        }
        return Rational(0);
    }

    Rational operator()(const TAdicRationalFunction& f) const {
        if (kind_ != Kind::t_adic)
            throw std::invalid_argument("absolute value kind mismatch");
        return t_adic_abs(f, base_);
    }

    std::string str() const {
        switch (kind_) {
            case Kind::trivial: return "trivial";
            case Kind::p_adic: return "p-adic:" + std::to_string(p_);
            case Kind::t_adic: return "t-adic:" + base_.str();
        }
        return "";
    }

private:
    AbsoluteValue(Kind k, unsigned long p, Rational base)
        : kind_(k), p_(p), base_(std::move(base)) {}
    Rational abs_p_value(const Rational& x) const {
        if (x.is_zero()) return Rational(0);
        return Rational::pow(base_, -padic_valuation(x, p_));
    }
    Kind kind_;
    unsigned long p_;
    Rational base_;
};

struct FrobeniusReport {
    unsigned long p = 0;
    unsigned long l = 0;
    unsigned long pairs_checked = 0;
    bool additive_identity_holds = false;      // (x +/- y)^(p^l) = x^(p^l) +/- y^(p^l)
    bool root_of_unity_forces_one = false;     // x^(p^l) = 1 implies x = 1
    bool passed() const { return additive_identity_holds && root_of_unity_forces_one; }
};

/// Exhaustive sweep of the characteristic-p identities over F_p.
inline FrobeniusReport frobenius_check(unsigned long p, unsigned long l) {
    if (!is_prime(p)) throw std::invalid_argument("frobenius_check: p must be prime");
    if (l == 0) throw std::invalid_argument("frobenius_check: l must be positive");
    FrobeniusReport rep;
    rep.p = p;
    rep.l = l;
    long e = 1;
    for (unsigned long i = 0; i < l; ++i) e *= static_cast<long>(p);
    bool add_ok = true, root_ok = true;
    for (unsigned long a = 0; a < p; ++a) {
        Fp x(p, static_cast<std::int64_t>(a));
        if (!x.is_zero() && x.pow(e).is_one() && !x.is_one()) root_ok = false;
        for (unsigned long b = 0; b < p; ++b) {
            Fp y(p, static_cast<std::int64_t>(b));
            if ((x + y).pow(e) != x.pow(e) + y.pow(e)) add_ok = false;
            if ((x - y).pow(e) != x.pow(e) - y.pow(e)) add_ok = false;
            ++rep.pairs_checked;
        }
    }
    rep.additive_identity_holds = add_ok;
    rep.root_of_unity_forces_one = root_ok;
    return rep;
}

}  // namespace ck
