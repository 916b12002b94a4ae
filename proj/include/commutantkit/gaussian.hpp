#pragma once

#include <string>

#include "commutantkit/rational.hpp"

namespace ck {

/// Gaussian rational a + b i.  Conjugation (a, -b) is the symmetric-field
/// involution; a^2 + b^2 vanishes only at zero.
class GaussianRational {
public:
    GaussianRational() = default;
    GaussianRational(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}
    GaussianRational(long n) : re_(n), im_(0) {}

    const Rational& re() const { return re_; }
    const Rational& im() const { return im_; }

    bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
    bool is_one() const { return re_.is_one() && im_.is_zero(); }
    bool is_real() const { return im_.is_zero(); }

    GaussianRational conj() const { return {re_, -im_}; }

    GaussianRational operator-() const { return {-re_, -im_}; }
    GaussianRational operator+(const GaussianRational& o) const {
        return {re_ + o.re_, im_ + o.im_};
    }
    GaussianRational operator-(const GaussianRational& o) const {
        return {re_ - o.re_, im_ - o.im_};
    }
    GaussianRational operator*(const GaussianRational& o) const {
        return {re_ * o.re_ - im_ * o.im_, re_ * o.im_ + im_ * o.re_};
    }
    GaussianRational operator/(const GaussianRational& o) const {
        return *this * o.inverse();
    }
    GaussianRational& operator+=(const GaussianRational& o) { *this = *this + o; return *this; }
    GaussianRational& operator-=(const GaussianRational& o) { *this = *this - o; return *this; }
    GaussianRational& operator*=(const GaussianRational& o) { *this = *this * o; return *this; }

    bool operator==(const GaussianRational& o) const { return re_ == o.re_ && im_ == o.im_; }
    bool operator!=(const GaussianRational& o) const { return !(*this == o); }

    /// Norm form x conj(x) = re^2 + im^2, a nonnegative rational.
    Rational norm() const { return re_ * re_ + im_ * im_; }

    GaussianRational inverse() const {
        Rational n = norm();
        if (n.is_zero()) throw std::domain_error("GaussianRational: inverse of zero");
        return {re_ / n, -im_ / n};
    }

    /// "a", "bi", or "a+bi" / "a-bi" with rational parts as "n/d".
    std::string str() const {
        if (im_.is_zero()) return re_.str();
        std::string im = im_.str() + "i";
        if (re_.is_zero()) return im;
        return im_.sign() < 0 ? re_.str() + im : re_.str() + "+" + im;
    }

    static GaussianRational parse(const std::string& s);

private:
    Rational re_{0};
    Rational im_{0};
};

inline GaussianRational GaussianRational::parse(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("GaussianRational: empty string");
    // split at the last '+' or '-' that is not at position 0 and not inside "/..."
    // (rational parts never contain signs except leading)
    if (s.back() == 'i') {
        std::size_t split = std::string::npos;
        for (std::size_t i = s.size() - 1; i > 0; --i) {
            if (s[i] == '+' || s[i] == '-') { split = i; break; }
        }
        std::string imtxt = s.substr(split == std::string::npos ? 0 : split,
                                     s.size() - (split == std::string::npos ? 0 : split) - 1);
        if (imtxt.empty() || imtxt == "+") imtxt = "1";
        else if (imtxt == "-") imtxt = "-1";
        else if (imtxt.front() == '+') imtxt.erase(0, 1);
        Rational im = Rational::parse(imtxt);
        Rational re = (split == std::string::npos || split == 0)
                          ? Rational(0)
                          : Rational::parse(s.substr(0, split));
        return {re, im};
    }
    return {Rational::parse(s), Rational(0)};
}

}  // namespace ck
