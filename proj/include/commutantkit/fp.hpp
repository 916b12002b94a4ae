#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "commutantkit/rational.hpp"

namespace ck {

/// Element of Z/pZ for a prime modulus carried alongside the value.
class Fp {
public:
    Fp() : p_(0), v_(0) {}  // unusable sentinel; real elements carry a modulus
    Fp(std::uint64_t p, std::int64_t v) : p_(p) {
        if (p < 2) throw std::invalid_argument("Fp: modulus must be >= 2");
        std::int64_t m = v % static_cast<std::int64_t>(p);
        if (m < 0) m += static_cast<std::int64_t>(p);
        v_ = static_cast<std::uint64_t>(m);
    }

    std::uint64_t modulus() const { return p_; }
    std::uint64_t value() const { return v_; }

    bool is_zero() const { return v_ == 0; }
    bool is_one() const { return v_ == 1; }

    Fp operator-() const { return Fp(p_, v_ == 0 ? 0 : static_cast<std::int64_t>(p_ - v_)); }
    Fp operator+(const Fp& o) const { check(o); return raw(p_, (v_ + o.v_) % p_); }
    Fp operator-(const Fp& o) const { check(o); return raw(p_, (v_ + p_ - o.v_) % p_); }
    Fp operator*(const Fp& o) const {
        check(o);
        return raw(p_, static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(v_) * o.v_) % p_));
    }
    Fp operator/(const Fp& o) const { return *this * o.inverse(); }
    Fp& operator+=(const Fp& o) { *this = *this + o; return *this; }
    Fp& operator-=(const Fp& o) { *this = *this - o; return *this; }
    Fp& operator*=(const Fp& o) { *this = *this * o; return *this; }

    bool operator==(const Fp& o) const { return p_ == o.p_ && v_ == o.v_; }
    bool operator!=(const Fp& o) const { return !(*this == o); }

    Fp inverse() const {
        if (v_ == 0) throw std::domain_error("Fp: inverse of zero");
        // extended Euclid
        std::int64_t a = static_cast<std::int64_t>(v_), m = static_cast<std::int64_t>(p_);
        std::int64_t x0 = 0, x1 = 1, b = m;
        while (a > 1) {
            std::int64_t q = a / b;
            std::int64_t t = b; b = a % b; a = t;
            t = x0; x0 = x1 - q * x0; x1 = t;
        }
        return Fp(p_, x1);
    }

    Fp pow(long e) const {
        if (e < 0) return inverse().pow(-e);
        Fp r = raw(p_, 1), b = *this;
        unsigned long k = static_cast<unsigned long>(e);
        while (k) {
            if (k & 1) r *= b;
            b *= b;
            k >>= 1;
        }
        return r;
    }

    std::string str() const { return std::to_string(v_); }

private:
    static Fp raw(std::uint64_t p, std::uint64_t v) { Fp f; f.p_ = p; f.v_ = v; return f; }
    void check(const Fp& o) const {
        if (p_ != o.p_) throw std::invalid_argument("Fp: modulus mismatch");
    }
    std::uint64_t p_;
    std::uint64_t v_;
};

}  // namespace ck
