#pragma once

#include <string>

#include "commutantkit/fp.hpp"
#include "commutantkit/gaussian.hpp"
#include "commutantkit/rational.hpp"

namespace ck {

// Uniform scalar interface used by the generic linear algebra.  Elements of
// F_p carry their modulus, so "zero" and "one" are derived from an exemplar
// element rather than from the type alone.

inline Rational zero_like(const Rational&) { return Rational(0); }
inline Rational one_like(const Rational&) { return Rational(1); }
inline Rational conj(const Rational& x) { return x; }
inline bool is_zero(const Rational& x) { return x.is_zero(); }
inline Rational from_int(const Rational&, long n) { return Rational(n); }
inline std::string scalar_str(const Rational& x) { return x.str(); }

inline Fp zero_like(const Fp& x) { return Fp(x.modulus(), 0); }
inline Fp one_like(const Fp& x) { return Fp(x.modulus(), 1); }
inline Fp conj(const Fp& x) { return x; }
inline bool is_zero(const Fp& x) { return x.is_zero(); }
inline Fp from_int(const Fp& x, long n) { return Fp(x.modulus(), n); }
inline std::string scalar_str(const Fp& x) { return x.str(); }

inline GaussianRational zero_like(const GaussianRational&) { return GaussianRational(0); }
inline GaussianRational one_like(const GaussianRational&) { return GaussianRational(1); }
inline GaussianRational conj(const GaussianRational& x) { return x.conj(); }
inline bool is_zero(const GaussianRational& x) { return x.is_zero(); }
inline GaussianRational from_int(const GaussianRational&, long n) {
    return GaussianRational(Rational(n), Rational(0));
}
inline std::string scalar_str(const GaussianRational& x) { return x.str(); }

template <class K>
inline K inverse_of(const K& x) { return x.inverse(); }

/// Field tag as used in the JSON envelope: "Q", "Fp:<p>", "Qi".
template <class K> struct field_tag_of;
template <> struct field_tag_of<Rational> {
    static std::string tag(const Rational&) { return "Q"; }
};
template <> struct field_tag_of<Fp> {
    static std::string tag(const Fp& x) { return "Fp:" + std::to_string(x.modulus()); }
};
template <> struct field_tag_of<GaussianRational> {
    static std::string tag(const GaussianRational&) { return "Qi"; }
};

/// Characteristic of the field an exemplar element lives in.
inline unsigned long characteristic(const Rational&) { return 0; }
inline unsigned long characteristic(const Fp& x) { return x.modulus(); }
inline unsigned long characteristic(const GaussianRational&) { return 0; }

}  // namespace ck
