#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qsft {

using Integer = mpz_class;
using Rational = mpq_class;

/// Raised for violated preconditions and failed domain checks.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised for malformed textual input (literals, bundle files).
class ParseError : public Error {
public:
    using Error::Error;
};

/// 2^{-n} as an exact rational.
inline Rational pow2_neg(std::size_t n) {
    Integer den = 1;
    mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), static_cast<mp_bitcnt_t>(n));
    return Rational(Integer(1), den);
}

/// 2^n as an exact integer.
inline Integer pow2(std::size_t n) {
    Integer v = 1;
    mpz_mul_2exp(v.get_mpz_t(), v.get_mpz_t(), static_cast<mp_bitcnt_t>(n));
    return v;
}

/// Representative of r modulo 1 in [0, 1).
inline Rational frac(const Rational& r) {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    Rational out = r - Rational(q);
    out.canonicalize();
    return out;
}

inline Rational rabs(const Rational& r) { return r < 0 ? Rational(-r) : r; }

inline const Rational& rmax(const Rational& a, const Rational& b) { return a < b ? b : a; }
inline const Rational& rmin(const Rational& a, const Rational& b) { return b < a ? b : a; }

inline std::string to_string(const Rational& r) {
    return r.get_den() == 1 ? r.get_num().get_str() : r.get_str();
}

inline std::string to_string(const Integer& z) { return z.get_str(); }

}  // namespace qsft
