#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <cstdint>
#include <string>

namespace mvf {

using Rational = mpq_class;
using BigInt = mpz_class;

inline Rational make_rational(long num, unsigned long den = 1) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline Rational rational_from_u64(std::uint64_t v) {
    BigInt z;
    mpz_import(z.get_mpz_t(), 1, 1, sizeof v, 0, 0, &v);
    return Rational(z);
}

inline BigInt bigint_from_u64(std::uint64_t v) {
    BigInt z;
    mpz_import(z.get_mpz_t(), 1, 1, sizeof v, 0, 0, &v);
    return z;
}

/// "num/den" with the denominator always present ("3/1", "0/1").
inline std::string to_string(const Rational& q) {
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

/// Parses "p/q" or a plain integer.
inline Rational parse_rational(const std::string& text) {
    Rational r(text, 10);
    r.canonicalize();
    return r;
}

/// Nearest double; mpq_get_d truncates toward zero.
inline double to_double(const Rational& q) {
    mpfr_t t;
    mpfr_init2(t, 53);
    mpfr_set_q(t, q.get_mpq_t(), MPFR_RNDN);
    const double d = mpfr_get_d(t, MPFR_RNDN);
    mpfr_clear(t);
    return d;
}

}  // namespace mvf
