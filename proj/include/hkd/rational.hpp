#pragma once

#include <cstdint>
#include <string>

#include <gmpxx.h>

#include "hkd/errors.hpp"

namespace hkd {

// Exact arithmetic is delegated to GMP. mpq_class keeps values in lowest
// terms with a positive denominator once canonicalized, which is exactly
// the representation contract we need; make_rational is the one place
// construction from a raw numerator/denominator pair happens.
using Integer  = mpz_class;
using Rational = mpq_class;

inline Rational make_rational(const Integer& num, const Integer& den) {
    if (den == 0)
        throw InvalidInput("rational with zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline Rational make_rational(long num, long den = 1) {
    return make_rational(Integer(num), Integer(den));
}

inline Rational rational_abs(const Rational& x) {
    return x < 0 ? Rational(-x) : x;
}

// base^e for integer e of either sign; 0^negative is rejected.
inline Rational rational_pow(const Rational& base, long e) {
    if (e == 0)
        return Rational(1);
    if (base == 0 && e < 0)
        throw InvalidInput("zero to a negative power");
    Rational out;
    unsigned long k = static_cast<unsigned long>(e < 0 ? -e : e);
    mpz_pow_ui(out.get_num_mpz_t(), base.get_num().get_mpz_t(), k);
    mpz_pow_ui(out.get_den_mpz_t(), base.get_den().get_mpz_t(), k);
    if (e < 0) {
        mpq_inv(out.get_mpq_t(), out.get_mpq_t());
        out.canonicalize();
    }
    return out;
}

inline Integer integer_pow(const Integer& base, unsigned long e) {
    Integer out;
    mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), e);
    return out;
}

// C(t, k) as the polynomial t(t-1)...(t-k+1)/k!, valid for any integer t
// (negative included); exact division.
inline Integer binomial_poly(const Integer& t, unsigned k) {
    Integer num(1);
    for (unsigned i = 0; i < k; ++i)
        num *= t - static_cast<long>(i);
    Integer fact;
    mpz_fac_ui(fact.get_mpz_t(), k);
    Integer out;
    mpz_divexact(out.get_mpz_t(), num.get_mpz_t(), fact.get_mpz_t());
    return out;
}

inline bool fits_int64(const Integer& v) {
    return v.fits_slong_p() || (mpz_sizeinbase(v.get_mpz_t(), 2) <= 63);
}

inline std::int64_t to_int64(const Integer& v) {
    return static_cast<std::int64_t>(v.get_si());
}

inline std::string to_string(const Integer& v) { return v.get_str(); }

inline std::string to_string(const Rational& v) {
    if (v.get_den() == 1)
        return v.get_num().get_str();
    return v.get_num().get_str() + "/" + v.get_den().get_str();
}

} // namespace hkd
