#pragma once

#include <cstdint>
#include <vector>

#include "hkd/errors.hpp"
#include "hkd/rational.hpp"

namespace hkd {

// Integer polynomial of degree <= D in the binomial basis
//
//   P(m) = c_0*C(m+D, D) - c_1*C(m+D-1, D-1) + ... + (-1)^D c_D,
//
// the shape Hilbert polynomials of sheaves come in. Coefficients are
// integers; interpolation through integer values at consecutive points
// always lands in this lattice (the basis is unimodular over C(m,k)).
struct BinomialPolynomial {
    unsigned degree = 0;
    std::vector<Integer> coeffs; // c_0..c_D

    BinomialPolynomial() : coeffs(1, Integer(0)) {}
    BinomialPolynomial(unsigned D, std::vector<Integer> c) : degree(D), coeffs(std::move(c)) {
        if (coeffs.size() != degree + 1)
            throw InvalidInput("binomial polynomial needs D+1 coefficients");
    }

    Integer eval(const Integer& m) const {
        Integer acc = 0;
        for (unsigned i = 0; i <= degree; ++i) {
            Integer term = coeffs[i] * binomial_poly(m + (degree - i), degree - i);
            if (i % 2 == 0)
                acc += term;
            else
                acc -= term;
        }
        return acc;
    }

    bool is_zero() const {
        for (const auto& c : coeffs)
            if (c != 0)
                return false;
        return true;
    }
};

namespace detail {

// Solves for the binomial-basis coefficients of the degree-D polynomial
// with basis functions (-1)^i C(m + shift + D - i, D - i) through the
// first D+1 values; `shift` 0 gives the BinomialPolynomial convention,
// -1 the Hilbert-Samuel convention. Returns false if the interpolant has
// a non-integer coefficient or fails to reproduce the remaining values.
inline bool binomial_fit(const std::vector<Integer>& values, long start_m, unsigned D, long shift,
                         std::vector<Integer>& out) {
    if (values.size() < D + 2)
        return false;
    const unsigned n = D + 1;
    std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n + 1));
    for (unsigned row = 0; row < n; ++row) {
        const Integer m = Integer(start_m) + static_cast<long>(row);
        for (unsigned i = 0; i < n; ++i) {
            Integer b = binomial_poly(m + shift + static_cast<long>(D - i), D - i);
            a[row][i] = Rational(i % 2 == 0 ? b : Integer(-b));
        }
        a[row][n] = Rational(values[row]);
    }
    // exact Gaussian elimination
    for (unsigned col = 0; col < n; ++col) {
        unsigned piv = col;
        while (piv < n && a[piv][col] == 0)
            ++piv;
        if (piv == n)
            return false;
        std::swap(a[piv], a[col]);
        const Rational inv = Rational(1) / a[col][col];
        for (unsigned j = col; j <= n; ++j)
            a[col][j] *= inv;
        for (unsigned row = 0; row < n; ++row) {
            if (row == col || a[row][col] == 0)
                continue;
            const Rational f = a[row][col];
            for (unsigned j = col; j <= n; ++j)
                a[row][j] -= f * a[col][j];
        }
    }
    out.assign(n, Integer(0));
    for (unsigned i = 0; i < n; ++i) {
        if (a[i][n].get_den() != 1)
            return false;
        out[i] = a[i][n].get_num();
    }
    // verify against every remaining sample
    for (std::size_t k = n; k < values.size(); ++k) {
        const Integer m = Integer(start_m) + static_cast<long>(k);
        Integer v = 0;
        for (unsigned i = 0; i < n; ++i) {
            Integer term = out[i] * binomial_poly(m + shift + static_cast<long>(D - i), D - i);
            v += (i % 2 == 0) ? term : -term;
        }
        if (v != values[k])
            return false;
    }
    return true;
}

} // namespace detail

// Exact binomial-basis interpolation through integer values at consecutive
// arguments start_m, start_m+1, ...; needs at least D+2 values and the
// extras double as the degree check.
inline BinomialPolynomial from_values(const std::vector<Integer>& values, unsigned D,
                                      long start_m = 0) {
    if (values.size() < D + 2)
        throw NotPolynomial("need at least D+2 values");
    std::vector<Integer> coeffs;
    if (!detail::binomial_fit(values, start_m, D, 0, coeffs))
        throw NotPolynomial("values are not a degree-" + std::to_string(D) +
                            " integer binomial polynomial");
    return BinomialPolynomial(D, std::move(coeffs));
}

// chi of the Frobenius-pushforward cokernel: m -> hp(mp) - p^{d-1} hp(m)
// for hp of degree d-1, re-expressed one degree down. The degree-(d-1)
// terms must cancel; when they do not the input was malformed.
inline BinomialPolynomial cokernel_hp(const BinomialPolynomial& hp, std::uint64_t p) {
    if (hp.degree < 1)
        throw InvalidInput("cokernel_hp needs degree >= 1");
    const unsigned out_deg = hp.degree - 1;
    const Integer pd = integer_pow(Integer(static_cast<unsigned long>(p)), hp.degree);
    std::vector<Integer> samples;
    samples.reserve(out_deg + 2);
    for (unsigned m = 0; m <= out_deg + 1; ++m) {
        const Integer mi(static_cast<long>(m));
        samples.push_back(hp.eval(mi * static_cast<unsigned long>(p)) - pd * hp.eval(mi));
    }
    std::vector<Integer> coeffs;
    if (!detail::binomial_fit(samples, 0, out_deg, 0, coeffs))
        throw CancellationFailure("leading terms did not cancel to degree " +
                                  std::to_string(out_deg));
    return BinomialPolynomial(out_deg, std::move(coeffs));
}

enum class TwistSide { sub, quot };

// Twist differences from the two short exact sequences: `sub` is
// m -> hp(m) - hp(m - m0), `quot` is m -> hp(m + m0) - hp(m). For m0 = 0
// both are the zero polynomial.
inline BinomialPolynomial twist_difference_hp(const BinomialPolynomial& hp, std::uint64_t m0,
                                              TwistSide side) {
    const unsigned out_deg = hp.degree > 0 ? hp.degree - 1 : 0;
    std::vector<Integer> samples;
    samples.reserve(out_deg + 2);
    for (unsigned m = 0; m <= out_deg + 1; ++m) {
        const Integer mi(static_cast<long>(m));
        const Integer shift(static_cast<unsigned long>(m0));
        samples.push_back(side == TwistSide::sub ? hp.eval(mi) - hp.eval(mi - shift)
                                                 : hp.eval(mi + shift) - hp.eval(mi));
    }
    std::vector<Integer> coeffs;
    if (!detail::binomial_fit(samples, 0, out_deg, 0, coeffs))
        throw InternalError("twist difference is not one degree down");
    return BinomialPolynomial(out_deg, std::move(coeffs));
}

} // namespace hkd
