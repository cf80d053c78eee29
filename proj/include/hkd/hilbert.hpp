#pragma once

#include <cstdint>
#include <vector>

#include "hkd/binomial_poly.hpp"
#include "hkd/errors.hpp"
#include "hkd/rational.hpp"

namespace hkd {

// Binomial-basis coefficients of the Hilbert-Samuel polynomial
//
//   ell(R/m^m) = e~_0*C(m+d-1, d) - e~_1*C(m+d-2, d-1) + ... + (-1)^d e~_d
//
// for m at and above stable_from.
struct HilbertData {
    unsigned dimension = 0;
    std::vector<Integer> coeffs; // e~_0 .. e~_d
    std::uint64_t stable_from = 0;

    const Integer& e0() const { return coeffs.front(); }

    Integer hilbert_samuel(const Integer& m) const {
        Integer acc = 0;
        const unsigned d = dimension;
        for (unsigned i = 0; i <= d; ++i) {
            Integer term =
                coeffs[i] * binomial_poly(m + static_cast<long>(d) - 1 - static_cast<long>(i), d - i);
            if (i % 2 == 0)
                acc += term;
            else
                acc -= term;
        }
        return acc;
    }
};

// Fits e~_0..e~_d from a Hilbert-function prefix ell(R_0), ell(R_1), ...
// The cumulative sums ell(R/m^m) are only eventually polynomial (from some
// regularity degree the artifact never computes), so a window of width d+3
// slides down from the top of the prefix: the first window whose leading
// d+1 points interpolate to an integer polynomial that reproduces the
// remaining two is accepted, then stable_from is pushed as low as the data
// allows. A declared dimension inconsistent with the growth of the data
// leaves every window unreproducible (or forces e~_0 < 1) and surfaces as
// NotStabilized.
inline HilbertData fit_hilbert_data(const std::vector<std::uint64_t>& hilbert_fn, unsigned d) {
    if (d < 1)
        throw InvalidInput("dimension must be >= 1");
    const std::size_t L = hilbert_fn.size();
    std::vector<Integer> H(L + 1);
    H[0] = 0;
    for (std::size_t j = 0; j < L; ++j)
        H[j + 1] = H[j] + static_cast<unsigned long>(hilbert_fn[j]);

    const unsigned w = d + 3;
    if (H.size() < w)
        throw NotStabilized("prefix of length " + std::to_string(L) +
                            " is too short for dimension " + std::to_string(d));

    for (std::size_t top = H.size() - w + 1; top-- > 0;) {
        std::vector<Integer> window(H.begin() + top, H.begin() + top + w);
        std::vector<Integer> coeffs;
        if (!detail::binomial_fit(window, static_cast<long>(top), d, -1, coeffs))
            continue;
        if (coeffs.front() < 1)
            continue;
        HilbertData out;
        out.dimension = d;
        out.coeffs = std::move(coeffs);
        std::size_t s = top;
        while (s > 0 && out.hilbert_samuel(Integer(static_cast<long>(s - 1))) == H[s - 1])
            --s;
        out.stable_from = s;
        return out;
    }
    throw NotStabilized("no stable window found (is the declared dimension right?)");
}

} // namespace hkd
