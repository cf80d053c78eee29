#pragma once

#include <cstdint>
#include <vector>

#include "hkd/errors.hpp"
#include "hkd/rational.hpp"

namespace hkd {

enum class StepView { full, tail };
enum class StepKind { density, hilbert };

struct StepMeta {
    std::uint32_t p = 0;
    unsigned n = 0;
    unsigned dim = 1;
    std::uint64_t n0 = 0;
    unsigned mu = 0;
    std::uint64_t ring_hash = 0;
};

// Right-continuous step function at resolution 1/q: entry i is the value
// on [(offset+i)/q, (offset+i+1)/q). Full-view density functions start at
// offset 0, tail views at offset q (the [1, oo) reindexing); cells beyond
// the stored range are zero. Density-kind values are lengths over q^{d-1},
// so numerators times q^{d-1} are the lengths back.
struct StepFunction {
    std::uint64_t q = 1;
    std::uint64_t offset = 0;
    StepView view = StepView::full;
    StepKind kind = StepKind::density;
    std::vector<Rational> values;
    StepMeta meta;

    std::uint64_t end_cell() const { return offset + values.size(); }

    Rational value_at_cell(std::uint64_t j) const {
        if (j < offset || j >= end_cell())
            return Rational(0);
        return values[j - offset];
    }

    // cell lookup at a rational point: entry floor(x*q)
    Rational value_at(const Rational& x) const {
        if (x < 0)
            return Rational(0);
        Integer j;
        mpz_fdiv_q(j.get_mpz_t(), Integer(x.get_num() * static_cast<unsigned long>(q)).get_mpz_t(),
                   x.get_den().get_mpz_t());
        if (!j.fits_ulong_p())
            return Rational(0);
        return value_at_cell(j.get_ui());
    }

    void trim_trailing_zeros() {
        while (!values.empty() && values.back() == 0)
            values.pop_back();
    }
};

// Exact supremum of |f - g| over the common refinement. Both inputs are
// step functions, so the sup is a max over finitely many cells of the
// finer grid; requires one resolution to divide the other. The comparison
// runs from the later of the two domain starts outward, with cells past
// either support reading zero.
inline Rational sup_norm_diff(const StepFunction& f, const StepFunction& g) {
    if (f.meta.p != 0 && g.meta.p != 0 && f.meta.p != g.meta.p)
        throw IncompatibleGrids("step functions from different primes");
    if (f.meta.ring_hash != 0 && g.meta.ring_hash != 0 && f.meta.ring_hash != g.meta.ring_hash)
        throw IncompatibleGrids("step functions from different rings");
    if (f.q == 0 || g.q == 0)
        throw InvalidInput("zero resolution");
    if (f.q % g.q != 0 && g.q % f.q != 0)
        throw IncompatibleGrids("neither resolution divides the other: " + std::to_string(f.q) +
                                ", " + std::to_string(g.q));
    const std::uint64_t Q = std::max(f.q, g.q);
    const std::uint64_t sf = Q / f.q;
    const std::uint64_t sg = Q / g.q;
    const std::uint64_t start = std::max(f.offset * sf, g.offset * sg);
    const std::uint64_t stop = std::max(f.end_cell() * sf, g.end_cell() * sg);
    Rational best(0);
    for (std::uint64_t j = start; j < stop; ++j) {
        Rational diff = rational_abs(f.value_at_cell(j / sf) - g.value_at_cell(j / sg));
        if (diff > best)
            best = diff;
    }
    return best;
}

// sum of values over cells of width 1/q, exact
inline Rational integrate(const StepFunction& f) {
    Rational acc(0);
    for (const auto& v : f.values)
        acc += v;
    return acc / make_rational(Integer(static_cast<unsigned long>(f.q)), Integer(1));
}

} // namespace hkd
