#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <optional>
#include <vector>

#include "hkd/errors.hpp"
#include "hkd/piecewise.hpp"
#include "hkd/polynomial.hpp"
#include "hkd/rational.hpp"

namespace hkd {

// Harder-Narasimhan slope data of a syzygy bundle on a polarized curve:
// strictly decreasing slopes mu_i with ranks r_i, plus an optional
// refinement of each block (the strong-HN data of a Frobenius pull-back,
// slopes renormalized back). Slopes are <= 0 for the bundles that arise
// here; positive slopes are rejected. HN data is consumed as input, never
// computed from a bundle.
struct HNBlock {
    Rational mu;
    unsigned long rank = 0;
    std::vector<std::pair<Rational, unsigned long>> refine; // empty = trivial
};

struct HNData {
    unsigned long degree = 0; // degree of the polarization
    std::vector<HNBlock> blocks;
};

inline void validate_hn(const HNData& data, bool refined) {
    if (data.degree < 1)
        throw InvalidHN("polarization degree must be >= 1");
    for (std::size_t i = 0; i < data.blocks.size(); ++i) {
        const HNBlock& b = data.blocks[i];
        if (b.rank < 1)
            throw InvalidHN("block rank must be >= 1");
        if (b.mu > 0)
            throw InvalidHN("positive slope " + to_string(b.mu));
        if (i > 0 && !(data.blocks[i - 1].mu > b.mu))
            throw InvalidHN("slopes must be strictly decreasing");
        if (!refined || b.refine.empty())
            continue;
        unsigned long rank_sum = 0;
        Rational degree_sum(0);
        for (std::size_t j = 0; j < b.refine.size(); ++j) {
            const auto& [a, r] = b.refine[j];
            if (r < 1)
                throw InvalidHN("refinement rank must be >= 1");
            if (a > 0)
                throw InvalidHN("positive refinement slope " + to_string(a));
            if (j > 0 && !(b.refine[j - 1].first > a))
                throw InvalidHN("refinement slopes must be strictly decreasing within a block");
            rank_sum += r;
            degree_sum += a * make_rational(static_cast<long>(r));
        }
        if (rank_sum != b.rank)
            throw InvalidHN("refinement ranks must sum to the block rank");
        if (b.refine.front().first < b.mu || b.refine.back().first > b.mu)
            throw InvalidHN("refinement slopes must straddle the block slope");
        if (degree_sum != b.mu * make_rational(static_cast<long>(b.rank)))
            throw InvalidHN("refinement must preserve the block degree (sum a_ij r_ij = mu_i r_i)");
    }
}

namespace detail {

// f(x) = sum_k r_k * d * max(0, (1 - a_k/d) - x) on [1, oo). Both closed
// forms of the curve theorem take this shape; each hinge switches off at
// its breakpoint 1 - a_k/d, which is what makes the function continuous,
// convex and eventually zero.
inline PiecewiseFunction hinge_sum(const std::vector<std::pair<Rational, unsigned long>>& pairs,
                                   unsigned long degree) {
    const Rational d = make_rational(static_cast<long>(degree));
    std::vector<Rational> cuts{Rational(1)};
    for (const auto& [a, r] : pairs) {
        Rational x = Rational(1) - a / d;
        if (x > 1)
            cuts.push_back(x);
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    std::vector<Piece> pieces;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const Rational& u = cuts[i];
        const Rational& v = cuts[i + 1];
        Rational c0(0), c1(0);
        for (const auto& [a, r] : pairs) {
            const Rational x_k = Rational(1) - a / d;
            if (x_k >= v) { // hinge active on [u, v)
                const Rational rk = make_rational(static_cast<long>(r));
                c0 += rk * (d - a);
                c1 -= rk * d;
            }
        }
        RationalPoly poly = RationalPoly::linear(c0, c1);
        if (!poly.is_zero())
            pieces.push_back({u, v, std::move(poly)});
    }
    return PiecewiseFunction::from_pieces(std::move(pieces));
}

} // namespace detail

// Limit density function from plain HN data; value at 1 is -sum mu_i r_i,
// support ends at 1 - mu_last/d.
inline PiecewiseFunction finf_from_hn(const HNData& data) {
    validate_hn(data, false);
    std::vector<std::pair<Rational, unsigned long>> pairs;
    for (const auto& b : data.blocks)
        pairs.emplace_back(b.mu, b.rank);
    return detail::hinge_sum(pairs, data.degree);
}

// Density function from refined HN data (flattened refinement slopes).
// With the trivial refinement this reproduces finf_from_hn exactly; in
// general it dominates it pointwise, which is the computable content of
// the curve theorem.
inline PiecewiseFunction density_from_hn(const HNData& data) {
    validate_hn(data, true);
    std::vector<std::pair<Rational, unsigned long>> pairs;
    for (const auto& b : data.blocks) {
        if (b.refine.empty())
            pairs.emplace_back(b.mu, b.rank);
        else
            for (const auto& ar : b.refine)
                pairs.push_back(ar);
    }
    return detail::hinge_sum(pairs, data.degree);
}

// Closed form for the limit HK multiplicity of a Segre product of two
// curves with semistable syzygy bundles: degrees d1, d2, bundle ranks
// r >= s. The d1*d2/3 summand is the Hilbert-Samuel part e_0/d! of the
// three-dimensional Segre ring.
inline Rational ehk_inf_segre_curves(unsigned long d1, unsigned long d2, unsigned long r,
                                     unsigned long s) {
    if (d1 < 1 || d2 < 1 || s < 1)
        throw PreconditionViolated("degrees and ranks must be >= 1");
    if (r < s)
        throw PreconditionViolated("requires r >= s");
    const Rational dd = make_rational(static_cast<long>(d1)) * make_rational(static_cast<long>(d2));
    const Rational rs = make_rational(static_cast<long>(r));
    const Rational ss = make_rational(static_cast<long>(s));
    const Rational bracket = Rational(1) / (2 * ss) + Rational(1) / (6 * ss * ss) +
                             Rational(1) / (6 * rs * rs) + ss / (6 * rs * rs);
    return dd / 3 + dd * bracket;
}

// ---- plane trinomial classification -------------------------------------

struct TrinomialClassification {
    enum class Kind { irregular, regular_a, regular_b };
    Kind kind = Kind::irregular;
    unsigned long degree = 0;
    long alpha = 0, beta = 0, nu = 0, lambda = 0; // regular kinds only
    unsigned long lambda_h = 1;
};

namespace detail {

struct TrinomialMonomials {
    unsigned long d = 0;
    std::array<std::array<std::uint32_t, 3>, 3> exps{}; // three monomials
};

inline TrinomialMonomials trinomial_monomials(const IntPoly& h) {
    if (h.nvars != 3)
        throw NotTrinomial("expected a polynomial in three variables");
    if (h.terms.size() != 3)
        throw NotTrinomial("expected exactly three monomials, got " +
                           std::to_string(h.terms.size()));
    if (!h.homogeneous())
        throw NotTrinomial("monomials must all have the same degree");
    TrinomialMonomials t;
    t.d = h.degree();
    if (t.d < 3)
        throw NotTrinomial("degree must be >= 3");
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t k = 0; k < 3; ++k)
            t.exps[i][k] = h.terms[i].exps[k];
    return t;
}

inline unsigned long gcd4(long a, long b, long c, long d) {
    unsigned long g = std::gcd(std::gcd(static_cast<unsigned long>(std::abs(a)),
                                        static_cast<unsigned long>(std::abs(b))),
                               std::gcd(static_cast<unsigned long>(std::abs(c)),
                                        static_cast<unsigned long>(std::abs(d))));
    return g;
}

} // namespace detail

// Classifier from the trinomial normal forms. A coordinate point lying on
// the curve with multiplicity >= d/2 (multiplicity = least total degree of
// the dehomogenization there) makes the trinomial irregular with
// lambda_h = 1. Otherwise the two regular normal forms are matched over
// all 6 variable permutations in lexicographic order, type (a) before
// type (b); lambda_h = |lambda| / gcd(alpha, beta, nu, lambda).
inline TrinomialClassification classify_trinomial(const IntPoly& h) {
    const auto t = detail::trinomial_monomials(h);
    const unsigned long d = t.d;

    // irregular test at (1,0,0), (0,1,0), (0,0,1)
    for (std::size_t k = 0; k < 3; ++k) {
        bool on_curve = true;
        unsigned long mult = d;
        for (const auto& e : t.exps) {
            if (e[k] == d)
                on_curve = false;
            mult = std::min<unsigned long>(mult, d - e[k]);
        }
        if (on_curve && 2 * mult >= d) {
            TrinomialClassification out;
            out.kind = TrinomialClassification::Kind::irregular;
            out.degree = d;
            out.lambda_h = 1;
            return out;
        }
    }

    static const std::array<std::array<int, 3>, 6> perms{
        {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};
    static const std::array<std::array<int, 3>, 6> assigns = perms; // term-to-slot bijections

    auto exp_of = [&](int term, const std::array<int, 3>& perm, int var) -> long {
        return static_cast<long>(t.exps[static_cast<std::size_t>(term)]
                                       [static_cast<std::size_t>(perm[static_cast<std::size_t>(var)])]);
    };
    const long dl = static_cast<long>(d);

    auto finish = [&](TrinomialClassification::Kind kind, long alpha, long beta, long nu,
                      long lambda) {
        if (lambda == 0)
            throw Unmatched("lambda = 0 has no assigned semantics");
        TrinomialClassification out;
        out.kind = kind;
        out.degree = d;
        out.alpha = alpha;
        out.beta = beta;
        out.nu = nu;
        out.lambda = lambda;
        out.lambda_h =
            static_cast<unsigned long>(std::abs(lambda)) / detail::gcd4(alpha, beta, nu, lambda);
        return out;
    };

    // type (a): X^a1 Y^a2 + Y^b1 Z^b2 + Z^c1 X^c2, a1,b1,c1 > d/2, none a pure power
    for (const auto& perm : perms)
        for (const auto& as : assigns) {
            const long a1 = exp_of(as[0], perm, 0), a2 = exp_of(as[0], perm, 1),
                       a3 = exp_of(as[0], perm, 2);
            const long b1 = exp_of(as[1], perm, 1), b2 = exp_of(as[1], perm, 2),
                       b0 = exp_of(as[1], perm, 0);
            const long c1 = exp_of(as[2], perm, 2), c2 = exp_of(as[2], perm, 0),
                       c0 = exp_of(as[2], perm, 1);
            if (a3 != 0 || b0 != 0 || c0 != 0)
                continue;
            if (a2 < 1 || b2 < 1 || c2 < 1)
                continue;
            if (2 * a1 <= dl || 2 * b1 <= dl || 2 * c1 <= dl)
                continue;
            return finish(TrinomialClassification::Kind::regular_a, a1 + b1 - dl, a1 + c1 - dl,
                          b1 + c1 - dl, a1 * b1 + a2 * c2 - b1 * c2);
        }

    // type (b): X^d + X^a1 Y^a2 Z^a3 + Y^b Z^c, a2 > d/2, c > d/2
    for (const auto& perm : perms)
        for (const auto& as : assigns) {
            if (exp_of(as[0], perm, 0) != dl)
                continue;
            const long a1 = exp_of(as[1], perm, 0), a2 = exp_of(as[1], perm, 1),
                       a3 = exp_of(as[1], perm, 2);
            const long b = exp_of(as[2], perm, 1), c = exp_of(as[2], perm, 2),
                       bx = exp_of(as[2], perm, 0);
            if (bx != 0)
                continue;
            if (2 * a2 <= dl || 2 * c <= dl)
                continue;
            return finish(TrinomialClassification::Kind::regular_b, a2, c, a2 + c - dl,
                          a2 * c - a3 * b);
        }

    throw Unmatched("regular trinomial matches neither normal form");
}

// ---- congruence predicates ----------------------------------------------

enum class CongruenceVariant { statement, proof };

// statement: p = +-1 mod lcm(lambda_h's); proof: the same with every
// modulus doubled. The paper states the first and uses the second; both
// are exposed and no position is taken.
inline bool congruence_agreement(std::uint64_t p, const std::vector<std::uint64_t>& lambda_hs,
                                 CongruenceVariant variant) {
    std::uint64_t m = 1;
    for (std::uint64_t l : lambda_hs) {
        if (l < 1)
            throw InvalidInput("lambda_h values must be >= 1");
        std::uint64_t factor = variant == CongruenceVariant::proof ? 2 * l : l;
        m = std::lcm(m, factor);
    }
    const std::uint64_t r = p % m;
    return r == 1 % m || r == (m - 1) % m;
}

} // namespace hkd
