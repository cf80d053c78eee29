#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "hkd/errors.hpp"
#include "hkd/monomials.hpp"
#include "hkd/parallel.hpp"
#include "hkd/polynomial.hpp"
#include "hkd/prime_field.hpp"
#include "hkd/rational.hpp"
#include "hkd/sparse_matrix.hpp"

namespace hkd {

inline std::uint64_t fnv1a64(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

// Standard graded presentation over the integers: N+1 degree-one variables,
// homogeneous integer relations, homogeneous ideal generators, and the
// declared Krull dimension (cross-checked against Hilbert growth later,
// never computed symbolically).
struct GradedPresentation {
    std::vector<std::string> vars;
    unsigned dimension = 0;
    std::vector<IntPoly> relations;
    std::vector<IntPoly> ideal;

    void validate() const {
        if (vars.empty())
            throw InvalidInput("presentation needs at least one variable");
        if (dimension < 1)
            throw InvalidInput("declared dimension must be >= 1");
        if (dimension > vars.size())
            throw InvalidInput("declared dimension exceeds number of variables");
        if (ideal.empty())
            throw InvalidInput("ideal needs at least one generator");
        for (const auto& r : relations) {
            if (r.nvars != vars.size())
                throw InvalidInput("relation arity mismatch");
            if (r.zero() || !r.homogeneous() || r.degree() == 0)
                throw InvalidInput("relations must be homogeneous of positive degree");
        }
        for (const auto& g : ideal) {
            if (g.nvars != vars.size())
                throw InvalidInput("ideal generator arity mismatch");
            if (g.zero() || !g.homogeneous() || g.degree() == 0)
                throw InvalidInput("ideal generators must be homogeneous of positive degree");
        }
    }

    std::string canonical_string() const {
        std::string s = "v:" + std::to_string(vars.size()) + ";d:" + std::to_string(dimension);
        auto poly_str = [](const IntPoly& p) {
            std::string t;
            for (const auto& term : p.terms) {
                t += term.coeff.get_str() + "@";
                for (auto e : term.exps)
                    t += std::to_string(e) + ",";
                t += "|";
            }
            return t;
        };
        s += ";R:";
        for (const auto& r : relations)
            s += poly_str(r) + ";";
        s += "I:";
        for (const auto& g : ideal)
            s += poly_str(g) + ";";
        return s;
    }

    std::uint64_t content_hash() const { return fnv1a64(canonical_string()); }
};

struct FiberOptions {
    std::uint64_t degree_cap = 1ull << 20;
    // 0 means the default cap 4 * max(d_i) * mu from the module contract
    std::uint64_t n0_cap = 0;
};

// dim of the degree-j piece of F_p[x_0..x_N] / (relations + extra), as
// (#monomials of degree j) - rank of the multiplication matrix. Generators
// that are pure variable powers x_i^e instead shrink the monomial basis to
// exponents < e in that variable and contribute no matrix column.
inline std::uint64_t graded_piece_dim_raw(const PrimeField& field, unsigned nvars,
                                          const std::vector<ModPoly>& relations,
                                          const std::vector<ModPoly>& extra, std::uint64_t j,
                                          std::uint64_t degree_cap) {
    if (j > degree_cap)
        throw DegreeCapExceeded("degree " + std::to_string(j) + " exceeds cap " +
                                std::to_string(degree_cap));

    std::vector<std::uint32_t> caps(nvars, no_cap);
    std::vector<const ModPoly*> column_gens;
    auto classify = [&](const ModPoly& g) {
        if (auto pp = as_pure_power(g)) {
            caps[pp->first] = std::min(caps[pp->first], pp->second);
            return;
        }
        column_gens.push_back(&g);
    };
    for (const auto& r : relations)
        classify(r);
    for (const auto& g : extra)
        classify(g);

    MonomialBasis basis(nvars, static_cast<std::uint32_t>(j), caps);
    if (basis.size() == 0)
        return 0;

    SparseColumnMatrix matrix(field, static_cast<std::uint32_t>(basis.size()));
    Exponents w(nvars);
    for (const ModPoly* g : column_gens) {
        const std::uint64_t dg = g->degree();
        if (dg > j)
            continue;
        MonomialBasis mults(nvars, static_cast<std::uint32_t>(j - dg), caps);
        for (std::size_t mi = 0; mi < mults.size(); ++mi) {
            const std::uint32_t* m = mults.exponents(mi);
            std::vector<SparseColumnMatrix::Entry> col;
            col.reserve(g->terms.size());
            for (const auto& t : g->terms) {
                bool in_basis = true;
                for (unsigned k = 0; k < nvars; ++k) {
                    w[k] = m[k] + t.exps[k];
                    if (w[k] >= caps[k]) {
                        in_basis = false;
                        break;
                    }
                }
                if (!in_basis)
                    continue;
                auto idx = basis.index_of(w.data());
                if (!idx)
                    throw InternalError("monomial missing from basis");
                col.push_back({static_cast<std::uint32_t>(*idx), t.coeff});
            }
            if (col.empty())
                continue;
            std::sort(col.begin(), col.end(),
                      [](const auto& a, const auto& b) { return a.row < b.row; });
            matrix.add_column(std::move(col));
        }
    }
    return basis.size() - rank(matrix);
}

// Mod-p fiber of a presentation. Construction reduces every relation and
// ideal generator (rejecting the prime if any vanishes), then witnesses
// finite colength by locating n0: the least degree from which d+2 further
// quotient pieces of R_p/I_p are zero.
class ModPFiber {
public:
    ModPFiber(const GradedPresentation& pres, std::uint64_t p, FiberOptions opts = {})
        : field_(p), nvars_(static_cast<unsigned>(pres.vars.size())),
          dimension_(pres.dimension), vars_(pres.vars),
          degree_cap_(opts.degree_cap), ring_hash_(pres.content_hash()) {
        pres.validate();
        for (const auto& r : pres.relations)
            relations_.push_back(reduce_integer_poly(r, field_));
        for (const auto& g : pres.ideal) {
            ideal_.push_back(reduce_integer_poly(g, field_));
            gen_degrees_.push_back(g.degree());
        }
        n0_ = witness_n0(opts);
    }

    const PrimeField& field() const { return field_; }
    std::uint32_t p() const { return field_.modulus(); }
    unsigned nvars() const { return nvars_; }
    unsigned dimension() const { return dimension_; }
    const std::vector<std::string>& var_names() const { return vars_; }
    const std::vector<ModPoly>& relations() const { return relations_; }
    const std::vector<ModPoly>& ideal_generators() const { return ideal_; }
    const std::vector<std::uint64_t>& generator_degrees() const { return gen_degrees_; }
    unsigned mu() const { return static_cast<unsigned>(ideal_.size()); }
    std::uint64_t n0() const { return n0_; }
    std::uint64_t degree_cap() const { return degree_cap_; }
    std::uint64_t ring_hash() const { return ring_hash_; }

    std::uint64_t max_generator_degree() const {
        return *std::max_element(gen_degrees_.begin(), gen_degrees_.end());
    }

    // q = p^n, guarded against both 64-bit overflow and the modulus limit
    // (exponent arithmetic stays in 32 bits on the matrix side).
    std::uint64_t frobenius_q(unsigned n) const {
        if (n < 1)
            throw InvalidInput("Frobenius level must be >= 1");
        std::uint64_t q = 1;
        for (unsigned i = 0; i < n; ++i) {
            if (q > PrimeField::max_modulus / field_.modulus())
                throw Overflow("p^n does not fit the configured limits");
            q *= field_.modulus();
        }
        return q;
    }

private:
    std::uint64_t witness_n0(const FiberOptions& opts) const {
        std::uint64_t cap = opts.n0_cap;
        if (cap == 0)
            cap = 4 * max_generator_degree() * mu();
        const unsigned window = dimension_ + 2;
        std::uint64_t run_start = 0;
        std::uint64_t run_len = 0;
        for (std::uint64_t j = 1; j <= cap + window; ++j) {
            const std::uint64_t len =
                graded_piece_dim_raw(field_, nvars_, relations_, ideal_, j, degree_cap_);
            if (len == 0) {
                if (run_len == 0)
                    run_start = j;
                if (++run_len > window)
                    return run_start;
            } else {
                run_len = 0;
                if (j > cap)
                    break;
            }
        }
        throw InfiniteColength("no vanishing window of quotient pieces up to degree " +
                               std::to_string(cap));
    }

    PrimeField field_;
    unsigned nvars_;
    unsigned dimension_;
    std::vector<std::string> vars_;
    std::vector<ModPoly> relations_;
    std::vector<ModPoly> ideal_;
    std::vector<std::uint64_t> gen_degrees_;
    std::uint64_t degree_cap_;
    std::uint64_t ring_hash_;
    std::uint64_t n0_ = 0;
};

inline std::uint64_t graded_piece_dim(const ModPFiber& fiber, const std::vector<ModPoly>& extra,
                                      std::uint64_t j) {
    return graded_piece_dim_raw(fiber.field(), fiber.nvars(), fiber.relations(), extra, j,
                                fiber.degree_cap());
}

inline std::uint64_t find_n0(const ModPFiber& fiber) { return fiber.n0(); }

// {g_i^q} for q = p^n; degree of entry i is d_i * q.
inline std::vector<ModPoly> frobenius_power(const ModPFiber& fiber, unsigned n) {
    const std::uint64_t q = fiber.frobenius_q(n);
    std::vector<ModPoly> out;
    out.reserve(fiber.ideal_generators().size());
    for (const auto& g : fiber.ideal_generators())
        out.push_back(frobenius_pow(g, q, fiber.degree_cap()));
    return out;
}

// ell((R_p)_j) for j = 0..up_to
inline std::vector<std::uint64_t> hilbert_function_prefix(const ModPFiber& fiber,
                                                          std::uint64_t up_to) {
    std::vector<std::uint64_t> out(up_to + 1, 0);
    static const std::vector<ModPoly> none;
    parallel_for_index(0, up_to + 1,
                       [&](std::uint64_t j) { out[j] = graded_piece_dim(fiber, none, j); });
    return out;
}

// Everything above degree n0*mu*q vanishes (support bound of the density
// functions); the computations below verify a d+2 margin past the bound.
inline std::uint64_t support_bound(const ModPFiber& fiber, std::uint64_t q) {
    return fiber.n0() * fiber.mu() * q;
}

// ell(R_p / I_p^{[q]})_j for j = 0 .. n0*mu*q - 1, computed degree by
// degree (independent pure computations, merged by index).
inline std::vector<std::uint64_t> quotient_piece_lengths(const ModPFiber& fiber, unsigned n) {
    const std::uint64_t q = fiber.frobenius_q(n);
    const std::uint64_t bound = support_bound(fiber, q);
    const std::uint64_t margin = fiber.dimension() + 2;
    if (bound + margin > fiber.degree_cap())
        throw DegreeCapExceeded("support bound " + std::to_string(bound + margin) +
                                " exceeds cap " + std::to_string(fiber.degree_cap()));
    const std::vector<ModPoly> frob = frobenius_power(fiber, n);
    std::vector<std::uint64_t> lens(bound + margin, 0);
    parallel_for_index(0, bound + margin,
                       [&](std::uint64_t j) { lens[j] = graded_piece_dim(fiber, frob, j); });
    for (std::uint64_t j = bound; j < bound + margin; ++j)
        if (lens[j] != 0)
            throw InternalError("support bound violated at degree " + std::to_string(j));
    lens.resize(bound);
    return lens;
}

// ell(R_p / I_p^{[p^n]}) as an exact integer.
inline Integer colength(const ModPFiber& fiber, unsigned n) {
    Integer total = 0;
    for (std::uint64_t len : quotient_piece_lengths(fiber, n))
        total += static_cast<unsigned long>(len);
    return total;
}

} // namespace hkd
