#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "hkd/errors.hpp"
#include "hkd/monomials.hpp"
#include "hkd/prime_field.hpp"
#include "hkd/rational.hpp"

namespace hkd {

namespace detail {
// lex-descending exponent order shared by all polynomial normal forms
inline bool exps_lex_before(const Exponents& a, const Exponents& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i])
            return a[i] > b[i];
    return false;
}
} // namespace detail

// Multivariate polynomial with integer coefficients; term list is kept in
// lex-descending exponent order with like terms combined and zeros dropped.
struct IntPoly {
    struct Term {
        Integer coeff;
        Exponents exps;
    };

    unsigned nvars = 0;
    std::vector<Term> terms;

    IntPoly() = default;
    IntPoly(unsigned nv, std::vector<Term> ts) : nvars(nv), terms(std::move(ts)) { normalize(); }

    void normalize() {
        for (const auto& t : terms)
            if (t.exps.size() != nvars)
                throw InvalidInput("term exponent arity mismatch");
        std::map<Exponents, Integer, bool (*)(const Exponents&, const Exponents&)> acc(
            detail::exps_lex_before);
        for (auto& t : terms)
            acc[t.exps] += t.coeff;
        terms.clear();
        for (auto& [e, c] : acc)
            if (c != 0)
                terms.push_back({c, e});
    }

    bool zero() const { return terms.empty(); }

    // total degree of a term
    static std::uint64_t term_degree(const Exponents& e) {
        std::uint64_t d = 0;
        for (auto x : e)
            d += x;
        return d;
    }

    bool homogeneous() const {
        if (terms.empty())
            return true;
        const std::uint64_t d = term_degree(terms.front().exps);
        for (const auto& t : terms)
            if (term_degree(t.exps) != d)
                return false;
        return true;
    }

    std::uint64_t degree() const {
        std::uint64_t d = 0;
        for (const auto& t : terms)
            d = std::max(d, term_degree(t.exps));
        return d;
    }
};

// Same shape over F_p; coefficients are residues in (0, p).
struct ModPoly {
    struct Term {
        std::uint32_t coeff;
        Exponents exps;
    };

    unsigned nvars = 0;
    std::vector<Term> terms;

    bool zero() const { return terms.empty(); }

    std::uint64_t degree() const {
        std::uint64_t d = 0;
        for (const auto& t : terms)
            d = std::max(d, IntPoly::term_degree(t.exps));
        return d;
    }
};

// Coefficientwise reduction mod p; terms killed by p are dropped. A
// polynomial that vanishes entirely signals a degenerate fiber.
inline ModPoly reduce_integer_poly(const IntPoly& poly, const PrimeField& field) {
    ModPoly out;
    out.nvars = poly.nvars;
    for (const auto& t : poly.terms) {
        Integer r = t.coeff % field.modulus();
        if (r < 0)
            r += field.modulus();
        const std::uint32_t c = static_cast<std::uint32_t>(r.get_ui());
        if (c != 0)
            out.terms.push_back({c, t.exps});
    }
    if (out.terms.empty() && !poly.terms.empty())
        throw BadPrime("polynomial vanishes identically mod " + std::to_string(field.modulus()));
    return out;
}

// q-th Frobenius power for q = p^n: in characteristic p this is termwise,
// (sum c_i m_i)^q = sum c_i^q m_i^q, and c^q = c on F_p.
inline ModPoly frobenius_pow(const ModPoly& g, std::uint64_t q, std::uint64_t degree_cap) {
    if (g.degree() * q > degree_cap)
        throw Overflow("Frobenius power degree " + std::to_string(g.degree() * q) +
                       " exceeds cap " + std::to_string(degree_cap));
    ModPoly out;
    out.nvars = g.nvars;
    out.terms.reserve(g.terms.size());
    for (const auto& t : g.terms) {
        Exponents e = t.exps;
        for (auto& x : e) {
            const std::uint64_t scaled = static_cast<std::uint64_t>(x) * q;
            if (scaled > std::numeric_limits<std::uint32_t>::max())
                throw Overflow("Frobenius exponent overflow");
            x = static_cast<std::uint32_t>(scaled);
        }
        out.terms.push_back({t.coeff, std::move(e)});
    }
    return out;
}

// Plain product over F_p. Used by tests as the direct-expansion oracle for
// Frobenius powers and by nothing on the hot path.
inline ModPoly multiply(const ModPoly& a, const ModPoly& b, const PrimeField& F) {
    std::map<Exponents, std::uint32_t, bool (*)(const Exponents&, const Exponents&)> acc(
        detail::exps_lex_before);
    for (const auto& ta : a.terms)
        for (const auto& tb : b.terms) {
            Exponents e(a.nvars);
            for (unsigned i = 0; i < a.nvars; ++i)
                e[i] = ta.exps[i] + tb.exps[i];
            auto [it, inserted] = acc.try_emplace(std::move(e), 0);
            it->second = F.add(it->second, F.mul(ta.coeff, tb.coeff));
        }
    ModPoly out;
    out.nvars = a.nvars;
    for (auto& [e, c] : acc)
        if (c != 0)
            out.terms.push_back({c, e});
    return out;
}

inline ModPoly pow_naive(const ModPoly& g, std::uint64_t e, const PrimeField& F) {
    ModPoly acc;
    acc.nvars = g.nvars;
    acc.terms.push_back({1, Exponents(g.nvars, 0)});
    for (std::uint64_t i = 0; i < e; ++i)
        acc = multiply(acc, g, F);
    return acc;
}

// If the polynomial is a single term c*x_i^e with c != 0, returns (i, e).
inline std::optional<std::pair<unsigned, std::uint32_t>> as_pure_power(const ModPoly& g) {
    if (g.terms.size() != 1)
        return std::nullopt;
    const auto& e = g.terms.front().exps;
    unsigned var = 0;
    unsigned nonzero = 0;
    for (unsigned i = 0; i < e.size(); ++i)
        if (e[i] != 0) {
            ++nonzero;
            var = i;
        }
    if (nonzero != 1)
        return std::nullopt;
    return std::make_pair(var, e[var]);
}

// ---- polynomial strings ------------------------------------------------
//
// Grammar used by the CLI for trinomial input: integer coefficients,
// products via '*' (also tolerated implicitly), exponents via '^', terms
// separated by '+'/'-'. Example: "x^3*y + y^3*z + z^3*x".
inline IntPoly parse_polynomial(const std::string& text, const std::vector<std::string>& vars) {
    std::vector<IntPoly::Term> terms;
    std::size_t i = 0;
    const std::size_t n = text.size();

    auto skip_ws = [&] {
        while (i < n && std::isspace(static_cast<unsigned char>(text[i])))
            ++i;
    };
    auto parse_uint = [&]() -> Integer {
        std::string digits;
        while (i < n && std::isdigit(static_cast<unsigned char>(text[i])))
            digits.push_back(text[i++]);
        if (digits.empty())
            throw InvalidInput("expected integer at position " + std::to_string(i) +
                               " in polynomial \"" + text + "\"");
        return Integer(digits);
    };
    auto parse_var = [&]() -> int {
        for (std::size_t v = 0; v < vars.size(); ++v) {
            const std::string& name = vars[v];
            if (text.compare(i, name.size(), name) == 0) {
                // longest-match guard for multi-char names
                bool better = false;
                for (std::size_t w = 0; w < vars.size(); ++w)
                    if (vars[w].size() > name.size() &&
                        text.compare(i, vars[w].size(), vars[w]) == 0)
                        better = true;
                if (!better) {
                    i += name.size();
                    return static_cast<int>(v);
                }
            }
        }
        return -1;
    };

    skip_ws();
    bool first = true;
    while (i < n) {
        int sign = 1;
        skip_ws();
        if (i < n && (text[i] == '+' || text[i] == '-')) {
            sign = text[i] == '-' ? -1 : 1;
            ++i;
        } else if (!first) {
            throw InvalidInput("expected '+' or '-' at position " + std::to_string(i) +
                               " in polynomial \"" + text + "\"");
        }
        skip_ws();
        Integer coeff(sign);
        Exponents exps(vars.size(), 0);
        bool saw_factor = false;
        if (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) {
            coeff *= parse_uint();
            saw_factor = true;
        }
        for (;;) {
            skip_ws();
            if (i < n && text[i] == '*') {
                ++i;
                skip_ws();
            }
            if (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) {
                coeff *= parse_uint();
                saw_factor = true;
                continue;
            }
            const int v = parse_var();
            if (v < 0)
                break;
            saw_factor = true;
            std::uint32_t e = 1;
            skip_ws();
            if (i < n && text[i] == '^') {
                ++i;
                skip_ws();
                Integer ev = parse_uint();
                if (ev <= 0 || !ev.fits_uint_p())
                    throw InvalidInput("bad exponent in polynomial \"" + text + "\"");
                e = static_cast<std::uint32_t>(ev.get_ui());
            }
            exps[static_cast<std::size_t>(v)] += e;
        }
        if (!saw_factor)
            throw InvalidInput("empty term at position " + std::to_string(i) +
                               " in polynomial \"" + text + "\"");
        terms.push_back({coeff, exps});
        first = false;
        skip_ws();
    }
    if (terms.empty())
        throw InvalidInput("empty polynomial string");
    return IntPoly(static_cast<unsigned>(vars.size()), std::move(terms));
}

inline std::string to_string(const IntPoly& p, const std::vector<std::string>& vars) {
    if (p.terms.empty())
        return "0";
    std::string out;
    bool first = true;
    for (const auto& t : p.terms) {
        Integer c = t.coeff;
        if (first) {
            if (c < 0) {
                out += "-";
                c = -c;
            }
        } else {
            out += c < 0 ? " - " : " + ";
            if (c < 0)
                c = -c;
        }
        bool printed = false;
        if (c != 1) {
            out += c.get_str();
            printed = true;
        }
        for (unsigned i = 0; i < p.nvars; ++i) {
            if (t.exps[i] == 0)
                continue;
            if (printed)
                out += "*";
            out += vars[i];
            if (t.exps[i] > 1)
                out += "^" + std::to_string(t.exps[i]);
            printed = true;
        }
        if (!printed)
            out += "1";
        first = false;
    }
    return out;
}

} // namespace hkd
