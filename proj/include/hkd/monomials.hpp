#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "hkd/errors.hpp"

namespace hkd {

using Exponents = std::vector<std::uint32_t>;

constexpr std::uint32_t no_cap = std::numeric_limits<std::uint32_t>::max();

// All monomials of the given total degree in `nvars` variables with
// exponent of variable i strictly below caps[i], enumerated in graded
// lexicographic order (lex-descending exponent vectors). The order is
// fixed once so matrix layouts are reproducible and cacheable.
class MonomialBasis {
public:
    MonomialBasis(unsigned nvars, std::uint32_t degree, const std::vector<std::uint32_t>& caps)
        : nvars_(nvars), degree_(degree) {
        Exponents cur(nvars, 0);
        generate(cur, 0, degree, caps);
    }

    unsigned nvars() const { return nvars_; }
    std::uint32_t degree() const { return degree_; }
    std::size_t size() const { return flat_.size() / (nvars_ == 0 ? 1 : nvars_); }

    const std::uint32_t* exponents(std::size_t i) const { return flat_.data() + i * nvars_; }

    // binary search in the lex-descending order; nullopt when absent
    std::optional<std::size_t> index_of(const std::uint32_t* e) const {
        std::size_t lo = 0, hi = size();
        while (lo < hi) {
            std::size_t mid = (lo + hi) / 2;
            int c = compare(exponents(mid), e);
            if (c == 0)
                return mid;
            if (c < 0) // mid is lex-greater, comes earlier
                lo = mid + 1;
            else
                hi = mid;
        }
        return std::nullopt;
    }

private:
    int compare(const std::uint32_t* a, const std::uint32_t* b) const {
        for (unsigned i = 0; i < nvars_; ++i) {
            if (a[i] != b[i])
                return a[i] > b[i] ? -1 : 1; // lex-greater sorts first
        }
        return 0;
    }

    void generate(Exponents& cur, unsigned var, std::uint32_t remaining,
                  const std::vector<std::uint32_t>& caps) {
        if (var + 1 == nvars_) {
            if (remaining < caps[var]) {
                cur[var] = remaining;
                flat_.insert(flat_.end(), cur.begin(), cur.end());
            }
            return;
        }
        std::uint32_t hi = remaining;
        if (caps[var] != no_cap && caps[var] <= hi)
            hi = caps[var] - 1;
        for (std::uint32_t e = hi;; --e) {
            cur[var] = e;
            generate(cur, var + 1, remaining - e, caps);
            if (e == 0)
                break;
        }
        cur[var] = 0;
    }

    unsigned nvars_;
    std::uint32_t degree_;
    std::vector<std::uint32_t> flat_;
};

// #monomials of total degree d in v variables (no caps): C(d+v-1, v-1)
inline std::uint64_t monomial_count(unsigned v, std::uint64_t d) {
    if (v == 0)
        return d == 0 ? 1 : 0;
    std::uint64_t num = 1, den = 1;
    for (unsigned i = 1; i < v; ++i) {
        num *= d + i;
        den *= i;
    }
    return num / den;
}

} // namespace hkd
