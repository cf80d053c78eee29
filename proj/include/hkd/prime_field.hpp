#pragma once

#include <cstdint>
#include <mutex>
#include <unordered_set>

#include "hkd/errors.hpp"

namespace hkd {

namespace detail {

inline std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

inline std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1)
            r = mulmod_u64(r, a, m);
        a = mulmod_u64(a, a, m);
        e >>= 1;
    }
    return r;
}

// Deterministic Miller-Rabin. The witness set {2,3,5,7} is exact below
// 3,215,031,751 which covers the whole p < 2^31 range we allow.
inline bool is_prime_u64(std::uint64_t n) {
    if (n < 2)
        return false;
    for (std::uint64_t q : {2ull, 3ull, 5ull, 7ull}) {
        if (n == q)
            return true;
        if (n % q == 0)
            return false;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull}) {
        std::uint64_t x = powmod_u64(a, d, n);
        if (x == 1 || x == n - 1)
            continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite)
            return false;
    }
    return true;
}

} // namespace detail

// Arithmetic context for F_p, p < 2^31 so that products of residues fit in
// 64-bit intermediates. Elements are plain uint32_t residues in [0, p);
// the context owns the modulus, mirroring how the colength matrices store
// raw residues next to a shared field object.
class PrimeField {
public:
    static constexpr std::uint64_t max_modulus = (1ull << 31);

    explicit PrimeField(std::uint64_t p) : p_(static_cast<std::uint32_t>(p)) {
        if (p >= max_modulus)
            throw BadPrime("modulus " + std::to_string(p) + " >= 2^31");
        if (!verified_prime(p))
            throw BadPrime("modulus " + std::to_string(p) + " is not prime");
    }

    std::uint32_t modulus() const { return p_; }

    std::uint32_t reduce_u64(std::uint64_t v) const { return static_cast<std::uint32_t>(v % p_); }

    std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
        std::uint32_t s = a + b;
        return s >= p_ ? s - p_ : s;
    }

    std::uint32_t sub(std::uint32_t a, std::uint32_t b) const {
        return a >= b ? a - b : a + p_ - b;
    }

    std::uint32_t neg(std::uint32_t a) const { return a == 0 ? 0 : p_ - a; }

    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
        return static_cast<std::uint32_t>((static_cast<std::uint64_t>(a) * b) % p_);
    }

    // Extended Euclid; requires 0 < a < p.
    std::uint32_t inv(std::uint32_t a) const {
        std::int64_t t = 0, new_t = 1;
        std::int64_t r = p_, new_r = a;
        while (new_r != 0) {
            std::int64_t quot = r / new_r;
            std::int64_t tmp = t - quot * new_t;
            t = new_t;
            new_t = tmp;
            tmp = r - quot * new_r;
            r = new_r;
            new_r = tmp;
        }
        if (r != 1)
            throw InternalError("inverse of non-unit in F_p");
        if (t < 0)
            t += p_;
        return static_cast<std::uint32_t>(t);
    }

    std::uint32_t div(std::uint32_t a, std::uint32_t b) const { return mul(a, inv(b)); }

    bool operator==(const PrimeField& o) const { return p_ == o.p_; }

private:
    // Primality is checked once per modulus per process.
    static bool verified_prime(std::uint64_t p) {
        static std::mutex mtx;
        static std::unordered_set<std::uint64_t> known;
        {
            std::lock_guard<std::mutex> lock(mtx);
            if (known.count(p))
                return true;
        }
        if (!detail::is_prime_u64(p))
            return false;
        std::lock_guard<std::mutex> lock(mtx);
        known.insert(p);
        return true;
    }

    std::uint32_t p_;
};

} // namespace hkd
