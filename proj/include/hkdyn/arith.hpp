#pragma once

// Exact modular arithmetic over prime fields: deterministic primality,
// prime enumeration, Legendre symbols and inverses.

#include <cstdint>
#include <string>
#include <vector>

#include "hkdyn/errors.hpp"

namespace hkdyn {

// Largest prime modulus accepted by the field routines. Products of two
// residues then fit comfortably in 64-bit signed arithmetic.
inline constexpr std::uint64_t max_field_prime = (std::uint64_t{1} << 31) - 1;

namespace detail {

inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m)
{
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m)
{
    std::uint64_t result = 1 % m;
    base %= m;
    while (exp != 0) {
        if (exp & 1U) {
            result = mul_mod(result, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1U;
    }
    return result;
}

// Strong probable-prime test to base a for odd n > 2.
inline bool strong_probable_prime(std::uint64_t n, std::uint64_t a)
{
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1U) == 0) {
        d >>= 1U;
        ++s;
    }
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) {
        return true;
    }
    for (int r = 1; r < s; ++r) {
        x = mul_mod(x, x, n);
        if (x == n - 1) {
            return true;
        }
    }
    return false;
}

}  // namespace detail

/// Deterministic primality for every 64-bit input. Miller-Rabin with the
/// first twelve primes as witnesses has no strong pseudoprimes below 3.1e23.
inline bool is_prime(std::uint64_t n)
{
    constexpr std::uint64_t witnesses[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    if (n < 2) {
        return false;
    }
    for (std::uint64_t w : witnesses) {
        if (n % w == 0) {
            return n == w;
        }
    }
    for (std::uint64_t w : witnesses) {
        if (!detail::strong_probable_prime(n, w)) {
            return false;
        }
    }
    return true;
}

/// A prime modulus in the supported field range [2, 2^31).
class Prime {
public:
    explicit Prime(std::int64_t value) : value_(value)
    {
        require(value >= 2 && is_prime(static_cast<std::uint64_t>(value)),
                std::to_string(value) + " is not a prime");
        require(static_cast<std::uint64_t>(value) <= max_field_prime,
                std::to_string(value) + " exceeds the supported modulus bound 2^31-1");
    }

    constexpr std::int64_t value() const noexcept { return value_; }
    constexpr bool is_odd() const noexcept { return value_ != 2; }
    constexpr operator std::int64_t() const noexcept { return value_; }

    friend constexpr bool operator==(Prime, Prime) = default;

private:
    std::int64_t value_;
};

/// Builds an odd Prime, rejecting even and composite input with one message.
inline Prime odd_prime(std::int64_t value)
{
    require(value > 2 && is_prime(static_cast<std::uint64_t>(value)),
            std::to_string(value) + " is not an odd prime");
    return Prime(value);
}

/// Canonical residue of a in [0, p).
inline std::int64_t reduce(std::int64_t a, Prime p) noexcept
{
    std::int64_t r = a % p.value();
    return r < 0 ? r + p.value() : r;
}

/// All primes in [lo, hi], ascending. Sieves when the window is dense
/// enough, otherwise tests each candidate.
inline std::vector<std::int64_t> primes_in_range(std::int64_t lo, std::int64_t hi)
{
    require(lo <= hi, "primes_in_range: lo must not exceed hi");
    std::vector<std::int64_t> out;
    if (hi < 2) {
        return out;
    }
    if (lo < 2) {
        lo = 2;
    }
    if (hi <= std::int64_t{1} << 26) {
        std::vector<bool> composite(static_cast<std::size_t>(hi) + 1, false);
        for (std::int64_t i = 2; i * i <= hi; ++i) {
            if (!composite[static_cast<std::size_t>(i)]) {
                for (std::int64_t j = i * i; j <= hi; j += i) {
                    composite[static_cast<std::size_t>(j)] = true;
                }
            }
        }
        for (std::int64_t n = lo; n <= hi; ++n) {
            if (!composite[static_cast<std::size_t>(n)]) {
                out.push_back(n);
            }
        }
        return out;
    }
    for (std::int64_t n = lo; n <= hi; ++n) {
        if (is_prime(static_cast<std::uint64_t>(n))) {
            out.push_back(n);
        }
    }
    return out;
}

/// Legendre symbol (a/p) by Euler's criterion.
inline int legendre(std::int64_t a, Prime p)
{
    require(p.is_odd(), "Legendre symbol is undefined for p = 2");
    const auto m = static_cast<std::uint64_t>(p.value());
    const auto r = static_cast<std::uint64_t>(reduce(a, p));
    if (r == 0) {
        return 0;
    }
    return detail::pow_mod(r, (m - 1) / 2, m) == 1 ? 1 : -1;
}

/// Multiplicative inverse of a modulo p, in [1, p-1].
inline std::int64_t mod_inverse(std::int64_t a, Prime p)
{
    std::int64_t r = reduce(a, p);
    require(r != 0, "mod_inverse: " + std::to_string(a) + " is divisible by " +
                        std::to_string(p.value()));
    std::int64_t old_r = r, cur_r = p.value();
    std::int64_t old_s = 1, cur_s = 0;
    while (cur_r != 0) {
        const std::int64_t q = old_r / cur_r;
        std::int64_t tmp = old_r - q * cur_r;
        old_r = cur_r;
        cur_r = tmp;
        tmp = old_s - q * cur_s;
        old_s = cur_s;
        cur_s = tmp;
    }
    return reduce(old_s, p);
}

/// Precomputed per-prime tables for sweeps that touch every residue many
/// times. Inverses use the recurrence inv(i) = -(p / i) * inv(p mod i).
struct FieldTables {
    explicit FieldTables(Prime prime) : p(prime), inverse(static_cast<std::size_t>(prime.value()), 0)
    {
        const std::int64_t n = prime.value();
        if (n > 1) {
            inverse[1] = 1;
        }
        for (std::int64_t i = 2; i < n; ++i) {
            inverse[static_cast<std::size_t>(i)] =
                reduce(-(n / i) * inverse[static_cast<std::size_t>(n % i)], prime);
        }
        if (prime.is_odd()) {
            character.assign(static_cast<std::size_t>(n), -1);
            character[0] = 0;
            for (std::int64_t y = 1; y < n; ++y) {
                character[static_cast<std::size_t>(y * y % n)] = 1;
            }
        }
    }

    Prime p;
    std::vector<std::int64_t> inverse;  // inverse[0] is unused
    std::vector<int> character;         // quadratic character; empty for p = 2
};

}  // namespace hkdyn
