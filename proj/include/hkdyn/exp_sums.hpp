#pragma once

// Hasse and Kloosterman components: point counts and traces of
// y^2 = x^3 + cx + d over F_p, Kloosterman sums, and Weil angles.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include "hkdyn/arith.hpp"
#include "hkdyn/errors.hpp"

namespace hkdyn {

/// Coefficients of f(x) = x^3 + cx + d. |c|, |d| <= 2^40 keeps the
/// discriminant exact in 128-bit arithmetic.
struct CubicCurveParams {
    std::int64_t c = 0;
    std::int64_t d = 0;

    static constexpr std::int64_t coefficient_bound = std::int64_t{1} << 40;

    CubicCurveParams() = default;
    CubicCurveParams(std::int64_t c_, std::int64_t d_) : c(c_), d(d_)
    {
        require(c_ >= -coefficient_bound && c_ <= coefficient_bound && d_ >= -coefficient_bound &&
                    d_ <= coefficient_bound,
                "curve coefficients must satisfy |c|, |d| <= 2^40");
    }

    /// 4c^3 + 27d^2, exactly.
    __int128 discriminant() const noexcept
    {
        const __int128 cc = c;
        const __int128 dd = d;
        return 4 * cc * cc * cc + 27 * dd * dd;
    }

    /// True iff the reduction mod p is an elliptic curve.
    bool is_elliptic_mod(Prime p) const noexcept
    {
        return p.is_odd() && discriminant() % p.value() != 0;
    }

    std::int64_t eval_mod(std::int64_t x, Prime p) const noexcept
    {
        const std::int64_t m = p.value();
        const std::int64_t xr = reduce(x, p);
        const std::int64_t x3 = xr * xr % m * xr % m;
        return (x3 + reduce(c, p) * xr % m + reduce(d, p)) % m;
    }

    friend bool operator==(const CubicCurveParams&, const CubicCurveParams&) = default;
};

struct TraceResult {
    std::int64_t a_p = 0;
    std::int64_t affine_count = 0;
    bool is_elliptic = false;
};

struct KloostermanValue {
    double real_part = 0.0;
    double imag_part = 0.0;
    std::int64_t p = 0;
};

namespace detail {

// Neumaier's variant of Kahan summation.
class CompensatedSum {
public:
    void add(double v) noexcept
    {
        const double t = sum_ + v;
        if (std::fabs(sum_) >= std::fabs(v)) {
            comp_ += (sum_ - t) + v;
        } else {
            comp_ += (v - t) + sum_;
        }
        sum_ = t;
    }
    double value() const noexcept { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

inline void require_odd(Prime p, const char* what)
{
    require(p.is_odd(), std::string(what) + ": p = 2 is excluded (odd characteristic required)");
}

}  // namespace detail

namespace detail {

// Calls fn(f(x) mod p) for x = 0, 1, ..., p-1 using forward differences of
// f(x) = x^3 + cx + d, so each step costs three modular additions.
template <typename Fn>
void for_each_cubic_value(const CubicCurveParams& curve, Prime p, Fn&& fn)
{
    const std::int64_t m = p.value();
    const auto add = [m](std::int64_t a, std::int64_t b) {
        const std::int64_t s = a + b;
        return s >= m ? s - m : s;
    };
    std::int64_t f = reduce(curve.d, p);              // f(0)
    std::int64_t d1 = reduce(1 + reduce(curve.c, p), p);  // f(1) - f(0)
    std::int64_t d2 = reduce(6, p);                   // f(2) - 2f(1) + f(0)
    const std::int64_t d3 = reduce(6, p);
    for (std::int64_t x = 0; x < m; ++x) {
        fn(f);
        f = add(f, d1);
        d1 = add(d1, d2);
        d2 = add(d2, d3);
    }
}

}  // namespace detail

/// Number of affine solutions of y^2 = f(x) over F_p, counted through a
/// table of how many y square to each residue. Independent of the
/// Legendre-symbol route used by trace_ap.
inline std::int64_t affine_point_count(const CubicCurveParams& curve, Prime p)
{
    detail::require_odd(p, "affine_point_count");
    const std::int64_t m = p.value();
    std::vector<std::int32_t> roots(static_cast<std::size_t>(m), 0);
    for (std::int64_t y = 0; y < m; ++y) {
        ++roots[static_cast<std::size_t>(y * y % m)];
    }
    std::int64_t count = 0;
    detail::for_each_cubic_value(curve, p, [&](std::int64_t v) { count += roots[static_cast<std::size_t>(v)]; });
    return count;
}

/// a_p = -sum_x (f(x)/p). Verified against p - affine_point_count before
/// returning; a mismatch raises numeric_error.
inline TraceResult trace_ap(const CubicCurveParams& curve, Prime p)
{
    detail::require_odd(p, "trace_ap");
    std::int64_t character_sum = 0;
    for (std::int64_t x = 0; x < p.value(); ++x) {
        character_sum += legendre(curve.eval_mod(x, p), p);
    }
    TraceResult out;
    out.a_p = -character_sum;
    out.affine_count = affine_point_count(curve, p);
    out.is_elliptic = curve.is_elliptic_mod(p);
    if (out.a_p != p.value() - out.affine_count) {
        throw numeric_error("trace_ap: character sum disagrees with the point count at p = " +
                            std::to_string(p.value()));
    }
    return out;
}

/// Same as trace_ap but reads the quadratic character and skips the
/// cross-check; used by sweeps that already own a FieldTables.
inline TraceResult trace_ap(const CubicCurveParams& curve, const FieldTables& tables)
{
    const Prime p = tables.p;
    detail::require_odd(p, "trace_ap");
    std::int64_t character_sum = 0;
    detail::for_each_cubic_value(
        curve, p, [&](std::int64_t v) { character_sum += tables.character[static_cast<std::size_t>(v)]; });
    TraceResult out;
    out.a_p = -character_sum;
    out.affine_count = p.value() - out.a_p;
    out.is_elliptic = curve.is_elliptic_mod(p);
    return out;
}

/// cos and sin of 2*pi*k/p for k in [0, p). Entries are products
/// e(aB/p) e(b/p) of two tables of about sqrt(p) long double values each.
class UnitRoots {
public:
    explicit UnitRoots(Prime p) : cos_(static_cast<std::size_t>(p.value())), sin_(cos_.size())
    {
        const std::int64_t m = p.value();
        const long double step = 2.0L * std::numbers::pi_v<long double> / static_cast<long double>(m);
        auto block = static_cast<std::int64_t>(std::ceil(std::sqrt(static_cast<double>(m))));
        std::vector<long double> fine_c(static_cast<std::size_t>(block)), fine_s(fine_c.size());
        for (std::int64_t b = 0; b < block; ++b) {
            fine_c[static_cast<std::size_t>(b)] = std::cos(step * static_cast<long double>(b));
            fine_s[static_cast<std::size_t>(b)] = std::sin(step * static_cast<long double>(b));
        }
        for (std::int64_t base = 0; base < m; base += block) {
            const long double cc = std::cos(step * static_cast<long double>(base));
            const long double cs = std::sin(step * static_cast<long double>(base));
            const std::int64_t end = std::min(m, base + block);
            for (std::int64_t k = base; k < end; ++k) {
                const auto b = static_cast<std::size_t>(k - base);
                cos_[static_cast<std::size_t>(k)] = static_cast<double>(cc * fine_c[b] - cs * fine_s[b]);
                sin_[static_cast<std::size_t>(k)] = static_cast<double>(cs * fine_c[b] + cc * fine_s[b]);
            }
        }
    }

    double cos(std::int64_t k) const noexcept { return cos_[static_cast<std::size_t>(k)]; }
    double sin(std::int64_t k) const noexcept { return sin_[static_cast<std::size_t>(k)]; }

private:
    std::vector<double> cos_;
    std::vector<double> sin_;
};

namespace detail {

inline void require_kloosterman_domain(std::int64_t c, std::int64_t d, Prime p)
{
    require(reduce(c, p) != 0 && reduce(d, p) != 0,
            "kloosterman_sum: p = " + std::to_string(p.value()) + " divides c*d");
}

}  // namespace detail

/// T_p(c,d) = sum_{x=1}^{p-1} exp(2*pi*i*(cx + d/x)/p), with compensated
/// accumulation of both parts.
inline KloostermanValue kloosterman_sum(std::int64_t c, std::int64_t d, Prime p)
{
    detail::require_kloosterman_domain(c, d, p);
    const std::int64_t m = p.value();
    const std::int64_t cr = reduce(c, p);
    const std::int64_t dr = reduce(d, p);
    const long double step = 2.0L * std::numbers::pi_v<long double> / static_cast<long double>(m);
    detail::CompensatedSum re, im;
    for (std::int64_t x = 1; x < m; ++x) {
        const std::int64_t k = (cr * x + dr * mod_inverse(x, p)) % m;
        const long double angle = step * static_cast<long double>(k);
        re.add(static_cast<double>(std::cos(angle)));
        im.add(static_cast<double>(std::sin(angle)));
    }
    return {re.value(), im.value(), m};
}

/// Table-driven variant for sweeps over many (c, d) at one prime.
inline KloostermanValue kloosterman_sum(std::int64_t c, std::int64_t d, const FieldTables& tables,
                                        const UnitRoots& roots)
{
    const Prime p = tables.p;
    detail::require_kloosterman_domain(c, d, p);
    const std::int64_t m = p.value();
    const std::int64_t cr = reduce(c, p);
    const std::int64_t dr = reduce(d, p);
    detail::CompensatedSum re, im;
    std::int64_t cx = 0;  // c*x mod p, advanced by addition
    for (std::int64_t x = 1; x < m; ++x) {
        cx += cr;
        if (cx >= m) {
            cx -= m;
        }
        std::int64_t k = cx + dr * tables.inverse[static_cast<std::size_t>(x)] % m;
        if (k >= m) {
            k -= m;
        }
        re.add(roots.cos(k));
        im.add(roots.sin(k));
    }
    return {re.value(), im.value(), m};
}

/// arccos(value / (2 sqrt p)) in [0, pi]. Values past the Hasse-Weil bound
/// by more than 1e-6 indicate an upstream bug and raise numeric_error.
inline double weil_angle(double value, Prime p)
{
    const double bound = 2.0 * std::sqrt(static_cast<double>(p.value()));
    if (!std::isfinite(value) || std::fabs(value) > bound + 1e-6) {
        throw numeric_error("weil_angle: |" + std::to_string(value) + "| exceeds 2*sqrt(" +
                            std::to_string(p.value()) + ")");
    }
    double ratio = value / bound;
    if (ratio > 1.0) {
        ratio = 1.0;
    } else if (ratio < -1.0) {
        ratio = -1.0;
    }
    return std::acos(ratio);
}

}  // namespace hkdyn
