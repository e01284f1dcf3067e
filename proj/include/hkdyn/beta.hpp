#pragma once

// beta-transformations T(x) = beta*x mod 1, greedy beta-expansions, Parry
// admissibility, and the natural extension
//   (x, y) -> (T x, (floor(beta*x) + y) / beta).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "hkdyn/errors.hpp"

namespace hkdyn {

using real_ext = long double;

inline const real_ext golden_ratio = (1.0L + std::sqrt(5.0L)) / 2.0L;

struct BetaExpansion {
    std::vector<int> digits;
    real_ext x = 0;
    real_ext beta = 2;
    // True when the orbit hit 0 exactly, i.e. every further digit is 0.
    bool terminates = false;
};

enum class Admissibility { admissible, not_admissible, inconclusive };

inline const char* to_string(Admissibility a) noexcept
{
    switch (a) {
    case Admissibility::admissible:
        return "admissible";
    case Admissibility::not_admissible:
        return "not_admissible";
    case Admissibility::inconclusive:
        return "inconclusive";
    }
    return "unknown";
}

struct PlanePoint {
    real_ext x = 0;
    real_ext y = 0;
};

namespace detail {

inline void require_beta(real_ext beta)
{
    require(std::isfinite(beta) && beta > 1, "beta must be a finite real > 1");
}

inline void require_unit(real_ext v, const char* name)
{
    require(v >= 0 && v <= 1, std::string(name) + " must lie in [0, 1]");
}

// Products within this distance of an integer are snapped onto it, so that
// exact identities such as golden*(golden-1) = 1 survive rounding.
inline real_ext snap_tolerance(real_ext v)
{
    return 64 * std::numeric_limits<real_ext>::epsilon() * std::max<real_ext>(1, std::fabs(v));
}

struct DigitStep {
    int digit;
    real_ext remainder;
};

inline DigitStep split(real_ext v)
{
    real_ext whole = std::floor(v);
    const real_ext nearest = std::round(v);
    // Values just above 0 are genuine small remainders, not rounding noise.
    if (nearest != 0 && std::fabs(v - nearest) <= snap_tolerance(v)) {
        whole = nearest;
        return {static_cast<int>(whole), 0};
    }
    return {static_cast<int>(whole), v - whole};
}

}  // namespace detail

/// Largest admissible digit, ceil(beta) - 1.
inline int max_digit(real_ext beta)
{
    return static_cast<int>(std::ceil(beta)) - 1;
}

/// One application of T(x) = beta*x mod 1.
inline real_ext beta_map_step(real_ext x, real_ext beta)
{
    detail::require_beta(beta);
    detail::require_unit(x, "x");
    return detail::split(beta * x).remainder;
}

/// First n digits x_i = floor(beta * T^{i-1}(x)) of the greedy expansion.
inline BetaExpansion beta_expansion(real_ext x, real_ext beta, int n)
{
    detail::require_beta(beta);
    detail::require_unit(x, "x");
    require(n >= 1, "beta_expansion: digit count must be >= 1");
    BetaExpansion out;
    out.x = x;
    out.beta = beta;
    out.digits.reserve(static_cast<std::size_t>(n));
    real_ext t = x;
    for (int i = 0; i < n; ++i) {
        const detail::DigitStep step = detail::split(beta * t);
        out.digits.push_back(step.digit);
        t = step.remainder;
    }
    out.terminates = (t == 0);
    return out;
}

/// sum_{i=1}^{n} digits_i * beta^{-i}.
inline real_ext beta_value(const std::vector<int>& digits, real_ext beta)
{
    real_ext value = 0;
    for (auto it = digits.rbegin(); it != digits.rend(); ++it) {
        value = (value + *it) / beta;
    }
    return value;
}

/// Quasi-greedy expansion of 1 to `horizon` digits: d(1) itself when it is
/// infinite, else (t_1 ... t_{m-1} (t_m - 1)) repeated.
inline std::vector<int> quasi_greedy_one(real_ext beta, int horizon)
{
    detail::require_beta(beta);
    require(horizon >= 1, "horizon must be >= 1");
    std::vector<int> greedy;
    real_ext t = 1;
    int last_nonzero = -1;
    bool finite = false;
    for (int i = 0; i < horizon; ++i) {
        const detail::DigitStep step = detail::split(beta * t);
        greedy.push_back(step.digit);
        if (step.digit != 0) {
            last_nonzero = i;
        }
        t = step.remainder;
        if (t == 0) {
            finite = true;
            break;
        }
    }
    if (!finite) {
        return greedy;
    }
    std::vector<int> block(greedy.begin(), greedy.begin() + last_nonzero + 1);
    block.back() -= 1;
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(horizon));
    while (static_cast<int>(out.size()) < horizon) {
        for (int digit : block) {
            if (static_cast<int>(out.size()) == horizon) {
                break;
            }
            out.push_back(digit);
        }
    }
    return out;
}

/// Parry's criterion for a digit prefix. The whole word must be <= d(1)
/// and every proper suffix <= the quasi-greedy expansion of 1, both
/// compared lexicographically over the suffix length. A suffix that agrees
/// with the reference on all `horizon` known reference digits while being
/// longer is undecided and yields inconclusive.
inline Admissibility is_admissible(const std::vector<int>& digits, real_ext beta, int horizon = 64)
{
    detail::require_beta(beta);
    require(horizon >= 1, "horizon must be >= 1");
    // floor(beta) only occurs as the leading digit of d(1) for integer beta.
    const int top = std::max(max_digit(beta), static_cast<int>(std::floor(beta)));
    for (int digit : digits) {
        require(digit >= 0 && digit <= top, "digit outside [0, floor(beta)]");
    }

    std::vector<int> greedy = beta_expansion(1, beta, horizon).digits;
    const std::vector<int> quasi = quasi_greedy_one(beta, horizon);

    bool undecided = false;
    for (std::size_t start = 0; start < digits.size(); ++start) {
        const std::vector<int>& reference = start == 0 ? greedy : quasi;
        const std::size_t length = digits.size() - start;
        const std::size_t span = std::min(length, reference.size());
        int order = 0;
        for (std::size_t k = 0; k < span && order == 0; ++k) {
            const int a = digits[start + k];
            const int b = reference[k];
            order = a < b ? -1 : (a > b ? 1 : 0);
        }
        if (order > 0) {
            return Admissibility::not_admissible;
        }
        if (order == 0 && length > reference.size()) {
            undecided = true;
        }
    }
    return undecided ? Admissibility::inconclusive : Admissibility::admissible;
}

inline PlanePoint natural_extension_step(PlanePoint point, real_ext beta)
{
    detail::require_beta(beta);
    detail::require_unit(point.x, "x");
    detail::require_unit(point.y, "y");
    const detail::DigitStep step = detail::split(beta * point.x);
    return {step.remainder, (static_cast<real_ext>(step.digit) + point.y) / beta};
}

/// Orbit of the natural extension after discarding `burn_in` steps.
///
/// Iterating T in floating point collapses onto 0 whenever beta*x loses
/// low-order bits each step (integer and dyadic beta). Each step therefore
/// refreshes the bits below 2^-60 of x with seeded uniform noise, which
/// models a Lebesgue-generic starting point without altering any digit at
/// the resolution the orbit is sampled.
inline std::vector<PlanePoint> natural_extension_orbit(PlanePoint seed, real_ext beta, std::size_t n,
                                                       std::size_t burn_in, std::uint64_t noise_seed = 0)
{
    detail::require_beta(beta);
    detail::require_unit(seed.x, "x");
    detail::require_unit(seed.y, "y");
    std::mt19937_64 engine(noise_seed);
    constexpr real_ext noise_scale = 0x1p-124L;  // 64 random bits below 2^-60
    std::vector<PlanePoint> out;
    out.reserve(n);
    PlanePoint current = seed;
    for (std::size_t k = 0; k < burn_in + n; ++k) {
        current = natural_extension_step(current, beta);
        current.x += static_cast<real_ext>(engine()) * noise_scale;
        if (current.x >= 1) {
            current.x -= 1;
        }
        if (k >= burn_in) {
            out.push_back(current);
        }
    }
    return out;
}

/// Per-cell comparison of an empirical measure with its pushforward.
struct InvarianceReport {
    int grid = 16;
    std::size_t samples = 0;
    std::vector<double> original_mass;    // row-major, x index fastest
    std::vector<double> pushforward_mass;
    double max_z = 0.0;                   // max |pushforward - original| / SE
    bool within_three_se = false;
};

inline int grid_cell(real_ext v, int grid)
{
    int k = static_cast<int>(v * grid);
    return k >= grid ? grid - 1 : (k < 0 ? 0 : k);
}

/// Bins the orbit points and their images under natural_extension_step on
/// a grid x grid partition of the unit square. The standard error of cell
/// mass m is sqrt(m(1-m)/N), floored at 1/N.
inline InvarianceReport invariance_check(const std::vector<PlanePoint>& points, real_ext beta, int grid = 16)
{
    require(!points.empty(), "invariance_check needs at least one point");
    require(grid >= 1, "grid must be >= 1");
    const auto cells = static_cast<std::size_t>(grid * grid);
    std::vector<std::size_t> before(cells, 0), after(cells, 0);
    for (const PlanePoint& pt : points) {
        ++before[static_cast<std::size_t>(grid_cell(pt.y, grid) * grid + grid_cell(pt.x, grid))];
        const PlanePoint img = natural_extension_step(pt, beta);
        ++after[static_cast<std::size_t>(grid_cell(img.y, grid) * grid + grid_cell(img.x, grid))];
    }
    InvarianceReport report;
    report.grid = grid;
    report.samples = points.size();
    const double n = static_cast<double>(points.size());
    for (std::size_t i = 0; i < cells; ++i) {
        const double m0 = static_cast<double>(before[i]) / n;
        const double m1 = static_cast<double>(after[i]) / n;
        report.original_mass.push_back(m0);
        report.pushforward_mass.push_back(m1);
        const double se = std::max(std::sqrt(m0 * (1.0 - m0) / n), 1.0 / n);
        report.max_z = std::max(report.max_z, std::fabs(m1 - m0) / se);
    }
    report.within_three_se = report.max_z <= 3.0;
    return report;
}

}  // namespace hkdyn
