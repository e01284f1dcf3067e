#pragma once

// Complexity of coded orbits: factor counts, topological and empirical
// entropy estimates, and KS equidistribution checks for angle streams.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <string>
#include <unordered_set>
#include <vector>

#include "hkdyn/errors.hpp"

namespace hkdyn {

class SymbolSequence {
public:
    SymbolSequence(std::vector<int> symbols, int alphabet) : symbols_(std::move(symbols)), alphabet_(alphabet)
    {
        require(alphabet >= 2, "alphabet size must be >= 2");
        for (int s : symbols_) {
            require(s >= 0 && s < alphabet, "symbol outside [0, alphabet-1]");
        }
    }

    const std::vector<int>& symbols() const noexcept { return symbols_; }
    int alphabet() const noexcept { return alphabet_; }
    std::size_t size() const noexcept { return symbols_.size(); }

private:
    std::vector<int> symbols_;
    int alphabet_;
};

enum class SamplingStatus { ok, undersampled };

inline const char* to_string(SamplingStatus s) noexcept
{
    return s == SamplingStatus::ok ? "ok" : "undersampled";
}

struct Estimate {
    double value = 0.0;  // nats
    SamplingStatus status = SamplingStatus::ok;
};

namespace detail {

// Calls visit(key) for every length-n window. Keys are exact base-alphabet
// integers when alphabet^n fits in 64 bits, else byte strings.
template <typename Visit>
void for_each_factor(const SymbolSequence& seq, std::size_t n, Visit&& visit_int, auto&& visit_str)
{
    const auto& s = seq.symbols();
    const auto a = static_cast<std::uint64_t>(seq.alphabet());
    const double bits = static_cast<double>(n) * std::log2(static_cast<double>(a));
    if (bits < 63.0) {
        std::uint64_t top = 1;
        for (std::size_t k = 1; k < n; ++k) {
            top *= a;
        }
        std::uint64_t key = 0;
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (i >= n) {
                key -= static_cast<std::uint64_t>(s[i - n]) * top;
            }
            key = key * a + static_cast<std::uint64_t>(s[i]);
            if (i + 1 >= n) {
                visit_int(key);
            }
        }
        return;
    }
    std::string window;
    for (std::size_t i = 0; i + n <= s.size(); ++i) {
        window.clear();
        for (std::size_t k = 0; k < n; ++k) {
            const auto v = static_cast<std::uint32_t>(s[i + k]);
            window.append(reinterpret_cast<const char*>(&v), sizeof v);
        }
        visit_str(window);
    }
}

}  // namespace detail

/// Number of distinct length-n factors of the sequence.
inline std::size_t block_complexity(const SymbolSequence& seq, std::size_t n)
{
    require(n >= 1 && n <= seq.size(), "block length must lie in [1, sequence length]");
    std::unordered_set<std::uint64_t> ints;
    std::unordered_set<std::string> strs;
    detail::for_each_factor(
        seq, n, [&](std::uint64_t k) { ints.insert(k); }, [&](const std::string& k) { strs.insert(k); });
    return ints.size() + strs.size();
}

/// log(p(n_max)) / n_max. Undersampled when the sequence is shorter than
/// 100 * n_max or has fewer than ten windows per observed factor.
inline Estimate topological_entropy_estimate(const SymbolSequence& seq, std::size_t n_max)
{
    require(n_max >= 2, "n_max must be >= 2");
    const std::size_t p = block_complexity(seq, n_max);
    Estimate out;
    out.value = std::log(static_cast<double>(p)) / static_cast<double>(n_max);
    const std::size_t windows = seq.size() - n_max + 1;
    if (seq.size() < 100 * n_max || 10 * p > windows) {
        out.status = SamplingStatus::undersampled;
    }
    return out;
}

/// Shannon entropy of the overlapping length-block_len blocks, per symbol.
/// Undersampled when length < 100 * alphabet^block_len.
inline Estimate empirical_entropy_rate(const SymbolSequence& seq, std::size_t block_len)
{
    require(block_len >= 1 && block_len <= seq.size(), "block length must lie in [1, sequence length]");
    std::map<std::uint64_t, std::size_t> int_counts;
    std::map<std::string, std::size_t> str_counts;
    detail::for_each_factor(
        seq, block_len, [&](std::uint64_t k) { ++int_counts[k]; }, [&](const std::string& k) { ++str_counts[k]; });
    const double total = static_cast<double>(seq.size() - block_len + 1);
    double h = 0.0;
    const auto add = [&](std::size_t c) {
        const double q = static_cast<double>(c) / total;
        h -= q * std::log(q);
    };
    for (const auto& [key, c] : int_counts) {
        add(c);
    }
    for (const auto& [key, c] : str_counts) {
        add(c);
    }
    Estimate out;
    out.value = std::max(0.0, h / static_cast<double>(block_len));
    const double needed = 100.0 * std::pow(static_cast<double>(seq.alphabet()), static_cast<double>(block_len));
    if (static_cast<double>(seq.size()) < needed) {
        out.status = SamplingStatus::undersampled;
    }
    return out;
}

enum class AngleLaw { uniform, sine_squared };

/// CDF on [0, pi] of the uniform law t/pi, or of the density (2/pi) sin^2.
inline double angle_cdf(double t, AngleLaw law)
{
    t = std::clamp(t, 0.0, std::numbers::pi);
    if (law == AngleLaw::uniform) {
        return t / std::numbers::pi;
    }
    return (t - 0.5 * std::sin(2.0 * t)) / std::numbers::pi;
}

/// Two-sided Kolmogorov-Smirnov distance between the empirical CDF of the
/// sample and a continuous CDF.
template <typename Cdf>
double ks_distance(std::vector<double> values, Cdf&& cdf)
{
    require(!values.empty(), "KS distance needs a nonempty sample");
    std::sort(values.begin(), values.end());
    const double n = static_cast<double>(values.size());
    double d = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double f = cdf(values[i]);
        d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
    }
    return d;
}

inline double equidistribution_stat(const std::vector<double>& values, AngleLaw law)
{
    return ks_distance(values, [law](double t) { return angle_cdf(t, law); });
}

}  // namespace hkdyn
