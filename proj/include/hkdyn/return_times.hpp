#pragma once

// Return and hitting times to cylinder sets for the doubling map, Bernoulli
// shifts and the 2-adic adding machine, normalized by the cylinder measure
// and compared with the exponential law E(t) = max(0, 1 - exp(-t)).

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "hkdyn/complexity.hpp"
#include "hkdyn/errors.hpp"
#include "hkdyn/parallel.hpp"
#include "hkdyn/rational.hpp"

namespace hkdyn {

inline constexpr int max_cylinder_depth = 24;

enum class SystemKind { doubling, bernoulli, odometer };

struct ReturnSystem {
    SystemKind kind = SystemKind::doubling;
    double p = 0.5;  // probability of symbol 1, bernoulli only

    static ReturnSystem doubling() { return {SystemKind::doubling, 0.5}; }
    static ReturnSystem bernoulli(double p) { return {SystemKind::bernoulli, p}; }
    static ReturnSystem odometer() { return {SystemKind::odometer, 0.5}; }
};

inline const char* to_string(SystemKind k) noexcept
{
    switch (k) {
    case SystemKind::doubling:
        return "doubling";
    case SystemKind::bernoulli:
        return "bernoulli";
    case SystemKind::odometer:
        return "odometer";
    }
    return "unknown";
}

enum class TimeMode { return_time, hitting_time };

struct ReturnSample {
    std::vector<double> normalized_times;
    int cylinder_depth = 0;
    std::size_t sample_count = 0;
    double cylinder_measure = 0.0;
};

/// SplitMix64 finalizer; derives independent per-sample seeds.
inline std::uint64_t mix_seed(std::uint64_t master, std::uint64_t index) noexcept
{
    std::uint64_t z = master + 0x9E3779B97F4A7C15ULL * (index + 1);
    z = (z ^ (z >> 30U)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27U)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31U);
}

/// First `depth` binary digits of sqrt(2) - 1, most significant first.
/// The default reference word: aperiodic, with short self-overlaps.
inline std::vector<int> default_reference_word(int depth)
{
    require(depth >= 1 && depth <= 64, "reference word depth must lie in [1, 64]");
    const BigInt scaled = boost::multiprecision::sqrt(BigInt(2) << (2 * depth));
    std::vector<int> out(static_cast<std::size_t>(depth));
    for (int i = 0; i < depth; ++i) {
        out[static_cast<std::size_t>(i)] = static_cast<int>(boost::multiprecision::bit_test(scaled, depth - 1 - i));
    }
    return out;
}

/// Adding machine on depth binary digits, least significant digit first:
/// state + 1 mod 2^depth.
inline std::uint64_t odometer_step(std::uint64_t state, int depth)
{
    require(depth >= 1 && depth <= 63, "odometer depth must lie in [1, 63]");
    const std::uint64_t mask = (std::uint64_t{1} << depth) - 1;
    require(state <= mask, "odometer state must be < 2^depth");
    return (state + 1) & mask;
}

namespace detail {

class BitSource {
public:
    BitSource(std::uint64_t seed, double p) : engine_(seed), p_(p), fair_(p == 0.5) {}

    int next()
    {
        if (fair_) {
            if (available_ == 0) {
                buffer_ = engine_();
                available_ = 64;
            }
            const int bit = static_cast<int>(buffer_ & 1U);
            buffer_ >>= 1U;
            --available_;
            return bit;
        }
        const double u = static_cast<double>(engine_() >> 11U) * 0x1p-53;
        return u < p_ ? 1 : 0;
    }

private:
    std::mt19937_64 engine_;
    std::uint64_t buffer_ = 0;
    int available_ = 0;
    double p_;
    bool fair_;
};

inline constexpr std::uint64_t step_limit = std::uint64_t{1} << 40;

}  // namespace detail

/// Normalized return (or hitting) times to the cylinder fixed by the first
/// `depth` symbols of `reference` (defaults to default_reference_word).
/// Sample i uses its own generator seeded by mix_seed(seed, i), so results
/// do not depend on `workers`.
inline ReturnSample return_time_samples(ReturnSystem system, int depth, std::size_t n_samples, std::uint64_t seed,
                                        TimeMode mode = TimeMode::return_time, std::vector<int> reference = {},
                                        unsigned workers = 1)
{
    require(depth >= 1, "cylinder depth must be >= 1");
    require(depth <= max_cylinder_depth, "cylinder depth must not exceed 24");
    require(n_samples >= 1, "sample count must be >= 1");
    if (system.kind == SystemKind::bernoulli) {
        require(system.p > 0.0 && system.p < 1.0, "bernoulli parameter must lie in (0, 1)");
    } else {
        system.p = 0.5;
    }
    if (reference.empty()) {
        reference = default_reference_word(depth);
    }
    require(static_cast<int>(reference.size()) >= depth, "reference word shorter than the cylinder depth");

    std::uint64_t word = 0;      // first symbol is the most significant bit
    std::uint64_t odo_word = 0;  // first symbol is the least significant bit
    std::size_t ones = 0;
    for (int i = 0; i < depth; ++i) {
        const int s = reference[static_cast<std::size_t>(i)];
        require(s == 0 || s == 1, "reference word must be binary");
        word = (word << 1U) | static_cast<std::uint64_t>(s);
        odo_word |= static_cast<std::uint64_t>(s) << i;
        ones += static_cast<std::size_t>(s);
    }
    const std::uint64_t mask = (std::uint64_t{1} << depth) - 1;
    const double measure = std::pow(system.p, static_cast<double>(ones)) *
                           std::pow(1.0 - system.p, static_cast<double>(static_cast<std::size_t>(depth) - ones));

    auto times = parallel_map(n_samples, workers, [&](std::size_t i) {
        detail::BitSource bits(mix_seed(seed, i), system.p);
        std::uint64_t steps = 0;
        if (system.kind == SystemKind::odometer) {
            // Only the first `depth` digits decide cylinder membership.
            std::uint64_t state = odo_word;
            if (mode == TimeMode::hitting_time) {
                state = 0;
                for (int k = 0; k < depth; ++k) {
                    state |= static_cast<std::uint64_t>(bits.next()) << k;
                }
            }
            do {
                state = odometer_step(state, depth);
                ++steps;
            } while (state != odo_word);
        } else {
            // Shift on the digit stream: T^k x lies in [w] iff digits
            // k..k+depth-1 of x spell w.
            std::uint64_t window = word;
            if (mode == TimeMode::hitting_time) {
                window = 0;
                for (int k = 0; k < depth; ++k) {
                    window = (window << 1U) | static_cast<std::uint64_t>(bits.next());
                }
            }
            do {
                window = ((window << 1U) | static_cast<std::uint64_t>(bits.next())) & mask;
                ++steps;
                if (steps > detail::step_limit) {
                    throw numeric_error("return time exceeded 2^40 steps");
                }
            } while (window != word);
        }
        return static_cast<double>(steps) * measure;
    });

    ReturnSample out;
    out.normalized_times = std::move(times);
    out.cylinder_depth = depth;
    out.sample_count = n_samples;
    out.cylinder_measure = measure;
    return out;
}

inline double exponential_cdf(double t)
{
    return t <= 0.0 ? 0.0 : 1.0 - std::exp(-t);
}

inline double ks_vs_exponential(const ReturnSample& sample)
{
    return ks_distance(sample.normalized_times, exponential_cdf);
}

struct MeanEstimate {
    double mean = 0.0;
    double standard_error = 0.0;
};

inline MeanEstimate mean_with_error(const std::vector<double>& values)
{
    require(!values.empty(), "mean of an empty sample");
    const double n = static_cast<double>(values.size());
    double sum = 0.0;
    for (double v : values) {
        sum += v;
    }
    const double mean = sum / n;
    double ss = 0.0;
    for (double v : values) {
        ss += (v - mean) * (v - mean);
    }
    const double var = values.size() > 1 ? ss / (n - 1.0) : 0.0;
    return {mean, std::sqrt(var / n)};
}

}  // namespace hkdyn
