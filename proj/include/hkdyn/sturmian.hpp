#pragma once

// The doubling map on exact periodic orbits: mechanical (Sturmian) words,
// the invariant measures carried by their cycles, and brute-force ergodic
// optimization over all cycles up to a given period.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hkdyn/errors.hpp"
#include "hkdyn/rational.hpp"

namespace hkdyn {

/// A cyclic word over {0, 1}, stored at its primitive period.
class BinaryWord {
public:
    BinaryWord() = default;

    explicit BinaryWord(std::vector<int> symbols) : symbols_(std::move(symbols))
    {
        require(!symbols_.empty(), "a binary word needs at least one symbol");
        for (int s : symbols_) {
            require(s == 0 || s == 1, "binary word symbols must be 0 or 1");
        }
        const std::size_t n = symbols_.size();
        for (std::size_t q = 1; q < n; ++q) {
            if (n % q != 0) {
                continue;
            }
            bool repeats = true;
            for (std::size_t i = q; i < n && repeats; ++i) {
                repeats = symbols_[i] == symbols_[i - q];
            }
            if (repeats) {
                symbols_.resize(q);
                break;
            }
        }
    }

    std::size_t period() const noexcept { return symbols_.size(); }
    const std::vector<int>& symbols() const noexcept { return symbols_; }
    int operator[](std::size_t i) const { return symbols_[i % symbols_.size()]; }

    std::size_t ones() const { return static_cast<std::size_t>(std::count(symbols_.begin(), symbols_.end(), 1)); }

    /// Lexicographically least rotation (the Lyndon representative).
    BinaryWord canonical() const
    {
        std::vector<int> best = symbols_;
        std::vector<int> rotated = symbols_;
        for (std::size_t r = 1; r < symbols_.size(); ++r) {
            std::rotate(rotated.begin(), rotated.begin() + 1, rotated.end());
            if (rotated < best) {
                best = rotated;
            }
        }
        BinaryWord out;
        out.symbols_ = std::move(best);
        return out;
    }

    std::string str() const
    {
        std::string out;
        for (int s : symbols_) {
            out.push_back(static_cast<char>('0' + s));
        }
        return out;
    }

    friend bool operator==(const BinaryWord&, const BinaryWord&) = default;
    friend auto operator<=>(const BinaryWord& a, const BinaryWord& b)
    {
        if (a.period() != b.period()) {
            return a.period() <=> b.period();
        }
        return a.symbols_ <=> b.symbols_;
    }

private:
    std::vector<int> symbols_;
};

/// Uniform measure on the doubling-map cycle coded by `word`; points[i]
/// is the point whose binary digits are the word read from position i.
struct PeriodicOrbitMeasure {
    BinaryWord word;
    std::vector<Rational> points;

    std::size_t period() const noexcept { return points.size(); }
};

struct OrbitStats {
    Rational barycentre;
    Rational variance;
    double geometric_mean = 0.0;
    double integral_f = 0.0;
};

/// s(n) = floor((n+1) rho + phase) - floor(n rho + phase), n = 0..q-1,
/// where q is the denominator of rho.
inline BinaryWord sturmian_word(const Rational& rho, const Rational& phase = 0)
{
    require(rho >= 0 && rho <= 1, "rotation number must lie in [0, 1]");
    const BigInt q = boost::multiprecision::denominator(rho);
    require(q <= 4096, "rotation number denominator must not exceed 4096");
    const auto period = static_cast<std::size_t>(q);
    std::vector<int> symbols;
    symbols.reserve(period);
    BigInt prev = floor(phase);
    for (std::size_t n = 0; n < period; ++n) {
        const BigInt next = floor(Rational(static_cast<long long>(n + 1)) * rho + phase);
        symbols.push_back(static_cast<int>(next - prev));
        prev = next;
    }
    return BinaryWord(std::move(symbols));
}

/// The doubling map on [0, 1]. The point 1 (binary 0.111...) is treated as
/// fixed so that the all-ones coding stays consistent.
inline Rational doubling(const Rational& x)
{
    if (x == 1) {
        return x;
    }
    const Rational twice = 2 * x;
    return twice - Rational(floor(twice));
}

/// x_i = sum_{n>=0} s(n+i) / 2^{n+1} = (word rotated by i, read in binary) / (2^q - 1).
inline PeriodicOrbitMeasure word_to_orbit(const BinaryWord& word)
{
    require(word.period() >= 1, "word_to_orbit needs a nonempty word");
    const std::size_t q = word.period();
    const BigInt denominator = (BigInt(1) << q) - 1;
    PeriodicOrbitMeasure out;
    out.word = word;
    out.points.reserve(q);
    for (std::size_t i = 0; i < q; ++i) {
        BigInt numerator = 0;
        for (std::size_t n = 0; n < q; ++n) {
            numerator = 2 * numerator + word[i + n];
        }
        out.points.emplace_back(numerator, denominator);
    }
    return out;
}

template <typename F>
OrbitStats orbit_stats(const PeriodicOrbitMeasure& measure, F&& f)
{
    require(!measure.points.empty(), "orbit_stats needs a nonempty measure");
    const Rational q(static_cast<long long>(measure.points.size()));
    Rational sum = 0, sum_sq = 0;
    double log_sum = 0.0;
    bool has_zero = false;
    double f_sum = 0.0;
    for (const Rational& x : measure.points) {
        sum += x;
        sum_sq += x * x;
        const double xv = static_cast<double>(x);
        if (x == 0) {
            has_zero = true;
        } else {
            log_sum += std::log(xv);
        }
        f_sum += f(xv);
    }
    OrbitStats out;
    out.barycentre = sum / q;
    out.variance = sum_sq / q - out.barycentre * out.barycentre;
    out.geometric_mean = has_zero ? 0.0 : std::exp(log_sum / static_cast<double>(measure.points.size()));
    out.integral_f = f_sum / static_cast<double>(measure.points.size());
    return out;
}

inline OrbitStats orbit_stats(const PeriodicOrbitMeasure& measure)
{
    return orbit_stats(measure, [](double) { return 0.0; });
}

inline constexpr int max_enumeration_period = 16;

/// One measure per primitive binary necklace of period <= max_period,
/// ordered by period and then by Lyndon representative. The all-ones word
/// codes the same circle point as (0) and is omitted.
inline std::vector<PeriodicOrbitMeasure> enumerate_cycles(int max_period)
{
    require(max_period >= 1, "max_period must be >= 1");
    require(max_period <= max_enumeration_period, "max_period must not exceed 16");
    // Duval's algorithm yields the Lyndon words of length <= n in lex order.
    std::vector<BinaryWord> words;
    std::vector<int> w{-1};
    while (!w.empty()) {
        ++w.back();
        if (static_cast<int>(w.size()) <= max_period && !(w.size() == 1 && w[0] == 1)) {
            words.emplace_back(w);
        }
        const std::size_t m = w.size();
        while (static_cast<int>(w.size()) < max_period) {
            w.push_back(w[w.size() - m]);
        }
        while (!w.empty() && w.back() == 1) {
            w.pop_back();
        }
    }
    std::sort(words.begin(), words.end());
    std::vector<PeriodicOrbitMeasure> out;
    out.reserve(words.size());
    for (const BinaryWord& word : words) {
        out.push_back(word_to_orbit(word));
    }
    return out;
}

enum class OptimizeMode { minimize, maximize };

struct OptimizationResult {
    std::size_t index = 0;  // into the cycle list
    double value = 0.0;
    // Distance from the optimum to the next best value; 0 on a tie.
    double margin = 0.0;
};

/// The cycle extremizing the integral of f(x) + theta * x. Ties keep the
/// earlier cycle in list order, which for enumerate_cycles output means
/// smaller period, then lexicographically smaller word.
template <typename F>
OptimizationResult ergodic_optimize(F&& f, double theta, const std::vector<PeriodicOrbitMeasure>& cycles,
                                    OptimizeMode mode)
{
    require(!cycles.empty(), "ergodic_optimize needs at least one cycle");
    const double sign = mode == OptimizeMode::minimize ? 1.0 : -1.0;
    OptimizationResult best;
    double best_score = 0.0;
    double second_score = 0.0;
    bool have_second = false;
    for (std::size_t i = 0; i < cycles.size(); ++i) {
        double integral = 0.0;
        for (const Rational& x : cycles[i].points) {
            const double xv = static_cast<double>(x);
            integral += f(xv) + theta * xv;
        }
        integral /= static_cast<double>(cycles[i].points.size());
        const double score = sign * integral;
        if (i == 0 || score < best_score) {
            if (i != 0) {
                second_score = best_score;
                have_second = true;
            }
            best_score = score;
            best.index = i;
            best.value = integral;
        } else if (!have_second || score < second_score) {
            second_score = score;
            have_second = true;
        }
    }
    best.margin = have_second ? second_score - best_score : 0.0;
    return best;
}

/// True iff any two cyclic factors of equal length differ by at most one
/// in their number of 1s.
inline bool is_balanced(const BinaryWord& word)
{
    const std::size_t q = word.period();
    for (std::size_t n = 1; n <= q; ++n) {
        std::size_t lo = n + 1, hi = 0;
        for (std::size_t start = 0; start < q; ++start) {
            std::size_t ones = 0;
            for (std::size_t k = 0; k < n; ++k) {
                ones += static_cast<std::size_t>(word[start + k]);
            }
            lo = std::min(lo, ones);
            hi = std::max(hi, ones);
        }
        if (hi - lo > 1) {
            return false;
        }
    }
    return true;
}

/// True iff the points, viewed on the circle R/Z, fit in a closed arc of
/// length 1/2, i.e. some gap between circularly consecutive points is at
/// least 1/2.
inline bool in_semicircle(const PeriodicOrbitMeasure& measure)
{
    std::vector<Rational> pts;
    for (const Rational& x : measure.points) {
        pts.push_back(x == 1 ? Rational(0) : x);
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() <= 1) {
        return true;
    }
    const Rational half(1, 2);
    if (pts.front() + 1 - pts.back() >= half) {
        return true;
    }
    for (std::size_t i = 1; i < pts.size(); ++i) {
        if (pts[i] - pts[i - 1] >= half) {
            return true;
        }
    }
    return false;
}

/// Index of the cycle carrying `word` (up to rotation), if present.
inline std::optional<std::size_t> find_cycle(const std::vector<PeriodicOrbitMeasure>& cycles, const BinaryWord& word)
{
    const BinaryWord key = word.canonical();
    for (std::size_t i = 0; i < cycles.size(); ++i) {
        if (cycles[i].word == key) {
            return i;
        }
    }
    return std::nullopt;
}

struct ThetaSearch {
    std::optional<double> theta;  // first grid theta that isolates the target
    double best_margin = 0.0;     // largest strict margin seen (or nearest miss when negative)
};

/// Scans theta = lo + k * step over [lo, hi] for a value at which the
/// cycle `target` is the strict unique minimizer of f + theta * x.
template <typename F>
ThetaSearch find_minimizing_theta(F&& f, const std::vector<PeriodicOrbitMeasure>& cycles, std::size_t target,
                                  double lo = -4.0, double hi = 4.0, double step = 0.01)
{
    require(target < cycles.size(), "target cycle index out of range");
    require(step > 0 && lo <= hi, "invalid theta grid");
    ThetaSearch out;
    bool first = true;
    const auto steps = static_cast<long>(std::floor((hi - lo) / step + 1e-9));
    for (long k = 0; k <= steps; ++k) {
        const double theta = lo + static_cast<double>(k) * step;
        const OptimizationResult r = ergodic_optimize(f, theta, cycles, OptimizeMode::minimize);
        // Margin of the target over every other cycle; negative when beaten.
        double target_value = 0.0;
        for (const Rational& x : cycles[target].points) {
            const double xv = static_cast<double>(x);
            target_value += f(xv) + theta * xv;
        }
        target_value /= static_cast<double>(cycles[target].points.size());
        const double margin = r.index == target ? r.margin : r.value - target_value;
        if (first || margin > out.best_margin) {
            out.best_margin = margin;
            first = false;
        }
        if (r.index == target && r.margin > 0.0 && !out.theta) {
            out.theta = theta;
        }
    }
    return out;
}

}  // namespace hkdyn
