#pragma once

// The Hasse-Kloosterman map (c, d) -> (phi_p, theta_p) over a single prime
// field and over prime scans, and its coding by a pair of partitions of
// [0, pi] into base-d digit streams.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include "hkdyn/arith.hpp"
#include "hkdyn/errors.hpp"
#include "hkdyn/exp_sums.hpp"
#include "hkdyn/parallel.hpp"
#include "hkdyn/rational.hpp"

namespace hkdyn {

/// Value of the HK map at one input. a_p and the real Kloosterman sum are
/// kept next to the angles they produce.
struct AnglePair {
    double phi = 0.0;
    double theta = 0.0;
    std::int64_t p = 0;
    std::int64_t c = 0;
    std::int64_t d = 0;
    std::int64_t a_p = 0;
    double kloosterman = 0.0;

    friend bool operator==(const AnglePair&, const AnglePair&) = default;
};

/// A partition of [0, pi] into cells [b_k, b_{k+1}), the last one closed at
/// pi. Cells are labelled 0..d-1 in boundary order.
class Partition {
public:
    /// Uniform partition into `cells` equal cells.
    static Partition uniform(int cells)
    {
        require(cells >= 2, "partition needs at least 2 cells");
        std::vector<double> interior;
        for (int k = 1; k < cells; ++k) {
            interior.push_back(std::numbers::pi * k / cells);
        }
        return Partition(std::move(interior));
    }

    /// Partition from its interior boundaries, strictly increasing in (0, pi).
    explicit Partition(std::vector<double> interior) : interior_(std::move(interior))
    {
        require(!interior_.empty(), "partition needs at least 2 cells");
        for (std::size_t i = 0; i < interior_.size(); ++i) {
            require(interior_[i] > 0.0 && interior_[i] < std::numbers::pi,
                    "partition boundaries must lie strictly inside (0, pi)");
            require(i == 0 || interior_[i] > interior_[i - 1],
                    "partition boundaries must be strictly increasing");
        }
    }

    int cells() const noexcept { return static_cast<int>(interior_.size()) + 1; }

    /// Boundaries including the endpoints 0 and pi.
    std::vector<double> boundaries() const
    {
        std::vector<double> out{0.0};
        out.insert(out.end(), interior_.begin(), interior_.end());
        out.push_back(std::numbers::pi);
        return out;
    }

    int label(double angle) const
    {
        require(angle >= 0.0 && angle <= std::numbers::pi, "angle outside [0, pi]");
        return static_cast<int>(std::upper_bound(interior_.begin(), interior_.end(), angle) - interior_.begin());
    }

    double midpoint(int label) const
    {
        require(label >= 0 && label < cells(), "cell label out of range");
        const double lo = label == 0 ? 0.0 : interior_[static_cast<std::size_t>(label - 1)];
        const double hi = label == cells() - 1 ? std::numbers::pi : interior_[static_cast<std::size_t>(label)];
        return 0.5 * (lo + hi);
    }

private:
    std::vector<double> interior_;
};

/// The (horizontal, vertical) pair of equal-cardinality partitions. The
/// horizontal one digitizes phi, the vertical one theta.
struct PartitionPair {
    Partition horizontal;
    Partition vertical;

    PartitionPair(Partition h, Partition v) : horizontal(std::move(h)), vertical(std::move(v))
    {
        require(horizontal.cells() == vertical.cells(),
                "horizontal and vertical partitions must have the same cardinality");
    }

    static PartitionPair uniform(int cells) { return {Partition::uniform(cells), Partition::uniform(cells)}; }

    int cardinality() const noexcept { return horizontal.cells(); }
};

/// a_digits[i-1] holds a_i, b_digits[i] holds b_i. `finite` is false for
/// prefixes of the infinite arithmetic code.
struct DigitSequence {
    std::vector<int> a_digits;
    std::vector<int> b_digits;
    int base = 2;
    bool finite = true;
};

/// x = sum a_i / d^i, y = sum b_{i-1} / d^i as exact rationals. For a
/// stream prefix of length r the true point lies within truncation_bound
/// = d^-r of (x, y) in each coordinate.
struct UnitSquarePoint {
    Rational x;
    Rational y;
    double truncation_bound = 0.0;

    double x_value() const { return static_cast<double>(x); }
    double y_value() const { return static_cast<double>(y); }
};

inline AnglePair hk_point(const CubicCurveParams& curve, Prime p)
{
    require(p.is_odd(), "hk_point: p = 2 is excluded");
    require(reduce(curve.c, p) != 0 && reduce(curve.d, p) != 0,
            "hk_point: p = " + std::to_string(p.value()) + " divides c*d");
    // Linear-time tables; per-element modular exponentiation dominates
    // long prime scans otherwise.
    const FieldTables tables(p);
    const TraceResult trace = trace_ap(curve, tables);
    if (trace.affine_count != affine_point_count(curve, p)) {
        throw numeric_error("hk_point: character sum disagrees with the point count at p = " +
                            std::to_string(p.value()));
    }
    const KloostermanValue sum = kloosterman_sum(curve.c, curve.d, tables, UnitRoots(p));
    return {weil_angle(static_cast<double>(trace.a_p), p), weil_angle(sum.real_part, p), p.value(), curve.c,
            curve.d, trace.a_p, sum.real_part};
}

/// HK map on every (c, d) in [1, p-1]^2, lexicographic order.
inline std::vector<AnglePair> hk_functional_scan(Prime p, unsigned workers = 1)
{
    require(p.is_odd(), "hk_functional_scan: " + std::to_string(p.value()) + " is not an odd prime");
    const FieldTables tables(p);
    const UnitRoots roots(p);
    const std::int64_t m = p.value();
    auto rows = parallel_map(static_cast<std::size_t>(m - 1), workers, [&](std::size_t row) {
        const std::int64_t c = static_cast<std::int64_t>(row) + 1;
        std::vector<AnglePair> out;
        out.reserve(static_cast<std::size_t>(m - 1));
        for (std::int64_t d = 1; d < m; ++d) {
            const CubicCurveParams curve(c, d);
            const TraceResult trace = trace_ap(curve, tables);
            const KloostermanValue sum = kloosterman_sum(c, d, tables, roots);
            out.push_back({weil_angle(static_cast<double>(trace.a_p), p), weil_angle(sum.real_part, p), m, c, d,
                           trace.a_p, sum.real_part});
        }
        return out;
    });
    std::vector<AnglePair> flat;
    flat.reserve(static_cast<std::size_t>((m - 1) * (m - 1)));
    for (auto& row : rows) {
        flat.insert(flat.end(), row.begin(), row.end());
    }
    return flat;
}

/// HK map of one integral curve at every odd prime p <= p_max with p not
/// dividing cd, ascending in p.
inline std::vector<AnglePair> hk_arithmetic_scan(std::int64_t c, std::int64_t d, std::int64_t p_max,
                                                 unsigned workers = 1)
{
    require(c != 0 && d != 0, "hk_arithmetic_scan: c and d must be nonzero");
    require(p_max <= static_cast<std::int64_t>(max_field_prime), "hk_arithmetic_scan: p_max exceeds 2^31-1");
    const CubicCurveParams curve(c, d);
    std::vector<std::int64_t> primes;
    if (p_max >= 3) {
        for (std::int64_t q : primes_in_range(3, p_max)) {
            if (c % q != 0 && d % q != 0) {
                primes.push_back(q);
            }
        }
    }
    return parallel_map(primes.size(), workers,
                        [&](std::size_t i) { return hk_point(curve, Prime(primes[i])); });
}

/// One a-digit (phi via the horizontal partition) and one b-digit (theta
/// via the vertical partition) per pair, in input order.
inline DigitSequence encode_stream(const std::vector<AnglePair>& pairs, const PartitionPair& partitions,
                                   bool finite = true)
{
    require(!finite || !pairs.empty(), "encode_stream: a finite code needs at least one pair");
    DigitSequence out;
    out.base = partitions.cardinality();
    out.finite = finite;
    out.a_digits.reserve(pairs.size());
    out.b_digits.reserve(pairs.size());
    for (const AnglePair& pair : pairs) {
        out.a_digits.push_back(partitions.horizontal.label(pair.phi));
        out.b_digits.push_back(partitions.vertical.label(pair.theta));
    }
    return out;
}

inline UnitSquarePoint digits_to_point(const DigitSequence& seq)
{
    require(seq.base >= 2, "digit base must be at least 2");
    const auto accumulate = [&](const std::vector<int>& digits) {
        // Horner from the least significant digit keeps everything exact.
        Rational value = 0;
        for (auto it = digits.rbegin(); it != digits.rend(); ++it) {
            require(*it >= 0 && *it < seq.base, "digit outside [0, base-1]");
            value = (value + *it) / seq.base;
        }
        return value;
    };
    UnitSquarePoint out{accumulate(seq.a_digits), accumulate(seq.b_digits), 0.0};
    if (!seq.finite) {
        const std::size_t r = std::min(seq.a_digits.size(), seq.b_digits.size());
        out.truncation_bound = std::pow(static_cast<double>(seq.base), -static_cast<double>(r));
    }
    return out;
}

}  // namespace hkdyn
