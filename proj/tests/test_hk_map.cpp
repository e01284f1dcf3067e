#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <numbers>
#include <random>

#include "hkdyn/hk_map.hpp"

namespace hkdyn {
namespace {

constexpr double pi = std::numbers::pi;

TEST(HkPoint, SpecExamples)
{
    const auto a = hk_point({1, 1}, Prime(5));
    EXPECT_NEAR(a.phi, 2.3061, 1e-4);
    EXPECT_NEAR(a.theta, 1.4853, 1e-4);
    EXPECT_EQ(a.a_p, -3);

    const auto b = hk_point({1, 1}, Prime(3));
    EXPECT_EQ(b.a_p, 0);
    EXPECT_DOUBLE_EQ(b.phi, pi / 2);
    EXPECT_NEAR(b.theta, std::acos(-1.0 / (2.0 * std::sqrt(3.0))), 1e-12);
    EXPECT_NEAR(b.theta, 1.86364, 1e-5);
}

TEST(HkPoint, RejectsBadInputs)
{
    EXPECT_THROW(hk_point({5, 1}, Prime(5)), precondition_error);
    EXPECT_THROW(hk_point({1, 10}, Prime(5)), precondition_error);
    EXPECT_THROW(hk_point({1, 1}, Prime(2)), precondition_error);
}

TEST(HkFunctionalScan, SizesAndOrder)
{
    EXPECT_EQ(hk_functional_scan(Prime(5)).size(), 16U);
    const auto three = hk_functional_scan(Prime(3));
    ASSERT_EQ(three.size(), 4U);
    EXPECT_EQ(three[0], hk_point({1, 1}, Prime(3)));
    EXPECT_EQ(three[1].c, 1);
    EXPECT_EQ(three[1].d, 2);
    EXPECT_EQ(three[2].c, 2);
    EXPECT_EQ(three[2].d, 1);
    for (const auto& pair : hk_functional_scan(Prime(7))) {
        EXPECT_GE(pair.theta, 0.0);
        EXPECT_LE(pair.theta, pi);
    }
    EXPECT_THROW(hk_functional_scan(Prime(2)), precondition_error);
}

TEST(HkFunctionalScan, TotalOnSmallPrimesAndMatchesPointwise)
{
    for (auto p : primes_in_range(3, 100)) {
        const auto scan = hk_functional_scan(Prime(p), 3);
        ASSERT_EQ(scan.size(), static_cast<std::size_t>((p - 1) * (p - 1)));
        if (p < 30) {
            for (const auto& pair : scan) {
                const auto direct = hk_point({pair.c, pair.d}, Prime(p));
                ASSERT_EQ(pair.a_p, direct.a_p);
                ASSERT_NEAR(pair.theta, direct.theta, 1e-9);
            }
        }
    }
}

TEST(HkFunctionalScan, IndependentOfWorkerCount)
{
    const auto one = hk_functional_scan(Prime(53), 1);
    const auto eight = hk_functional_scan(Prime(53), 8);
    ASSERT_EQ(one.size(), eight.size());
    for (std::size_t i = 0; i < one.size(); ++i) {
        // Bit equality, not tolerance.
        ASSERT_EQ(std::memcmp(&one[i].phi, &eight[i].phi, sizeof(double)), 0);
        ASSERT_EQ(std::memcmp(&one[i].theta, &eight[i].theta, sizeof(double)), 0);
        ASSERT_EQ(one[i], eight[i]);
    }
}

TEST(HkArithmeticScan, SpecExamples)
{
    const auto primes_of = [](const std::vector<AnglePair>& v) {
        std::vector<std::int64_t> out;
        for (const auto& a : v) {
            out.push_back(a.p);
        }
        return out;
    };
    EXPECT_EQ(primes_of(hk_arithmetic_scan(1, 1, 10)), (std::vector<std::int64_t>{3, 5, 7}));
    EXPECT_EQ(primes_of(hk_arithmetic_scan(6, 1, 10)), (std::vector<std::int64_t>{5, 7}));
    EXPECT_TRUE(hk_arithmetic_scan(1, 1, 2).empty());
    EXPECT_THROW(hk_arithmetic_scan(0, 1, 10), precondition_error);
    EXPECT_THROW(hk_arithmetic_scan(1, 0, 10), precondition_error);
}

TEST(HkArithmeticScan, ReducesCoefficientsPerPrime)
{
    const auto scan = hk_arithmetic_scan(-7, 12, 60, 4);
    for (const auto& pair : scan) {
        const auto ref = hk_point({reduce(-7, Prime(pair.p)), reduce(12, Prime(pair.p))}, Prime(pair.p));
        EXPECT_EQ(pair.a_p, ref.a_p);
        EXPECT_EQ(pair.phi, ref.phi);
        EXPECT_NEAR(pair.theta, ref.theta, 1e-12);
        EXPECT_NE(pair.p, 2);
        EXPECT_NE(pair.p, 3);
        EXPECT_NE(pair.p, 7);
    }
}

TEST(Partition, Validation)
{
    EXPECT_THROW(Partition::uniform(1), precondition_error);
    EXPECT_THROW(Partition(std::vector<double>{1.0, 0.5}), precondition_error);
    EXPECT_THROW(Partition(std::vector<double>{0.0}), precondition_error);
    EXPECT_THROW(Partition(std::vector<double>{pi}), precondition_error);
    EXPECT_THROW(PartitionPair(Partition::uniform(2), Partition::uniform(3)), precondition_error);
    const Partition p(std::vector<double>{0.5, 2.0});
    EXPECT_EQ(p.cells(), 3);
    EXPECT_EQ(p.label(0.0), 0);
    EXPECT_EQ(p.label(0.5), 1);
    EXPECT_EQ(p.label(pi), 2);
    EXPECT_THROW(p.label(-0.1), precondition_error);
    EXPECT_EQ(p.boundaries(), (std::vector<double>{0.0, 0.5, 2.0, pi}));
}

AnglePair angles(double phi, double theta)
{
    AnglePair a;
    a.phi = phi;
    a.theta = theta;
    return a;
}

TEST(EncodeStream, SpecExamples)
{
    const auto two = PartitionPair::uniform(2);
    auto seq = encode_stream({angles(2.3061, 1.4853)}, two);
    EXPECT_EQ(seq.a_digits, std::vector<int>{1});
    EXPECT_EQ(seq.b_digits, std::vector<int>{0});
    EXPECT_EQ(seq.base, 2);

    seq = encode_stream({angles(pi / 2, pi / 2)}, two);
    EXPECT_EQ(seq.a_digits, std::vector<int>{1});
    EXPECT_EQ(seq.b_digits, std::vector<int>{1});

    seq = encode_stream({angles(0.1, 3.0), angles(0.0, 2.0), angles(1.5, 0.0)}, two);
    EXPECT_EQ(seq.a_digits, (std::vector<int>{0, 0, 0}));

    EXPECT_THROW(encode_stream({}, two), precondition_error);
    EXPECT_NO_THROW(encode_stream({}, two, false));
}

TEST(DigitsToPoint, SpecExamples)
{
    auto pt = digits_to_point({{1}, {0}, 2, true});
    EXPECT_EQ(pt.x, Rational(1, 2));
    EXPECT_EQ(pt.y, Rational(0));
    EXPECT_EQ(pt.truncation_bound, 0.0);

    pt = digits_to_point({{0, 1}, {1, 1}, 2, true});
    EXPECT_EQ(pt.x, Rational(1, 4));
    EXPECT_EQ(pt.y, Rational(3, 4));

    for (int r : {1, 5, 20, 60}) {
        const DigitSequence s{std::vector<int>(static_cast<std::size_t>(r), 2), std::vector<int>(static_cast<std::size_t>(r), 0), 3,
                              false};
        pt = digits_to_point(s);
        const Rational gap = 1 - pt.x;
        EXPECT_EQ(gap, Rational(1) / boost::multiprecision::pow(BigInt(3), static_cast<unsigned>(r)));
        EXPECT_NEAR(pt.truncation_bound, std::pow(3.0, -r), 1e-300);
    }
    EXPECT_THROW(digits_to_point({{3}, {0}, 3, true}), precondition_error);
}

TEST(Coding, CellRoundTripAndUnitSquare)
{
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> angle(0.0, pi);
    for (int d : {2, 3, 5, 8}) {
        const auto parts = PartitionPair::uniform(d);
        std::vector<AnglePair> pairs;
        for (int i = 0; i < 500; ++i) {
            pairs.push_back(angles(angle(rng), angle(rng)));
        }
        const auto seq = encode_stream(pairs, parts);
        for (std::size_t i = 0; i < pairs.size(); ++i) {
            const int a = seq.a_digits[i];
            const int b = seq.b_digits[i];
            ASSERT_EQ(parts.horizontal.label(parts.horizontal.midpoint(a)), a);
            ASSERT_EQ(parts.vertical.label(parts.vertical.midpoint(b)), b);
        }
        const auto pt = digits_to_point(seq);
        EXPECT_GE(pt.x, 0);
        EXPECT_LE(pt.x, 1);
        EXPECT_GE(pt.y, 0);
        EXPECT_LE(pt.y, 1);
    }
}

TEST(Coding, UniformRefinementIsMonotone)
{
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> angle(0.0, pi);
    const auto two = Partition::uniform(2);
    const auto four = Partition::uniform(4);
    for (int i = 0; i < 10000; ++i) {
        const double t = angle(rng);
        ASSERT_EQ(two.label(t), four.label(t) / 2) << t;
    }
    for (const auto& pair : hk_functional_scan(Prime(31))) {
        ASSERT_EQ(two.label(pair.theta), four.label(pair.theta) / 2);
        ASSERT_EQ(two.label(pair.phi), four.label(pair.phi) / 2);
    }
}

}  // namespace
}  // namespace hkdyn
