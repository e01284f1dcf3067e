#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "hkdyn/beta.hpp"
#include "oracles.hpp"

namespace hkdyn {
namespace {

const real_ext golden = golden_ratio;

TEST(BetaMapStep, SpecExamples)
{
    EXPECT_EQ(beta_map_step(0.75L, 2), 0.5L);
    EXPECT_EQ(beta_map_step(0, golden), 0);
    EXPECT_NEAR(static_cast<double>(beta_map_step(1, 1.6180339887L)), 0.6180339887, 1e-10);
    EXPECT_NEAR(static_cast<double>(beta_map_step(1, golden)), static_cast<double>(golden - 1), 1e-18);
    EXPECT_THROW(beta_map_step(0.5L, 1), precondition_error);
    EXPECT_THROW(beta_map_step(1.5L, 2), precondition_error);
}

TEST(BetaExpansion, SpecExamples)
{
    EXPECT_EQ(beta_expansion(1, golden, 5).digits, (std::vector<int>{1, 1, 0, 0, 0}));
    EXPECT_TRUE(beta_expansion(1, golden, 5).terminates);
    EXPECT_EQ(beta_expansion(0.5L, 2, 3).digits, (std::vector<int>{1, 0, 0}));
    EXPECT_EQ(beta_expansion(1, 1.5L, 5).digits, (std::vector<int>{1, 0, 1, 0, 0}));
    EXPECT_THROW(beta_expansion(0.5L, 2, 0), precondition_error);
}

TEST(BetaExpansion, ValuationBoundAndDigitRange)
{
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (real_ext beta : {1.5L, golden, 2.0L, 2.5L, 3.7L}) {
        for (int i = 0; i < 100; ++i) {
            const real_ext x = unit(rng);
            const auto e = beta_expansion(x, beta, 30);
            const real_ext err = oracle::valuation_error(x, e.digits, beta);
            ASSERT_GE(err, 0.0L);
            ASSERT_LE(err, std::pow(beta, -30.0L));
            for (int digit : e.digits) {
                ASSERT_GE(digit, 0);
                ASSERT_LE(digit, max_digit(beta));
            }
            ASSERT_EQ(is_admissible(e.digits, beta), Admissibility::admissible);
        }
    }
}

TEST(QuasiGreedy, FiniteAndInfiniteExpansionsOfOne)
{
    EXPECT_EQ(quasi_greedy_one(golden, 6), (std::vector<int>{1, 0, 1, 0, 1, 0}));
    EXPECT_EQ(quasi_greedy_one(2, 4), (std::vector<int>{1, 1, 1, 1}));
    // beta = 1.5: d(1) = 1 0 1 0 0 ... never terminates
    const auto q = quasi_greedy_one(1.5L, 5);
    EXPECT_EQ(q, (std::vector<int>{1, 0, 1, 0, 0}));
}

TEST(IsAdmissible, SpecExamples)
{
    EXPECT_EQ(is_admissible({0, 0, 0, 0, 0}, golden), Admissibility::admissible);
    EXPECT_EQ(is_admissible({0, 0, 0}, 2.5L), Admissibility::admissible);
    EXPECT_EQ(is_admissible({1, 1, 1}, golden), Admissibility::not_admissible);
    EXPECT_EQ(is_admissible({1, 0, 1, 0}, golden), Admissibility::admissible);
    EXPECT_EQ(is_admissible({0, 1, 1}, golden), Admissibility::not_admissible);
}

TEST(IsAdmissible, ExpansionOfOneIsAccepted)
{
    EXPECT_EQ(is_admissible(beta_expansion(1, golden, 8).digits, golden), Admissibility::admissible);
    EXPECT_EQ(is_admissible(beta_expansion(1, 2, 8).digits, 2), Admissibility::admissible);
}

TEST(IsAdmissible, InconclusiveBeyondHorizon)
{
    std::vector<int> alternating;
    for (int i = 0; i < 12; ++i) {
        alternating.push_back(i % 2 == 0 ? 0 : 1);
    }
    EXPECT_EQ(is_admissible(alternating, golden, 64), Admissibility::admissible);
    EXPECT_EQ(is_admissible(alternating, golden, 4), Admissibility::inconclusive);
    EXPECT_THROW(is_admissible({3}, golden), precondition_error);
}

TEST(NaturalExtension, StepSpecExamples)
{
    auto p = natural_extension_step({0.75L, 0}, 2);
    EXPECT_EQ(p.x, 0.5L);
    EXPECT_EQ(p.y, 0.5L);
    p = natural_extension_step({0, 0}, golden);
    EXPECT_EQ(p.x, 0);
    EXPECT_EQ(p.y, 0);
    p = natural_extension_step({0.5L, 0}, golden);
    EXPECT_NEAR(static_cast<double>(p.x), 0.80902, 1e-5);
    EXPECT_EQ(p.y, 0);
    EXPECT_THROW(natural_extension_step({0.5L, 1.5L}, golden), precondition_error);
    EXPECT_THROW(natural_extension_step({0.5L, 0.5L}, 0.9L), precondition_error);
}

TEST(NaturalExtension, EmptyOrbit)
{
    EXPECT_TRUE(natural_extension_orbit({0.3L, 0.2L}, golden, 0, 10).empty());
}

TEST(NaturalExtension, GoldenOrbitAvoidsTopRightSquare)
{
    const auto orbit = natural_extension_orbit({0.3L, 0.2L}, golden, 100000, 1000, 5);
    const real_ext g = 1 / golden;
    for (const auto& pt : orbit) {
        ASSERT_FALSE(pt.x >= g && pt.y >= g);
    }
}

// Lebesgue measure of [x0,x1) x [y0,y1) inside the golden-mean domain
// [0,1) x [0,g) union [0,g) x [g,1), g = 1/beta.
double golden_domain_area(double x0, double x1, double y0, double y1)
{
    const double g = static_cast<double>(1 / golden);
    const auto overlap = [](double a0, double a1, double b0, double b1) {
        return std::max(0.0, std::min(a1, b1) - std::max(a0, b0));
    };
    return overlap(x0, x1, 0, 1) * overlap(y0, y1, 0, g) + overlap(x0, x1, 0, g) * overlap(y0, y1, g, 1);
}

TEST(NaturalExtension, OrbitDensityIsNormalizedLebesgue)
{
    constexpr int grid = 8;
    for (real_ext beta : {2.0L, golden}) {
        const auto orbit = natural_extension_orbit({0.3L, 0.2L}, beta, 400000, 1000, 17);
        const auto report = invariance_check(orbit, beta, grid);
        const double total_area = beta == 2.0L ? 1.0 : golden_domain_area(0, 1, 0, 1);
        for (int j = 0; j < grid; ++j) {
            for (int i = 0; i < grid; ++i) {
                const double x0 = static_cast<double>(i) / grid, y0 = static_cast<double>(j) / grid;
                const double area =
                    beta == 2.0L ? 1.0 / (grid * grid) : golden_domain_area(x0, x0 + 1.0 / grid, y0, y0 + 1.0 / grid);
                const double expected = area / total_area;
                const double observed = report.original_mass[static_cast<std::size_t>(j * grid + i)];
                ASSERT_NEAR(observed, expected, 0.1 * (1.0 / (grid * grid)) + 1e-12)
                    << "beta=" << static_cast<double>(beta) << " cell " << i << "," << j;
            }
        }
    }
}

TEST(NaturalExtension, EmpiricalMeasureIsInvariant)
{
    for (real_ext beta : {2.0L, golden}) {
        const auto orbit = natural_extension_orbit({0.1L, 0.7L}, beta, 200000, 1000, 3);
        const auto report = invariance_check(orbit, beta, 16);
        EXPECT_TRUE(report.within_three_se) << "max z " << report.max_z;
    }
}

}  // namespace
}  // namespace hkdyn

namespace hkdyn {
namespace {

TEST(NaturalExtensionOrbit, EscapesDegenerateSeedAtIntegerBeta)
{
    // x = 1 maps to 0 exactly for beta = 2; the orbit must still spread out.
    const auto orbit = natural_extension_orbit({1, 0}, 2.0L, 20000, 1000, 3);
    long double sum = 0;
    for (const auto& pt : orbit) {
        sum += pt.x;
    }
    EXPECT_NEAR(static_cast<double>(sum / orbit.size()), 0.5, 0.02);
}

}  // namespace
}  // namespace hkdyn
