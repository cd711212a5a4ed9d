#include "shellsort_lab/psi.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <stdexcept>

#include "oracles.hpp"
#include "shellsort_lab/reference_tables.hpp"

using namespace shellsort_lab;

TEST(PsiExact, SmallHandValues) {
    // g = 2: one term, E|Bin(4, 1/2) - 2| = (2 + 4 + 0 + 4 + 2) / 16.
    EXPECT_DOUBLE_EQ(psi_exact(5, 2).exact, 0.375);
    // h = 1 leaves nothing to count: Z is 0 and floor(d/g) is 0.
    EXPECT_DOUBLE_EQ(psi_exact(1, 7).exact, 0.0);
    EXPECT_DOUBLE_EQ(psi_exact(9, 1).exact, 0.0);
}

TEST(PsiExact, MatchesBruteForceSum) {
    for (std::int64_t g = 2; g <= 12; ++g) {
        for (std::int64_t h = 1; h <= 60; h += 1 + h / 10) {
            if (std::gcd(h, g) != 1) continue;
            const double expected = static_cast<double>(oracle::psi(h, g));
            EXPECT_NEAR(psi_exact(h, g).exact, expected, 1e-11 * std::max(1.0, expected)) << h << "," << g;
        }
    }
    for (auto [h, g] : {std::pair{901, 30}, {1601, 40}, {401, 20}, {1000, 7}}) {
        const double expected = static_cast<double>(oracle::psi(h, g));
        EXPECT_NEAR(psi_exact(h, g).exact, expected, 1e-9 * expected) << h << "," << g;
    }
}

TEST(PsiExact, TermsSumToTotal) {
    const PsiValue v = psi_exact(101, 10, true);
    ASSERT_EQ(v.terms.size(), 9u);
    EXPECT_NEAR(std::accumulate(v.terms.begin(), v.terms.end(), 0.0), v.exact, 1e-12 * v.exact);
    for (std::size_t d = 1; d <= 9; ++d) {
        const double term = static_cast<double>(
            oracle::abs_deviation(100, static_cast<long double>(d) / 10, static_cast<long double>(101 * d / 10)) / 2);
        EXPECT_NEAR(v.terms[d - 1], term, 1e-12);
    }
    EXPECT_TRUE(psi_exact(101, 10).terms.empty());
}

TEST(PsiExact, RejectsBadArguments) {
    EXPECT_THROW(psi_exact(4, 2), std::invalid_argument);
    EXPECT_THROW(psi_exact(0, 3), std::invalid_argument);
    EXPECT_THROW(psi_exact(5, 0), std::invalid_argument);
    EXPECT_THROW(psi_pairwise(6, 4), std::invalid_argument);
    EXPECT_THROW(psi_via_expectation(6, 4), std::invalid_argument);
}

TEST(PsiExact, PublishedLargeRows) {
    for (const auto& row : reference::psi_rows) {
        const PsiValue v = psi_exact(row.h, row.g);
        EXPECT_NEAR(v.exact, row.psi, 1e-3) << row.g;
        EXPECT_NEAR(v.asymptotic, row.asymptotic, 1e-3) << row.g;
        EXPECT_NEAR((v.asymptotic - v.exact) / std::sqrt(static_cast<double>(row.g)), row.difference_over_sqrt_g, 5e-4);
    }
}

TEST(PsiExact, PublishedPsiTimesN) {
    for (const auto& row : reference::third_pass_rows) {
        if (row.g < 2 || row.g > 10) continue;
        const std::int64_t h = row.g * row.g + 1;
        const double n = static_cast<double>(row.g * row.g * h);
        const double computed = psi_exact(h, row.g).exact * n;
        EXPECT_NEAR(computed, row.psi_n, 5e-3 * row.psi_n) << row.g;
    }
}

TEST(PsiAsymptotic, Formula) {
    EXPECT_DOUBLE_EQ(psi_asymptotic(128, 3), 3.0 * std::sqrt(std::numbers::pi));
    // Relative gap shrinks along h = g^2 + 1.
    double previous = 1.0;
    for (std::int64_t g = 4; g <= 64; g *= 2) {
        const PsiValue v = psi_exact(g * g + 1, g);
        const double rel = (v.asymptotic - v.exact) / v.exact;
        EXPECT_GT(rel, 0.0);
        EXPECT_LT(rel, previous);
        previous = rel;
    }
}

TEST(PsiAlternatives, PairwiseAndExpectationAgree) {
    for (std::int64_t g = 1; g <= 15; ++g) {
        for (std::int64_t h = 1; h <= 240; h += 7) {
            if (std::gcd(h, g) != 1) continue;
            const double exact = psi_exact(h, g).exact;
            const double tol = 1e-10 * std::max(1.0, exact);
            EXPECT_NEAR(psi_pairwise(h, g), exact, tol) << h << "," << g;
            EXPECT_NEAR(psi_via_expectation(h, g), exact, tol) << h << "," << g;
        }
    }
}

TEST(MeanAbsDev, HandValues) {
    EXPECT_DOUBLE_EQ(mean_abs_dev_binomial(4, {1, 2}, 2.0), 0.75);
    for (double a : {0.0, 0.25, 0.5, 1.0}) EXPECT_DOUBLE_EQ(mean_abs_dev_binomial(1, {1, 2}, a), 0.5);
    // Bin(2, 1/3): outcomes 0, 1, 2 with weights 4, 4, 1 over 9; |z - 2/3|.
    EXPECT_NEAR(mean_abs_dev_binomial(2, {1, 3}, 2.0 / 3.0), (4 * 2.0 / 3 + 4 * 1.0 / 3 + 4.0 / 3) / 9, 1e-15);
}

TEST(MeanAbsDev, WindowAndProbabilityChecks) {
    EXPECT_THROW(mean_abs_dev_binomial(4, {1, 2}, 2.5), std::invalid_argument);
    EXPECT_THROW(mean_abs_dev_binomial(4, {1, 3}, 0.9), std::invalid_argument);
    EXPECT_NO_THROW(mean_abs_dev_binomial(4, {1, 3}, 1.0));
    EXPECT_NO_THROW(mean_abs_dev_binomial(4, {1, 3}, 2.0));
    EXPECT_THROW(mean_abs_dev_binomial(4, {0, 3}, 0.0), std::invalid_argument);
    EXPECT_THROW(mean_abs_dev_binomial(4, {3, 3}, 4.0), std::invalid_argument);
    EXPECT_THROW(mean_abs_dev_binomial(4, {1, 0}, 0.0), std::invalid_argument);
}

TEST(MeanAbsDev, RandomTriplesMatchFullSum) {
    std::mt19937_64 gen(31);
    std::uniform_int_distribution<std::int64_t> mdist(1, 600);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int iter = 0; iter < 500; ++iter) {
        const std::int64_t m = mdist(gen);
        const std::int64_t den = 2 + static_cast<std::int64_t>(unit(gen) * 60);
        const std::int64_t num = 1 + static_cast<std::int64_t>(unit(gen) * static_cast<double>(den - 1));
        const std::int64_t lo = (m * num) / den;
        const std::int64_t hi = (m * num + den - 1) / den;
        const double a = static_cast<double>(lo) + unit(gen) * static_cast<double>(hi - lo);
        const long double p = static_cast<long double>(num) / den;
        const double expected = static_cast<double>(oracle::abs_deviation(m, p, a));
        ASSERT_NEAR(mean_abs_dev_binomial(m, {num, den}, a), expected, 1e-10) << m << " " << num << "/" << den;
    }
}

TEST(MeanAbsDev, OutsideWindowUsesFullSum) {
    for (double a : {-3.0, 0.0, 7.5, 40.0}) {
        const double expected = static_cast<double>(oracle::abs_deviation(30, 1.0L / 3, a));
        EXPECT_NEAR(binomial_abs_deviation(30, {1, 3}, a), expected, 1e-12);
    }
}

TEST(MeanAbsDev, NormalApproximationBand) {
    std::mt19937_64 gen(32);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int iter = 0; iter < 200; ++iter) {
        const std::int64_t m = 100 + static_cast<std::int64_t>(unit(gen) * 400);
        const std::int64_t den = 97;
        const std::int64_t num = 5 + static_cast<std::int64_t>(unit(gen) * 87);
        const double p = static_cast<double>(num) / den;
        const double a = static_cast<double>((m * num) / den);
        const double gap = std::fabs(mean_abs_dev_binomial(m, {num, den}, a) - binomial_abs_deviation_asymptotic(m, p));
        ASSERT_LE(gap, 1.0 / std::sqrt(static_cast<double>(m) * p * (1 - p)));
    }
}

TEST(PhiBound, Values) {
    const double half = 2 * (std::exp(-2.0) + std::exp(-8.0) + std::exp(-18.0) + std::exp(-32.0));
    EXPECT_NEAR(phi_bound(10, 100, 0.5), half, 1e-15);
    EXPECT_NEAR(phi_bound(10, 100, 0.5), 0.27134, 1e-5);
    EXPECT_DOUBLE_EQ(phi_bound(7, 50, 0.0), 7.0);
    EXPECT_DOUBLE_EQ(phi_bound(7, 50, 1.0), 7.0);
    EXPECT_NEAR(phi_bound(5, 40, 0.2), phi_bound(5, 40, 0.8), 1e-15);
    // More trials give a tighter bound.
    EXPECT_LT(phi_bound(5, 80, 0.3), phi_bound(5, 40, 0.3));
}

TEST(Uniformity, DistributionMatchesBinomialFold) {
    for (auto [m, t, g] : {std::tuple{17, 0.3, 4}, {60, 0.5, 7}, {1, 0.9, 2}, {200, 0.1, 6}}) {
        const UniformityCheck check = mod_uniformity_check(m, t, g);
        ASSERT_EQ(check.distribution.size(), static_cast<std::size_t>(g));
        std::vector<long double> expected(static_cast<std::size_t>(g), 0.0L);
        for (std::int64_t z = 0; z <= m; ++z) expected[static_cast<std::size_t>(z % g)] += oracle::binomial_pmf(m, t, z);
        double max_dev = 0.0;
        for (std::size_t j = 0; j < expected.size(); ++j) {
            EXPECT_NEAR(check.distribution[j], static_cast<double>(expected[j]), 1e-13);
            max_dev = std::max(max_dev, std::fabs(static_cast<double>(expected[j]) - 1.0 / g));
        }
        EXPECT_NEAR(check.max_deviation, max_dev, 1e-13);
        EXPECT_DOUBLE_EQ(check.bound, phi_bound(g, m, t) / g);
    }
}

TEST(Uniformity, DeviationKeepsRelativeAccuracy) {
    // g = 2: Pr[even] - 1/2 = (1 - 2t)^m / 2.
    for (std::int64_t m : {5, 90, 200, 1000}) {
        const double expected = std::pow(0.4, static_cast<double>(m)) / 2;
        EXPECT_NEAR(mod_uniformity_check(m, 0.3, 2).max_deviation, expected, 1e-12 * expected) << m;
    }
    EXPECT_NEAR(mod_uniformity_check(1, 0.5, 2).max_deviation, 0.0, 1e-30);
    EXPECT_TRUE(mod_uniformity_check(1, 0.5, 2).holds);
}

TEST(Uniformity, BoundHoldsOnGrid) {
    for (std::int64_t m = 1; m <= 200; ++m) {
        for (std::int64_t g = 2; g <= 7; ++g) {
            for (int tenth = 1; tenth <= 9; ++tenth) {
                const UniformityCheck check = mod_uniformity_check(m, tenth / 10.0, g);
                ASSERT_TRUE(check.holds) << m << " " << g << " " << tenth;
            }
        }
    }
}

TEST(Coupling, HandExample) {
    const std::vector<double> p{0.5, 0.5};
    const std::vector<double> q{1.0, 0.0};
    const CouplingMatrix c = maximal_coupling(p, q);
    EXPECT_DOUBLE_EQ(c(0, 0), 0.5);
    EXPECT_DOUBLE_EQ(c(1, 0), 0.5);
    EXPECT_DOUBLE_EQ(c(0, 1), 0.0);
    EXPECT_DOUBLE_EQ(c(1, 1), 0.0);
    EXPECT_DOUBLE_EQ(c.off_diagonal_mass(), 0.5);
    EXPECT_DOUBLE_EQ(c.total_variation(), 0.5);
}

TEST(Coupling, EdgeCases) {
    const std::vector<double> one{1.0};
    EXPECT_DOUBLE_EQ(maximal_coupling(one, one)(0, 0), 1.0);

    const std::vector<double> u{0.25, 0.25, 0.25, 0.25};
    const CouplingMatrix same = maximal_coupling(u, u);
    EXPECT_EQ(same.off_diagonal_mass(), 0.0);

    const std::vector<double> a{1.0, 0.0, 0.0};
    const std::vector<double> b{0.0, 0.0, 1.0};
    const CouplingMatrix disjoint = maximal_coupling(a, b);
    EXPECT_DOUBLE_EQ(disjoint(0, 2), 1.0);
    EXPECT_DOUBLE_EQ(disjoint.off_diagonal_mass(), 1.0);
}

TEST(Coupling, RejectsInvalidInput) {
    const std::vector<double> good{0.5, 0.5};
    EXPECT_THROW(maximal_coupling(good, std::vector<double>{1.0}), std::invalid_argument);
    EXPECT_THROW(maximal_coupling(good, std::vector<double>{1.5, -0.5}), std::invalid_argument);
    EXPECT_THROW(maximal_coupling(good, std::vector<double>{0.5, 0.6}), std::invalid_argument);
    EXPECT_THROW(maximal_coupling(std::vector<double>{}, std::vector<double>{}), std::invalid_argument);
}

TEST(Coupling, RandomPairsAreMaximal) {
    std::mt19937_64 gen(33);
    for (int iter = 0; iter < 1000; ++iter) {
        const std::size_t m = 1 + iter % 12;
        const auto p = oracle::random_distribution(gen, m, iter % 3 == 0);
        const auto q = oracle::random_distribution(gen, m, iter % 5 == 0);
        const CouplingMatrix c = maximal_coupling(p, q);
        double tv = 0.0;
        for (std::size_t j = 0; j < m; ++j) tv += std::fabs(p[j] - q[j]) / 2;
        for (std::size_t i = 0; i < m; ++i) {
            ASSERT_NEAR(c.row_sum(i), p[i], 1e-12);
            ASSERT_NEAR(c.column_sum(i), q[i], 1e-12);
            ASSERT_DOUBLE_EQ(c(i, i), std::min(p[i], q[i]));
            for (std::size_t j = 0; j < m; ++j) ASSERT_GE(c(i, j), 0.0);
        }
        ASSERT_NEAR(c.off_diagonal_mass(), tv, 1e-12);
        ASSERT_NEAR(c.total_variation(), tv, 1e-12);
    }
}
