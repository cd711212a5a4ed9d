#pragma once

// Published reference values for the table suites.

#include <array>
#include <cstdint>
#include <optional>

namespace shellsort_lab::reference {

struct PsiRow {
    std::int64_t h;
    std::int64_t g;
    double psi;
    double asymptotic;
    double difference_over_sqrt_g;
};

/// psi(h, g) and sqrt(pi h / 128) g for h = g^2 + 1, three decimals.
inline constexpr std::array<PsiRow, 3> psi_rows{{
    {901, 30, 140.018, 141.076, 0.1933},
    {1601, 40, 249.539, 250.741, 0.1900},
    {2501, 50, 390.412, 391.739, 0.1877},
}};

struct ThirdPassRow {
    std::int64_t g;
    double mean;           // empirical mean of remaining inversions
    double sigma;          // empirical standard deviation
    std::uint64_t trials;  // r
    double psi_n;          // psi(h, g) n, three significant figures
};

/// (h, g, 1)-shellsort with h = g^2 + 1 and n = g^4 + g^2; mean and sigma
/// to three significant figures. r is 10000 for g <= 10, 1024 for
/// 11 <= g <= 19 and 100 for g >= 20.
inline constexpr std::array<ThirdPassRow, 32> third_pass_rows{{
    {1, 0.0, 0.0, 10000, 0.0},
    {2, 7.12, 2.09, 10000, 7.5},
    {3, 94.4, 13.6, 10000, 98.3},
    {4, 563, 59.1, 10000, 581},
    {5, 2210, 195, 10000, 2280},
    {6, 6740, 560, 10000, 6910},
    {7, 17200, 1300, 10000, 17600},
    {8, 38600, 2820, 10000, 39500},
    {9, 78900, 5670, 10000, 80600},
    {10, 149000, 10600, 10000, 152000},
    {11, 265000, 17200, 1024, 271000},
    {12, 447000, 30300, 1024, 458000},
    {13, 727000, 49300, 1024, 742000},
    {14, 1140000, 75400, 1024, 1160000},
    {15, 1730000, 116000, 1024, 1760000},
    {16, 2530000, 166000, 1024, 2590000},
    {17, 3.66e6, 2.36e5, 1024, 3.73e6},
    {18, 5.17e6, 3.35e5, 1024, 5.26e6},
    {19, 7.15e6, 4.81e5, 1024, 7.29e6},
    {20, 9.73e6, 6.14e5, 100, 9.92e6},
    {21, 1.30e7, 8.93e5, 100, 1.33e7},
    {22, 1.74e7, 1.23e6, 100, 1.76e7},
    {23, 2.26e7, 1.40e6, 100, 2.30e7},
    {24, 2.91e7, 1.68e6, 100, 2.97e7},
    {25, 3.68e7, 2.37e6, 100, 3.80e7},
    {26, 4.75e7, 2.91e6, 100, 4.80e7},
    {27, 5.95e7, 3.90e6, 100, 6.03e7},
    {28, 7.35e7, 4.49e6, 100, 7.50e7},
    {29, 9.22e7, 5.21e6, 100, 9.26e7},
    {30, 1.11e8, 7.40e6, 100, 1.14e8},
    {31, 1.37e8, 9.79e6, 100, 1.38e8},
    {32, 1.65e8, 1.01e7, 100, 1.67e8},
}};

inline std::optional<ThirdPassRow> third_pass_row(std::int64_t g) {
    if (g < 1 || g > static_cast<std::int64_t>(third_pass_rows.size())) return std::nullopt;
    return third_pass_rows[static_cast<std::size_t>(g - 1)];
}

/// Trial count behind the published row for g.
constexpr std::uint64_t published_trials(std::int64_t g) {
    if (g <= 10) return 10000;
    if (g < 20) return 1024;
    return 100;
}

}  // namespace shellsort_lab::reference
