#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>

namespace shellsort_lab {

inline void require_coprime(std::int64_t h, std::int64_t g, std::string_view who) {
    if (std::gcd(h, g) != 1) {
        throw std::invalid_argument(std::string(who) + ": gcd(h, g) != 1 (h=" + std::to_string(h) +
                                    ", g=" + std::to_string(g) + ")");
    }
}

/// floor(a / b) for b > 0.
constexpr std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    const std::int64_t q = a / b;
    return (a % b != 0 && a < 0) ? q - 1 : q;
}

/// a mod b in [0, b) for b > 0.
constexpr std::int64_t pos_mod(std::int64_t a, std::int64_t b) {
    const std::int64_t r = a % b;
    return r < 0 ? r + b : r;
}

}  // namespace shellsort_lab
