#include "shellsort_lab/psi.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

#include "shellsort_lab/numeric.hpp"

namespace shellsort_lab {
namespace {

// Weights below this fraction of the modal weight are dropped. The binomial
// weights decay faster than geometrically away from the mode, so the
// neglected tail is far below double precision.
constexpr double weight_cutoff = 1e-30;

// E|Z - a| for Z ~ Binomial(m, p) by direct summation. Weights are generated
// by the ratio recurrence outward from the mode and normalized by their sum,
// so nothing underflows for large m.
double abs_deviation_direct(std::int64_t m, double p, double a) {
    if (m == 0) return std::abs(a);
    const double odds = p / (1.0 - p);
    const auto mode = std::clamp<std::int64_t>(static_cast<std::int64_t>(std::floor((m + 1) * p)), 0, m);

    double total = 1.0;
    double weighted = std::abs(static_cast<double>(mode) - a);

    double w = 1.0;
    for (std::int64_t r = mode; r < m; ++r) {
        w *= static_cast<double>(m - r) / static_cast<double>(r + 1) * odds;
        if (w < weight_cutoff) break;
        total += w;
        weighted += w * std::abs(static_cast<double>(r + 1) - a);
    }
    w = 1.0;
    for (std::int64_t r = mode; r > 0; --r) {
        w *= static_cast<double>(r) / static_cast<double>(m - r + 1) / odds;
        if (w < weight_cutoff) break;
        total += w;
        weighted += w * std::abs(static_cast<double>(r - 1) - a);
    }
    return weighted / total;
}

double log_choose(std::int64_t m, std::int64_t k) {
    return std::lgamma(static_cast<double>(m + 1)) - std::lgamma(static_cast<double>(k + 1)) -
           std::lgamma(static_cast<double>(m - k + 1));
}

void check_probability(Rational p) {
    if (p.den <= 0 || p.num <= 0 || p.num >= p.den) {
        throw std::invalid_argument("binomial deviation: need 0 < p < 1, got " + std::to_string(p.num) + "/" +
                                    std::to_string(p.den));
    }
}

void check_psi_args(std::int64_t h, std::int64_t g) {
    if (h < 1 || g < 1) throw std::invalid_argument("psi: h and g must be positive");
    require_coprime(h, g, "psi");
}

// E|Z(h-1, d/g) - floor(hd/g)|.
double deviation_term(std::int64_t h, std::int64_t g, std::int64_t d) {
    const double p = static_cast<double>(d) / static_cast<double>(g);
    return abs_deviation_direct(h - 1, p, static_cast<double>(floor_div(h * d, g)));
}

}  // namespace

PsiValue psi_exact(std::int64_t h, std::int64_t g, bool with_terms) {
    check_psi_args(h, g);
    PsiValue v{h, g, 0.0, psi_asymptotic(h, g), {}};
    for (std::int64_t d = 1; d < g; ++d) {
        const double term = 0.5 * deviation_term(h, g, d);
        v.exact += term;
        if (with_terms) v.terms.push_back(term);
    }
    return v;
}

double psi_asymptotic(std::int64_t h, std::int64_t g) {
    return std::sqrt(std::numbers::pi * static_cast<double>(h) / 128.0) * static_cast<double>(g);
}

double psi_pairwise(std::int64_t h, std::int64_t g) {
    check_psi_args(h, g);
    std::vector<double> by_distance(static_cast<std::size_t>(g), 0.0);
    for (std::int64_t d = 1; d < g; ++d) by_distance[static_cast<std::size_t>(d)] = deviation_term(h, g, d);

    // distance[r] = d with r = d*h (mod g)
    std::vector<std::int64_t> distance(static_cast<std::size_t>(g), 0);
    for (std::int64_t d = 1; d < g; ++d) distance[static_cast<std::size_t>(pos_mod(d * h, g))] = d;

    double sum = 0.0;
    for (std::int64_t j = 0; j < g; ++j) {
        for (std::int64_t jp = j + 1; jp < g; ++jp) {
            sum += by_distance[static_cast<std::size_t>(distance[static_cast<std::size_t>(jp - j)])];
        }
    }
    return sum / static_cast<double>(g);
}

double psi_via_expectation(std::int64_t h, std::int64_t g) {
    check_psi_args(h, g);
    if (h == 1) return 0.0;  // Z(0, p) = 0 = floor(d/g)
    double sum = 0.0;
    for (std::int64_t d = 1; d < g; ++d) {
        sum += binomial_abs_deviation(h - 1, Rational{d, g}, static_cast<double>(floor_div(h * d, g)));
    }
    return 0.5 * sum;
}

double mean_abs_dev_binomial(std::int64_t m, Rational p, double a) {
    check_probability(p);
    if (m < 0) throw std::invalid_argument("mean_abs_dev_binomial: m must be nonnegative");

    const std::int64_t mp_num = m * p.num;
    const std::int64_t lo = floor_div(mp_num, p.den);
    const std::int64_t hi = -floor_div(-mp_num, p.den);
    if (a < static_cast<double>(lo) || a > static_cast<double>(hi)) {
        throw std::invalid_argument("mean_abs_dev_binomial: a must lie in [floor(mp), ceil(mp)] = [" +
                                    std::to_string(lo) + ", " + std::to_string(hi) + "]");
    }
    if (m == 0) return 0.0;

    const double log_p = std::log(static_cast<double>(p.num)) - std::log(static_cast<double>(p.den));
    const double log_q = std::log(static_cast<double>(p.den - p.num)) - std::log(static_cast<double>(p.den));

    // E|Z - mp| = 2 c C(m, c) p^c (1-p)^(m+1-c) with c = ceil(mp).
    const double at_mean =
        hi == 0 ? 0.0
                : 2.0 * static_cast<double>(hi) *
                      std::exp(log_choose(m, hi) + static_cast<double>(hi) * log_p +
                               static_cast<double>(m + 1 - hi) * log_q);

    const long double mp = static_cast<long double>(mp_num) / static_cast<long double>(p.den);
    if (static_cast<long double>(a) == mp) return at_mean;

    // Pr[Z <= mp] = Pr[Z <= floor(mp)].
    long double cdf = 0.0L;
    for (std::int64_t z = 0; z <= lo; ++z) {
        cdf += std::exp(static_cast<long double>(log_choose(m, z) + static_cast<double>(z) * log_p +
                                                 static_cast<double>(m - z) * log_q));
    }
    const long double shift = (mp - static_cast<long double>(a)) * (1.0L - 2.0L * cdf);
    return static_cast<double>(static_cast<long double>(at_mean) + shift);
}

double binomial_abs_deviation(std::int64_t m, Rational p, double a) {
    check_probability(p);
    const std::int64_t mp_num = m * p.num;
    const std::int64_t lo = floor_div(mp_num, p.den);
    const std::int64_t hi = -floor_div(-mp_num, p.den);
    if (a >= static_cast<double>(lo) && a <= static_cast<double>(hi)) return mean_abs_dev_binomial(m, p, a);
    return abs_deviation_direct(m, p.value(), a);
}

double binomial_abs_deviation_asymptotic(std::int64_t m, double p) {
    return std::sqrt(2.0 * p * (1.0 - p) * static_cast<double>(m) / std::numbers::pi);
}

double phi_bound(std::int64_t g, std::int64_t m, double t) {
    if (!(t >= 0.0 && t <= 1.0)) throw std::invalid_argument("phi_bound: t must lie in [0, 1]");
    if (g < 1 || m < 1) throw std::invalid_argument("phi_bound: g and m must be positive");

    const double rate = 8.0 * t * (1.0 - t) * static_cast<double>(m) / (static_cast<double>(g) * g);
    if (rate <= 0.0) return static_cast<double>(g);

    // Terms fall below 1e-16 after about sqrt(37 / rate) steps. Past 1e7 steps
    // the series is far above g, and g is already a valid (trivial) bound.
    constexpr double max_terms = 1e7;
    if (std::sqrt(37.0 / rate) > max_terms) return static_cast<double>(g);

    double sum = 0.0;
    for (double k = 1.0;; k += 1.0) {
        const double term = std::exp(-rate * k * k);
        sum += term;
        if (term < 1e-16) break;
    }
    return 2.0 * sum;
}

UniformityCheck mod_uniformity_check(std::int64_t m, double t, std::int64_t g) {
    if (!(t > 0.0 && t < 1.0)) throw std::invalid_argument("mod_uniformity_check: need 0 < t < 1");
    if (g < 2 || m < 1) throw std::invalid_argument("mod_uniformity_check: need g >= 2 and m >= 1");

    const auto size = static_cast<std::size_t>(g);
    std::vector<double> dist(size, 0.0);
    std::vector<double> next(size, 0.0);
    dist[0] = 1.0;
    for (std::int64_t step = 0; step < m; ++step) {
        for (std::size_t j = 0; j < size; ++j) {
            next[j] = (1.0 - t) * dist[j] + t * dist[(j + size - 1) % size];
        }
        dist.swap(next);
    }

    // The DP entries carry absolute round-off near 1e-16, which swamps the
    // deviation once m is large. Pr[Y mod g = j] - 1/g equals
    // (1/g) sum_{k=1}^{g-1} w^{-jk} (1 - t + t w^k)^m with w = e^{2 pi i / g},
    // and that sum is accurate relative to its own size.
    std::vector<std::complex<double>> powers;
    for (std::int64_t k = 1; k < g; ++k) {
        const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(g);
        const std::complex<double> z{1.0 - t + t * std::cos(angle), t * std::sin(angle)};
        powers.push_back(std::polar(std::pow(std::abs(z), static_cast<double>(m)),
                                    std::fmod(static_cast<double>(m) * std::arg(z), 2.0 * std::numbers::pi)));
    }

    UniformityCheck check;
    for (std::int64_t j = 0; j < g; ++j) {
        double deviation = 0.0;
        for (std::int64_t k = 1; k < g; ++k) {
            const double angle = -2.0 * std::numbers::pi * static_cast<double>((j * k) % g) / static_cast<double>(g);
            deviation += (std::polar(1.0, angle) * powers[static_cast<std::size_t>(k - 1)]).real();
        }
        check.max_deviation = std::max(check.max_deviation, std::abs(deviation) / static_cast<double>(g));
    }
    check.bound = phi_bound(g, m, t) / static_cast<double>(g);
    check.holds = check.max_deviation < check.bound;
    check.distribution = std::move(dist);
    return check;
}

CouplingMatrix::CouplingMatrix(std::vector<double> p, std::vector<double> p_star, std::vector<double> plan)
    : p_(std::move(p)), p_star_(std::move(p_star)), plan_(std::move(plan)) {
    if (p_.size() != p_star_.size() || plan_.size() != p_.size() * p_.size()) {
        throw std::invalid_argument("CouplingMatrix: inconsistent dimensions");
    }
}

double CouplingMatrix::row_sum(std::size_t i) const {
    double s = 0.0;
    for (std::size_t j = 0; j < size(); ++j) s += (*this)(i, j);
    return s;
}

double CouplingMatrix::column_sum(std::size_t j) const {
    double s = 0.0;
    for (std::size_t i = 0; i < size(); ++i) s += (*this)(i, j);
    return s;
}

double CouplingMatrix::off_diagonal_mass() const {
    double s = 0.0;
    for (std::size_t i = 0; i < size(); ++i) {
        for (std::size_t j = 0; j < size(); ++j) {
            if (i != j) s += (*this)(i, j);
        }
    }
    return s;
}

double CouplingMatrix::total_variation() const {
    double s = 0.0;
    for (std::size_t j = 0; j < size(); ++j) s += std::abs(p_[j] - p_star_[j]);
    return 0.5 * s;
}

namespace {

void check_distribution(std::span<const double> p, const char* name) {
    double sum = 0.0;
    for (double x : p) {
        if (!(x >= 0.0)) throw std::invalid_argument(std::string("maximal_coupling: negative entry in ") + name);
        sum += x;
    }
    if (std::abs(sum - 1.0) > 1e-12) {
        throw std::invalid_argument(std::string("maximal_coupling: ") + name + " does not sum to 1");
    }
}

}  // namespace

CouplingMatrix maximal_coupling(std::span<const double> p, std::span<const double> p_star) {
    if (p.size() != p_star.size() || p.empty()) {
        throw std::invalid_argument("maximal_coupling: distributions must have the same nonzero size");
    }
    check_distribution(p, "p");
    check_distribution(p_star, "p*");

    const std::size_t m = p.size();
    std::vector<double> plan(m * m, 0.0);
    std::vector<double> surplus(m);
    std::vector<double> deficit(m);
    for (std::size_t j = 0; j < m; ++j) {
        const double diag = std::min(p[j], p_star[j]);
        plan[j * m + j] = diag;
        surplus[j] = p[j] - diag;
        deficit[j] = p_star[j] - diag;
    }

    std::size_t i = 0;
    std::size_t j = 0;
    for (;;) {
        while (i < m && surplus[i] <= 0.0) ++i;
        while (j < m && deficit[j] <= 0.0) ++j;
        if (i == m || j == m) break;
        if (surplus[i] <= deficit[j]) {
            plan[i * m + j] += surplus[i];
            deficit[j] -= surplus[i];
            surplus[i] = 0.0;
        } else {
            plan[i * m + j] += deficit[j];
            surplus[i] -= deficit[j];
            deficit[j] = 0.0;
        }
    }
    return CouplingMatrix(std::vector<double>(p.begin(), p.end()), std::vector<double>(p_star.begin(), p_star.end()),
                          std::move(plan));
}

}  // namespace shellsort_lab
