#pragma once

// The third-pass inversion constant psi(h, g) and the probability tools
// around it: binomial mean absolute deviation, near-uniformity of a binomial
// variable modulo g, and maximal coupling of two finite distributions.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace shellsort_lab {

/// psi(h, g) together with its leading asymptotic term.
struct PsiValue {
    std::int64_t h = 0;
    std::int64_t g = 0;
    double exact = 0.0;
    double asymptotic = 0.0;
    /// terms[d - 1] is the contribution of d = 1..g-1; they sum to `exact`.
    std::vector<double> terms;
};

/// psi(h, g) = 1/2 sum_{d=1}^{g-1} E|Z(h-1, d/g) - floor(hd/g)| with Z
/// binomial, summed term by term. Throws std::invalid_argument unless
/// h, g >= 1 and gcd(h, g) = 1.
PsiValue psi_exact(std::int64_t h, std::int64_t g, bool with_terms = false);

/// sqrt(pi h / 128) * g.
double psi_asymptotic(std::int64_t h, std::int64_t g);

/// The same constant assembled pair by pair: sum over lists j < j' of
/// (1/g) E|Z(h-1, d/g) - floor(hd/g)| where d is the h-step distance from j
/// to j'.
double psi_pairwise(std::int64_t h, std::int64_t g);

/// psi via the closed-form binomial deviation of mean_abs_dev_binomial.
double psi_via_expectation(std::int64_t h, std::int64_t g);

/// Exact rational probability num / den.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    double value() const noexcept { return static_cast<double>(num) / static_cast<double>(den); }
};

/// E|Z - a| for Z ~ Binomial(m, p), from De Moivre's closed form for E|Z - mp|
/// and a shift by (mp - a)(1 - 2 Pr[Z <= mp]). Requires 0 < p < 1 and
/// floor(mp) <= a <= ceil(mp); throws std::invalid_argument otherwise.
double mean_abs_dev_binomial(std::int64_t m, Rational p, double a);

/// E|Z - a| for any real a: the closed form inside [floor(mp), ceil(mp)],
/// direct summation of the distribution elsewhere.
double binomial_abs_deviation(std::int64_t m, Rational p, double a);

/// Normal approximation sqrt(2 p (1-p) m / pi).
double binomial_abs_deviation_asymptotic(std::int64_t m, double p);

/// phi_{gm}(t) = 2 sum_{k>=1} exp(-8 t (1-t) k^2 m / g^2), summed until terms
/// drop below 1e-16. Returns g when t(1-t) = 0, where the series diverges and
/// the uniformity bound carries no information.
double phi_bound(std::int64_t g, std::int64_t m, double t);

struct UniformityCheck {
    double max_deviation = 0.0;
    double bound = 0.0;
    bool holds = false;
    std::vector<double> distribution;  // Pr[Y mod g = j]
};

/// Distribution of Binomial(m, t) mod g by dynamic programming. The maximal
/// deviation from 1/g comes from the roots-of-unity form of the same
/// probabilities, which keeps its relative accuracy when the deviation is far
/// below 1e-16; it is compared against phi_bound(g, m, t) / g.
UniformityCheck mod_uniformity_check(std::int64_t m, double t, std::int64_t g);

/// A coupling of p and p* that keeps min(p_j, p*_j) on the diagonal.
class CouplingMatrix {
public:
    CouplingMatrix(std::vector<double> p, std::vector<double> p_star, std::vector<double> plan);

    std::size_t size() const noexcept { return p_.size(); }
    double operator()(std::size_t i, std::size_t j) const { return plan_[i * p_.size() + j]; }

    std::span<const double> p() const noexcept { return p_; }
    std::span<const double> p_star() const noexcept { return p_star_; }
    std::span<const double> plan() const noexcept { return plan_; }

    double row_sum(std::size_t i) const;
    double column_sum(std::size_t j) const;
    double off_diagonal_mass() const;
    /// (1/2) sum_j |p_j - p*_j|.
    double total_variation() const;

private:
    std::vector<double> p_;
    std::vector<double> p_star_;
    std::vector<double> plan_;
};

/// Greedy index-order transport of the surplus of p onto the deficit of p*.
/// Throws std::invalid_argument on negative entries, size mismatch, or sums
/// further than 1e-12 from 1.
CouplingMatrix maximal_coupling(std::span<const double> p, std::span<const double> p_star);

}  // namespace shellsort_lab
