#pragma once

// Seeded Monte Carlo experiments on random permutations: third-pass
// inversions against psi(h, g) n, cross-inversions under a common factor c,
// per-pass costs of (ch, cg, 1)-shellsort, and the two-level counter process
// that models a fourth pass.
//
// Every trial draws from its own substream (Rng::substream(seed, trial)), and
// results are folded in trial order, so a report depends only on its config
// and never on the number of worker threads.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "shellsort_lab/core_model.hpp"
#include "shellsort_lab/rng.hpp"

namespace shellsort_lab {

struct TrialConfig {
    std::int64_t h = 1;
    std::int64_t g = 1;
    std::int64_t c = 1;
    std::size_t n = 1;
    std::uint64_t trials = 1;
    std::uint64_t seed = 0;

    /// Throws std::invalid_argument unless h, g, c >= 1, gcd(h, g) = 1,
    /// n >= 1 and trials >= 1.
    void validate() const;
};

struct RunOptions {
    unsigned threads = 0;  // 0: hardware concurrency
    bool keep_per_trial = false;
    /// Fraction of third-pass trials re-counted through the list-pair
    /// identity (every round(1/fraction)-th trial). 0 disables the check.
    /// Skipped when h n exceeds 4e6, the size of the count tables it needs.
    double cross_check_fraction = 0.01;
};

struct SimulationReport {
    TrialConfig config;
    double mean = 0.0;
    double sample_std = 0.0;  // (r - 1) denominator
    double std_error = 0.0;   // sample_std / sqrt(r)
    double target = 0.0;
    double z_score = 0.0;     // (mean - target) / std_error; 0 when both are 0
    std::vector<std::uint64_t> per_trial;
    std::uint64_t cross_checked = 0;
    std::uint64_t cross_check_mismatches = 0;
};

/// Uniform permutation of {0, ..., n-1} by Fisher-Yates with unbiased
/// bounded draws.
KeyArray random_permutation(std::size_t n, Rng& rng);
void fill_random_permutation(std::vector<Key>& keys, std::size_t n, Rng& rng);

/// Mean, sample standard deviation and standard error of `values`, with the
/// z-score against `target`.
SimulationReport summarize(const TrialConfig& config, std::span<const std::uint64_t> values, double target);

/// h-sort, g-sort, count what is left. Requires c = 1; target psi(h, g) n.
SimulationReport third_pass_experiment(const TrialConfig& cfg, const RunOptions& opts = {});

/// |mean - psi n| <= 3 stderr + scale g^3 h^2.
bool within_third_pass_envelope(const SimulationReport& report, double scale = 1.0);

/// Inverted pairs whose positions differ mod c.
std::uint64_t cross_inversions(std::span<const Key> keys, std::size_t c);

/// (1/8) sqrt(pi c) (1 - 1/c) n^{3/2}.
double cross_inversion_leading_term(std::size_t n, std::int64_t c);

/// Sorts with steps c*h and c*g, then counts cross-inversions.
SimulationReport cross_inversion_experiment(const TrialConfig& cfg, const RunOptions& opts = {});

/// Mean inversion count of a random 2-ordered permutation of 2n elements,
/// n 4^{n-1} / C(2n, n), via the product form of C(2n, n) / 4^n.
double two_ordered_mean(std::size_t n);

struct ExactRatio {
    std::uint64_t num = 0;
    std::uint64_t den = 1;
    friend bool operator==(const ExactRatio&, const ExactRatio&) = default;
};

/// n 4^{n-1} / C(2n, n) in lowest terms; n <= 30.
ExactRatio two_ordered_mean_exact(std::size_t n);

struct PassTargets {
    double pass1 = 0.0;
    double pass2 = 0.0;
    double pass3 = 0.0;
};

/// Leading terms of the average inversions removed by each pass of
/// (ch, cg, 1)-shellsort on n random keys.
PassTargets pass_targets(std::int64_t h, std::int64_t g, std::int64_t c, std::size_t n);

struct PassReports {
    SimulationReport pass1;
    SimulationReport pass2;
    SimulationReport pass3;
};

PassReports theorem2_experiment(const TrialConfig& cfg, const RunOptions& opts = {});

struct CounterStep {
    std::int64_t k = 0;
    std::int64_t j = 0;
    std::int64_t i = 0;
    friend bool operator==(const CounterStep&, const CounterStep&) = default;
};

struct CounterRun {
    std::int64_t h = 0;
    std::int64_t g = 0;
    std::int64_t f = 0;
    std::vector<CounterStep> trace;          // empty unless recorded
    std::vector<std::int64_t> i_counters;    // size g
    std::vector<std::int64_t> j_counters;    // size h
    std::vector<std::uint64_t> j_histogram;  // size g
    std::vector<std::uint64_t> joint;        // g x f occupancy of (j, i)
};

/// Starts from I_j = j mod f, J_k = k mod g; each step draws k uniform in
/// [0, h), emits (k, j = J_k, i = I_j), then advances J_k by h mod g and
/// I_j by g mod f. f, g, h must be positive and pairwise coprime.
CounterRun stochastic_counter_model(std::int64_t h, std::int64_t g, std::int64_t f, std::uint64_t steps,
                                    std::uint64_t seed, bool record_trace = true);

struct SuiteRow {
    std::int64_t g = 0;
    SimulationReport report;
    bool at_or_below_target = false;  // mean <= psi n
    double sigma_over_mu = 0.0;
};

/// h = g^2 + 1 and n = g^4 + g^2 for each g; trial counts from trials_for.
std::vector<SuiteRow> section10_suite(std::span<const std::int64_t> g_values,
                                          const std::function<std::uint64_t(std::int64_t)>& trials_for,
                                          std::uint64_t seed, const RunOptions& opts = {});

/// The configuration section10_suite uses for one g.
TrialConfig suite_config(std::int64_t g, std::uint64_t trials, std::uint64_t seed);

}  // namespace shellsort_lab
