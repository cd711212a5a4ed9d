#include "shellsort_lab/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "shellsort_lab/numeric.hpp"
#include "shellsort_lab/pass_analysis.hpp"
#include "shellsort_lab/psi.hpp"

namespace shellsort_lab {
namespace {

unsigned resolve_threads(unsigned requested, std::uint64_t trials) {
    unsigned threads = requested != 0 ? requested : std::max(1u, std::thread::hardware_concurrency());
    if (trials < threads) threads = static_cast<unsigned>(std::max<std::uint64_t>(trials, 1));
    return threads;
}

// Runs body(t) for t in [0, trials) on `threads` workers. Worker w takes
// t = w, w + threads, ...; body must write only to slot t of its outputs.
template <typename Body>
void for_each_trial(std::uint64_t trials, unsigned threads, Body body) {
    threads = resolve_threads(threads, trials);
    if (threads == 1) {
        for (std::uint64_t t = 0; t < trials; ++t) body(t);
        return;
    }
    std::vector<std::exception_ptr> errors(threads);
    {
        std::vector<std::jthread> workers;
        workers.reserve(threads);
        for (unsigned w = 0; w < threads; ++w) {
            workers.emplace_back([&, w] {
                try {
                    for (std::uint64_t t = w; t < trials; t += threads) body(t);
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        }
    }
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

// The cross-check builds two dense h x n tables; beyond this many cells it is
// skipped and cross_checked stays 0.
constexpr double max_cross_check_cells = 4.0e6;

std::uint64_t cross_check_stride(double fraction) {
    if (fraction <= 0.0) return 0;
    if (fraction >= 1.0) return 1;
    return static_cast<std::uint64_t>(std::llround(1.0 / fraction));
}

}  // namespace

void TrialConfig::validate() const {
    if (h < 1 || g < 1 || c < 1) throw std::invalid_argument("TrialConfig: h, g and c must be positive");
    require_coprime(h, g, "TrialConfig");
    if (n < 1) throw std::invalid_argument("TrialConfig: n must be at least 1");
    if (trials < 1) throw std::invalid_argument("TrialConfig: trials must be at least 1");
}

void fill_random_permutation(std::vector<Key>& keys, std::size_t n, Rng& rng) {
    keys.resize(n);
    std::iota(keys.begin(), keys.end(), Key{0});
    for (std::size_t i = n; i > 1; --i) {
        const auto j = static_cast<std::size_t>(rng.below(i));
        std::swap(keys[i - 1], keys[j]);
    }
}

KeyArray random_permutation(std::size_t n, Rng& rng) {
    std::vector<Key> keys;
    fill_random_permutation(keys, n, rng);
    return KeyArray(std::move(keys));
}

SimulationReport summarize(const TrialConfig& config, std::span<const std::uint64_t> values, double target) {
    SimulationReport report;
    report.config = config;
    report.target = target;
    const auto r = values.size();
    if (r == 0) return report;

    long double sum = 0.0L;
    for (auto v : values) sum += static_cast<long double>(v);
    const long double mean = sum / static_cast<long double>(r);

    long double squares = 0.0L;
    for (auto v : values) {
        const long double dev = static_cast<long double>(v) - mean;
        squares += dev * dev;
    }
    report.mean = static_cast<double>(mean);
    report.sample_std = r > 1 ? static_cast<double>(std::sqrt(squares / static_cast<long double>(r - 1))) : 0.0;
    report.std_error = report.sample_std / std::sqrt(static_cast<double>(r));

    const double gap = report.mean - target;
    if (report.std_error > 0.0) {
        report.z_score = gap / report.std_error;
    } else if (gap == 0.0) {
        report.z_score = 0.0;
    } else {
        report.z_score = std::copysign(std::numeric_limits<double>::infinity(), gap);
    }
    return report;
}

SimulationReport third_pass_experiment(const TrialConfig& cfg, const RunOptions& opts) {
    cfg.validate();
    if (cfg.c != 1) throw std::invalid_argument("third_pass_experiment: requires c = 1");

    const std::uint64_t stride = cross_check_stride(opts.cross_check_fraction);
    const bool table_fits = static_cast<double>(cfg.h) * static_cast<double>(cfg.n) <= max_cross_check_cells;
    std::vector<std::uint64_t> counts(cfg.trials);
    std::vector<char> checked(cfg.trials, 0);
    std::vector<char> mismatched(cfg.trials, 0);

    for_each_trial(cfg.trials, opts.threads, [&](std::uint64_t t) {
        Rng rng = Rng::substream(cfg.seed, t);
        std::vector<Key> keys;
        fill_random_permutation(keys, cfg.n, rng);
        const bool check = table_fits && stride != 0 && t % stride == 0;
        std::vector<Key> original;
        if (check) original = keys;

        stride_sort_in_place(keys, static_cast<std::size_t>(cfg.h));
        stride_sort_in_place(keys, static_cast<std::size_t>(cfg.g));
        counts[t] = count_inversions(keys);

        if (check) {
            const PassTables tables = build_tables(KeyArray(std::move(original)), cfg.h, cfg.g);
            checked[t] = 1;
            mismatched[t] = total_cross_list_inversions(tables) != counts[t] ? 1 : 0;
        }
    });

    const double target = psi_exact(cfg.h, cfg.g).exact * static_cast<double>(cfg.n);
    SimulationReport report = summarize(cfg, counts, target);
    for (std::uint64_t t = 0; t < cfg.trials; ++t) {
        report.cross_checked += static_cast<std::uint64_t>(checked[t]);
        report.cross_check_mismatches += static_cast<std::uint64_t>(mismatched[t]);
    }
    if (opts.keep_per_trial) report.per_trial = std::move(counts);
    return report;
}

bool within_third_pass_envelope(const SimulationReport& report, double scale) {
    const auto g = static_cast<double>(report.config.g);
    const auto h = static_cast<double>(report.config.h);
    return std::abs(report.mean - report.target) <= 3.0 * report.std_error + scale * g * g * g * h * h;
}

std::uint64_t cross_inversions(std::span<const Key> keys, std::size_t c) {
    if (c == 0) throw std::invalid_argument("cross_inversions: c must be positive");
    if (c == 1) return 0;
    std::uint64_t within = 0;
    std::vector<Key> subarray;
    for (std::size_t a = 0; a < c; ++a) {
        subarray.clear();
        for (std::size_t i = a; i < keys.size(); i += c) subarray.push_back(keys[i]);
        within += count_inversions(subarray);
    }
    return count_inversions(keys) - within;
}

double cross_inversion_leading_term(std::size_t n, std::int64_t c) {
    const auto cd = static_cast<double>(c);
    return std::sqrt(std::numbers::pi * cd) * (1.0 - 1.0 / cd) * std::pow(static_cast<double>(n), 1.5) / 8.0;
}

SimulationReport cross_inversion_experiment(const TrialConfig& cfg, const RunOptions& opts) {
    cfg.validate();
    const auto c = static_cast<std::size_t>(cfg.c);
    std::vector<std::uint64_t> counts(cfg.trials);

    for_each_trial(cfg.trials, opts.threads, [&](std::uint64_t t) {
        Rng rng = Rng::substream(cfg.seed, t);
        std::vector<Key> keys;
        fill_random_permutation(keys, cfg.n, rng);
        stride_sort_in_place(keys, c * static_cast<std::size_t>(cfg.h));
        stride_sort_in_place(keys, c * static_cast<std::size_t>(cfg.g));
        counts[t] = cross_inversions(keys, c);
    });

    SimulationReport report = summarize(cfg, counts, cross_inversion_leading_term(cfg.n, cfg.c));
    if (opts.keep_per_trial) report.per_trial = std::move(counts);
    return report;
}

double two_ordered_mean(std::size_t n) {
    if (n == 0) throw std::invalid_argument("two_ordered_mean: n must be positive");
    // C(2n, n) / 4^n = prod_{i=1}^{n} (2i - 1) / (2i)
    double central = 1.0;
    for (std::size_t i = 1; i <= n; ++i) central *= static_cast<double>(2 * i - 1) / static_cast<double>(2 * i);
    return static_cast<double>(n) / (4.0 * central);
}

ExactRatio two_ordered_mean_exact(std::size_t n) {
    if (n == 0 || n > 30) throw std::invalid_argument("two_ordered_mean_exact: need 1 <= n <= 30");
    std::uint64_t binom = 1;  // C(2n, n), built as C(n+i, i)
    for (std::uint64_t i = 1; i <= n; ++i) binom = binom * (n + i) / i;
    std::uint64_t num = static_cast<std::uint64_t>(n) << (2 * (n - 1));
    const std::uint64_t common = std::gcd(num, binom);
    return {num / common, binom / common};
}

PassTargets pass_targets(std::int64_t h, std::int64_t g, std::int64_t c, std::size_t n) {
    const auto hd = static_cast<double>(h);
    const auto gd = static_cast<double>(g);
    const auto cd = static_cast<double>(c);
    const auto nd = static_cast<double>(n);
    const double n32 = std::pow(nd, 1.5);
    PassTargets t;
    t.pass1 = nd * nd / (4.0 * cd * hd);
    t.pass2 = std::sqrt(std::numbers::pi / (cd * hd)) * (hd - 1.0) * n32 / (8.0 * gd);
    t.pass3 = psi_exact(h, g).exact * nd + std::sqrt(std::numbers::pi / cd) * (cd - 1.0) * n32 / 8.0;
    return t;
}

PassReports theorem2_experiment(const TrialConfig& cfg, const RunOptions& opts) {
    cfg.validate();
    const IncrementPlan plan(cfg.h, cfg.g, cfg.c);
    std::vector<std::uint64_t> first(cfg.trials);
    std::vector<std::uint64_t> second(cfg.trials);
    std::vector<std::uint64_t> third(cfg.trials);

    for_each_trial(cfg.trials, opts.threads, [&](std::uint64_t t) {
        Rng rng = Rng::substream(cfg.seed, t);
        std::vector<Key> keys;
        fill_random_permutation(keys, cfg.n, rng);
        first[t] = stride_sort_in_place(keys, plan.first_step());
        second[t] = stride_sort_in_place(keys, plan.second_step());
        third[t] = count_inversions(keys);
    });

    const PassTargets targets = pass_targets(cfg.h, cfg.g, cfg.c, cfg.n);
    PassReports reports{summarize(cfg, first, targets.pass1), summarize(cfg, second, targets.pass2),
                        summarize(cfg, third, targets.pass3)};
    if (opts.keep_per_trial) {
        reports.pass1.per_trial = std::move(first);
        reports.pass2.per_trial = std::move(second);
        reports.pass3.per_trial = std::move(third);
    }
    return reports;
}

CounterRun stochastic_counter_model(std::int64_t h, std::int64_t g, std::int64_t f, std::uint64_t steps,
                                    std::uint64_t seed, bool record_trace) {
    if (h < 1 || g < 1 || f < 1) throw std::invalid_argument("stochastic_counter_model: h, g, f must be positive");
    if (std::gcd(h, g) != 1 || std::gcd(g, f) != 1 || std::gcd(h, f) != 1) {
        throw std::invalid_argument("stochastic_counter_model: h, g, f must be pairwise coprime");
    }

    const auto hs = static_cast<std::size_t>(h);
    const auto gs = static_cast<std::size_t>(g);
    const auto fs = static_cast<std::size_t>(f);
    CounterRun run{h, g, f, {}, std::vector<std::int64_t>(gs), std::vector<std::int64_t>(hs),
                   std::vector<std::uint64_t>(gs, 0), std::vector<std::uint64_t>(gs * fs, 0)};
    for (std::size_t j = 0; j < gs; ++j) run.i_counters[j] = static_cast<std::int64_t>(j) % f;
    for (std::size_t k = 0; k < hs; ++k) run.j_counters[k] = static_cast<std::int64_t>(k) % g;
    if (record_trace) run.trace.reserve(steps);

    Rng rng(seed);
    for (std::uint64_t step = 0; step < steps; ++step) {
        const auto k = static_cast<std::size_t>(rng.below(hs));
        const std::int64_t j = run.j_counters[k];
        const std::int64_t i = run.i_counters[static_cast<std::size_t>(j)];
        if (record_trace) run.trace.push_back({static_cast<std::int64_t>(k), j, i});
        ++run.j_histogram[static_cast<std::size_t>(j)];
        ++run.joint[static_cast<std::size_t>(j) * fs + static_cast<std::size_t>(i)];
        run.j_counters[k] = (j + h) % g;
        run.i_counters[static_cast<std::size_t>(j)] = (i + g) % f;
    }
    return run;
}

TrialConfig suite_config(std::int64_t g, std::uint64_t trials, std::uint64_t seed) {
    const std::int64_t h = g * g + 1;
    TrialConfig cfg;
    cfg.h = h;
    cfg.g = g;
    cfg.c = 1;
    cfg.n = static_cast<std::size_t>(g * g * h);
    cfg.trials = trials;
    cfg.seed = mix64(seed ^ mix64(static_cast<std::uint64_t>(g)));
    return cfg;
}

std::vector<SuiteRow> section10_suite(std::span<const std::int64_t> g_values,
                                          const std::function<std::uint64_t(std::int64_t)>& trials_for,
                                          std::uint64_t seed, const RunOptions& opts) {
    std::vector<SuiteRow> rows;
    rows.reserve(g_values.size());
    for (std::int64_t g : g_values) {
        if (g < 1) throw std::invalid_argument("section10_suite: g must be positive");
        SuiteRow row;
        row.g = g;
        row.report = third_pass_experiment(suite_config(g, trials_for(g), seed), opts);
        row.at_or_below_target = row.report.mean <= row.report.target;
        row.sigma_over_mu = row.report.mean > 0.0 ? row.report.sample_std / row.report.mean : 0.0;
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace shellsort_lab
