#include "shellsort_lab/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <optional>
#include <stdexcept>

#include <CLI11.hpp>

#include "shellsort_lab/core_model.hpp"
#include "shellsort_lab/numeric.hpp"
#include "shellsort_lab/output.hpp"
#include "shellsort_lab/pass_analysis.hpp"
#include "shellsort_lab/psi.hpp"
#include "shellsort_lab/reference_tables.hpp"
#include "shellsort_lab/rng.hpp"
#include "shellsort_lab/simulation.hpp"

namespace shellsort_lab::cli {
namespace {

constexpr std::uint64_t fallback_seed = 1;
constexpr const char* seed_env = "SHELLSORT_LAB_SEED";

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::uint64_t default_seed() {
    const char* env = std::getenv(seed_env);
    if (env == nullptr || *env == '\0') return fallback_seed;
    std::uint64_t seed = 0;
    const char* end = env + std::char_traits<char>::length(env);
    const auto [ptr, ec] = std::from_chars(env, end, seed);
    if (ec != std::errc() || ptr != end) {
        throw UsageError(std::string(seed_env) + " is not an unsigned 64-bit integer: " + env);
    }
    return seed;
}

// "3/10" or a decimal such as "0.3" (converted exactly to a power-of-ten
// denominator).
Rational parse_probability(const std::string& text) {
    const auto slash = text.find('/');
    if (slash != std::string::npos) {
        Rational r;
        const auto a = std::from_chars(text.data(), text.data() + slash, r.num);
        const auto b = std::from_chars(text.data() + slash + 1, text.data() + text.size(), r.den);
        if (a.ec != std::errc() || b.ec != std::errc() || a.ptr != text.data() + slash ||
            b.ptr != text.data() + text.size()) {
            throw UsageError("cannot parse probability '" + text + "'");
        }
        return r;
    }
    const auto dot = text.find('.');
    std::string digits = text;
    std::int64_t den = 1;
    if (dot != std::string::npos) {
        const std::size_t decimals = text.size() - dot - 1;
        if (decimals > 15) throw UsageError("too many decimals in probability '" + text + "'");
        digits.erase(dot, 1);
        for (std::size_t i = 0; i < decimals; ++i) den *= 10;
    }
    Rational r{0, den};
    const auto res = std::from_chars(digits.data(), digits.data() + digits.size(), r.num);
    if (res.ec != std::errc() || res.ptr != digits.data() + digits.size()) {
        throw UsageError("cannot parse probability '" + text + "'");
    }
    return r;
}

std::vector<std::int64_t> to_i64(std::span<const Key> keys) { return {keys.begin(), keys.end()}; }

void add_report(OutputRecord& rec, const SimulationReport& r) {
    rec.result("mean", r.mean)
        .result("sample_std", r.sample_std)
        .result("std_error", r.std_error)
        .result("target", r.target)
        .result("z_score", r.z_score);
}

struct Common {
    std::string format = "csv";
    bool manifest = false;
    unsigned threads = 0;

    Format output_format() const { return format == "json" ? Format::json : Format::csv; }
    RunOptions run_options() const {
        RunOptions o;
        o.threads = threads;
        return o;
    }
};

class Commands {
public:
    Commands(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

    int run(const std::vector<std::string>& args);

private:
    void setup(CLI::App& app);

    int cmd_psi();
    int cmd_simulate();
    int cmd_verify();
    int cmd_table();
    int cmd_counters();
    int cmd_two_ordered();
    int cmd_deviation();
    int cmd_uniformity();
    int cmd_coupling();
    int cmd_passes();

    std::uint64_t seed_or_default() const { return seed_ ? *seed_ : default_seed(); }
    // Echoes the record's command, seed and parameters when --manifest is set.
    void manifest_for(RecordWriter& writer, const OutputRecord& rec) const;

    std::ostream& out_;
    std::ostream& err_;
    Common common_;
    std::function<int()> action_;

    std::int64_t h_ = 0;
    std::int64_t g_ = 0;
    std::int64_t c_ = 1;
    std::int64_t f_ = 0;
    std::size_t n_ = 0;
    std::uint64_t trials_ = 0;
    std::uint64_t arrays_ = 100;
    std::optional<std::uint64_t> seed_;
    std::uint64_t steps_ = 0;
    bool asymptotic_ = false;
    bool per_d_ = false;
    bool per_trial_ = false;
    bool trace_ = false;
    std::string experiment_ = "third";
    std::string suite_;
    double scale_ = 0.01;
    std::vector<std::int64_t> g_list_;
    std::int64_t m_ = 0;
    std::string probability_;
    std::string target_;
    double t_ = 0.0;
    std::vector<double> p_;
    std::vector<double> q_;
    std::vector<std::int64_t> keys_;
};

void Commands::setup(CLI::App& app) {
    app.require_subcommand(1);
    app.fallthrough();
    // A bare "h" positional would collide with -h.
    app.set_help_flag("--help", "Print this help message and exit");
    app.add_option("--format", common_.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    app.add_flag("--manifest", common_.manifest, "Print the resolved configuration before results");
    app.add_option("--threads", common_.threads, "Worker threads for simulations (0: all cores)");

    auto seed_option = [this](CLI::App* sub) {
        sub->add_option("--seed", seed_, "Random seed (default: $SHELLSORT_LAB_SEED or 1)");
    };

    auto* psi = app.add_subcommand("psi", "Exact psi(h, g)");
    psi->add_option("h", h_)->required();
    psi->add_option("g", g_)->required();
    psi->add_flag("--asymptotic", asymptotic_, "Also print sqrt(pi h / 128) g");
    psi->add_flag("--per-d", per_d_, "Also print the contribution of each d");
    psi->callback([this] { action_ = [this] { return cmd_psi(); }; });

    auto* sim = app.add_subcommand("simulate", "Monte Carlo run of (ch, cg, 1)-shellsort");
    sim->add_option("h", h_)->required();
    sim->add_option("g", g_)->required();
    sim->add_option("n", n_)->required();
    sim->add_option("--trials", trials_, "Number of trials")->required();
    sim->add_option("--c", c_, "Common factor c")->capture_default_str();
    sim->add_option("--experiment", experiment_, "third | cross | passes")
        ->check(CLI::IsMember({"third", "cross", "passes"}))
        ->capture_default_str();
    sim->add_flag("--per-trial", per_trial_, "Include the raw per-trial counts");
    seed_option(sim);
    sim->callback([this] { action_ = [this] { return cmd_simulate(); }; });

    auto* verify = app.add_subcommand("verify", "Check the list-difference and cross-list identities");
    verify->add_option("n", n_)->required();
    verify->add_option("h", h_)->required();
    verify->add_option("g", g_)->required();
    verify->add_option("--arrays", arrays_, "Number of random arrays")->capture_default_str();
    seed_option(verify);
    verify->callback([this] { action_ = [this] { return cmd_verify(); }; });

    auto* table = app.add_subcommand("table", "Reproduce a reference table");
    table->add_option("--suite", suite_, "section7 | section10")->required();
    table->add_option("--scale", scale_, "Fraction of the published trial counts (section10)")
        ->capture_default_str();
    table->add_option("--g", g_list_, "Restrict section10 to these g (comma separated)")->delimiter(',');
    seed_option(table);
    table->callback([this] { action_ = [this] { return cmd_table(); }; });

    auto* counters = app.add_subcommand("counters", "Two-level stochastic counter process");
    counters->add_option("h", h_)->required();
    counters->add_option("g", g_)->required();
    counters->add_option("f", f_)->required();
    counters->add_option("n", steps_)->required();
    counters->add_flag("--trace", trace_, "Emit every (k, j, i) step");
    seed_option(counters);
    counters->callback([this] { action_ = [this] { return cmd_counters(); }; });

    auto* two = app.add_subcommand("two-ordered", "Mean inversions of a random 2-ordered permutation of 2n");
    two->add_option("n", n_)->required();
    two->callback([this] { action_ = [this] { return cmd_two_ordered(); }; });

    auto* dev = app.add_subcommand("deviation", "E|Z - a| for Z ~ Binomial(m, p)");
    dev->add_option("m", m_)->required();
    dev->add_option("p", probability_, "Probability as num/den or decimal")->required();
    dev->add_option("a", target_, "Target (default: m p)");
    dev->callback([this] { action_ = [this] { return cmd_deviation(); }; });

    auto* uni = app.add_subcommand("uniformity", "Binomial(m, t) mod g against its uniformity bound");
    uni->add_option("m", m_)->required();
    uni->add_option("t", t_)->required();
    uni->add_option("g", g_)->required();
    uni->callback([this] { action_ = [this] { return cmd_uniformity(); }; });

    auto* coupling = app.add_subcommand("coupling", "Maximal coupling of two distributions");
    coupling->add_option("--p", p_, "First distribution")->required()->delimiter(',');
    coupling->add_option("--q", q_, "Second distribution")->required()->delimiter(',');
    coupling->callback([this] { action_ = [this] { return cmd_coupling(); }; });

    auto* passes = app.add_subcommand("passes", "Run (ch, cg, 1)-shellsort on given keys");
    passes->add_option("h", h_)->required();
    passes->add_option("g", g_)->required();
    passes->add_option("--c", c_, "Common factor c")->capture_default_str();
    passes->add_option("--keys", keys_, "Distinct keys, comma separated")->required()->delimiter(',');
    passes->callback([this] { action_ = [this] { return cmd_passes(); }; });
}

int Commands::run(const std::vector<std::string>& args) {
    CLI::App app{"Three-increment shellsort analysis toolkit", "shellsort_lab"};
    setup(app);
    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out_ << app.help();
        return success;
    } catch (const CLI::ParseError& e) {
        err_ << "error: " << e.what() << '\n';
        return usage_error;
    }
    try {
        return action_();
    } catch (const UsageError& e) {
        err_ << "error: " << e.what() << '\n';
        return usage_error;
    } catch (const std::invalid_argument& e) {
        err_ << "error: " << e.what() << '\n';
        return usage_error;
    }
}

void Commands::manifest_for(RecordWriter& writer, const OutputRecord& rec) const {
    if (!common_.manifest) return;
    std::vector<Field> entries{{"command", rec.command}};
    if (rec.seed) entries.push_back({"seed", *rec.seed});
    entries.insert(entries.end(), rec.parameters.begin(), rec.parameters.end());
    entries.push_back({"format", common_.format});
    writer.write_manifest(entries);
}

int Commands::cmd_psi() {
    const PsiValue v = psi_exact(h_, g_, per_d_);
    RecordWriter writer(out_, common_.output_format());
    OutputRecord rec;
    rec.command = "psi";
    rec.param("h", h_).param("g", g_);
    rec.result("exact", v.exact);
    if (asymptotic_) rec.result("asymptotic", v.asymptotic);
    if (per_d_) rec.result("per_d", v.terms);
    manifest_for(writer, rec);
    writer.write(rec);
    return success;
}

int Commands::cmd_simulate() {
    TrialConfig cfg;
    cfg.h = h_;
    cfg.g = g_;
    cfg.c = c_;
    cfg.n = n_;
    cfg.trials = trials_;
    cfg.seed = seed_or_default();
    cfg.validate();

    RunOptions opts = common_.run_options();
    opts.keep_per_trial = per_trial_;

    RecordWriter writer(out_, common_.output_format());
    if (common_.manifest) {
        writer.write_manifest({{"command", std::string("simulate")},
                               {"experiment", experiment_},
                               {"h", cfg.h},
                               {"g", cfg.g},
                               {"c", cfg.c},
                               {"n", static_cast<std::uint64_t>(cfg.n)},
                               {"trials", cfg.trials},
                               {"seed", cfg.seed}});
    }

    auto base = [&](const std::string& experiment) {
        OutputRecord rec;
        rec.command = "simulate";
        rec.seed = cfg.seed;
        rec.param("experiment", experiment)
            .param("h", cfg.h)
            .param("g", cfg.g)
            .param("c", cfg.c)
            .param("n", static_cast<std::uint64_t>(cfg.n))
            .param("trials", cfg.trials);
        return rec;
    };
    auto emit_trials = [&](OutputRecord& rec, const SimulationReport& r) {
        if (per_trial_) rec.result("per_trial", std::vector<std::int64_t>(r.per_trial.begin(), r.per_trial.end()));
    };

    if (experiment_ == "passes" || (experiment_ == "third" && cfg.c != 1)) {
        const PassReports reports = theorem2_experiment(cfg, opts);
        const SimulationReport* each[] = {&reports.pass1, &reports.pass2, &reports.pass3};
        const std::int64_t first = experiment_ == "passes" ? 1 : 3;
        for (std::int64_t pass = first; pass <= 3; ++pass) {
            OutputRecord rec = base(experiment_);
            rec.param("pass", pass);
            add_report(rec, *each[pass - 1]);
            emit_trials(rec, *each[pass - 1]);
            writer.write(rec);
        }
        return success;
    }

    OutputRecord rec = base(experiment_);
    if (experiment_ == "cross") {
        const SimulationReport r = cross_inversion_experiment(cfg, opts);
        add_report(rec, r);
        emit_trials(rec, r);
    } else {
        const SimulationReport r = third_pass_experiment(cfg, opts);
        add_report(rec, r);
        rec.result("cross_checked", r.cross_checked).result("cross_check_mismatches", r.cross_check_mismatches);
        emit_trials(rec, r);
        if (r.cross_check_mismatches != 0) {
            writer.write(rec);
            err_ << "error: third-pass count disagrees with the cross-list identity in "
                 << r.cross_check_mismatches << " trial(s)\n";
            return verification_failure;
        }
    }
    writer.write(rec);
    return success;
}

int Commands::cmd_verify() {
    if (n_ < 1) throw UsageError("verify: n must be at least 1");
    if (h_ < 1 || g_ < 1) throw UsageError("verify: h and g must be positive");
    const std::uint64_t seed = seed_or_default();
    require_coprime(h_, g_, "verify");

    VerificationReport list_diff;
    VerificationReport cross_total;
    for (std::uint64_t a = 0; a < arrays_; ++a) {
        Rng rng = Rng::substream(seed, a);
        const KeyArray keys = random_permutation(n_, rng);
        list_diff.merge(verify_lemma1(keys, h_, g_));
        cross_total.merge(verify_cross_list_counts(keys, h_, g_));
    }

    RecordWriter writer(out_, common_.output_format());
    OutputRecord rec;
    rec.command = "verify";
    rec.seed = seed;
    rec.param("n", static_cast<std::uint64_t>(n_)).param("h", h_).param("g", g_).param("arrays", arrays_);
    rec.result("list_difference_checks", list_diff.checks)
        .result("list_difference_violations", list_diff.violation_count)
        .result("cross_list_checks", cross_total.checks)
        .result("cross_list_violations", cross_total.violation_count)
        .result("violations", list_diff.violation_count + cross_total.violation_count);
    manifest_for(writer, rec);
    writer.write(rec);

    if (!list_diff.ok() || !cross_total.ok()) {
        for (const auto* report : {&list_diff, &cross_total}) {
            for (const auto& v : report->violations) {
                err_ << "violation: j=" << v.j << " j'=" << v.j_prime << " l=" << v.l << " expected=" << v.expected
                     << " actual=" << v.actual << '\n';
            }
        }
        return verification_failure;
    }
    return success;
}

int Commands::cmd_table() {
    RecordWriter writer(out_, common_.output_format());
    if (suite_ == "section7") {
        if (common_.manifest) writer.write_manifest({{"suite", suite_}, {"rows", std::uint64_t{3}}});
        for (const auto& row : reference::psi_rows) {
            const PsiValue v = psi_exact(row.h, row.g);
            const double diff = (v.asymptotic - v.exact) / std::sqrt(static_cast<double>(row.g));
            OutputRecord rec;
            rec.command = "table";
            rec.param("suite", suite_).param("h", row.h).param("g", row.g);
            rec.result("psi", v.exact)
                .result("psi_published", row.psi)
                .result("psi_deviation", v.exact - row.psi)
                .result("asymptotic", v.asymptotic)
                .result("asymptotic_published", row.asymptotic)
                .result("asymptotic_deviation", v.asymptotic - row.asymptotic)
                .result("difference_over_sqrt_g", diff)
                .result("difference_over_sqrt_g_published", row.difference_over_sqrt_g)
                .result("difference_over_sqrt_g_deviation", diff - row.difference_over_sqrt_g);
            writer.write(rec);
        }
        return success;
    }
    if (suite_ != "section10") throw UsageError("unknown suite '" + suite_ + "' (expected section7 or section10)");
    if (!(scale_ > 0.0)) throw UsageError("--scale must be positive");

    std::vector<std::int64_t> gs = g_list_;
    if (gs.empty()) {
        for (const auto& row : reference::third_pass_rows) gs.push_back(row.g);
    }
    const std::uint64_t seed = seed_or_default();
    auto trials_for = [this](std::int64_t g) {
        const double scaled = std::round(static_cast<double>(reference::published_trials(g)) * scale_);
        return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(scaled));
    };

    if (common_.manifest) {
        writer.write_manifest({{"suite", suite_}, {"scale", scale_}, {"seed", seed}});
        for (std::int64_t g : gs) {
            const TrialConfig cfg = suite_config(g, trials_for(g), seed);
            writer.write_manifest({{"g", g},
                                   {"h", cfg.h},
                                   {"n", static_cast<std::uint64_t>(cfg.n)},
                                   {"trials", cfg.trials},
                                   {"trial_seed", cfg.seed}});
        }
    }

    // One g at a time so rows stream out as they finish.
    for (std::int64_t g : gs) {
        const std::int64_t single[] = {g};
        const SuiteRow row = section10_suite(single, trials_for, seed, common_.run_options()).front();
        const SimulationReport& r = row.report;
        OutputRecord rec;
        rec.command = "table";
        rec.seed = seed;
        rec.param("suite", suite_)
            .param("g", g)
            .param("h", r.config.h)
            .param("n", static_cast<std::uint64_t>(r.config.n))
            .param("trials", r.config.trials);
        add_report(rec, r);
        rec.result("at_or_below_target", row.at_or_below_target).result("sigma_over_mu", row.sigma_over_mu);
        if (const auto pub = reference::third_pass_row(g)) {
            const double pub_se = pub->sigma / std::sqrt(static_cast<double>(pub->trials));
            const double combined = std::hypot(r.std_error, pub_se);
            const double gap = r.mean - pub->mean;
            rec.result("published_mean", pub->mean)
                .result("published_sigma", pub->sigma)
                .result("published_trials", pub->trials)
                .result("published_psi_n", pub->psi_n)
                .result("deviation", gap)
                .result("z_vs_published", combined > 0.0 ? gap / combined : 0.0);
        }
        writer.write(rec);
        out_.flush();
    }
    return success;
}

int Commands::cmd_counters() {
    const std::uint64_t seed = seed_or_default();
    const CounterRun run = stochastic_counter_model(h_, g_, f_, steps_, seed, trace_);
    RecordWriter writer(out_, common_.output_format());
    OutputRecord rec;
    rec.command = "counters";
    rec.seed = seed;
    rec.param("h", h_).param("g", g_).param("f", f_).param("n", steps_);
    manifest_for(writer, rec);
    if (trace_) {
        for (std::size_t s = 0; s < run.trace.size(); ++s) {
            OutputRecord step;
            step.command = "counters_step";
            step.seed = seed;
            step.param("step", static_cast<std::uint64_t>(s));
            step.result("k", run.trace[s].k).result("j", run.trace[s].j).result("i", run.trace[s].i);
            writer.write(step);
        }
    }
    rec.result("i_counters", run.i_counters)
        .result("j_counters", run.j_counters)
        .result("j_histogram", std::vector<std::int64_t>(run.j_histogram.begin(), run.j_histogram.end()))
        .result("joint_j_i", std::vector<std::int64_t>(run.joint.begin(), run.joint.end()));
    writer.write(rec);
    return success;
}

int Commands::cmd_two_ordered() {
    RecordWriter writer(out_, common_.output_format());
    OutputRecord rec;
    rec.command = "two-ordered";
    rec.param("n", static_cast<std::uint64_t>(n_));
    rec.result("mean", two_ordered_mean(n_));
    if (n_ <= 30) {
        const ExactRatio exact = two_ordered_mean_exact(n_);
        rec.result("mean_numerator", exact.num).result("mean_denominator", exact.den);
    }
    manifest_for(writer, rec);
    writer.write(rec);
    return success;
}

int Commands::cmd_deviation() {
    const Rational p = parse_probability(probability_);
    double a = static_cast<double>(m_) * p.value();
    if (!target_.empty()) {
        const auto res = std::from_chars(target_.data(), target_.data() + target_.size(), a);
        if (res.ec != std::errc() || res.ptr != target_.data() + target_.size()) {
            throw UsageError("cannot parse target '" + target_ + "'");
        }
    }
    RecordWriter writer(out_, common_.output_format());
    OutputRecord rec;
    rec.command = "deviation";
    rec.param("m", m_).param("p", std::to_string(p.num) + "/" + std::to_string(p.den)).param("a", a);
    rec.result("mean_abs_deviation", binomial_abs_deviation(m_, p, a))
        .result("asymptotic", binomial_abs_deviation_asymptotic(m_, p.value()));
    manifest_for(writer, rec);
    writer.write(rec);
    return success;
}

int Commands::cmd_uniformity() {
    const UniformityCheck check = mod_uniformity_check(m_, t_, g_);
    RecordWriter writer(out_, common_.output_format());
    OutputRecord rec;
    rec.command = "uniformity";
    rec.param("m", m_).param("t", t_).param("g", g_);
    rec.result("max_deviation", check.max_deviation)
        .result("bound", check.bound)
        .result("holds", check.holds)
        .result("distribution", check.distribution);
    manifest_for(writer, rec);
    writer.write(rec);
    return check.holds ? success : verification_failure;
}

int Commands::cmd_coupling() {
    const CouplingMatrix plan = maximal_coupling(p_, q_);
    RecordWriter writer(out_, common_.output_format());
    OutputRecord rec;
    rec.command = "coupling";
    rec.param("p", p_).param("q", q_);
    rec.result("plan", std::vector<double>(plan.plan().begin(), plan.plan().end()))
        .result("off_diagonal_mass", plan.off_diagonal_mass())
        .result("total_variation", plan.total_variation());
    manifest_for(writer, rec);
    writer.write(rec);
    return success;
}

int Commands::cmd_passes() {
    const KeyArray keys(std::vector<Key>(keys_.begin(), keys_.end()));
    const IncrementPlan plan(h_, g_, c_);
    const PassesResult result = run_passes(keys, plan);
    RecordWriter writer(out_, common_.output_format());
    OutputRecord rec;
    rec.command = "passes";
    rec.param("h", h_).param("g", g_).param("c", c_).param("keys", keys_);
    rec.result("after_first", to_i64(result.after_first.keys()))
        .result("after_second", to_i64(result.after_second.keys()))
        .result("pass1", result.costs.pass1)
        .result("pass2", result.costs.pass2)
        .result("pass3", result.costs.pass3)
        .result("total", result.costs.total);
    if (c_ == 1) rec.result("cross_list_total", total_cross_list_inversions(build_tables(keys, h_, g_)));
    manifest_for(writer, rec);
    writer.write(rec);
    return success;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Commands commands(out, err);
    return commands.run(args);
}

}  // namespace shellsort_lab::cli
