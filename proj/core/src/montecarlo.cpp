#include "oamncc/montecarlo.hpp"

#include "oamncc/errors.hpp"
#include "oamncc/rng.hpp"
#include "oamncc/scenario.hpp"
#include "oamncc/strategy.hpp"
#include "oamncc/trial.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <sstream>
#include <thread>

namespace oamncc::mc {

namespace {

std::uint64_t strategy_salt(const std::string& strategy)
{
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : strategy) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

} // namespace

const std::vector<double>& BatchResult::column(const std::string& metric) const
{
    for (std::size_t i = 0; i < metrics.size(); ++i) {
        if (metrics[i] == metric) {
            return columns[i];
        }
    }
    throw ConfigError("batch has no metric named '" + metric + "'");
}

OutcomeDistribution BatchResult::distribution(const std::string& metric) const
{
    OutcomeDistribution d;
    d.metric = metric;
    d.samples = column(metric);
    d.preset = spec.preset;
    d.strategy = spec.strategy;
    d.master_seed = spec.master_seed;
    return d;
}

BatchResult run_batch(const BatchSpec& spec)
{
    if (spec.n_trials < 1) {
        throw ConfigError("run_batch: n_trials must be at least 1");
    }
    const scenario::Preset& preset = scenario::preset_by_name(spec.preset);
    const strategy::Policy policy = strategy::make_policy(spec.strategy);
    if (!policy.applicable_to(preset.kind)) {
        throw ConfigError("strategy '" + spec.strategy + "' is not applicable to preset '" +
                          spec.preset + "'");
    }

    const bool resample = spec.config.boolean("mc.resample_per_strategy");
    const std::uint64_t seed_base =
        resample ? spec.master_seed ^ strategy_salt(spec.strategy) : spec.master_seed;

    BatchResult result;
    result.spec = spec;
    result.metrics = scenario::metric_names(preset.kind);
    result.columns.assign(result.metrics.size(),
                          std::vector<double>(static_cast<std::size_t>(spec.n_trials), 0.0));
    result.trial_seeds.resize(static_cast<std::size_t>(spec.n_trials));

    long jobs = spec.config.integer("mc.jobs");
    if (jobs <= 0) {
        jobs = static_cast<long>(std::thread::hardware_concurrency());
    }
    jobs = std::clamp<long>(jobs, 1, spec.n_trials);

    std::atomic<int> next{0};
    std::mutex failure_mutex;
    int failed_index = -1;
    std::exception_ptr failure;

    const auto worker = [&]() {
        while (true) {
            const int k = next.fetch_add(1);
            if (k >= spec.n_trials) {
                return;
            }
            const std::uint64_t seed = sim::derive_seed(seed_base, static_cast<std::uint64_t>(k));
            try {
                const scenario::ScenarioInstance instance =
                    scenario::sample_instance(preset, seed, spec.config);
                const scenario::TrialOutcome outcome = scenario::run_trial(instance, policy, seed);
                result.trial_seeds[static_cast<std::size_t>(k)] = seed;
                for (std::size_t m = 0; m < result.metrics.size(); ++m) {
                    result.columns[m][static_cast<std::size_t>(k)] =
                        outcome.metric(result.metrics[m]);
                }
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                // Keep the earliest failing trial for a reproducible report.
                if (failed_index < 0 || k < failed_index) {
                    failed_index = k;
                    std::ostringstream msg;
                    msg << "trial " << k << " (seed " << seed << ") failed: ";
                    try {
                        throw;
                    } catch (const ConfigError& e) {
                        failure = std::make_exception_ptr(ConfigError(msg.str() + e.what()));
                    } catch (const SamplingError& e) {
                        failure = std::make_exception_ptr(SamplingError(msg.str() + e.what()));
                    } catch (const std::exception& e) {
                        failure = std::make_exception_ptr(
                            std::runtime_error(msg.str() + e.what()));
                    }
                }
                return;
            }
        }
    };

    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(jobs));
        for (long j = 0; j < jobs; ++j) {
            pool.emplace_back(worker);
        }
        for (auto& t : pool) {
            t.join();
        }
    }

    if (failure) {
        std::rethrow_exception(failure);
    }
    return result;
}

std::vector<SweepCell> sweep_overboard(const std::vector<double>& margins,
                                       const std::vector<double>& ratios, int n_trials,
                                       std::uint64_t master_seed, const Config& config)
{
    if (margins.empty() || ratios.empty()) {
        throw ConfigError("sweep_overboard: margin and ratio grids must be non-empty");
    }

    const auto run_cell = [&](const std::string& strategy_name) {
        BatchSpec spec;
        spec.preset = "overboard";
        spec.strategy = strategy_name;
        spec.n_trials = n_trials;
        spec.master_seed = master_seed;
        spec.config = config;
        return run_batch(spec);
    };

    const auto count = [](const std::vector<double>& samples) {
        return static_cast<int>(std::count(samples.begin(), samples.end(), 1.0));
    };

    std::vector<SweepCell> cells;
    for (double margin : margins) {
        for (double ratio : ratios) {
            std::ostringstream name;
            name << "overboard-util:" << margin << ":" << ratio;
            const BatchResult r = run_cell(name.str());
            SweepCell cell;
            cell.margin = margin;
            cell.ratio = ratio;
            cell.policy = name.str();
            cell.rescues = count(r.column("rescued"));
            cell.rtb_successes = count(r.column("rtb_success"));
            cell.spotted = count(r.column("sailor_spotted"));
            cell.abandoned_after_spotting = count(r.column("abandoned_after_spotting"));
            cells.push_back(std::move(cell));
        }
    }
    for (double margin : margins) {
        std::ostringstream name;
        name << "overboard-duty:" << margin << ":" << 1.0;
        const BatchResult r = run_cell(name.str());
        SweepCell cell;
        cell.margin = margin;
        cell.ratio = 1.0;
        cell.policy = name.str();
        cell.rescues = count(r.column("rescued"));
        cell.rtb_successes = count(r.column("rtb_success"));
        cell.spotted = count(r.column("sailor_spotted"));
        cell.abandoned_after_spotting = count(r.column("abandoned_after_spotting"));
        cells.push_back(std::move(cell));
    }
    return cells;
}

ComparisonReport compare(const OutcomeDistribution& a, const OutcomeDistribution& b, double alpha)
{
    if (a.metric != b.metric) {
        throw ConfigError("compare: metric mismatch ('" + a.metric + "' vs '" + b.metric + "')");
    }
    const stats::KsResult ks = stats::ks_two_sample(a.samples, b.samples);
    const stats::Summary sa = stats::summarize(a.samples);
    const stats::Summary sb = stats::summarize(b.samples);

    ComparisonReport report;
    report.metric = a.metric;
    report.mean_a = sa.mean;
    report.mean_b = sb.mean;
    report.median_a = sa.median;
    report.median_b = sb.median;
    report.d = ks.d;
    report.p = ks.p;
    report.alpha = alpha;
    report.significant = ks.p < alpha;
    report.n_a = sa.n;
    report.n_b = sb.n;
    return report;
}

} // namespace oamncc::mc
