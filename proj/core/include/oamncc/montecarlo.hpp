#pragma once

#include "oamncc/config.hpp"
#include "oamncc/stats.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace oamncc::mc {

struct BatchSpec {
    std::string preset;
    std::string strategy;
    int n_trials = 1000;
    std::uint64_t master_seed = 0;
    Config config;
};

struct OutcomeDistribution {
    std::string metric;
    std::vector<double> samples; // stable trial-index order, length n_trials
    std::string preset;
    std::string strategy;
    std::uint64_t master_seed = 0;
};

struct BatchResult {
    BatchSpec spec;
    std::vector<std::string> metrics;
    std::vector<std::vector<double>> columns; // [metric][trial]
    std::vector<std::uint64_t> trial_seeds;

    const std::vector<double>& column(const std::string& metric) const;
    OutcomeDistribution distribution(const std::string& metric) const;
};

/**
 * Run n independent trials, each reproducible on its own from the derived
 * (master_seed, index) seed. Workers write by trial index, so results are
 * bit-identical for any worker count. Instances are reused across
 * strategies at the same master seed (common random numbers) unless
 * mc.resample_per_strategy is set. The first failing trial aborts the
 * batch with its seed in the message.
 */
BatchResult run_batch(const BatchSpec& spec);

struct SweepCell {
    double margin = 0.0;
    double ratio = 0.0;
    std::string policy;
    int rescues = 0;
    int rtb_successes = 0;
    int spotted = 0;
    int abandoned_after_spotting = 0;
};

/**
 * Overboard sweep: one cell per (margin, ratio) for the utilitarian policy
 * plus one duty-wrapped cell per margin. All cells share the same sampled
 * instances, so monotonicity claims compare like with like.
 */
std::vector<SweepCell> sweep_overboard(const std::vector<double>& margins,
                                       const std::vector<double>& ratios, int n_trials,
                                       std::uint64_t master_seed, const Config& config);

struct ComparisonReport {
    std::string metric;
    double mean_a = 0.0;
    double mean_b = 0.0;
    double median_a = 0.0;
    double median_b = 0.0;
    double d = 0.0;
    double p = 1.0;
    double alpha = 0.05;
    bool significant = false;
    std::size_t n_a = 0;
    std::size_t n_b = 0;
};

/// Kolmogorov-Smirnov comparison of two outcome distributions over the same
/// metric; throws ConfigError on a metric mismatch.
ComparisonReport compare(const OutcomeDistribution& a, const OutcomeDistribution& b,
                         double alpha = 0.05);

} // namespace oamncc::mc
