#include "oamncc/montecarlo.hpp"
#include "oamncc/rng.hpp"
#include "oamncc/scenario.hpp"
#include "oamncc/stats.hpp"
#include "oamncc/strategy.hpp"
#include "oamncc/trial.hpp"

#include <benchmark/benchmark.h>

#include <vector>

using namespace oamncc;

namespace {

void bm_rng_uniform(benchmark::State& state)
{
    sim::RngStream rng = sim::seeded_rng(1, "bench");
    double acc = 0.0;
    for (auto _ : state) {
        acc += rng.uniform();
    }
    benchmark::DoNotOptimize(acc);
}
BENCHMARK(bm_rng_uniform);

void bm_sample_piracy(benchmark::State& state)
{
    Config cfg;
    const auto params = scenario::PiracyParams::from_config(cfg);
    std::uint64_t seed = 0;
    for (auto _ : state) {
        auto rng = sim::seeded_rng(seed++, "sample");
        benchmark::DoNotOptimize(scenario::sample_piracy(rng, params));
    }
}
BENCHMARK(bm_sample_piracy);

void bm_piracy_trial(benchmark::State& state)
{
    Config cfg;
    const auto preset = scenario::preset_by_name("piracy");
    const auto policy = strategy::make_policy("marginal-gain");
    std::uint64_t seed = 0;
    for (auto _ : state) {
        const auto inst = scenario::sample_instance(preset, seed, cfg);
        benchmark::DoNotOptimize(scenario::run_trial(inst, policy, seed));
        ++seed;
    }
}
BENCHMARK(bm_piracy_trial);

void bm_overboard_trial(benchmark::State& state)
{
    Config cfg;
    const auto preset = scenario::preset_by_name("overboard");
    const auto policy = strategy::make_policy("overboard-duty:0.5:1");
    std::uint64_t seed = 0;
    for (auto _ : state) {
        const auto inst = scenario::sample_instance(preset, seed, cfg);
        benchmark::DoNotOptimize(scenario::run_trial(inst, policy, seed));
        ++seed;
    }
}
BENCHMARK(bm_overboard_trial);

void bm_ks_two_sample(benchmark::State& state)
{
    const auto n = static_cast<std::size_t>(state.range(0));
    sim::RngStream rng = sim::seeded_rng(3, "bench-ks");
    std::vector<double> a(n);
    std::vector<double> b(n);
    for (std::size_t i = 0; i < n; ++i) {
        a[i] = rng.normal(0.0, 1.0);
        b[i] = rng.normal(0.2, 1.0);
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(stats::ks_two_sample(a, b));
    }
}
BENCHMARK(bm_ks_two_sample)->Arg(100)->Arg(1000);

void bm_batch_100(benchmark::State& state)
{
    mc::BatchSpec spec;
    spec.preset = "piracy";
    spec.strategy = "closest";
    spec.n_trials = 100;
    spec.master_seed = 9;
    spec.config.set("mc.jobs", std::to_string(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(mc::run_batch(spec));
    }
}
BENCHMARK(bm_batch_100)->Arg(1)->Arg(4);

} // namespace

BENCHMARK_MAIN();
