// Acceptance suite: runs every headline criterion at its stated tolerance
// and prints one PASS/FAIL line each. Exit code is the number of failures.

#include "cli.hpp"
#include "oamncc/config.hpp"
#include "oamncc/montecarlo.hpp"
#include "oamncc/rng.hpp"
#include "oamncc/scenario.hpp"
#include "oamncc/sim.hpp"
#include "oamncc/stats.hpp"
#include "oamncc/strategy.hpp"
#include "oamncc/trial.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numeric>
#include <sstream>
#include <vector>

using namespace oamncc;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

void report(int criterion, const std::string& name, bool pass, const std::string& detail)
{
    std::printf("%s criterion %2d: %s%s%s\n", pass ? "PASS" : "FAIL", criterion, name.c_str(),
                detail.empty() ? "" : " -- ", detail.c_str());
    std::fflush(stdout);
    if (!pass) {
        ++g_failures;
    }
}

void run_criterion(int criterion, const std::string& name,
                   const std::function<std::pair<bool, std::string>()>& body)
{
    try {
        const auto [pass, detail] = body();
        report(criterion, name, pass, detail);
    } catch (const std::exception& e) {
        report(criterion, name, false, std::string("exception: ") + e.what());
    }
}

mc::BatchSpec spec_for(const std::string& preset, const std::string& strategy, int trials,
                       std::uint64_t seed)
{
    mc::BatchSpec spec;
    spec.preset = preset;
    spec.strategy = strategy;
    spec.n_trials = trials;
    spec.master_seed = seed;
    return spec;
}

double mean_of(const std::vector<double>& v)
{
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

std::string fmt(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.4g", v);
    return buf;
}

// ── criterion 1 ──────────────────────────────────────────────────────────
// 10^4 unimpeded attacks through the engine: boarding success 0.95 +- 0.01,
// no attack alive past minute 30.
std::pair<bool, std::string> attack_calibration()
{
    Config cfg;
    const auto params = scenario::PiracyParams::from_config(cfg);
    int boarded = 0;
    int attacks = 0;
    bool window_respected = true;
    const int instances = 2500; // 4 attacks each
    for (int i = 0; i < instances; ++i) {
        const std::uint64_t seed = sim::derive_seed(101, static_cast<std::uint64_t>(i));
        auto rng = sim::seeded_rng(seed, "sample");
        const auto inst = scenario::sample_piracy(rng, params);
        auto world = scenario::build_world(inst, seed);
        sim::HelmCommand hold;
        hold.mode = sim::ShipMode::loiter;
        for (int t = 0; t < 35; ++t) {
            sim::step(world, hold);
            if (world.clock.t_min > 30 && !world.all_attacks_resolved()) {
                window_respected = false;
            }
        }
        for (const auto& m : world.merchants) {
            ++attacks;
            boarded += m.attack.boarded ? 1 : 0;
            if (m.attack.boarded && m.attack.boarded_minute > 30) {
                window_respected = false;
            }
        }
    }
    const double rate = static_cast<double>(boarded) / static_cast<double>(attacks);
    const bool pass = attacks == 10000 && std::abs(rate - 0.95) <= 0.01 && window_respected;
    return {pass, "boarding rate " + fmt(rate) + " over " + std::to_string(attacks) +
                      " attacks; window respected: " + (window_respected ? "yes" : "no")};
}

// ── criterion 2 ──────────────────────────────────────────────────────────
// Closed-form expected ransom avoided vs a 10^5-sample rollout oracle.
std::pair<bool, std::string> marginal_gain_oracle()
{
    const double p = sim::per_minute_boarding_probability(0.95, 30);
    const double ransom = 1e6;
    const int rollouts = 100000;
    std::ostringstream detail;
    bool pass = true;
    for (int travel : {0, 5, 10, 20, 29, 30, 40}) {
        sim::RngStream rng = sim::seeded_rng(7000 + travel, "rollout");
        long long saved = 0;
        for (int r = 0; r < rollouts; ++r) {
            int boarding_minute = 0;
            for (int t = 1; t <= 30; ++t) {
                if (rng.uniform() < p) {
                    boarding_minute = t;
                    break;
                }
            }
            if (boarding_minute != 0 && travel < boarding_minute) {
                ++saved;
            }
        }
        const double rolled = ransom * static_cast<double>(saved) / rollouts;
        const double closed = strategy::expected_ransom_avoided(travel, p, 30, ransom);
        const double gap = std::abs(closed - rolled);
        if (gap > 0.01 * ransom) {
            pass = false;
            detail << " t=" << travel << " gap=" << fmt(gap);
        }
    }
    return {pass, pass ? "all 7 travel times within 0.01*ransom" : detail.str()};
}

// ── criterion 3 ──────────────────────────────────────────────────────────
// Fig-3 ordering under common random numbers, n=1000.
std::pair<bool, std::string> strategy_ordering()
{
    const int n = 1000;
    const std::uint64_t seed = 42;
    const auto marginal = mc::run_batch(spec_for("piracy", "marginal-gain", n, seed));
    const auto ransom = mc::run_batch(spec_for("piracy", "ransom", n, seed));
    const auto closest = mc::run_batch(spec_for("piracy", "closest", n, seed));

    const double mean_marginal = mean_of(marginal.column("ransom_avoided"));
    const double mean_ransom = mean_of(ransom.column("ransom_avoided"));
    const double mean_closest = mean_of(closest.column("ransom_avoided"));

    const auto vs_ransom = mc::compare(marginal.distribution("ransom_avoided"),
                                       ransom.distribution("ransom_avoided"));
    const auto vs_closest = mc::compare(marginal.distribution("ransom_avoided"),
                                        closest.distribution("ransom_avoided"));

    const bool pass = mean_marginal > mean_ransom && mean_marginal > mean_closest &&
                      vs_ransom.significant && vs_closest.significant;
    return {pass, "means M/R/C = " + fmt(mean_marginal) + "/" + fmt(mean_ransom) + "/" +
                      fmt(mean_closest) + "; p(M,R)=" + fmt(vs_ransom.p) +
                      " p(M,C)=" + fmt(vs_closest.p)};
}

// ── criterion 4 ──────────────────────────────────────────────────────────
// Full-budget backtrack spots the sailor half the time, noiseless fuel.
std::pair<bool, std::string> overboard_feasibility()
{
    auto spec = spec_for("overboard", "overboard-util:0.5:10", 1000, 4242);
    spec.config.set("fuel.noise_enabled", "false");
    const auto batch = mc::run_batch(spec);
    const double fraction = mean_of(batch.column("sailor_spotted"));
    const bool pass = std::abs(fraction - 0.50) <= 0.04;
    return {pass, "spotted fraction " + fmt(fraction)};
}

struct SweepTables {
    std::vector<double> margins{0.5, 0.75, 0.9, 0.95};
    std::vector<double> ratios{0.1, 0.5, 1, 2, 5, 10};
    std::vector<mc::SweepCell> cells;
};

const SweepTables& shared_sweep()
{
    static const SweepTables tables = [] {
        SweepTables t;
        Config cfg;
        cfg.set("fuel.noise_enabled", "false");
        t.cells = mc::sweep_overboard(t.margins, t.ratios, 1000, 99, cfg);
        return t;
    }();
    return tables;
}

// ── criterion 5 ──────────────────────────────────────────────────────────
// The duty wrapper abandons no one and stays within 5% of the best
// unwrapped sweep point at the same margin.
std::pair<bool, std::string> duty_wrapper()
{
    const auto& sweep = shared_sweep();
    bool pass = true;
    std::ostringstream detail;
    for (double margin : sweep.margins) {
        int wrapped_total = -1;
        int wrapped_abandoned = 0;
        int best_unwrapped = 0;
        for (const auto& c : sweep.cells) {
            if (c.margin != margin) {
                continue;
            }
            const int total = c.rescues + c.rtb_successes;
            if (c.policy.rfind("overboard-duty", 0) == 0) {
                wrapped_total = total;
                wrapped_abandoned = c.abandoned_after_spotting;
            } else {
                best_unwrapped = std::max(best_unwrapped, total);
            }
        }
        const double gap = std::abs(wrapped_total - best_unwrapped) /
                           static_cast<double>(best_unwrapped);
        if (wrapped_abandoned != 0 || gap > 0.05) {
            pass = false;
        }
        detail << " m=" << fmt(margin) << ":" << wrapped_total << "/" << best_unwrapped;
        if (wrapped_abandoned != 0) {
            detail << " abandoned=" << wrapped_abandoned;
        }
    }
    return {pass, "wrapped/best totals:" + detail.str()};
}

// ── criterion 6 ──────────────────────────────────────────────────────────
// Rescue counts weakly decrease in the margin at every fixed ratio.
std::pair<bool, std::string> conservatism_monotonicity()
{
    const auto& sweep = shared_sweep();
    bool pass = true;
    std::ostringstream detail;
    for (double ratio : sweep.ratios) {
        int last = -1;
        detail << " r=" << fmt(ratio) << ":";
        for (double margin : sweep.margins) { // ascending
            for (const auto& c : sweep.cells) {
                if (c.margin == margin && c.ratio == ratio &&
                    c.policy.rfind("overboard-util", 0) == 0) {
                    detail << " " << c.rescues;
                    if (last >= 0 && c.rescues > last) {
                        pass = false;
                    }
                    last = c.rescues;
                }
            }
        }
    }
    return {pass, "rescues by margin:" + detail.str()};
}

// ── criterion 7 ──────────────────────────────────────────────────────────
// Folding the cannon memo into beliefs beats ignoring it, significantly.
std::pair<bool, std::string> water_cannon_update()
{
    const int n = 1000;
    const std::uint64_t seed = 77;
    const auto updated = mc::run_batch(spec_for("piracy-cannons", "marginal-gain", n, seed));
    auto ignoring_spec = spec_for("piracy-cannons", "marginal-gain", n, seed);
    ignoring_spec.config.set("memo.dynamic_update", "false");
    const auto ignoring = mc::run_batch(ignoring_spec);

    const double mean_updated = mean_of(updated.column("ransom_avoided"));
    const double mean_ignoring = mean_of(ignoring.column("ransom_avoided"));
    const auto report = mc::compare(updated.distribution("ransom_avoided"),
                                    ignoring.distribution("ransom_avoided"));
    const bool pass = mean_updated > mean_ignoring && report.significant;
    return {pass, "means " + fmt(mean_updated) + " vs " + fmt(mean_ignoring) +
                      ", p=" + fmt(report.p)};
}

// ── criterion 8 ──────────────────────────────────────────────────────────
// A social-media memo at the default threshold changes nothing.
std::pair<bool, std::string> provenance_gating()
{
    const int n = 1000;
    const std::uint64_t seed = 77;
    auto gossip_spec = spec_for("piracy-cannons", "marginal-gain", n, seed);
    gossip_spec.config.set("memo.provenance", "social_media");
    const auto gossip = mc::run_batch(gossip_spec);

    auto ignoring_spec = spec_for("piracy-cannons", "marginal-gain", n, seed);
    ignoring_spec.config.set("memo.dynamic_update", "false");
    const auto ignoring = mc::run_batch(ignoring_spec);

    bool identical = gossip.metrics == ignoring.metrics;
    for (std::size_t m = 0; identical && m < gossip.columns.size(); ++m) {
        identical = gossip.columns[m] == ignoring.columns[m];
    }
    return {identical, identical ? "batches bit-identical" : "batches diverged"};
}

// ── criterion 9 ──────────────────────────────────────────────────────────
// The drone plan meets both duties almost always; without the drone, never.
std::pair<bool, std::string> adrift_affordance()
{
    const int n = 1000;
    const auto with_drone = mc::run_batch(spec_for("adrift", "adrift-drone", n, 5150));
    const double both = mean_of(with_drone.column("both_duties_met"));

    auto no_drone_spec = spec_for("adrift", "adrift-drone", n, 5150);
    no_drone_spec.config.set("adrift.drone_available", "false");
    const auto without = mc::run_batch(no_drone_spec);
    const double both_without = mean_of(without.column("both_duties_met"));

    const bool pass = both >= 0.95 && both_without == 0.0;
    return {pass, "both duties: " + fmt(both) + " with drone, " + fmt(both_without) + " without"};
}

// ── criterion 10 ─────────────────────────────────────────────────────────
// Every piracy trial: intra-constraint conflict, injected ranking candidate
// at zero utility, never selected.
std::pair<bool, std::string> intra_constraint_rule()
{
    Config cfg;
    const auto preset = scenario::preset_by_name("piracy");
    int checked = 0;
    for (const std::string name : {"marginal-gain", "closest", "ransom"}) {
        const auto policy = strategy::make_policy(name);
        const int trials = name == "marginal-gain" ? 600 : 200;
        for (int k = 0; k < trials; ++k) {
            const std::uint64_t seed = sim::derive_seed(1010, static_cast<std::uint64_t>(checked));
            const auto inst = scenario::sample_instance(preset, seed, cfg);
            const auto outcome = scenario::run_trial(inst, policy, seed);
            ++checked;
            if (!outcome.conflict.intra_constraint || outcome.priority_rank_mu != 0.0 ||
                outcome.chosen_id == "priority-rank") {
                return {false, "violated at trial " + std::to_string(checked) + " (" + name + ")"};
            }
        }
    }
    return {true, std::to_string(checked) + " trials, ranking candidate always inert"};
}

// ── criterion 11 ─────────────────────────────────────────────────────────
// KS against brute force (exact) and a 10^4-shuffle permutation test.
std::pair<bool, std::string> ks_oracles()
{
    sim::RngStream rng = sim::seeded_rng(7777, "ks-acceptance");

    // exact equality on 500 random pairs
    for (int pair = 0; pair < 500; ++pair) {
        const int na = 1 + static_cast<int>(rng.uniform() * 200);
        const int nb = 1 + static_cast<int>(rng.uniform() * 200);
        std::vector<double> a(static_cast<std::size_t>(na));
        std::vector<double> b(static_cast<std::size_t>(nb));
        const bool discretize = rng.bernoulli(0.5);
        for (double& v : a) {
            v = discretize ? std::floor(rng.uniform(0.0, 15.0)) : rng.normal(0.0, 1.0);
        }
        for (double& v : b) {
            v = discretize ? std::floor(rng.uniform(0.0, 15.0)) : rng.normal(0.3, 1.2);
        }
        double brute = 0.0;
        std::vector<double> points = a;
        points.insert(points.end(), b.begin(), b.end());
        for (double x : points) {
            const double fa = static_cast<double>(std::count_if(
                                  a.begin(), a.end(), [&](double v) { return v <= x; })) /
                              na;
            const double fb = static_cast<double>(std::count_if(
                                  b.begin(), b.end(), [&](double v) { return v <= x; })) /
                              nb;
            brute = std::max(brute, std::abs(fa - fb));
        }
        if (stats::ks_two_sample(a, b).d != brute) {
            return {false, "D mismatch on pair " + std::to_string(pair)};
        }
    }

    // asymptotic p vs permutation p for small n
    const auto permutation_p = [](const std::vector<double>& a, const std::vector<double>& b,
                                  sim::RngStream& shuffle_rng) {
        const double observed = stats::ks_two_sample(a, b).d;
        std::vector<double> pool = a;
        pool.insert(pool.end(), b.begin(), b.end());
        const int shuffles = 10000;
        int at_least = 0;
        for (int s = 0; s < shuffles; ++s) {
            for (std::size_t i = pool.size(); i > 1; --i) {
                const auto j = static_cast<std::size_t>(shuffle_rng.uniform() * i);
                std::swap(pool[i - 1], pool[j]);
            }
            const std::vector<double> pa(pool.begin(),
                                         pool.begin() + static_cast<long>(a.size()));
            const std::vector<double> pb(pool.begin() + static_cast<long>(a.size()), pool.end());
            if (stats::ks_two_sample(pa, pb).d >= observed - 1e-15) {
                ++at_least;
            }
        }
        return static_cast<double>(at_least) / shuffles;
    };

    std::ostringstream detail;
    bool pass = true;
    int probe = 0;
    for (double shift : {0.0, 0.25, 0.5, 0.75}) {
        const int na = 20 + (probe * 7) % 31;
        const int nb = 20 + (probe * 11) % 31;
        ++probe;
        std::vector<double> a(static_cast<std::size_t>(na));
        std::vector<double> b(static_cast<std::size_t>(nb));
        for (double& v : a) {
            v = rng.normal(0.0, 1.0);
        }
        for (double& v : b) {
            v = rng.normal(shift, 1.0);
        }
        const double asymptotic = stats::ks_two_sample(a, b).p;
        const double permuted = permutation_p(a, b, rng);
        detail << " |" << fmt(asymptotic) << "-" << fmt(permuted) << "|";
        if (std::abs(asymptotic - permuted) > 0.02) {
            pass = false;
        }
    }
    return {pass, "500 exact D pairs; p gaps:" + detail.str()};
}

// ── criterion 12 ─────────────────────────────────────────────────────────
// Byte-identical CSVs across reruns and worker counts, via the CLI.
std::pair<bool, std::string> determinism()
{
    const fs::path base = fs::temp_directory_path() / "oamncc_acceptance_det";
    fs::remove_all(base);
    const auto slurp = [](const fs::path& p) {
        std::ifstream in(p, std::ios::binary);
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };
    const auto run_once = [&](const std::string& tag, const std::string& jobs) {
        const fs::path dir = base / tag;
        const int rc = cli::dispatch({"run", "--preset", "piracy-cannons", "--strategy",
                                      "marginal-gain", "--trials", "400", "--seed", "2024",
                                      "--out", dir.string(), "--override", "mc.jobs=" + jobs});
        if (rc != 0) {
            throw std::runtime_error("cli run failed with exit code " + std::to_string(rc));
        }
        return slurp(dir / "piracy-cannons_marginal-gain_2024.csv");
    };
    const std::string first = run_once("a", "1");
    const std::string second = run_once("b", "1");
    const std::string parallel = run_once("c", "6");
    fs::remove_all(base);
    const bool pass = !first.empty() && first == second && first == parallel;
    return {pass, pass ? "3 runs, byte-identical CSVs" : "outputs diverged"};
}

} // namespace

int main()
{
    run_criterion(1, "attack-model calibration (0.95 within 0.01, 30-minute window)",
                  attack_calibration);
    run_criterion(2, "marginal-gain closed form vs rollout oracle", marginal_gain_oracle);
    run_criterion(3, "strategy ordering and KS significance", strategy_ordering);
    run_criterion(4, "overboard feasibility (half the sailors reachable)", overboard_feasibility);
    run_criterion(5, "duty-once-spotted wrapper performance", duty_wrapper);
    run_criterion(6, "conservatism monotonicity across margins", conservatism_monotonicity);
    run_criterion(7, "water-cannon belief update pays off", water_cannon_update);
    run_criterion(8, "provenance gating of the capability memo", provenance_gating);
    run_criterion(9, "adrift drone affordance resolves both duties", adrift_affordance);
    run_criterion(10, "intra-constraint conflicts sideline priority ranking",
                  intra_constraint_rule);
    run_criterion(11, "KS statistic and p-value against independent oracles", ks_oracles);
    run_criterion(12, "bit-exact reproducibility through the CLI", determinism);

    if (g_failures == 0) {
        std::printf("all acceptance criteria passed\n");
    } else {
        std::printf("%d acceptance criterion(s) failed\n", g_failures);
    }
    return g_failures;
}
