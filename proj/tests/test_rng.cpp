#include "oamncc/rng.hpp"

#include <doctest.h>

#include <cmath>
#include <set>
#include <vector>

using namespace oamncc::sim;

TEST_CASE("same seed and stream id replay the same draws")
{
    RngStream a = seeded_rng(42, "fuel-noise");
    RngStream b = seeded_rng(42, "fuel-noise");
    for (int i = 0; i < 1000; ++i) {
        CHECK(a.next_u64() == b.next_u64());
    }
}

TEST_CASE("distinct stream ids diverge immediately across seeds")
{
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        RngStream a = seeded_rng(seed, "a");
        RngStream b = seeded_rng(seed, "b");
        CHECK(a.next_u64() != b.next_u64());
    }
}

TEST_CASE("uniform draws stay in the unit interval")
{
    RngStream rng = seeded_rng(7, "range");
    for (int i = 0; i < 10000; ++i) {
        const double u = rng.uniform();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
    }
}

TEST_CASE("normal draws have the commanded moments")
{
    RngStream rng = seeded_rng(11, "normal");
    const int n = 100000;
    double sum = 0.0;
    double sum_sq = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = rng.normal(1.0, 0.05);
        sum += x;
        sum_sq += x * x;
    }
    const double mean = sum / n;
    const double var = sum_sq / n - mean * mean;
    CHECK(mean == doctest::Approx(1.0).epsilon(0.002));
    CHECK(std::sqrt(var) == doctest::Approx(0.05).epsilon(0.05));
}

TEST_CASE("derived per-trial seeds do not collide over a large batch")
{
    std::set<std::uint64_t> seen;
    for (std::uint64_t k = 0; k < 10000; ++k) {
        seen.insert(derive_seed(123, k));
    }
    CHECK(seen.size() == 10000);
}

TEST_CASE("bernoulli respects the edge probabilities")
{
    RngStream rng = seeded_rng(3, "bern");
    for (int i = 0; i < 100; ++i) {
        CHECK_FALSE(rng.bernoulli(0.0));
        CHECK(rng.bernoulli(1.0));
    }
}
