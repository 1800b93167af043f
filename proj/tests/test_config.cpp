#include "oamncc/config.hpp"

#include "oamncc/errors.hpp"

#include <doctest.h>

#include <cstdio>
#include <fstream>

using namespace oamncc;

TEST_CASE("defaults cover every schema key")
{
    Config cfg;
    for (const auto& entry : Config::schema()) {
        CHECK(cfg.resolved().count(entry.key) == 1);
    }
    CHECK(cfg.real("piracy.p_eventual") == doctest::Approx(0.95));
    CHECK(cfg.integer("piracy.window_min") == 30);
    CHECK(cfg.boolean("fuel.noise_enabled"));
    CHECK(cfg.text("memo.provenance") == "command_directive");
}

TEST_CASE("unknown keys are rejected")
{
    Config cfg;
    CHECK_THROWS_AS(cfg.set("piracy.p_evental", "0.9"), ConfigError);
    CHECK_THROWS_AS(cfg.apply_override("nonsense=1"), ConfigError);
    CHECK_THROWS_AS(cfg.real("nonsense"), ConfigError);
}

TEST_CASE("numeric overrides are validated against their declared ranges")
{
    Config cfg;
    CHECK_NOTHROW(cfg.set("piracy.p_eventual", "0.5"));
    CHECK_THROWS_AS(cfg.set("piracy.p_eventual", "1.5"), ConfigError);
    CHECK_THROWS_AS(cfg.set("piracy.p_eventual", "oops"), ConfigError);
    CHECK_THROWS_AS(cfg.set("piracy.window_min", "0"), ConfigError);
    CHECK_THROWS_AS(cfg.set("piracy.window_min", "12.5"), ConfigError);
    CHECK_THROWS_AS(cfg.set("fuel.noise_enabled", "maybe"), ConfigError);
    CHECK_THROWS_AS(cfg.set("memo.provenance", "gossip"), ConfigError);
}

TEST_CASE("config files use dotted keys with hash comments")
{
    const char* path = "oamncc_test_config.tmp";
    {
        std::ofstream out(path);
        out << "# fleet tuning\n";
        out << "piracy.p_eventual = 0.9   # softer pirates\n";
        out << "\n";
        out << "sim.max_speed_kn=25\n";
    }
    Config cfg;
    cfg.load_file(path);
    CHECK(cfg.real("piracy.p_eventual") == doctest::Approx(0.9));
    CHECK(cfg.real("sim.max_speed_kn") == doctest::Approx(25.0));
    std::remove(path);

    Config missing;
    CHECK_THROWS_AS(missing.load_file("does-not-exist.conf"), ConfigError);
}

TEST_CASE("later settings win, matching flag-over-file precedence")
{
    Config cfg;
    cfg.set("run.trials", "500"); // file layer
    cfg.set("run.trials", "50");  // flag layer applied after
    CHECK(cfg.integer("run.trials") == 50);
}
