#include "oamncc/geometry.hpp"

#include <doctest.h>

using namespace oamncc::sim;

namespace {

// Independent oracle: integrate the leg with fixed one-minute steps and
// count minutes until arrival.
int stepwise_travel_minutes(Position from, Position to, double speed_kn)
{
    int minutes = 0;
    while (distance_nm(from, to) > 1e-12) {
        const double reach = speed_kn / 60.0;
        const double d = distance_nm(from, to);
        if (reach >= d) {
            from = to;
        } else {
            const Vec2 h = unit_heading(from, to);
            from.x += h.x * reach;
            from.y += h.y * reach;
        }
        ++minutes;
        REQUIRE(minutes < 100000);
    }
    return minutes;
}

} // namespace

TEST_CASE("travel time for a straight north leg")
{
    CHECK(travel_time_min({0, 0}, {0, 30}, 30.0) == doctest::Approx(60.0));
}

TEST_CASE("travel time of a zero-length leg is zero")
{
    CHECK(travel_time_min({0, 0}, {0, 0}, 3.0) == doctest::Approx(0.0));
    CHECK(travel_time_min({0, 0}, {0, 0}, 55.0) == doctest::Approx(0.0));
}

TEST_CASE("travel time matches the step-integration oracle on a 3-4-5 leg")
{
    const double analytic = travel_time_min({0, 0}, {3, 4}, 10.0);
    CHECK(analytic == doctest::Approx(30.0));
    CHECK(stepwise_travel_minutes({0, 0}, {3, 4}, 10.0) == 30);
}

TEST_CASE("non-positive speed is rejected")
{
    CHECK_THROWS_AS(travel_time_min({0, 0}, {1, 0}, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(travel_time_min({0, 0}, {1, 0}, -3.0), std::invalid_argument);
}

TEST_CASE("distance is symmetric and positive definite")
{
    const Position a{2.5, -1.0};
    const Position b{-4.0, 3.5};
    CHECK(distance_nm(a, b) == doctest::Approx(distance_nm(b, a)));
    CHECK(distance_nm(a, a) == 0.0);
    CHECK(distance_nm(a, b) > 0.0);
}
