#pragma once

#include <cmath>
#include <stdexcept>

namespace oamncc::sim {

// Flat-plane chart coordinates in nautical miles, x east / y north.
// Scenario scale stays under ~100 nm, so no great-circle corrections.
struct Position {
    double x = 0.0;
    double y = 0.0;
};

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

inline double distance_nm(const Position& a, const Position& b)
{
    return std::hypot(b.x - a.x, b.y - a.y);
}

inline Vec2 unit_heading(const Position& from, const Position& to)
{
    const double d = distance_nm(from, to);
    if (d <= 0.0) {
        return {1.0, 0.0};
    }
    return {(to.x - from.x) / d, (to.y - from.y) / d};
}

// Minutes to cover the leg at constant speed.
inline double travel_time_min(const Position& from, const Position& to, double speed_kn)
{
    if (speed_kn <= 0.0) {
        throw std::invalid_argument("travel_time_min: speed must be positive");
    }
    return distance_nm(from, to) / speed_kn * 60.0;
}

} // namespace oamncc::sim
