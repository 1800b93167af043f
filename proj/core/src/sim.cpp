#include "oamncc/sim.hpp"

#include "oamncc/errors.hpp"

#include <algorithm>
#include <cmath>

namespace oamncc::sim {

namespace {

constexpr double kArrivalEpsNm = 1e-6;
// Drifting contacts never sit exactly on a waypoint; being within a tenth
// of a mile of flotsam counts as alongside.
constexpr double kFlotsamContactNm = 0.1;

void move_toward(Position& pos, Vec2& heading, const Position& target, double speed_kn, int dt_min)
{
    const double d = distance_nm(pos, target);
    if (d <= kArrivalEpsNm) {
        return;
    }
    heading = unit_heading(pos, target);
    const double reach = speed_kn * dt_min / 60.0;
    if (reach >= d) {
        pos = target; // clamp: arrivals land exactly on the waypoint
    } else {
        pos.x += heading.x * reach;
        pos.y += heading.y * reach;
    }
}

// Sailor is spotted when the minute's swept track passes abeam within the
// lookout range. Projection is restricted to the segment so the sweep only
// covers water actually passed.
bool sweep_spots(const Position& from, const Position& to, const Position& sailor, double range_nm)
{
    const double dx = to.x - from.x;
    const double dy = to.y - from.y;
    const double len2 = dx * dx + dy * dy;
    if (len2 <= 0.0) {
        return distance_nm(from, sailor) <= range_nm;
    }
    const double t = ((sailor.x - from.x) * dx + (sailor.y - from.y) * dy) / len2;
    if (t < 0.0 || t > 1.0) {
        return false;
    }
    const Position foot{from.x + t * dx, from.y + t * dy};
    return distance_nm(foot, sailor) <= range_nm;
}

} // namespace

const char* to_string(ShipMode mode)
{
    switch (mode) {
    case ShipMode::transit: return "transit";
    case ShipMode::backtrack: return "backtrack";
    case ShipMode::search: return "search";
    case ShipMode::rescue: return "rescue";
    case ShipMode::loiter: return "loiter";
    }
    return "?";
}

const char* to_string(MerchantClass cls)
{
    switch (cls) {
    case MerchantClass::large_tanker: return "large_tanker";
    case MerchantClass::tanker: return "tanker";
    case MerchantClass::container: return "container";
    case MerchantClass::cargo: return "cargo";
    }
    return "?";
}

const char* to_string(ScenarioKind kind)
{
    switch (kind) {
    case ScenarioKind::overboard: return "overboard";
    case ScenarioKind::piracy: return "piracy";
    case ScenarioKind::adrift: return "adrift";
    }
    return "?";
}

double FuelRates::rate_for(ShipMode mode) const
{
    switch (mode) {
    case ShipMode::transit: return transit;
    case ShipMode::backtrack: return backtrack;
    case ShipMode::search: return search;
    case ShipMode::rescue: return rescue;
    case ShipMode::loiter: return loiter;
    }
    return transit;
}

bool WorldState::all_attacks_resolved() const
{
    return std::none_of(merchants.begin(), merchants.end(),
                        [](const Merchant& m) { return m.attack.active; });
}

bool WorldState::ownship_at(const Position& p, double eps_nm) const
{
    return distance_nm(ownship.position, p) <= eps_nm;
}

double per_minute_boarding_probability(double p_eventual, int window_min)
{
    if (p_eventual <= 0.0 || p_eventual >= 1.0 || window_min < 1) {
        throw std::invalid_argument("per_minute_boarding_probability: bad calibration inputs");
    }
    return 1.0 - std::pow(1.0 - p_eventual, 1.0 / static_cast<double>(window_min));
}

double consume_fuel(ShipState& ship, int dt_min, const FuelRates& rates,
                    const FuelNoise& noise, RngStream& rng)
{
    if (dt_min <= 0) {
        throw std::invalid_argument("consume_fuel: dt must be positive");
    }
    double factor = 1.0;
    if (noise.enabled && noise.sd > 0.0) {
        factor = std::clamp(rng.normal(1.0, noise.sd), noise.lo, noise.hi);
    }
    const double drawn = rates.rate_for(ship.mode) * static_cast<double>(dt_min) * factor;
    if (drawn >= ship.fuel) {
        ship.fuel = 0.0;
        ship.fuel_exhausted = true;
    } else {
        ship.fuel -= drawn;
    }
    return drawn;
}

void step(WorldState& world, const HelmCommand& command)
{
    if (command.entity != "ownship") {
        throw InvalidCommandError("step: unknown entity '" + command.entity + "'");
    }
    if (world.clock.t_min >= world.horizon_min) {
        throw std::invalid_argument("step: clock is already at the configured horizon");
    }

    ShipState& ship = world.ownship;
    const Position before = ship.position;

    // Movement. Exhausted ships drift dead in the water.
    ship.mode = command.mode;
    ship.speed_kn = world.ownship.fuel_exhausted
                        ? 0.0
                        : std::clamp(command.speed_kn, 0.0, world.max_speed_kn);
    if (command.waypoint && ship.speed_kn > 0.0) {
        move_toward(ship.position, ship.heading, *command.waypoint, ship.speed_kn,
                    SimClock::dt_min);
    }

    consume_fuel(ship, SimClock::dt_min, world.rates, world.noise, world.fuel_rng);

    // Drone leg: launch, then close on the (drifting) flotsam and drop the
    // beacon on contact.
    if (world.drone && world.flotsam) {
        AerialDrone& drone = *world.drone;
        if (command.launch_drone && drone.available && !drone.launched) {
            drone.launched = true;
            drone.position = ship.position;
        }
        if (drone.launched && !drone.beacon_delivered) {
            Vec2 dummy;
            move_toward(drone.position, dummy, world.flotsam->position, drone.speed_kn,
                        SimClock::dt_min);
            if (distance_nm(drone.position, world.flotsam->position) <= kFlotsamContactNm) {
                drone.beacon_delivered = true;
                world.flotsam->beaconed = true;
            }
        }
    }

    if (world.flotsam) {
        world.flotsam->position.x += world.flotsam->drift_kn.x * SimClock::dt_min / 60.0;
        world.flotsam->position.y += world.flotsam->drift_kn.y * SimClock::dt_min / 60.0;
    }

    world.clock.t_min += SimClock::dt_min;
    const int now = world.clock.t_min;

    // Scenario events, fixed order: merchants by id, boarding before the
    // arrival check, expiry after the final failed attempt.
    for (std::size_t i = 0; i < world.merchants.size(); ++i) {
        Merchant& m = world.merchants[i];
        if (!m.attack.active) {
            continue;
        }
        const int rel = now - m.attack.onset_min;
        if (rel >= 1 && rel <= world.attack_window_min) {
            const double p = m.water_cannon ? world.p_board_defended : world.p_board_undefended;
            if (world.boarding_rng[i].bernoulli(p)) {
                m.attack.boarded = true;
                m.attack.boarded_minute = now;
                m.attack.active = false;
                continue;
            }
        }
        if (rel >= world.attack_window_min) {
            m.attack.expired = true;
            m.attack.active = false;
            continue;
        }
        if (world.ownship_at(m.position, kArrivalEpsNm)) {
            m.attack.interdicted = true;
            m.attack.interdicted_minute = now;
            m.attack.active = false;
        }
    }

    if (world.sailor && !world.sailor->spotted &&
        (ship.mode == ShipMode::backtrack || ship.mode == ShipMode::search)) {
        if (sweep_spots(before, ship.position, world.sailor->position, world.detect_range_nm)) {
            world.sailor->spotted = true;
            world.sailor->spotted_minute = now;
        }
    }

    if (world.sailor && world.sailor->spotted && !world.sailor->rescued &&
        ship.mode == ShipMode::rescue &&
        distance_nm(ship.position, world.sailor->position) <= 1.0) {
        Sailor& sailor = *world.sailor;
        const double p = std::min(1.0, world.rescue_p0 + world.rescue_dp * sailor.rescue_attempts);
        ++sailor.rescue_attempts;
        if (world.rescue_rng.bernoulli(p)) {
            sailor.rescued = true;
            sailor.rescued_minute = now;
        }
    }

    if (world.flotsam && !world.flotsam->reacquire_attempted &&
        distance_nm(ship.position, world.flotsam->position) <= kFlotsamContactNm) {
        Flotsam& f = *world.flotsam;
        f.reacquire_attempted = true;
        f.reacquired = f.beaconed || world.reacquire_rng.bernoulli(f.relocate_difficulty);
    }
}

} // namespace oamncc::sim
