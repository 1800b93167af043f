#pragma once

#include "oamncc/geometry.hpp"
#include "oamncc/rng.hpp"

#include <optional>
#include <string>
#include <vector>

namespace oamncc::sim {

// Fixed-increment clock: one-minute steps, never skipped or repeated.
struct SimClock {
    int t_min = 0;
    static constexpr int dt_min = 1;
};

enum class ShipMode { transit, backtrack, search, rescue, loiter };

const char* to_string(ShipMode mode);

struct FuelRates {
    double transit = 1.0;
    double backtrack = 1.25;
    double search = 1.5;
    double rescue = 0.5;
    double loiter = 0.25;

    double rate_for(ShipMode mode) const;
};

struct FuelNoise {
    bool enabled = true;
    double sd = 0.05; // multiplicative, mean 1.0
    double lo = 0.5;  // truncation bounds keep the factor positive
    double hi = 1.5;
};

struct ShipState {
    Position position;
    double speed_kn = 0.0;
    Vec2 heading{1.0, 0.0};
    double fuel = 0.0;
    ShipMode mode = ShipMode::transit;
    bool fuel_exhausted = false;
};

struct AttackState {
    bool active = false;
    int onset_min = 0;        // boarding attempts run (onset, onset+window]
    bool boarded = false;
    int boarded_minute = -1;
    bool interdicted = false;
    int interdicted_minute = -1;
    bool expired = false;     // window closed without boarding or interdiction
};

enum class MerchantClass { large_tanker, tanker, container, cargo };

const char* to_string(MerchantClass cls);

struct Merchant {
    int id = 0;
    Position position;
    double ransom = 0.0; // currency units
    MerchantClass cls = MerchantClass::cargo;
    bool water_cannon = false; // ground truth
    AttackState attack;
};

struct PirateBand {
    int merchant_id = 0;
    Position position;
};

struct Sailor {
    Position position;
    bool spotted = false;
    int spotted_minute = -1;
    bool rescued = false;
    int rescued_minute = -1;
    int rescue_attempts = 0;
};

struct Flotsam {
    Position position;
    Vec2 drift_kn{0.0, 0.0};
    double relocate_difficulty = 0.2; // reacquisition probability without beacon
    bool beaconed = false;
    bool reacquire_attempted = false;
    bool reacquired = false;
};

struct AerialDrone {
    Position position;
    double speed_kn = 80.0;
    double range_nm = 40.0;
    bool available = true;
    bool launched = false;
    bool beacon_delivered = false;
};

enum class ScenarioKind { overboard, piracy, adrift };

const char* to_string(ScenarioKind kind);

/**
 * Helm command for one simulated minute. Waypoint steering clamps at the
 * waypoint, so arrivals land exactly on target positions. `target_merchant`
 * is bookkeeping for trial metrics; the engine does not read it.
 */
struct HelmCommand {
    std::string entity = "ownship";
    std::optional<Position> waypoint;
    double speed_kn = 0.0;
    ShipMode mode = ShipMode::loiter;
    bool launch_drone = false;
    int target_merchant = -1;
};

/**
 * Complete state of one trial: entities, active stochastic models, and the
 * named random streams they draw from. Value-like; copies evolve
 * independently, which is what batch workers rely on.
 */
struct WorldState {
    ScenarioKind kind = ScenarioKind::piracy;
    SimClock clock;
    ShipState ownship;
    Position port{0.0, 0.0};

    std::vector<Merchant> merchants;
    std::vector<PirateBand> pirates;
    std::optional<Sailor> sailor;
    std::optional<Flotsam> flotsam;
    std::optional<AerialDrone> drone;

    // model parameters for this trial
    double max_speed_kn = 30.0;
    FuelRates rates;
    FuelNoise noise;
    int attack_window_min = 30;
    double p_board_undefended = 0.0; // per-minute boarding probability
    double p_board_defended = 0.0;
    double detect_range_nm = 0.5;
    double rescue_p0 = 0.2;
    double rescue_dp = 0.1;
    int horizon_min = 1440;

    // named streams; draws advance them in place
    RngStream fuel_rng;
    std::vector<RngStream> boarding_rng; // one per merchant
    RngStream rescue_rng;
    RngStream reacquire_rng;

    bool all_attacks_resolved() const;
    bool ownship_at(const Position& p, double eps_nm = 1e-6) const;
};

/// Per-minute boarding probability with eventual success `p_eventual`
/// over `window` attempts: solves 1 - (1-p)^window = p_eventual.
double per_minute_boarding_probability(double p_eventual, int window_min);

/**
 * Fuel burned over `dt_min` minutes in the ship's current mode, with
 * multiplicative truncated-normal noise when enabled. The ship's fuel is
 * decremented and floored at zero; exhaustion is a state, not an error,
 * and pins the ship's speed to zero on subsequent steps.
 * Returns the amount drawn (the attempted burn).
 */
double consume_fuel(ShipState& ship, int dt_min, const FuelRates& rates,
                    const FuelNoise& noise, RngStream& rng);

/**
 * Advance the world by one minute under `command`.
 *
 * Order inside the step: movement (clamped at waypoints), fuel burn, drone
 * flight, flotsam drift, clock, then scenario events. Events resolve in
 * merchant-id order, boarding attempt before the arrival check, so an
 * arrival in the same minute as a boarding success does not undo it.
 */
void step(WorldState& world, const HelmCommand& command);

} // namespace oamncc::sim
