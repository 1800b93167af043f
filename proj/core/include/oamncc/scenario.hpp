#pragma once

#include "oamncc/config.hpp"
#include "oamncc/knowledge.hpp"
#include "oamncc/rng.hpp"
#include "oamncc/sim.hpp"

#include <array>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace oamncc::scenario {

// Parameter bundles resolved from the flat config once per batch.

struct EngineParams {
    double max_speed_kn = 30.0;
    sim::FuelRates rates;
    sim::FuelNoise noise;
    double belief_fuel_sd = 0.0;
    int horizon_min = 1440;

    static EngineParams from_config(const Config& cfg);
};

struct OverboardParams {
    EngineParams engine;
    double alert_nm = 20.0;
    double behind_min_nm = 5.0;
    double behind_max_nm = 15.0;
    double backtrack_budget_nm = 10.0;
    double detect_range_nm = 0.5;
    double lateral_halfwidth_nm = 0.3;
    double rescue_p0 = 0.2;
    double rescue_dp = 0.1;

    static OverboardParams from_config(const Config& cfg);
    /// Fuel load at the alert: exactly the budgeted backtrack plus the
    /// return leg, under noiseless consumption.
    double calibrated_fuel_at_alert() const;
};

struct PiracyParams {
    EngineParams engine;
    double p_eventual = 0.95;
    double cannon_p_eventual = 0.30;
    int window_min = 30;
    double ransom_min = 1e6;
    double ransom_max = 1e7;
    double lane_x_min = 10.0;
    double lane_x_max = 14.0;
    double lane_y_min = 0.0;
    double lane_y_max = 80.0;
    sim::Position ownship{18.0, 40.0};
    long max_sample_attempts = 100000;

    conflict::QualityMap qualities;
    double min_quality = 0.5;
    conflict::Provenance memo_provenance = conflict::Provenance::command_directive;
    bool dynamic_update = true;

    static PiracyParams from_config(const Config& cfg);
    double p_board_per_min() const;
    double p_board_defended() const;
};

struct AdriftParams {
    PiracyParams piracy;
    double drone_speed_kn = 80.0;
    double drone_range_nm = 40.0;
    bool drone_available = true;
    double relocate_difficulty = 0.2;
    int onset_lo_min = 10;
    int onset_hi_min = 20;
    double merchant_min_nm = 1.0;
    double merchant_max_nm = 4.0;
    double flotsam_min_nm = 20.0;
    double flotsam_max_nm = 38.0;
    double drift_speed_kn = 1.0;

    static AdriftParams from_config(const Config& cfg);
};

// ── Instances: scenario kind + every sampled parameter + seed ──

struct OverboardInstance {
    double distance_overboard_from_port = 0.0; // uniform on [25, 35] at defaults
    double alert_nm = 20.0;
    double lateral_offset_nm = 0.0;
    double fuel_at_alert = 0.0;
    std::uint64_t seed = 0;
    OverboardParams params;
};

struct MerchantSpec {
    sim::Position position;
    double ransom = 0.0;
    sim::MerchantClass cls = sim::MerchantClass::cargo;
    bool water_cannon = false; // ground truth before any memo lands
};

/// Capability update: merchant classes now cannon-equipped. Applying a memo
/// only ever toggles cannon flags; it never moves ships.
struct CapabilityMemo {
    std::vector<sim::MerchantClass> cannon_classes;
    conflict::Provenance provenance = conflict::Provenance::command_directive;
};

struct PiracyInstance {
    std::vector<MerchantSpec> merchants; // 4 for the full scenario
    std::vector<sim::Position> pirates;  // one band per merchant
    sim::Position ownship_start;
    double ownship_fuel = 1e5;
    int attack_window_min = 30;
    int onset_min = 0; // boarding attempts run (onset, onset+window]
    double p_board_per_min = 0.0;
    double p_board_defended = 0.0;
    std::vector<bool> believed_cannon; // agent belief at trial start (legacy fit)
    std::optional<CapabilityMemo> memo;
    std::uint64_t seed = 0;
    PiracyParams params;
};

struct AdriftInstance {
    PiracyInstance piracy; // sub-instance with a single threatened merchant
    sim::Position flotsam_position;
    sim::Vec2 flotsam_drift_kn;
    double relocate_difficulty = 0.2;
    double drone_speed_kn = 80.0;
    double drone_range_nm = 40.0;
    bool drone_available = true;
    std::uint64_t seed = 0;
    AdriftParams params;
};

using ScenarioInstance = std::variant<OverboardInstance, PiracyInstance, AdriftInstance>;

sim::ScenarioKind kind_of(const ScenarioInstance& instance);

// ── Samplers ──

/// Overboard point uniform on [alert+behind_min, alert+behind_max] from
/// port; fuel calibrated so the expected safe backtrack equals the budget.
OverboardInstance sample_overboard(sim::RngStream& rng, const OverboardParams& params);

/**
 * Four merchants rejection-sampled in the sea-lane band until every ordered
 * pair is more than one attack window apart at full speed, so securing one
 * merchant forfeits the rest. Ransoms are log-uniform. All attacks start at
 * t=0. Throws SamplingError when the attempt budget runs out.
 */
PiracyInstance sample_piracy(sim::RngStream& rng, const PiracyParams& params);

/**
 * One imminent attack close to ownship plus a drifting mass far enough away
 * that direct inspection forfeits the interdiction (enforced at sampling).
 */
AdriftInstance sample_adrift(sim::RngStream& rng, const AdriftParams& params);

/**
 * Install the memo's water cannons in the ground truth; fold them into the
 * agent's belief only when `accepted` (a rejected memo models the
 * memo-ignoring agent: the world changes, the belief does not).
 */
PiracyInstance apply_memo(PiracyInstance instance, const CapabilityMemo& memo, bool accepted);

// ── Presets ──

struct Preset {
    std::string name;
    sim::ScenarioKind kind = sim::ScenarioKind::piracy;
    bool with_memo = false; // piracy-cannons: two of four merchants get cannons
};

const std::vector<Preset>& presets();
const Preset& preset_by_name(const std::string& name); // throws ConfigError

/// Sample one instance for `preset` from the per-trial seed.
ScenarioInstance sample_instance(const Preset& preset, std::uint64_t seed, const Config& cfg);

// ── World construction ──

/// Build the trial's world, with streams derived from `master_seed`:
/// "fuel-noise", "boarding-<i>", "rescue", "reacquire".
sim::WorldState build_world(const OverboardInstance& instance, std::uint64_t master_seed);
sim::WorldState build_world(const PiracyInstance& instance, std::uint64_t master_seed);
sim::WorldState build_world(const AdriftInstance& instance, std::uint64_t master_seed);

} // namespace oamncc::scenario
