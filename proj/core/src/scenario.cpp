#include "oamncc/scenario.hpp"

#include "oamncc/errors.hpp"

#include <algorithm>
#include <cmath>

namespace oamncc::scenario {

namespace {

// Fixed class plan for the four-merchant scenario. Legacy cannon fits cover
// only the largest tankers (none of these); the capability memo extends
// cannons to tankers and container ships, i.e. exactly two of the four.
constexpr std::array<sim::MerchantClass, 4> kMerchantClasses = {
    sim::MerchantClass::tanker,
    sim::MerchantClass::container,
    sim::MerchantClass::cargo,
    sim::MerchantClass::cargo,
};

bool legacy_cannon_fit(sim::MerchantClass cls)
{
    return cls == sim::MerchantClass::large_tanker;
}

} // namespace

EngineParams EngineParams::from_config(const Config& cfg)
{
    EngineParams p;
    p.max_speed_kn = cfg.real("sim.max_speed_kn");
    p.horizon_min = static_cast<int>(cfg.integer("sim.horizon_min"));
    p.rates.transit = cfg.real("fuel.rate.transit");
    p.rates.backtrack = cfg.real("fuel.rate.backtrack");
    p.rates.search = cfg.real("fuel.rate.search");
    p.rates.rescue = cfg.real("fuel.rate.rescue");
    p.rates.loiter = cfg.real("fuel.rate.loiter");
    p.noise.enabled = cfg.boolean("fuel.noise_enabled");
    p.noise.sd = cfg.real("fuel.noise_sd");
    p.noise.lo = cfg.real("fuel.noise_min");
    p.noise.hi = cfg.real("fuel.noise_max");
    p.belief_fuel_sd = cfg.real("belief.fuel_estimate_sd");
    return p;
}

OverboardParams OverboardParams::from_config(const Config& cfg)
{
    OverboardParams p;
    p.engine = EngineParams::from_config(cfg);
    p.alert_nm = cfg.real("overboard.alert_nm");
    p.behind_min_nm = cfg.real("overboard.behind_min_nm");
    p.behind_max_nm = cfg.real("overboard.behind_max_nm");
    p.backtrack_budget_nm = cfg.real("overboard.backtrack_budget_nm");
    p.detect_range_nm = cfg.real("overboard.detect_range_nm");
    p.lateral_halfwidth_nm = cfg.real("overboard.lateral_halfwidth_nm");
    p.rescue_p0 = cfg.real("overboard.rescue_p0");
    p.rescue_dp = cfg.real("overboard.rescue_dp");
    if (p.behind_min_nm > p.behind_max_nm) {
        throw ConfigError("overboard.behind_min_nm exceeds overboard.behind_max_nm");
    }
    if (p.lateral_halfwidth_nm > p.detect_range_nm) {
        throw ConfigError("overboard.lateral_halfwidth_nm exceeds the detect range; "
                          "a passed sailor could never be spotted");
    }
    return p;
}

double OverboardParams::calibrated_fuel_at_alert() const
{
    const double min_per_nm = 60.0 / engine.max_speed_kn;
    const double out_leg = backtrack_budget_nm * min_per_nm * engine.rates.backtrack;
    const double home_leg = (alert_nm + backtrack_budget_nm) * min_per_nm * engine.rates.transit;
    return out_leg + home_leg;
}

PiracyParams PiracyParams::from_config(const Config& cfg)
{
    PiracyParams p;
    p.engine = EngineParams::from_config(cfg);
    p.p_eventual = cfg.real("piracy.p_eventual");
    p.cannon_p_eventual = cfg.real("piracy.cannon_p_eventual");
    p.window_min = static_cast<int>(cfg.integer("piracy.window_min"));
    p.ransom_min = cfg.real("piracy.ransom_min");
    p.ransom_max = cfg.real("piracy.ransom_max");
    p.lane_x_min = cfg.real("piracy.lane_x_min");
    p.lane_x_max = cfg.real("piracy.lane_x_max");
    p.lane_y_min = cfg.real("piracy.lane_y_min");
    p.lane_y_max = cfg.real("piracy.lane_y_max");
    p.ownship = {cfg.real("piracy.ownship_x"), cfg.real("piracy.ownship_y")};
    p.max_sample_attempts = cfg.integer("piracy.max_sample_attempts");
    p.qualities.command_directive = cfg.real("quality.command_directive");
    p.qualities.official_regulation = cfg.real("quality.official_regulation");
    p.qualities.sensor = cfg.real("quality.sensor");
    p.qualities.social_media = cfg.real("quality.social_media");
    p.qualities.unknown = cfg.real("quality.unknown");
    p.min_quality = cfg.real("info.min_quality");
    p.memo_provenance = conflict::provenance_from_string(cfg.text("memo.provenance"));
    p.dynamic_update = cfg.boolean("memo.dynamic_update");
    if (p.ransom_min > p.ransom_max) {
        throw ConfigError("piracy.ransom_min exceeds piracy.ransom_max");
    }
    return p;
}

double PiracyParams::p_board_per_min() const
{
    return sim::per_minute_boarding_probability(p_eventual, window_min);
}

double PiracyParams::p_board_defended() const
{
    return sim::per_minute_boarding_probability(cannon_p_eventual, window_min);
}

AdriftParams AdriftParams::from_config(const Config& cfg)
{
    AdriftParams p;
    p.piracy = PiracyParams::from_config(cfg);
    p.drone_speed_kn = cfg.real("adrift.drone_speed_kn");
    p.drone_range_nm = cfg.real("adrift.drone_range_nm");
    p.drone_available = cfg.boolean("adrift.drone_available");
    p.relocate_difficulty = cfg.real("adrift.relocate_difficulty");
    p.onset_lo_min = static_cast<int>(cfg.integer("adrift.onset_lo_min"));
    p.onset_hi_min = static_cast<int>(cfg.integer("adrift.onset_hi_min"));
    p.merchant_min_nm = cfg.real("adrift.merchant_min_nm");
    p.merchant_max_nm = cfg.real("adrift.merchant_max_nm");
    p.flotsam_min_nm = cfg.real("adrift.flotsam_min_nm");
    p.flotsam_max_nm = cfg.real("adrift.flotsam_max_nm");
    p.drift_speed_kn = cfg.real("adrift.drift_speed_kn");
    if (p.onset_lo_min > p.onset_hi_min) {
        throw ConfigError("adrift.onset_lo_min exceeds adrift.onset_hi_min");
    }
    return p;
}

sim::ScenarioKind kind_of(const ScenarioInstance& instance)
{
    if (std::holds_alternative<OverboardInstance>(instance)) {
        return sim::ScenarioKind::overboard;
    }
    if (std::holds_alternative<PiracyInstance>(instance)) {
        return sim::ScenarioKind::piracy;
    }
    return sim::ScenarioKind::adrift;
}

OverboardInstance sample_overboard(sim::RngStream& rng, const OverboardParams& params)
{
    OverboardInstance inst;
    inst.params = params;
    inst.alert_nm = params.alert_nm;
    inst.distance_overboard_from_port =
        params.alert_nm + rng.uniform(params.behind_min_nm, params.behind_max_nm);
    inst.lateral_offset_nm = rng.uniform(-params.lateral_halfwidth_nm, params.lateral_halfwidth_nm);
    inst.fuel_at_alert = params.calibrated_fuel_at_alert();
    inst.seed = rng.seed();
    return inst;
}

PiracyInstance sample_piracy(sim::RngStream& rng, const PiracyParams& params)
{
    PiracyInstance inst;
    inst.params = params;
    inst.ownship_start = params.ownship;
    inst.attack_window_min = params.window_min;
    inst.p_board_per_min = params.p_board_per_min();
    inst.p_board_defended = params.p_board_defended();
    inst.seed = rng.seed();

    // Separation floor: at full speed the ship cannot cover a second
    // merchant inside one attack window.
    const double min_sep_nm =
        params.engine.max_speed_kn * static_cast<double>(params.window_min) / 60.0;

    const int n = 4;
    for (long attempt = 0; attempt < params.max_sample_attempts; ++attempt) {
        std::vector<sim::Position> placed;
        placed.reserve(n);
        for (int i = 0; i < n; ++i) {
            placed.push_back({rng.uniform(params.lane_x_min, params.lane_x_max),
                              rng.uniform(params.lane_y_min, params.lane_y_max)});
        }
        bool separated = true;
        for (int i = 0; i < n && separated; ++i) {
            for (int j = i + 1; j < n; ++j) {
                if (sim::distance_nm(placed[i], placed[j]) <= min_sep_nm) {
                    separated = false;
                    break;
                }
            }
        }
        if (!separated) {
            continue;
        }
        for (int i = 0; i < n; ++i) {
            MerchantSpec m;
            m.position = placed[i];
            m.ransom = std::exp(rng.uniform(std::log(params.ransom_min), std::log(params.ransom_max)));
            m.cls = kMerchantClasses[static_cast<std::size_t>(i)];
            m.water_cannon = legacy_cannon_fit(m.cls);
            inst.merchants.push_back(m);
            // Pirate skiffs come in from the coast side of their targets.
            inst.pirates.push_back({placed[i].x - 0.3, placed[i].y});
            inst.believed_cannon.push_back(legacy_cannon_fit(m.cls));
        }
        return inst;
    }
    throw SamplingError("sample_piracy: could not separate merchants; "
                        "lane geometry is inconsistent with the attack window");
}

AdriftInstance sample_adrift(sim::RngStream& rng, const AdriftParams& params)
{
    AdriftInstance inst;
    inst.params = params;
    inst.seed = rng.seed();
    inst.relocate_difficulty = params.relocate_difficulty;
    inst.drone_speed_kn = params.drone_speed_kn;
    inst.drone_range_nm = params.drone_range_nm;
    inst.drone_available = params.drone_available;

    PiracyInstance& sub = inst.piracy;
    sub.params = params.piracy;
    sub.ownship_start = params.piracy.ownship;
    sub.attack_window_min = params.piracy.window_min;
    sub.p_board_per_min = params.piracy.p_board_per_min();
    sub.p_board_defended = params.piracy.p_board_defended();
    sub.seed = inst.seed;
    // Imminent threat: the pirates close in for a while before boarding
    // attempts can begin.
    sub.onset_min = static_cast<int>(rng.uniform(static_cast<double>(params.onset_lo_min),
                                                 static_cast<double>(params.onset_hi_min) + 1.0));
    sub.onset_min = std::clamp(sub.onset_min, params.onset_lo_min, params.onset_hi_min);

    MerchantSpec m;
    const double merchant_dist = rng.uniform(params.merchant_min_nm, params.merchant_max_nm);
    const double merchant_bearing = rng.uniform(0.0, 2.0 * 3.14159265358979323846);
    m.position = {sub.ownship_start.x + merchant_dist * std::cos(merchant_bearing),
                  sub.ownship_start.y + merchant_dist * std::sin(merchant_bearing)};
    m.ransom = std::exp(rng.uniform(std::log(params.piracy.ransom_min),
                                    std::log(params.piracy.ransom_max)));
    m.cls = sim::MerchantClass::cargo;
    m.water_cannon = false;
    sub.merchants.push_back(m);
    sub.pirates.push_back({m.position.x - 0.3, m.position.y});
    sub.believed_cannon.push_back(false);

    // The mass drifts far enough out that inspect-then-interdict can never
    // fit inside the attack window.
    const double window = static_cast<double>(params.piracy.window_min);
    for (int attempt = 0; attempt < 10000; ++attempt) {
        const double d = rng.uniform(params.flotsam_min_nm, params.flotsam_max_nm);
        const double bearing = rng.uniform(0.0, 2.0 * 3.14159265358979323846);
        const sim::Position f{sub.ownship_start.x + d * std::cos(bearing),
                              sub.ownship_start.y + d * std::sin(bearing)};
        const double via_flotsam =
            sim::travel_time_min(sub.ownship_start, f, params.piracy.engine.max_speed_kn) +
            sim::travel_time_min(f, m.position, params.piracy.engine.max_speed_kn);
        if (via_flotsam > window + static_cast<double>(sub.onset_min)) {
            inst.flotsam_position = f;
            const double drift_bearing = rng.uniform(0.0, 2.0 * 3.14159265358979323846);
            inst.flotsam_drift_kn = {params.drift_speed_kn * std::cos(drift_bearing),
                                     params.drift_speed_kn * std::sin(drift_bearing)};
            return inst;
        }
    }
    throw SamplingError("sample_adrift: flotsam placement cannot preclude timely interdiction");
}

PiracyInstance apply_memo(PiracyInstance instance, const CapabilityMemo& memo, bool accepted)
{
    for (std::size_t i = 0; i < instance.merchants.size(); ++i) {
        const bool listed = std::find(memo.cannon_classes.begin(), memo.cannon_classes.end(),
                                      instance.merchants[i].cls) != memo.cannon_classes.end();
        if (listed) {
            instance.merchants[i].water_cannon = true;
            if (accepted) {
                instance.believed_cannon[i] = true;
            }
        }
    }
    return instance;
}

const std::vector<Preset>& presets()
{
    static const std::vector<Preset> all = {
        {"overboard", sim::ScenarioKind::overboard, false},
        {"piracy", sim::ScenarioKind::piracy, false},
        {"piracy-cannons", sim::ScenarioKind::piracy, true},
        {"adrift", sim::ScenarioKind::adrift, false},
    };
    return all;
}

const Preset& preset_by_name(const std::string& name)
{
    for (const auto& p : presets()) {
        if (p.name == name) {
            return p;
        }
    }
    throw ConfigError("unknown preset: " + name);
}

ScenarioInstance sample_instance(const Preset& preset, std::uint64_t seed, const Config& cfg)
{
    sim::RngStream rng = sim::seeded_rng(seed, "sample");
    switch (preset.kind) {
    case sim::ScenarioKind::overboard:
        return sample_overboard(rng, OverboardParams::from_config(cfg));
    case sim::ScenarioKind::piracy: {
        PiracyInstance inst = sample_piracy(rng, PiracyParams::from_config(cfg));
        if (preset.with_memo) {
            inst.memo = CapabilityMemo{
                {sim::MerchantClass::large_tanker, sim::MerchantClass::tanker,
                 sim::MerchantClass::container},
                inst.params.memo_provenance};
        }
        return inst;
    }
    case sim::ScenarioKind::adrift:
        return sample_adrift(rng, AdriftParams::from_config(cfg));
    }
    throw ConfigError("unknown scenario kind");
}

namespace {

sim::WorldState base_world(const EngineParams& engine, std::uint64_t master_seed)
{
    sim::WorldState w;
    w.max_speed_kn = engine.max_speed_kn;
    w.rates = engine.rates;
    w.noise = engine.noise;
    w.horizon_min = engine.horizon_min;
    w.fuel_rng = sim::seeded_rng(master_seed, "fuel-noise");
    w.rescue_rng = sim::seeded_rng(master_seed, "rescue");
    w.reacquire_rng = sim::seeded_rng(master_seed, "reacquire");
    return w;
}

} // namespace

sim::WorldState build_world(const OverboardInstance& instance, std::uint64_t master_seed)
{
    sim::WorldState w = base_world(instance.params.engine, master_seed);
    w.kind = sim::ScenarioKind::overboard;
    w.port = {0.0, 0.0};
    w.ownship.position = {instance.alert_nm, 0.0};
    w.ownship.heading = {1.0, 0.0};
    w.ownship.fuel = instance.fuel_at_alert;
    w.ownship.mode = sim::ShipMode::backtrack;
    w.sailor = sim::Sailor{};
    w.sailor->position = {instance.distance_overboard_from_port, instance.lateral_offset_nm};
    w.detect_range_nm = instance.params.detect_range_nm;
    w.rescue_p0 = instance.params.rescue_p0;
    w.rescue_dp = instance.params.rescue_dp;
    return w;
}

sim::WorldState build_world(const PiracyInstance& instance, std::uint64_t master_seed)
{
    sim::WorldState w = base_world(instance.params.engine, master_seed);
    w.kind = sim::ScenarioKind::piracy;
    w.ownship.position = instance.ownship_start;
    w.ownship.fuel = instance.ownship_fuel;
    w.ownship.mode = sim::ShipMode::loiter;
    w.attack_window_min = instance.attack_window_min;
    w.p_board_undefended = instance.p_board_per_min;
    w.p_board_defended = instance.p_board_defended;
    for (std::size_t i = 0; i < instance.merchants.size(); ++i) {
        const MerchantSpec& spec = instance.merchants[i];
        sim::Merchant m;
        m.id = static_cast<int>(i);
        m.position = spec.position;
        m.ransom = spec.ransom;
        m.cls = spec.cls;
        m.water_cannon = spec.water_cannon;
        m.attack.active = true;
        m.attack.onset_min = instance.onset_min;
        w.merchants.push_back(m);
        w.boarding_rng.push_back(
            sim::seeded_rng(master_seed, "boarding-" + std::to_string(i)));
    }
    for (const auto& pos : instance.pirates) {
        w.pirates.push_back({static_cast<int>(w.pirates.size()), pos});
    }
    return w;
}

sim::WorldState build_world(const AdriftInstance& instance, std::uint64_t master_seed)
{
    sim::WorldState w = build_world(instance.piracy, master_seed);
    w.kind = sim::ScenarioKind::adrift;
    w.flotsam = sim::Flotsam{};
    w.flotsam->position = instance.flotsam_position;
    w.flotsam->drift_kn = instance.flotsam_drift_kn;
    w.flotsam->relocate_difficulty = instance.relocate_difficulty;
    w.drone = sim::AerialDrone{};
    w.drone->position = instance.piracy.ownship_start;
    w.drone->speed_kn = instance.drone_speed_kn;
    w.drone->range_nm = instance.drone_range_nm;
    w.drone->available = instance.drone_available;
    return w;
}

} // namespace oamncc::scenario
