#include "oamncc/trial.hpp"

#include "oamncc/errors.hpp"

#include <algorithm>
#include <cmath>

namespace oamncc::scenario {

namespace {

using conflict::ConflictCategory;
using conflict::ConstraintInstance;
using conflict::ResolutionStatus;
using sim::ScenarioKind;
using sim::ShipMode;
using strategy::BeliefData;
using strategy::BeliefState;

constexpr double kEps = 1e-6;

// The agent's view of the world for this minute: ground-truth kinematics,
// belief-side capability flags, gauge noise on fuel if configured.
BeliefState build_belief(const sim::WorldState& world, const std::vector<bool>& believed_cannon,
                         const EngineParams& engine, const OverboardParams* overboard,
                         sim::RngStream& belief_rng)
{
    BeliefData d;
    d.clock_min = world.clock.t_min;
    d.own_position = world.ownship.position;
    d.fuel_estimate = world.ownship.fuel;
    if (engine.belief_fuel_sd > 0.0) {
        d.fuel_estimate = std::max(0.0, d.fuel_estimate + belief_rng.normal(0.0, engine.belief_fuel_sd));
    }
    d.own_mode = world.ownship.mode;
    d.fuel_exhausted = world.ownship.fuel_exhausted;
    d.max_speed_kn = world.max_speed_kn;
    d.port = world.port;
    d.fuel_model.rates = world.rates;
    // The margin estimator works from the configured burn variability even
    // when a trial runs with realized noise disabled.
    d.fuel_model.burn_sd = engine.noise.sd;

    d.attack_window_min = world.attack_window_min;
    d.p_board_undefended = world.p_board_undefended;
    d.p_board_defended = world.p_board_defended;
    for (std::size_t i = 0; i < world.merchants.size(); ++i) {
        const sim::Merchant& m = world.merchants[i];
        strategy::MerchantBelief b;
        b.id = m.id;
        b.position = m.position;
        b.ransom = m.ransom;
        b.water_cannon = i < believed_cannon.size() ? believed_cannon[i] : m.water_cannon;
        b.under_attack = true;
        b.interdicted = m.attack.interdicted;
        b.boarded = m.attack.boarded;
        b.expired = m.attack.expired;
        d.merchants.push_back(b);
    }

    if (world.sailor) {
        d.sailor_spotted = world.sailor->spotted;
        d.sailor_rescued = world.sailor->rescued;
        d.rescue_attempts = world.sailor->rescue_attempts;
        d.sailor_position = world.sailor->position;
    }
    if (overboard != nullptr) {
        d.overboard.alert_nm = overboard->alert_nm;
        d.overboard.behind_min_nm = overboard->behind_min_nm;
        d.overboard.behind_max_nm = overboard->behind_max_nm;
        d.overboard.rescue_p0 = overboard->rescue_p0;
        d.overboard.rescue_dp = overboard->rescue_dp;
    }

    if (world.drone) {
        d.drone.available = world.drone->available;
        d.drone.launched = world.drone->launched;
        d.drone.beacon_delivered = world.drone->beacon_delivered;
        d.drone.speed_kn = world.drone->speed_kn;
        d.drone.range_nm = world.drone->range_nm;
    }
    if (world.flotsam) {
        d.flotsam.present = true;
        d.flotsam.position = world.flotsam->position;
        d.flotsam.beaconed = world.flotsam->beaconed;
        d.flotsam.resolved = world.flotsam->reacquire_attempted;
    }
    return BeliefState(std::move(d));
}

conflict::PreferenceModel preference_model(const sim::WorldState& world)
{
    conflict::PreferenceModel prefs;
    prefs.rules.push_back({"sailor_spotted", true, "rescue-continuation"});
    if (world.sailor) {
        prefs.grounding["sailor_spotted"] = world.sailor->spotted;
        prefs.grounding["sailor_rescued"] = world.sailor->rescued;
    }
    return prefs;
}

struct PipelineState {
    conflict::ConflictDescriptor descriptor;
    conflict::CandidateCoa chosen;
    double priority_rank_mu = -1.0;
};

PipelineState run_selection(const sim::WorldState& world,
                            std::vector<ConstraintInstance> instances,
                            const strategy::Policy& requested,
                            const conflict::AffordanceCatalog& affordances)
{
    PipelineState ps;
    ps.descriptor = conflict::classify_conflict(instances, world);
    ps.descriptor.novel = conflict::detect_novelty(ps.descriptor, pretrained_coverage(world.kind));

    if (requested.differentiator == strategy::Differentiator::none) {
        // Baseline: execute directly, nothing to select among.
        ps.chosen.id = requested.name;
        ps.chosen.policy = requested;
        ps.chosen.tags_used = requested.tags;
        ps.chosen.mitigation_utility = 0.0;
        return ps;
    }

    conflict::StrategyCatalog catalog;
    catalog.push_back(requested);
    if ((world.kind == ScenarioKind::piracy || world.kind == ScenarioKind::adrift) &&
        requested.name != "priority-rank") {
        // The pretrained response is always on the table; selection has to
        // rule it out on mitigation-utility grounds, not by omission.
        catalog.push_back(strategy::priority_rank_policy());
    }

    auto candidates = conflict::generate_candidates(ps.descriptor, world, catalog, affordances);
    for (const auto& c : candidates) {
        if (c.id == "priority-rank") {
            ps.priority_rank_mu = c.mitigation_utility;
        }
    }
    ps.chosen = conflict::select_candidate(candidates, preference_model(world));
    return ps;
}

TrialOutcome run_overboard(const OverboardInstance& instance, const strategy::Policy& policy,
                           std::uint64_t master_seed)
{
    sim::WorldState world = build_world(instance, master_seed);
    sim::RngStream belief_rng = sim::seeded_rng(master_seed, "belief");

    TrialOutcome out;
    out.kind = ScenarioKind::overboard;

    PipelineState ps = run_selection(world, constraint_instances(instance, world), policy, {});
    out.conflict = ps.descriptor;
    out.chosen_id = ps.chosen.id;
    out.priority_rank_mu = ps.priority_rank_mu;

    ResolutionStatus status = ResolutionStatus::pending;
    while (world.clock.t_min < world.horizon_min) {
        const BeliefState belief = build_belief(world, {}, instance.params.engine,
                                                &instance.params, belief_rng);
        const sim::HelmCommand cmd = ps.chosen.policy.decide(belief, world.clock.t_min);
        sim::step(world, cmd);
        status = conflict::monitor_resolution(world, ps.chosen, ps.descriptor);
        if (world.ownship_at(world.port, kEps)) {
            break;
        }
        const sim::Sailor& sailor = *world.sailor;
        const bool rescue_in_progress = sailor.spotted && !sailor.rescued;
        if (world.ownship.fuel_exhausted && !rescue_in_progress) {
            break; // dead in the water short of port
        }
    }

    const sim::Sailor& sailor = *world.sailor;
    const bool at_port = world.ownship_at(world.port, kEps);
    out.resolution = status;
    out.metrics = {
        {"rescued", sailor.rescued ? 1.0 : 0.0},
        {"rtb_success", at_port ? 1.0 : 0.0},
        {"sailor_spotted", sailor.spotted ? 1.0 : 0.0},
        {"abandoned_after_spotting", (sailor.spotted && !sailor.rescued) ? 1.0 : 0.0},
        {"fuel_at_port", at_port ? world.ownship.fuel : 0.0},
    };
    return out;
}

TrialOutcome run_piracy(const PiracyInstance& raw, const strategy::Policy& policy,
                        std::uint64_t master_seed)
{
    TrialOutcome out;
    out.kind = ScenarioKind::piracy;

    // Step 3 of the pipeline: gate the capability memo on information
    // quality before it may touch the situation model. The cannons get
    // installed either way; only the belief is conditional.
    PiracyInstance instance = raw;
    if (raw.memo) {
        const conflict::InformationItem item =
            conflict::make_item(conflict::CapabilityUpdate{}, raw.memo->provenance, 0,
                                raw.params.qualities);
        const bool quality_ok =
            !conflict::filter_information({item}, raw.params.min_quality).empty();
        const bool accepted = quality_ok && raw.params.dynamic_update;
        instance = apply_memo(std::move(instance), *raw.memo, accepted);
    }

    sim::WorldState world = build_world(instance, master_seed);
    sim::RngStream belief_rng = sim::seeded_rng(master_seed, "belief");

    PipelineState ps = run_selection(world, constraint_instances(instance, world), policy, {});
    out.conflict = ps.descriptor;
    out.chosen_id = ps.chosen.id;
    out.priority_rank_mu = ps.priority_rank_mu;

    const int end_min = instance.onset_min + instance.attack_window_min;
    int target = -1;
    ResolutionStatus status = ResolutionStatus::pending;
    while (world.clock.t_min < end_min) {
        const BeliefState belief = build_belief(world, instance.believed_cannon,
                                                instance.params.engine, nullptr, belief_rng);
        const sim::HelmCommand cmd = ps.chosen.policy.decide(belief, world.clock.t_min);
        if (world.clock.t_min == 0) {
            target = cmd.target_merchant;
            ps.chosen.target_merchant = target;
        }
        sim::step(world, cmd);
        status = conflict::monitor_resolution(world, ps.chosen, ps.descriptor);
    }

    // Ransom taken off the table relative to letting the attack run: the
    // committed run puts force on the target at its planned arrival minute,
    // so the ransom is weighted by the probability that boarding would have
    // landed after that arrival but inside the window (under the true
    // boarding rate). Doing nothing avoids nothing by definition.
    double avoided = 0.0;
    bool interdicted = false;
    if (target >= 0 && target < static_cast<int>(world.merchants.size())) {
        const sim::Merchant& chosen_merchant = world.merchants[static_cast<std::size_t>(target)];
        const double p_true = chosen_merchant.water_cannon ? world.p_board_defended
                                                           : world.p_board_undefended;
        const double planned_arrival = std::ceil(sim::travel_time_min(
            instance.ownship_start, chosen_merchant.position, world.max_speed_kn));
        avoided = strategy::expected_ransom_avoided(planned_arrival, p_true,
                                                    instance.attack_window_min,
                                                    chosen_merchant.ransom);
        interdicted = chosen_merchant.attack.interdicted;
    }

    out.resolution = status;
    out.metrics = {
        {"ransom_avoided", avoided},
        {"target_chosen", static_cast<double>(target)},
        {"interdiction_success", interdicted ? 1.0 : 0.0},
    };
    return out;
}

TrialOutcome run_adrift(const AdriftInstance& instance, const strategy::Policy& policy,
                        std::uint64_t master_seed)
{
    sim::WorldState world = build_world(instance, master_seed);
    sim::RngStream belief_rng = sim::seeded_rng(master_seed, "belief");

    TrialOutcome out;
    out.kind = ScenarioKind::adrift;

    conflict::AffordanceCatalog affordances;
    if (policy.name == "adrift-drone") {
        conflict::Affordance drone;
        drone.id = "aerial-drone-beacon";
        drone.releases = ConflictCategory::temporal_resource_contention;
        drone.applicable = [&instance](const sim::WorldState& w) {
            return w.drone && w.drone->available && w.flotsam &&
                   sim::distance_nm(w.ownship.position, w.flotsam->position) <=
                       w.drone->range_nm;
        };
        drone.make_candidate = [&instance, master_seed](const sim::WorldState& w) {
            sim::RngStream scratch = sim::seeded_rng(master_seed, "belief-affordance");
            const BeliefState belief = build_belief(w, instance.piracy.believed_cannon,
                                                    instance.params.piracy.engine, nullptr,
                                                    scratch);
            return strategy::adrift_affordance_plan(belief);
        };
        affordances.push_back(std::move(drone));
    }

    // The internal strategy catalog holds the fallback only; the drone plan
    // enters through the affordance route (and silently drops out when its
    // preconditions fail, which is the fallback story).
    const strategy::Policy requested = policy.name == "adrift-drone"
                                           ? strategy::priority_rank_policy()
                                           : policy;

    PipelineState ps =
        run_selection(world, constraint_instances(instance, world), requested, affordances);
    out.conflict = ps.descriptor;
    out.chosen_id = ps.chosen.id;
    out.priority_rank_mu = ps.priority_rank_mu;

    int target = -1;
    ResolutionStatus status = ResolutionStatus::pending;
    while (world.clock.t_min < world.horizon_min) {
        const BeliefState belief = build_belief(world, instance.piracy.believed_cannon,
                                                instance.params.piracy.engine, nullptr, belief_rng);
        const sim::HelmCommand cmd = ps.chosen.policy.decide(belief, world.clock.t_min);
        if (world.clock.t_min == 0) {
            target = cmd.target_merchant;
            ps.chosen.target_merchant = target;
        }
        sim::step(world, cmd);
        status = conflict::monitor_resolution(world, ps.chosen, ps.descriptor);
        if (status != ResolutionStatus::pending) {
            break;
        }
        if (world.ownship.fuel_exhausted) {
            break;
        }
    }

    const sim::Merchant& merchant = world.merchants.front();
    const bool reacquired = world.flotsam && world.flotsam->reacquired;
    out.resolution = status;
    out.metrics = {
        {"interdiction_success", merchant.attack.interdicted ? 1.0 : 0.0},
        {"flotsam_reacquired", reacquired ? 1.0 : 0.0},
        {"both_duties_met", (merchant.attack.interdicted && reacquired) ? 1.0 : 0.0},
    };
    return out;
}

} // namespace

double TrialOutcome::metric(const std::string& name) const
{
    for (const auto& [key, value] : metrics) {
        if (key == name) {
            return value;
        }
    }
    throw std::invalid_argument("unknown metric: " + name);
}

std::vector<std::string> metric_names(ScenarioKind kind)
{
    switch (kind) {
    case ScenarioKind::overboard:
        return {"rescued", "rtb_success", "sailor_spotted", "abandoned_after_spotting",
                "fuel_at_port"};
    case ScenarioKind::piracy:
        return {"ransom_avoided", "target_chosen", "interdiction_success"};
    case ScenarioKind::adrift:
        return {"interdiction_success", "flotsam_reacquired", "both_duties_met"};
    }
    return {};
}

conflict::PolicyCoverage pretrained_coverage(ScenarioKind kind)
{
    switch (kind) {
    case ScenarioKind::overboard:
        return {{ConflictCategory::probabilistic_uncertainty, {"rescue-duty"}},
                {ConflictCategory::probabilistic_uncertainty, {"rtb-order"}}};
    case ScenarioKind::piracy:
        // Single-attack interdiction is trained-for; massed simultaneous
        // attacks on one hull are not.
        return {{ConflictCategory::probabilistic_uncertainty, {"interdict-duty"}}};
    case ScenarioKind::adrift:
        return {{ConflictCategory::probabilistic_uncertainty, {"interdict-duty"}},
                {ConflictCategory::epistemic_uncertainty, {"inspect-duty"}}};
    }
    return {};
}

std::vector<ConstraintInstance> constraint_instances(const ScenarioInstance& instance,
                                                     const sim::WorldState& world)
{
    std::vector<ConstraintInstance> out;

    if (const auto* ob = std::get_if<OverboardInstance>(&instance)) {
        conflict::Constraint rescue;
        rescue.id = "rescue-duty";
        rescue.kind = conflict::ConstraintKind::duty;
        rescue.frame = conflict::Frame::deontic;
        rescue.grounding["sailor_spotted"] = world.sailor && world.sailor->spotted;

        conflict::Constraint rtb;
        rtb.id = "rtb-order";
        rtb.kind = conflict::ConstraintKind::order;
        rtb.frame = conflict::Frame::deontic;
        rtb.priority = 1;

        const double fuel_minutes = ob->fuel_at_alert / ob->params.engine.rates.transit;
        const double worst_case_x = ob->alert_nm + ob->params.behind_max_nm;

        ConstraintInstance rescue_inst;
        rescue_inst.instance_id = "rescue-duty#sailor";
        rescue_inst.constraint = rescue;
        rescue_inst.time_demand = conflict::TimeDemand{
            0.0, fuel_minutes, 9.0, sim::Position{worst_case_x, 0.0}};
        rescue_inst.satisfaction_probabilistic = true;
        out.push_back(std::move(rescue_inst));

        ConstraintInstance rtb_inst;
        rtb_inst.instance_id = "rtb-order#port";
        rtb_inst.constraint = rtb;
        rtb_inst.time_demand = conflict::TimeDemand{0.0, fuel_minutes, 0.0, world.port};
        out.push_back(std::move(rtb_inst));
        return out;
    }

    const bool adrift = std::holds_alternative<AdriftInstance>(instance);
    conflict::Constraint interdict;
    interdict.id = "interdict-duty";
    interdict.kind = conflict::ConstraintKind::duty;
    interdict.frame = conflict::Frame::deontic;
    interdict.priority = 1;

    for (std::size_t i = 0; i < world.merchants.size(); ++i) {
        ConstraintInstance ci;
        ci.instance_id = "interdict-duty#" + std::to_string(i);
        ci.constraint = interdict;
        const double deadline = static_cast<double>(world.merchants[i].attack.onset_min +
                                                    world.attack_window_min);
        ci.time_demand = conflict::TimeDemand{0.0, deadline, 0.0, world.merchants[i].position};
        ci.satisfaction_probabilistic = true;
        out.push_back(std::move(ci));
    }

    if (adrift) {
        conflict::Constraint inspect;
        inspect.id = "inspect-duty";
        inspect.kind = conflict::ConstraintKind::duty;
        inspect.frame = conflict::Frame::deontic;
        inspect.priority = 2;

        ConstraintInstance ci;
        ci.instance_id = "inspect-duty#flotsam";
        ci.constraint = inspect;
        // Unbeaconed flotsam must be tracked before it drifts out of reach;
        // one attack window is the tracking deadline.
        ci.time_demand = conflict::TimeDemand{
            0.0, static_cast<double>(world.attack_window_min), 0.0, world.flotsam->position};
        ci.depends_on_unobserved = true; // its value is unknown until inspected
        out.push_back(std::move(ci));
    }
    return out;
}

TrialOutcome run_trial(const ScenarioInstance& instance, const strategy::Policy& policy,
                       std::uint64_t master_seed)
{
    const ScenarioKind kind = kind_of(instance);
    if (!policy.applicable_to(kind)) {
        throw ConfigError("strategy '" + policy.name + "' is not applicable to scenario '" +
                          std::string(sim::to_string(kind)) + "'");
    }
    if (const auto* ob = std::get_if<OverboardInstance>(&instance)) {
        return run_overboard(*ob, policy, master_seed);
    }
    if (const auto* pi = std::get_if<PiracyInstance>(&instance)) {
        return run_piracy(*pi, policy, master_seed);
    }
    return run_adrift(std::get<AdriftInstance>(instance), policy, master_seed);
}

} // namespace oamncc::scenario
