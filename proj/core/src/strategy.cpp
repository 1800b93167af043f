#include "oamncc/strategy.hpp"

#include "oamncc/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace oamncc::strategy {

namespace {

using conflict::KnowledgeTag;
using sim::HelmCommand;
using sim::ScenarioKind;
using sim::ShipMode;

double normal_cdf(double z)
{
    return 0.5 * std::erfc(-z / std::sqrt(2.0));
}

// P(total burn <= fuel) for a run of (rate, minutes) legs under the
// believed per-minute burn noise. sd 0 collapses to the mean test.
double rtb_probability(double fuel, double sd,
                       std::initializer_list<std::pair<double, double>> legs)
{
    double mean = 0.0;
    double var = 0.0;
    for (const auto& [rate, minutes] : legs) {
        mean += rate * minutes;
        var += (rate * sd) * (rate * sd) * minutes;
    }
    if (var <= 0.0) {
        return fuel >= mean ? 1.0 : 0.0;
    }
    return normal_cdf((fuel - mean) / std::sqrt(var));
}

// Expected remaining rescue minutes after `attempts_done` failed attempts,
// with per-attempt success p0 + dp*k capped at 1.
double expected_rescue_minutes(int attempts_done, double p0, double dp)
{
    double expect = 0.0;
    double survive = 1.0;
    for (int k = attempts_done; k < attempts_done + 200; ++k) {
        expect += survive;
        const double p = std::min(1.0, p0 + dp * static_cast<double>(k));
        survive *= 1.0 - p;
        if (survive <= 1e-12) {
            break;
        }
    }
    return expect;
}

HelmCommand to_port(const BeliefState& b)
{
    HelmCommand cmd;
    cmd.waypoint = b.port();
    cmd.speed_kn = b.max_speed_kn();
    cmd.mode = ShipMode::transit;
    return cmd;
}

HelmCommand hold_rescue(const BeliefState& b)
{
    HelmCommand cmd;
    cmd.speed_kn = 0.0;
    cmd.mode = ShipMode::rescue;
    (void)b;
    return cmd;
}

HelmCommand loiter()
{
    HelmCommand cmd;
    cmd.speed_kn = 0.0;
    cmd.mode = ShipMode::loiter;
    return cmd;
}

struct OverboardEstimates {
    double backtracked_nm = 0.0;    // progress past the alert point
    double return_minutes = 0.0;    // port leg from the current position
    double p_rtb_now = 0.0;         // turn for port immediately
    double p_rtb_after_next = 0.0;  // one more search minute, then turn
    double p_rtb_after_rescue = 0.0; // rescue from here, then turn
    double spot_hazard_next = 0.0;  // P(spot in the next minute | not yet)
};

OverboardEstimates estimate_overboard(const BeliefState& b)
{
    const FuelModel& fm = b.fuel_model();
    const OverboardPrior& prior = b.overboard_prior();
    const double fuel = b.fuel_estimate();
    const double speed = b.max_speed_kn();
    const double step_nm = speed / 60.0;
    const double min_per_nm = 60.0 / speed;

    OverboardEstimates e;
    e.backtracked_nm = std::max(0.0, b.own_position().x - prior.alert_nm);
    const double here_nm = sim::distance_nm(b.own_position(), b.port());
    e.return_minutes = here_nm * min_per_nm;

    e.p_rtb_now = rtb_probability(fuel, fm.burn_sd, {{fm.rates.transit, e.return_minutes}});
    e.p_rtb_after_next = rtb_probability(
        fuel, fm.burn_sd,
        {{fm.rates.backtrack, 1.0}, {fm.rates.transit, (here_nm + step_nm) * min_per_nm}});

    const double rescue_min = expected_rescue_minutes(0, prior.rescue_p0, prior.rescue_dp);
    e.p_rtb_after_rescue = rtb_probability(
        fuel, fm.burn_sd,
        {{fm.rates.backtrack, 1.0},
         {fm.rates.rescue, rescue_min},
         {fm.rates.transit, (here_nm + step_nm) * min_per_nm}});

    const double d = e.backtracked_nm;
    const double swept_hi = std::min(d + step_nm, prior.behind_max_nm);
    const double swept_lo = std::max(d, prior.behind_min_nm);
    const double remaining = prior.behind_max_nm - std::max(d, prior.behind_min_nm);
    if (d < prior.behind_max_nm && remaining > 0.0 && swept_hi > swept_lo) {
        e.spot_hazard_next = (swept_hi - swept_lo) / remaining;
    }
    return e;
}

HelmCommand continue_backtrack(const BeliefState& b)
{
    const OverboardPrior& prior = b.overboard_prior();
    HelmCommand cmd;
    // Aim past the far edge of the feasible overboard interval.
    cmd.waypoint = sim::Position{prior.alert_nm + prior.behind_max_nm + 1.0, 0.0};
    cmd.speed_kn = b.max_speed_kn();
    cmd.mode = ShipMode::backtrack;
    return cmd;
}

int pick_target(const BeliefState& b,
                const std::function<double(const BeliefState&, const MerchantBelief&)>& score,
                bool maximize)
{
    int best = -1;
    double best_score = 0.0;
    for (std::size_t i = 0; i < b.merchant_count(); ++i) {
        const MerchantBelief& m = b.merchant(i);
        if (!m.under_attack || m.resolved()) {
            continue;
        }
        const double s = score(b, m);
        if (best < 0 || (maximize ? s > best_score : s < best_score)) {
            best = m.id;
            best_score = s;
        }
    }
    if (best < 0) {
        throw NoTargetError("no attack in progress");
    }
    return best;
}

Policy make_piracy_policy(std::string name, std::set<KnowledgeTag> tags, double base_mu,
                          std::function<int(const BeliefState&)> pick)
{
    Policy p;
    p.name = std::move(name);
    p.applicable_scenarios = {ScenarioKind::piracy};
    p.tags = std::move(tags);
    p.differentiator = Differentiator::situational_features;
    p.base_mitigation_utility = base_mu;
    p.decide = [pick = std::move(pick)](const BeliefState& b, int) {
        int target = -1;
        try {
            target = pick(b);
        } catch (const NoTargetError&) {
            return loiter();
        }
        HelmCommand cmd;
        cmd.waypoint = b.merchant(static_cast<std::size_t>(target)).position;
        cmd.speed_kn = b.max_speed_kn();
        cmd.mode = ShipMode::transit;
        cmd.target_merchant = target;
        return cmd;
    };
    return p;
}

} // namespace

int target_closest(const BeliefState& belief)
{
    return pick_target(
        belief,
        [](const BeliefState& b, const MerchantBelief& m) {
            return sim::travel_time_min(b.own_position(), m.position, b.max_speed_kn());
        },
        /*maximize=*/false);
}

int target_highest_ransom(const BeliefState& belief)
{
    return pick_target(
        belief, [](const BeliefState&, const MerchantBelief& m) { return m.ransom; },
        /*maximize=*/true);
}

double expected_ransom_avoided(double travel_min, double p_min, int window_min, double ransom)
{
    if (travel_min < 0.0) {
        throw std::invalid_argument("expected_ransom_avoided: negative travel time");
    }
    if (p_min <= 0.0 || p_min >= 1.0) {
        throw std::invalid_argument("expected_ransom_avoided: p_min must lie in (0,1)");
    }
    const double q = 1.0 - p_min;
    const double window = static_cast<double>(window_min);
    return ransom * (std::pow(q, std::min(travel_min, window)) - std::pow(q, window));
}

int target_marginal_gain(const BeliefState& belief)
{
    return pick_target(
        belief,
        [](const BeliefState& b, const MerchantBelief& m) {
            const double travel = sim::travel_time_min(b.own_position(), m.position, b.max_speed_kn());
            const double p = b.boarding_p_believed(static_cast<std::size_t>(m.id));
            return expected_ransom_avoided(travel, p, b.attack_window_min(), m.ransom);
        },
        /*maximize=*/true);
}

Policy overboard_utilitarian(double margin, double ratio)
{
    if (margin <= 0.0 || margin >= 1.0) {
        throw std::invalid_argument("overboard_utilitarian: margin must lie in (0,1)");
    }
    if (ratio < 0.0) {
        throw std::invalid_argument("overboard_utilitarian: ratio must be non-negative");
    }

    Policy p;
    std::ostringstream name;
    name << "overboard-util:" << margin << ":" << ratio;
    p.name = name.str();
    p.applicable_scenarios = {ScenarioKind::overboard};
    p.tags = {KnowledgeTag::CF, KnowledgeTag::EP, KnowledgeTag::SM};
    p.differentiator = Differentiator::situational_features;
    p.base_mitigation_utility = 0.7;
    p.decide = [margin, ratio](const BeliefState& b, int) {
        if (b.sailor_rescued()) {
            return to_port(b);
        }
        if (b.sailor_spotted()) {
            // Committed to port already? Mode encodes the (pure) commitment.
            if (b.own_mode() == ShipMode::transit) {
                return to_port(b);
            }
            const FuelModel& fm = b.fuel_model();
            const OverboardPrior& prior = b.overboard_prior();
            const double here_min =
                sim::distance_nm(b.own_position(), b.port()) / b.max_speed_kn() * 60.0;
            const double rescue_min =
                expected_rescue_minutes(b.rescue_attempts(), prior.rescue_p0, prior.rescue_dp);
            const double p_now =
                rtb_probability(b.fuel_estimate(), fm.burn_sd, {{fm.rates.transit, here_min}});
            const double p_resc = rtb_probability(
                b.fuel_estimate(), fm.burn_sd,
                {{fm.rates.rescue, rescue_min}, {fm.rates.transit, here_min}});
            if (ratio < p_now - p_resc) {
                return to_port(b); // norm violation the duty wrapper exists to prevent
            }
            return hold_rescue(b);
        }
        if (ratio == 0.0) {
            return to_port(b); // rescue worthless: straight home
        }
        const OverboardEstimates e = estimate_overboard(b);
        if (e.p_rtb_after_next < margin) {
            return to_port(b);
        }
        const double h = e.spot_hazard_next;
        const double risk_if_rescue = 1.0 - e.p_rtb_after_rescue;
        const double risk_increment = std::max(0.0, e.p_rtb_now - e.p_rtb_after_next);
        if (ratio * h < h * risk_if_rescue + (1.0 - h) * risk_increment) {
            return to_port(b);
        }
        if (e.backtracked_nm >= b.overboard_prior().behind_max_nm) {
            return to_port(b); // swept the whole feasible interval
        }
        return continue_backtrack(b);
    };
    return p;
}

Policy wrap_duty_once_spotted(Policy inner)
{
    if (!inner.applicable_to(ScenarioKind::overboard)) {
        throw std::invalid_argument("wrap_duty_once_spotted: inner policy must handle overboard");
    }
    Policy p = inner;
    std::string inner_suffix;
    if (inner.name.rfind("overboard-util", 0) == 0) {
        inner_suffix = inner.name.substr(std::string("overboard-util").size());
    }
    p.name = "overboard-duty" + inner_suffix;
    p.tags.insert(KnowledgeTag::EP);
    p.base_mitigation_utility = 0.75;
    p.labels.insert("rescue-continuation");
    p.decide = [inner = std::move(inner)](const BeliefState& b, int clock) {
        if (b.sailor_spotted() && !b.sailor_rescued()) {
            return hold_rescue(b);
        }
        return inner.decide(b, clock);
    };
    return p;
}

conflict::CandidateCoa adrift_affordance_plan(const BeliefState& belief)
{
    const DroneBelief& drone = belief.drone();
    if (!drone.available) {
        throw AffordanceError("adrift_affordance_plan: drone unavailable");
    }
    if (!belief.flotsam().present) {
        throw AffordanceError("adrift_affordance_plan: no drifting mass to beacon");
    }
    const double dist = sim::distance_nm(belief.own_position(), belief.flotsam().position);
    if (dist > drone.range_nm) {
        throw AffordanceError("adrift_affordance_plan: flotsam beyond drone range");
    }

    conflict::CandidateCoa c;
    c.id = "adrift-drone";
    c.labels = {"affordance", "beacon"};
    c.policy = adrift_drone_policy();
    c.tags_used = {KnowledgeTag::AA, KnowledgeTag::CS, KnowledgeTag::MU};
    c.mitigation_utility = 0.9;
    c.expected_outcome = {{"interdict-duty", 0.98}, {"inspect-duty", 0.95}};
    c.target_merchant = 0;
    c.pursues_flotsam = true;
    return c;
}

Policy adrift_drone_policy()
{
    Policy p;
    p.name = "adrift-drone";
    p.applicable_scenarios = {ScenarioKind::adrift};
    p.tags = {KnowledgeTag::AA, KnowledgeTag::CS, KnowledgeTag::MU};
    p.differentiator = Differentiator::affordance;
    p.base_mitigation_utility = 0.9;
    p.labels = {"affordance", "beacon"};
    p.pursues_flotsam = true;
    p.decide = [](const BeliefState& b, int) {
        HelmCommand cmd;
        if (b.merchant_count() > 0 && !b.merchant(0).resolved()) {
            cmd.waypoint = b.merchant(0).position;
            cmd.speed_kn = b.max_speed_kn();
            cmd.mode = ShipMode::transit;
            cmd.target_merchant = 0;
            if (!b.drone().launched && b.drone().available) {
                cmd.launch_drone = true;
            }
            return cmd;
        }
        if (b.flotsam().present && !b.flotsam().resolved) {
            cmd.waypoint = b.flotsam().position;
            cmd.speed_kn = b.max_speed_kn();
            cmd.mode = ShipMode::transit;
            return cmd;
        }
        return loiter();
    };
    return p;
}

Policy priority_rank_policy()
{
    Policy p;
    p.name = "priority-rank";
    p.applicable_scenarios = {ScenarioKind::piracy, ScenarioKind::adrift};
    p.tags = {KnowledgeTag::EP};
    p.differentiator = Differentiator::cross_constraint_priority;
    p.base_mitigation_utility = 0.4;
    p.decide = [](const BeliefState& b, int) {
        // Serve the standing interdiction duty; among instances of one
        // constraint there is nothing to rank, take the first still active.
        for (std::size_t i = 0; i < b.merchant_count(); ++i) {
            const MerchantBelief& m = b.merchant(i);
            if (m.under_attack && !m.resolved()) {
                HelmCommand cmd;
                cmd.waypoint = m.position;
                cmd.speed_kn = b.max_speed_kn();
                cmd.mode = ShipMode::transit;
                cmd.target_merchant = m.id;
                return cmd;
            }
        }
        return loiter();
    };
    return p;
}

Policy no_action_policy()
{
    Policy p;
    p.name = "no-action";
    p.applicable_scenarios = {ScenarioKind::overboard, ScenarioKind::piracy, ScenarioKind::adrift};
    p.tags = {KnowledgeTag::SM};
    p.differentiator = Differentiator::none;
    p.base_mitigation_utility = 0.0;
    p.decide = [](const BeliefState&, int) { return loiter(); };
    return p;
}

Policy make_policy(const std::string& name)
{
    if (name == "closest") {
        return make_piracy_policy("closest", {KnowledgeTag::SM}, 0.5, target_closest);
    }
    if (name == "ransom") {
        return make_piracy_policy("ransom", {KnowledgeTag::SM}, 0.5, target_highest_ransom);
    }
    if (name == "marginal-gain") {
        return make_piracy_policy("marginal-gain", {KnowledgeTag::CF, KnowledgeTag::SM}, 0.8,
                                  target_marginal_gain);
    }
    if (name == "no-action") {
        return no_action_policy();
    }
    if (name == "adrift-drone") {
        return adrift_drone_policy();
    }
    if (name == "priority-rank") {
        return priority_rank_policy();
    }

    const auto parse_two = [&](const std::string& prefix) {
        std::string rest = name.substr(prefix.size());
        double margin = 0.0;
        double ratio = 0.0;
        char colon1 = 0;
        char colon2 = 0;
        std::istringstream in(rest);
        if (!(in >> colon1 >> margin >> colon2 >> ratio) || colon1 != ':' || colon2 != ':' ||
            !in.eof()) {
            throw ConfigError("strategy '" + name + "' must look like " + prefix +
                              ":<margin>:<ratio>");
        }
        return std::pair<double, double>{margin, ratio};
    };

    try {
        if (name.rfind("overboard-util:", 0) == 0) {
            const auto [margin, ratio] = parse_two("overboard-util");
            return overboard_utilitarian(margin, ratio);
        }
        if (name.rfind("overboard-duty:", 0) == 0) {
            const auto [margin, ratio] = parse_two("overboard-duty");
            return wrap_duty_once_spotted(overboard_utilitarian(margin, ratio));
        }
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("strategy '") + name + "': " + e.what());
    }

    throw ConfigError("unknown strategy: " + name);
}

std::vector<std::string> list_strategy_names()
{
    return {
        "closest",
        "ransom",
        "marginal-gain",
        "overboard-util:<margin>:<ratio>",
        "overboard-duty:<margin>:<ratio>",
        "adrift-drone",
        "priority-rank",
        "no-action",
    };
}

} // namespace oamncc::strategy
