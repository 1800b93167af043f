#pragma once

#include "oamncc/belief.hpp"
#include "oamncc/knowledge.hpp"
#include "oamncc/sim.hpp"

#include <functional>
#include <set>
#include <string>

namespace oamncc::strategy {

/// What lets a candidate built from this policy tell the conflict's
/// participants apart. Pure cross-constraint priority ranking cannot
/// differentiate instances of one constraint.
enum class Differentiator {
    cross_constraint_priority,
    situational_features,
    affordance,
    none,
};

/**
 * An interchangeable decision policy. `decide` is a pure function of the
 * belief state and the clock, so a policy object is immutable after
 * construction and safe to share across parallel trials.
 */
struct Policy {
    std::string name;
    std::set<sim::ScenarioKind> applicable_scenarios;
    std::set<conflict::KnowledgeTag> tags;
    std::function<sim::HelmCommand(const BeliefState&, int)> decide;
    Differentiator differentiator = Differentiator::situational_features;
    double base_mitigation_utility = 0.5;
    std::set<std::string> labels;  // markers preference rules can key on
    bool pursues_flotsam = false;

    bool applicable_to(sim::ScenarioKind kind) const
    {
        return applicable_scenarios.count(kind) > 0;
    }
};

} // namespace oamncc::strategy
