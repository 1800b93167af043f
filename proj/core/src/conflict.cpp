#include "oamncc/conflict.hpp"

#include "oamncc/errors.hpp"

#include <algorithm>
#include <cmath>

namespace oamncc::conflict {

namespace {

bool contradictory_prescriptions(std::span<const ConstraintInstance> instances)
{
    for (std::size_t i = 0; i < instances.size(); ++i) {
        if (!instances[i].prescription) {
            continue;
        }
        for (std::size_t j = i + 1; j < instances.size(); ++j) {
            if (!instances[j].prescription) {
                continue;
            }
            const Prescription& a = *instances[i].prescription;
            const Prescription& b = *instances[j].prescription;
            if (a.action == b.action && a.forbidden != b.forbidden) {
                return true;
            }
        }
    }
    return false;
}

bool missing_common_measure(std::span<const ConstraintInstance> instances)
{
    std::set<std::string> measures;
    for (const auto& inst : instances) {
        if (inst.measure) {
            measures.insert(*inst.measure);
        }
    }
    return measures.size() >= 2;
}

// Deadline-ordered single-agent schedule with travel between demand
// locations; infeasible whenever some completion overruns its deadline.
bool time_demands_schedulable(std::span<const ConstraintInstance> instances,
                              const sim::WorldState& world)
{
    std::vector<const ConstraintInstance*> jobs;
    for (const auto& inst : instances) {
        if (inst.time_demand) {
            jobs.push_back(&inst);
        }
    }
    if (jobs.size() < 2) {
        return true;
    }
    std::stable_sort(jobs.begin(), jobs.end(), [](const auto* a, const auto* b) {
        return a->time_demand->deadline_min < b->time_demand->deadline_min;
    });

    double t = static_cast<double>(world.clock.t_min);
    sim::Position at = world.ownship.position;
    for (const auto* job : jobs) {
        const TimeDemand& d = *job->time_demand;
        t += sim::travel_time_min(at, d.location, world.max_speed_kn);
        t = std::max(t, d.earliest_min);
        t += d.duration_min;
        if (t > d.deadline_min) {
            return false;
        }
        at = d.location;
    }
    return true;
}

bool exclusive_regions_overlap(std::span<const ConstraintInstance> instances)
{
    for (std::size_t i = 0; i < instances.size(); ++i) {
        if (!instances[i].space_demand) {
            continue;
        }
        for (std::size_t j = i + 1; j < instances.size(); ++j) {
            if (!instances[j].space_demand) {
                continue;
            }
            const SpaceDemand& a = *instances[i].space_demand;
            const SpaceDemand& b = *instances[j].space_demand;
            if (a.region == b.region && a.from_min < b.to_min && b.from_min < a.to_min) {
                return true;
            }
        }
    }
    return false;
}

bool effect_deletes_precondition(std::span<const ConstraintInstance> instances)
{
    for (const auto& actor : instances) {
        for (const auto& deleted : actor.effect_deletes) {
            for (const auto& other : instances) {
                if (&other == &actor) {
                    continue;
                }
                if (std::find(other.preconditions.begin(), other.preconditions.end(), deleted) !=
                    other.preconditions.end()) {
                    return true;
                }
            }
        }
    }
    return false;
}

} // namespace

const char* to_string(ResolutionStatus s)
{
    switch (s) {
    case ResolutionStatus::pending: return "pending";
    case ResolutionStatus::resolved: return "resolved";
    case ResolutionStatus::failed: return "failed";
    }
    return "?";
}

ConflictDescriptor classify_conflict(std::span<const ConstraintInstance> instances,
                                     const sim::WorldState& world)
{
    if (instances.size() < 2) {
        throw NotAConflictError("classify_conflict: need at least two participants");
    }

    ConflictDescriptor d;
    for (const auto& inst : instances) {
        d.participants.push_back(inst.instance_id);
        d.constraint_ids.insert(inst.constraint.id);
    }
    d.intra_constraint = d.constraint_ids.size() == 1;

    if (contradictory_prescriptions(instances)) {
        d.primary = ConflictCategory::infeasibility;
    } else if (missing_common_measure(instances)) {
        d.primary = ConflictCategory::incommensurability;
    } else if (!time_demands_schedulable(instances, world)) {
        d.primary = ConflictCategory::temporal_resource_contention;
    } else if (exclusive_regions_overlap(instances)) {
        d.primary = ConflictCategory::spatial_resource_contention;
    } else if (effect_deletes_precondition(instances)) {
        d.primary = ConflictCategory::causal_preclusion;
    } else {
        throw NotAConflictError("classify_conflict: participants are jointly satisfiable");
    }

    for (const auto& inst : instances) {
        if (inst.satisfaction_probabilistic) {
            d.secondary.insert(ConflictCategory::probabilistic_uncertainty);
        }
        if (inst.depends_on_unobserved) {
            d.secondary.insert(ConflictCategory::epistemic_uncertainty);
        }
    }
    d.secondary.erase(d.primary);
    return d;
}

bool detect_novelty(const ConflictDescriptor& conflict, const PolicyCoverage& coverage)
{
    return std::none_of(coverage.begin(), coverage.end(), [&](const CoverageEntry& entry) {
        return entry.category == conflict.primary && entry.constraint_ids == conflict.constraint_ids;
    });
}

std::vector<CandidateCoa> generate_candidates(const ConflictDescriptor& conflict,
                                              const sim::WorldState& world,
                                              const StrategyCatalog& strategies,
                                              const AffordanceCatalog& affordances)
{
    std::vector<CandidateCoa> out;

    for (const auto& policy : strategies) {
        if (!policy.applicable_to(world.kind)) {
            continue;
        }
        CandidateCoa c;
        c.id = policy.name;
        c.labels = policy.labels;
        c.pursues_flotsam = policy.pursues_flotsam;
        c.policy = policy;
        c.tags_used = policy.tags;
        switch (policy.differentiator) {
        case strategy::Differentiator::cross_constraint_priority:
            // Priority ranking tells constraints apart, never instances of
            // the same constraint.
            c.mitigation_utility = conflict.intra_constraint ? 0.0 : policy.base_mitigation_utility;
            break;
        case strategy::Differentiator::situational_features:
        case strategy::Differentiator::affordance:
            c.mitigation_utility = policy.base_mitigation_utility;
            break;
        case strategy::Differentiator::none:
            c.mitigation_utility = 0.0;
            break;
        }
        for (const auto& id : conflict.constraint_ids) {
            c.expected_outcome[id] = c.mitigation_utility;
        }
        out.push_back(std::move(c));
    }

    for (const auto& affordance : affordances) {
        if (affordance.releases != conflict.primary) {
            continue;
        }
        if (!affordance.applicable || !affordance.applicable(world)) {
            continue; // never fabricate a candidate with unsatisfiable preconditions
        }
        CandidateCoa c = affordance.make_candidate(world);
        c.tags_used.insert(affordance.tags.begin(), affordance.tags.end());
        out.push_back(std::move(c));
    }

    return out;
}

CandidateCoa select_candidate(const std::vector<CandidateCoa>& candidates,
                              const PreferenceModel& prefs)
{
    std::vector<const CandidateCoa*> viable;
    for (const auto& c : candidates) {
        if (c.mitigation_utility > 0.0) {
            viable.push_back(&c);
        }
    }
    if (viable.empty()) {
        throw NoViableCandidateError("select_candidate: no candidate with positive mitigation utility");
    }

    // Hard grounding-conditioned rules first.
    for (const auto& rule : prefs.rules) {
        const auto it = prefs.grounding.find(rule.grounding_flag);
        if (it == prefs.grounding.end() || it->second != rule.required_value) {
            continue;
        }
        std::vector<const CandidateCoa*> matching;
        for (const auto* c : viable) {
            if (c->labels.count(rule.required_label) > 0) {
                matching.push_back(c);
            }
        }
        if (!matching.empty()) {
            viable = std::move(matching);
            break;
        }
    }

    const CandidateCoa* best = viable.front();
    for (const auto* c : viable) {
        if (c->mitigation_utility > best->mitigation_utility ||
            (c->mitigation_utility == best->mitigation_utility && c->id < best->id)) {
            best = c;
        }
    }
    return *best;
}

ResolutionStatus monitor_resolution(const sim::WorldState& world, const CandidateCoa& chosen,
                                    const ConflictDescriptor& conflict)
{
    (void)conflict;
    switch (world.kind) {
    case sim::ScenarioKind::piracy: {
        if (chosen.target_merchant >= 0 &&
            chosen.target_merchant < static_cast<int>(world.merchants.size())) {
            const sim::Merchant& target = world.merchants[chosen.target_merchant];
            if (target.attack.boarded) {
                return ResolutionStatus::failed; // attack succeeded before arrival
            }
            if (target.attack.active) {
                return ResolutionStatus::pending;
            }
        }
        // Chosen attack dealt with; the remaining instances discharge when
        // their windows close.
        return world.all_attacks_resolved() ? ResolutionStatus::resolved
                                            : ResolutionStatus::pending;
    }
    case sim::ScenarioKind::adrift: {
        const sim::Merchant& target = world.merchants.front();
        if (target.attack.boarded) {
            return ResolutionStatus::failed;
        }
        if (world.flotsam && world.flotsam->reacquire_attempted) {
            return world.flotsam->reacquired && target.attack.interdicted
                       ? ResolutionStatus::resolved
                       : ResolutionStatus::failed;
        }
        if (!chosen.pursues_flotsam && !target.attack.active) {
            // Interdiction leg is over and this plan forgoes the mass: the
            // inspect duty is now permanently unsatisfiable.
            return ResolutionStatus::failed;
        }
        return ResolutionStatus::pending;
    }
    case sim::ScenarioKind::overboard: {
        const bool at_port = world.ownship_at(world.port, 1e-6);
        const sim::Sailor& sailor = world.sailor.value();
        if (sailor.spotted && !sailor.rescued && world.ownship.mode == sim::ShipMode::transit) {
            return ResolutionStatus::failed; // turned for port on a spotted sailor
        }
        if (world.ownship.fuel_exhausted && !at_port && !(sailor.spotted && !sailor.rescued)) {
            return ResolutionStatus::failed;
        }
        if (at_port) {
            // Rescue duty satisfied, or discharged because the search came
            // up empty within the fuel budget.
            return ResolutionStatus::resolved;
        }
        return ResolutionStatus::pending;
    }
    }
    return ResolutionStatus::pending;
}

} // namespace oamncc::conflict
