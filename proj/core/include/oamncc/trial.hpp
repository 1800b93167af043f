#pragma once

#include "oamncc/conflict.hpp"
#include "oamncc/scenario.hpp"
#include "oamncc/strategy.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace oamncc::scenario {

/**
 * Per-trial result: the classified conflict, how the run resolved, and the
 * scenario's named metrics in a stable order. Identical
 * (instance, strategy, master seed) triples produce bit-identical outcomes.
 */
struct TrialOutcome {
    sim::ScenarioKind kind = sim::ScenarioKind::piracy;
    conflict::ConflictDescriptor conflict;
    conflict::ResolutionStatus resolution = conflict::ResolutionStatus::pending;
    std::string chosen_id;
    double priority_rank_mu = -1.0; // utility of the injected ranking candidate, if present
    std::vector<std::pair<std::string, double>> metrics;

    double metric(const std::string& name) const;
};

/// Metric column order for each scenario kind.
std::vector<std::string> metric_names(sim::ScenarioKind kind);

/// Conflicts the pretrained policy handles, per scenario; the scenario
/// conflicts themselves fall outside it, which is what makes them novel.
conflict::PolicyCoverage pretrained_coverage(sim::ScenarioKind kind);

/// The grounded constraint instances each scenario puts in conflict.
std::vector<conflict::ConstraintInstance> constraint_instances(const ScenarioInstance& instance,
                                                               const sim::WorldState& world);

/**
 * Run the full mitigation pipeline on one instance: recognize novelty,
 * classify the conflict, gate information by quality, generate and select a
 * candidate course of action, then execute it minute by minute while
 * monitoring for resolution. Piracy metrics are measured against a paired
 * no-action baseline on the same random streams.
 */
TrialOutcome run_trial(const ScenarioInstance& instance, const strategy::Policy& policy,
                       std::uint64_t master_seed);

} // namespace oamncc::scenario
