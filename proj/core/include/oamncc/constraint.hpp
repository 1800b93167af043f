#pragma once

#include "oamncc/geometry.hpp"
#include "oamncc/knowledge.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace oamncc::conflict {

enum class ConstraintKind { duty, order, goal, norm };

const char* to_string(ConstraintKind kind);

// Interpretive lens applied to a constraint. Duties/orders start deontic;
// the utilitarian strategies reframe them as costs.
enum class Frame { deontic, utilitarian };

/**
 * A constraint as it bears on behavior: standing orders, duties, goals and
 * norms, with runtime grounding statuses (e.g. sailor_spotted) that
 * preferences may condition on.
 */
struct Constraint {
    std::string id;
    ConstraintKind kind = ConstraintKind::duty;
    Frame frame = Frame::deontic;
    std::map<std::string, bool> grounding;
    std::optional<int> priority; // comparisons only defined when both sides carry one
    std::optional<Provenance> provenance;
};

/// Required or forbidden action, for detecting directly contradictory
/// prescriptions.
struct Prescription {
    std::string action;
    bool forbidden = false;
};

/// Single-agent time demand: be at `location` for `duration_min` inside
/// [earliest_min, deadline_min].
struct TimeDemand {
    double earliest_min = 0.0;
    double deadline_min = 0.0;
    double duration_min = 0.0;
    sim::Position location;
};

/// Exclusive use of a named region over a time interval.
struct SpaceDemand {
    std::string region;
    double from_min = 0.0;
    double to_min = 0.0;
};

/**
 * One grounded instance of a constraint, annotated with what satisfying it
 * demands of the world. The annotations form the scenario's action model:
 * the classifier reads them instead of re-deriving scenario logic.
 */
struct ConstraintInstance {
    std::string instance_id;
    Constraint constraint;
    std::optional<Prescription> prescription;
    std::optional<std::string> measure; // declared value-system unit, if any
    std::optional<TimeDemand> time_demand;
    std::optional<SpaceDemand> space_demand;
    std::vector<std::string> preconditions;
    std::vector<std::string> effect_deletes;
    bool satisfaction_probabilistic = false; // outcome is stochastic
    bool depends_on_unobserved = false;      // satisfaction rests on hidden state
};

// Leaves of the conflict-type taxonomy.
enum class ConflictCategory {
    infeasibility,
    incommensurability,
    temporal_resource_contention,
    spatial_resource_contention,
    causal_preclusion,
    epistemic_uncertainty,
    probabilistic_uncertainty,
};

const char* to_string(ConflictCategory c);

struct ConflictDescriptor {
    ConflictCategory primary = ConflictCategory::temporal_resource_contention;
    std::set<ConflictCategory> secondary;
    bool intra_constraint = false;            // all participants share one constraint id
    std::vector<std::string> participants;    // constraint instance ids, >= 2
    std::set<std::string> constraint_ids;     // distinct constraint ids among participants
    bool novel = false;                       // set by detect_novelty
};

/// Conflicts the pretrained policy already handles, keyed by
/// (category, participant constraint-id set).
struct CoverageEntry {
    ConflictCategory category;
    std::set<std::string> constraint_ids;
};

using PolicyCoverage = std::vector<CoverageEntry>;

} // namespace oamncc::conflict
