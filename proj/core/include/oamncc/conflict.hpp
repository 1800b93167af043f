#pragma once

#include "oamncc/coa.hpp"
#include "oamncc/constraint.hpp"
#include "oamncc/knowledge.hpp"
#include "oamncc/sim.hpp"

#include <functional>
#include <map>
#include <span>
#include <vector>

namespace oamncc::conflict {

/**
 * An action capability usable outside its trained context. `releases` names
 * the contended-resource leaf the affordance dissolves; candidates are only
 * generated for affordances matching the active conflict's category.
 */
struct Affordance {
    std::string id;
    ConflictCategory releases = ConflictCategory::temporal_resource_contention;
    std::set<KnowledgeTag> tags{KnowledgeTag::AA, KnowledgeTag::CS, KnowledgeTag::MU};
    std::function<bool(const sim::WorldState&)> applicable;
    std::function<CandidateCoa(const sim::WorldState&)> make_candidate;
};

using StrategyCatalog = std::vector<strategy::Policy>;
using AffordanceCatalog = std::vector<Affordance>;

/**
 * Lexicographic preference structure: hard rules conditioned on grounding
 * statuses first, then mitigation-utility argmax with a deterministic
 * lexical tie-break on candidate id.
 */
struct PreferenceRule {
    std::string grounding_flag;
    bool required_value = true;
    std::string required_label; // candidates carrying this label win outright
};

struct PreferenceModel {
    std::vector<PreferenceRule> rules;
    std::map<std::string, bool> grounding; // current grounding snapshot
};

/**
 * Assign the conflict its taxonomy leaf.
 *
 * Decision order: directly contradictory prescriptions (infeasibility),
 * then declared value systems without a common measure (incommensurability),
 * then joint satisfiability under the instances' demands: deadline-ordered
 * single-agent scheduling for time, interval overlap for exclusive regions,
 * effect-deletes-precondition for causal preclusion. Uncertainty leaves
 * attach as secondary categories from the instance flags.
 *
 * Throws NotAConflictError for fewer than two participants or a jointly
 * satisfiable set.
 */
ConflictDescriptor classify_conflict(std::span<const ConstraintInstance> instances,
                                     const sim::WorldState& world);

/// True iff the conflict's (category, constraint-id-set) pair is absent
/// from the pretrained policy's coverage.
bool detect_novelty(const ConflictDescriptor& conflict, const PolicyCoverage& coverage);

/**
 * One candidate per catalog strategy applicable to the scenario, plus one
 * per affordance whose released resource class matches the conflict and
 * whose preconditions hold. Candidates a strategy cannot differentiate the
 * conflict with get mitigation utility 0. An empty result is legal and
 * means "no mitigation found".
 */
std::vector<CandidateCoa> generate_candidates(const ConflictDescriptor& conflict,
                                              const sim::WorldState& world,
                                              const StrategyCatalog& strategies,
                                              const AffordanceCatalog& affordances);

/**
 * Discard zero-mitigation-utility candidates, apply grounding-conditioned
 * hard rules, then argmax mitigation utility (ties by id). Throws
 * NoViableCandidateError when everything was discarded.
 */
CandidateCoa select_candidate(const std::vector<CandidateCoa>& candidates,
                              const PreferenceModel& prefs);

enum class ResolutionStatus { pending, resolved, failed };

const char* to_string(ResolutionStatus s);

/**
 * Step-5 monitoring: resolved when every participant is satisfied or
 * permissibly discharged, failed when any participant became permanently
 * unsatisfiable, pending otherwise.
 */
ResolutionStatus monitor_resolution(const sim::WorldState& world, const CandidateCoa& chosen,
                                    const ConflictDescriptor& conflict);

} // namespace oamncc::conflict
