#pragma once

#include "oamncc/knowledge.hpp"
#include "oamncc/policy.hpp"

#include <map>
#include <set>
#include <string>

namespace oamncc::conflict {

/**
 * A candidate course of action: an executable policy plus the evaluation
 * metadata the selection step works from. mitigation_utility is 0 exactly
 * when the candidate cannot differentiate the active conflict's
 * participants; any positive scale works for the rest since selection is
 * an argmax.
 */
struct CandidateCoa {
    std::string id;
    std::set<std::string> labels; // markers preference rules can key on
    strategy::Policy policy;
    std::map<std::string, double> expected_outcome; // constraint id -> satisfaction in [0,1]
    std::set<KnowledgeTag> tags_used;
    double mitigation_utility = 0.0;
    int target_merchant = -1;    // resolved target, when the plan has one
    bool pursues_flotsam = false;
};

} // namespace oamncc::conflict
