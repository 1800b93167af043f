#include "oamncc/constraint.hpp"

namespace oamncc::conflict {

const char* to_string(ConstraintKind kind)
{
    switch (kind) {
    case ConstraintKind::duty: return "duty";
    case ConstraintKind::order: return "order";
    case ConstraintKind::goal: return "goal";
    case ConstraintKind::norm: return "norm";
    }
    return "?";
}

const char* to_string(ConflictCategory c)
{
    switch (c) {
    case ConflictCategory::infeasibility: return "infeasibility";
    case ConflictCategory::incommensurability: return "incommensurability";
    case ConflictCategory::temporal_resource_contention: return "temporal-resource-contention";
    case ConflictCategory::spatial_resource_contention: return "spatial-resource-contention";
    case ConflictCategory::causal_preclusion: return "causal-preclusion";
    case ConflictCategory::epistemic_uncertainty: return "epistemic-uncertainty";
    case ConflictCategory::probabilistic_uncertainty: return "probabilistic-uncertainty";
    }
    return "?";
}

} // namespace oamncc::conflict
