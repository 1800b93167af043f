#pragma once

#include <stdexcept>
#include <string>

namespace oamncc {

// Configuration problems: unknown keys, out-of-range values, bad
// scenario/strategy pairings. CLI exit code 2.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Instance sampling could not satisfy the scenario's geometric invariants
// within the attempt budget; signals an inconsistent geometry configuration.
// CLI exit code 3.
struct SamplingError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A helm command referenced an entity the engine does not know.
struct InvalidCommandError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// classify_conflict was handed fewer than two participants, or the
// participants are jointly satisfiable.
struct NotAConflictError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Every candidate course of action had zero mitigation utility.
struct NoViableCandidateError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An affordance's preconditions do not hold (e.g. drone unavailable or the
// target is out of range). Callers fall back to another candidate.
struct AffordanceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A targeting heuristic was invoked with no attack in progress.
struct NoTargetError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace oamncc
