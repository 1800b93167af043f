#pragma once

#include "oamncc/belief.hpp"
#include "oamncc/coa.hpp"
#include "oamncc/policy.hpp"

#include <string>
#include <vector>

namespace oamncc::strategy {

// ── Piracy targeting ──

/// Merchant with the shortest travel time among active attacks; ties go to
/// the lower id. Ransom-blind. Throws NoTargetError with no attack active.
int target_closest(const BeliefState& belief);

/// Merchant with the highest believed ransom among active attacks; ties go
/// to the lower id. Distance-blind.
int target_highest_ransom(const BeliefState& belief);

/**
 * Closed form for the ransom a successful interdiction run is expected to
 * save: ransom * ((1-p)^min(travel,window) - (1-p)^window), i.e. the ransom
 * weighted by the probability that boarding would succeed after arrival but
 * within the attack window. Zero once travel reaches the window.
 */
double expected_ransom_avoided(double travel_min, double p_min, int window_min, double ransom);

/// Merchant maximizing expected_ransom_avoided under believed per-merchant
/// boarding probabilities (cannon-aware exactly when the belief is).
int target_marginal_gain(const BeliefState& belief);

// ── Overboard policies ──

/**
 * Utilitarian search policy for the overboard scenario.
 *
 * While the sailor is unspotted it keeps backtracking as long as (a) the
 * margin gate holds: the estimated probability of a successful return to
 * base after one more search minute, from the fuel mean and believed burn
 * noise quantiles, stays at or above `margin`; and (b) the value gate
 * holds: the spot hazard weighted by `ratio` covers the marginal RTB risk,
 * including the fuel a rescue would consume. Once spotted it continues the
 * rescue unless abandoning buys more RTB probability than `ratio` is worth.
 *
 * margin must lie in (0,1); ratio >= 0, where 0 degenerates to returning
 * immediately.
 */
Policy overboard_utilitarian(double margin, double ratio);

/// Duty wrapper: behaves as `inner` until the sailor is spotted, then
/// commits to the rescue until completion, then returns to base. Never
/// emits a port-bound command while a spotted sailor is in the water.
Policy wrap_duty_once_spotted(Policy inner);

// ── Adrift ──

/**
 * The drone-beacon plan: task the aerial drone to beacon the drifting mass,
 * interdict immediately, inspect the beaconed flotsam afterwards. Throws
 * AffordanceError when the drone is unavailable or the flotsam is out of
 * range (callers fall back to plain prioritization).
 */
conflict::CandidateCoa adrift_affordance_plan(const BeliefState& belief);

Policy adrift_drone_policy();

/// Cross-constraint prioritization: pursue the highest-priority duty and
/// ignore the rest. Cannot differentiate instances of one constraint.
Policy priority_rank_policy();

Policy no_action_policy();

// ── Registry ──

/// Resolve a strategy by CLI name: closest, ransom, marginal-gain,
/// overboard-util:<margin>:<ratio>, overboard-duty:<margin>:<ratio>,
/// adrift-drone, priority-rank, no-action. Throws ConfigError on
/// unknown names or bad parameters.
Policy make_policy(const std::string& name);

std::vector<std::string> list_strategy_names();

} // namespace oamncc::strategy
