#pragma once

#include <cstddef>
#include <vector>

#include "symplan/action_models.hpp"
#include "symplan/geometry.hpp"
#include "symplan/rollout.hpp"

namespace symplan {

/// Discrete-time barrier B(x) = |h - r| - d0 with decay rate alpha.
struct CbfParams {
    double alpha = 0.75;
    double d0 = 1.0;

    void validate() const;
};

/// Action minimizing |r + u - t| (obstacle ignored), canonical tie-break.
Vec2 nominal_control(const WorldState& s, Vec2 t, const ActionSet& actions);

struct CbfDecision {
    Vec2 u;
    std::size_t action_index = 0;
    /// False when no action satisfied the barrier condition and the
    /// least-violating action was returned instead.
    bool feasible = true;
};

/// Barrier left-hand side for action u: E[B(h + w, r + u)] in expectation
/// mode, B(h + mean(w), r + u) in CE mode.
double cbf_next_barrier(const WorldState& s, Vec2 u, const DisturbanceModel& disturbance,
                        const CbfParams& prm, RolloutMode mode);

/// Safety filter: among actions with next barrier >= alpha * B(x), picks the
/// one closest to the nominal action.
CbfDecision cbf_control(const WorldState& s, Vec2 t, const ActionSet& actions,
                        const DisturbanceModel& disturbance, const CbfParams& prm, RolloutMode mode);

struct AStarPath {
    bool found = false;
    /// Indices into the action set; empty when the start already satisfies the goal test.
    std::vector<std::size_t> moves;
    std::size_t expanded = 0;
};

inline constexpr std::size_t kAStarNodeBudget = 1'000'000;

/// A* from `start` to the disc |p - t| <= arrival_radius over unit moves of
/// the action set, positions restricted to the box. The obstacle is not
/// modelled.
AStarPath astar_search(Vec2 start, Vec2 t, double arrival_radius, const ActionSet& actions,
                       const ConstraintBox& box, std::size_t node_budget = kAStarNodeBudget);

/// Receding-horizon A*: first move of a fresh search, zero if already at the
/// goal, nominal_control if the search fails.
Vec2 astar_control(const WorldState& s, Vec2 t, const ActionSet& actions, const ConstraintBox& box,
                   double arrival_radius);

Controller make_nominal_controller(const ActionSet& actions);
Controller make_astar_controller(const ActionSet& actions, const ConstraintBox& box, double arrival_radius);
/// Reports infeasible steps through ControlDecision::fallback.
Controller make_cbf_controller(const ActionSet& actions, const DisturbanceModel& disturbance, CbfParams prm,
                               RolloutMode mode);

}  // namespace symplan
