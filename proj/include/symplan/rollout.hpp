#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "symplan/action_models.hpp"
#include "symplan/geometry.hpp"
#include "symplan/value_solver.hpp"

namespace symplan {

/// Box constraint applied to both robot and obstacle positions.
struct ConstraintBox {
    Vec2 lo{0.0, 0.0};
    Vec2 hi{20.0, 20.0};

    bool contains(Vec2 p) const { return p.x >= lo.x && p.x <= hi.x && p.y >= lo.y && p.y <= hi.y; }
    Vec2 clamp(Vec2 p) const;
    void validate() const;
};

enum class RolloutMode { expectation, certainty_equivalence };

const char* to_string(RolloutMode mode);
/// Accepts "expectation" and "certainty_equivalence" (alias "ce").
RolloutMode parse_rollout_mode(const std::string& name);

struct RolloutConfig {
    int horizon = 1;
    RolloutMode mode = RolloutMode::expectation;
    /// Number of common-random-number disturbance sequences (expectation mode).
    int scenario_count = 64;
    /// Added once per lookahead step at which the robot is outside the box.
    double infeasibility_penalty = 1e13;
    std::uint64_t seed = 0;

    void validate() const;
};

/// A disturbance sequence of length `horizon` with its weight in the average.
struct Scenario {
    std::vector<Vec2> disturbances;
    double weight = 1.0;
};

/// Expectation mode: scenario_count sequences drawn i.i.d. from W, with
/// identical draws merged into one weighted scenario. CE mode: a single
/// sequence of mean disturbances.
std::vector<Scenario> build_scenarios(const DisturbanceModel& disturbance, const RolloutConfig& cfg);

struct PlanResult {
    std::size_t action_index = 0;
    Vec2 u;
    double value = 0.0;
    /// Action indices of the minimizing open-loop sequence.
    std::vector<std::size_t> sequence;
};

/// N-step lookahead over all open-loop sequences in U^N. The objective is the
/// scenario-weighted sum of stage costs at steps k..k+N-1 plus the table
/// value at step k+N. Obstacle positions are clamped to the box; robot
/// positions outside it are penalized. Ties go to the lexicographically
/// first sequence in canonical action order.
PlanResult plan(const WorldState& s, Vec2 t, const ValueTable& table, const ActionSet& actions,
                const DisturbanceModel& disturbance, const ConstraintBox& box, const RolloutConfig& cfg);

struct ControlDecision {
    Vec2 u;
    /// Set by controllers that had to fall back (e.g. an infeasible CBF step).
    bool fallback = false;
};

/// Closed-loop controller; step_seed is a per-step seed for controllers that
/// sample internally.
using Controller = std::function<ControlDecision(const WorldState& s, Vec2 t, std::uint64_t step_seed)>;

/// Wraps plan(). The referenced table, actions and disturbance must outlive
/// the returned controller.
Controller make_rollout_controller(const ValueTable& table, const ActionSet& actions,
                                   const DisturbanceModel& disturbance, const ConstraintBox& box,
                                   RolloutConfig cfg);

struct TrajectoryStep {
    int step = 0;
    Vec2 r;
    Vec2 h;
    /// Control and disturbance applied from this step (zero on the last row).
    Vec2 u;
    Vec2 w;
};

struct EpisodeResult {
    int time_to_target = 0;
    double min_distance = 0.0;
    bool collided = false;
    bool timed_out = false;
    int fallback_count = 0;
    std::vector<TrajectoryStep> trajectory;
};

/// Closed-loop simulation until the robot is within R of the target or
/// max_steps elapse. Disturbances come from a stream keyed only by `seed`,
/// so every controller sees the same realization for the same seed.
EpisodeResult simulate_episode(const WorldState& s0, Vec2 t, const Controller& controller,
                               const DisturbanceModel& disturbance, const CostParams& cost,
                               const ConstraintBox& box, int max_steps, std::uint64_t seed);

}  // namespace symplan
