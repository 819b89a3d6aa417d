#include <doctest.h>

#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>

#include "symplan/random.hpp"
#include "symplan/rollout.hpp"

using namespace symplan;
using std::numbers::pi;

namespace {

ValueTable zero_table(const CostParams& cost, int n1, int n2) {
    const PartitionGrid g = build_coarse_grid();
    return {g, std::vector<double>(g.cell_count(), 0.0), cost, n1, n2, build_disturbance_uniform(n2)};
}

ValueTable random_table(Rng& rng, const CostParams& cost, int n) {
    ValueTable t = zero_table(cost, n, n);
    for (double& a : t.coefficients) a = uniform(rng, 0, 200);
    return t;
}

/// Three cells split along e only.
ValueTable three_cell_table() {
    const PartitionGrid g({0, 40}, {0, 2, 5, 40}, {0, pi});
    return {g, {0.0, 7.0, 30.0}, {0.5, 1.0, 1e-8}, 2, 2, build_disturbance_uniform(2)};
}

/// Independent objective for one open-loop sequence under given scenarios.
double sequence_objective(const WorldState& s0, Vec2 t, const std::vector<Vec2>& us, const ValueTable& table,
                          const std::vector<Scenario>& scenarios, const ConstraintBox& box, double penalty) {
    double total = 0.0;
    for (const Scenario& sc : scenarios) {
        WorldState s = s0;
        double cost = 0.0;
        for (std::size_t l = 0; l < us.size(); ++l) {
            cost += incremental_cost(s, t, table.cost);
            s = {box.clamp(s.h + sc.disturbances[l]), s.r + us[l]};
            if (!box.contains(s.r)) cost += penalty;
        }
        cost += evaluate_reduced(table, reduce(s, t));
        total += sc.weight * cost;
    }
    return total;
}

struct BruteForce {
    std::size_t first = 0;
    double value = INFINITY;
};

BruteForce brute_force_two_step(const WorldState& s, Vec2 t, const ValueTable& table, const ActionSet& actions,
                                const std::vector<Scenario>& scenarios, const ConstraintBox& box, double penalty) {
    BruteForce best;
    for (std::size_t a = 0; a < actions.size(); ++a)
        for (std::size_t b = 0; b < actions.size(); ++b) {
            const double v = sequence_objective(s, t, {actions[a], actions[b]}, table, scenarios, box, penalty);
            if (v < best.value) best = {a, v};
        }
    return best;
}

WorldState random_state(Rng& rng, const ConstraintBox& box) {
    return {{uniform(rng, box.lo.x, box.hi.x), uniform(rng, box.lo.y, box.hi.y)},
            {uniform(rng, box.lo.x, box.hi.x), uniform(rng, box.lo.y, box.hi.y)}};
}

}  // namespace

TEST_CASE("N = 1 with a zero table ties on every action and returns index 0") {
    const ValueTable table = zero_table({0.5, 1, 1e-8}, 16, 16);
    const ActionSet actions(16);
    RolloutConfig cfg;
    const PlanResult r = plan({{3, 3}, {10, 10}}, {15, 15}, table, actions, table.disturbance, ConstraintBox{}, cfg);
    CHECK(r.action_index == 0);
    CHECK(r.u == Vec2{1, 0});
}

TEST_CASE("rollout config validation and mode parsing") {
    RolloutConfig cfg;
    cfg.horizon = 0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg.horizon = 1;
    cfg.scenario_count = 0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    CHECK(parse_rollout_mode("ce") == RolloutMode::certainty_equivalence);
    CHECK(parse_rollout_mode("expectation") == RolloutMode::expectation);
    CHECK_THROWS_AS(parse_rollout_mode("mean"), std::invalid_argument);
}

TEST_CASE("scenarios") {
    const DisturbanceModel w = build_disturbance_weighted(2, 100, 1);
    RolloutConfig cfg;
    cfg.horizon = 2;
    cfg.mode = RolloutMode::certainty_equivalence;
    const auto ce = build_scenarios(w, cfg);
    REQUIRE(ce.size() == 1);
    CHECK(ce[0].weight == 1.0);
    CHECK(ce[0].disturbances[1] == mean_disturbance(w));

    cfg.mode = RolloutMode::expectation;
    cfg.scenario_count = 200000;
    const auto many = build_scenarios(w, cfg);
    double total = 0.0;
    std::map<std::pair<std::size_t, std::size_t>, double> weight_of;
    for (const Scenario& sc : many) {
        total += sc.weight;
        std::size_t i = 0, j = 0;
        for (std::size_t k = 0; k < w.size(); ++k) {
            if (w.outcomes[k] == sc.disturbances[0]) i = k;
            if (w.outcomes[k] == sc.disturbances[1]) j = k;
        }
        weight_of[{i, j}] = sc.weight;
    }
    CHECK(std::abs(total - 1.0) < 1e-12);
    CHECK(many.size() == w.size() * w.size());
    for (const auto& [key, weight] : weight_of) {
        const double p = w.probabilities[key.first] * w.probabilities[key.second];
        CHECK(std::abs(weight - p) < 5 * std::sqrt(p * (1 - p) / 200000) + 1e-12);
    }

    const auto point = build_scenarios(build_disturbance_point_mass(16, 3), RolloutConfig{});
    REQUIRE(point.size() == 1);
    CHECK(point[0].weight == 1.0);
}

TEST_CASE("plan matches brute-force enumeration on a small instance") {
    const ValueTable table = three_cell_table();
    const ActionSet actions(2);
    const ConstraintBox box{{0, 0}, {6, 6}};
    Rng rng(21);
    for (int i = 0; i < 200; ++i) {
        RolloutConfig cfg;
        cfg.horizon = 2;
        cfg.scenario_count = 8;
        cfg.seed = static_cast<std::uint64_t>(i);
        cfg.mode = i % 2 == 0 ? RolloutMode::expectation : RolloutMode::certainty_equivalence;
        const WorldState s = random_state(rng, box);
        const Vec2 t{uniform(rng, 0, 6), uniform(rng, 0, 6)};
        const PlanResult r = plan(s, t, table, actions, table.disturbance, box, cfg);
        const BruteForce bf = brute_force_two_step(s, t, table, actions, build_scenarios(table.disturbance, cfg),
                                                   box, cfg.infeasibility_penalty);
        CHECK(r.action_index == bf.first);
        CHECK(std::abs(r.value - bf.value) <= 1e-9 * std::max(1.0, bf.value));
    }
}

TEST_CASE("reported value equals the re-simulated open-loop sequence") {
    Rng rng(22);
    const ValueTable table = random_table(rng, {0.5, 1, 1e-8}, 4);
    const ActionSet actions(4);
    const ConstraintBox box;
    for (int i = 0; i < 30; ++i) {
        RolloutConfig cfg;
        cfg.horizon = 2;
        cfg.scenario_count = 16;
        cfg.seed = 1000 + static_cast<std::uint64_t>(i);
        const WorldState s = random_state(rng, box);
        const Vec2 t{uniform(rng, 0, 20), uniform(rng, 0, 20)};
        const PlanResult r = plan(s, t, table, actions, table.disturbance, box, cfg);
        REQUIRE(r.sequence.size() == 2);
        CHECK(r.sequence[0] == r.action_index);
        const double v = sequence_objective(s, t, {actions[r.sequence[0]], actions[r.sequence[1]]}, table,
                                            build_scenarios(table.disturbance, cfg), box, cfg.infeasibility_penalty);
        CHECK(std::abs(v - r.value) <= 1e-10 * std::max(1.0, std::abs(v)));
    }
}

TEST_CASE("point-mass disturbance: expectation and CE coincide") {
    Rng rng(23);
    const ValueTable table = random_table(rng, {0.5, 1, 1e-8}, 8);
    const ActionSet actions(8);
    const ConstraintBox box;
    for (std::size_t idx : {0u, 5u, 16u}) {
        const DisturbanceModel w = build_disturbance_point_mass(8, idx);
        for (int i = 0; i < 20; ++i) {
            const WorldState s = random_state(rng, box);
            const Vec2 t{uniform(rng, 0, 20), uniform(rng, 0, 20)};
            RolloutConfig e;
            e.horizon = 2;
            e.seed = static_cast<std::uint64_t>(i);
            RolloutConfig c = e;
            c.mode = RolloutMode::certainty_equivalence;
            const PlanResult pe = plan(s, t, table, actions, w, box, e);
            const PlanResult pc = plan(s, t, table, actions, w, box, c);
            CHECK(pe.action_index == pc.action_index);
            CHECK(pe.value == pc.value);
        }
    }
}

TEST_CASE("CE plan ignores seed and scenario count") {
    Rng rng(24);
    const ValueTable table = random_table(rng, {0.5, 1, 1e-8}, 4);
    const ActionSet actions(4);
    const DisturbanceModel w = build_disturbance_weighted(4, 100, 1);
    const WorldState s{{4, 5}, {12, 9}};
    RolloutConfig a;
    a.mode = RolloutMode::certainty_equivalence;
    a.horizon = 2;
    RolloutConfig b = a;
    b.seed = 77;
    b.scenario_count = 3;
    const PlanResult pa = plan(s, {2, 2}, table, actions, w, ConstraintBox{}, a);
    const PlanResult pb = plan(s, {2, 2}, table, actions, w, ConstraintBox{}, b);
    CHECK(pa.sequence == pb.sequence);
    CHECK(pa.value == pb.value);
}

TEST_CASE("optimal value is invariant under lattice rotations about the target (uniform W, no box)") {
    Rng rng(25);
    const int n = 4;
    const ValueTable table = random_table(rng, {0.5, 1, 1e-8}, n);
    const ActionSet actions(n);
    const ConstraintBox open{{-1e6, -1e6}, {1e6, 1e6}};
    RolloutConfig cfg;
    cfg.horizon = 2;
    cfg.mode = RolloutMode::certainty_equivalence;
    for (int i = 0; i < 20; ++i) {
        const WorldState s = random_state(rng, ConstraintBox{});
        const Vec2 t{uniform(rng, 0, 20), uniform(rng, 0, 20)};
        const double base = plan(s, t, table, actions, table.disturbance, open, cfg).value;
        for (int q = 1; q < 2 * n; ++q) {
            const WorldState rs = rotate_about(s, t, q * pi / n);
            const double rotated = plan(rs, t, table, actions, table.disturbance, open, cfg).value;
            CHECK(std::abs(rotated - base) <= 1e-9 * std::max(1.0, base));
        }
    }
}

TEST_CASE("leaving the box is penalized") {
    const ValueTable table = zero_table({1.0, 1, 1e-8}, 2, 2);
    const ActionSet actions(2);
    RolloutConfig cfg;
    cfg.horizon = 2;
    cfg.mode = RolloutMode::certainty_equivalence;
    // Target just outside the box: the unconstrained plan would step out.
    const PlanResult r = plan({{10, 10}, {20, 5}}, {23, 5}, table, actions, table.disturbance, ConstraintBox{}, cfg);
    CHECK(r.value < 1e13);
    CHECK(actions[r.action_index].x <= 0.0);
}

TEST_CASE("simulate_episode") {
    Rng rng(26);
    const CostParams cost{0.5, 1, 1e-8};
    const ValueTable table = random_table(rng, cost, 4);
    const ActionSet actions(4);
    const DisturbanceModel w = build_disturbance_uniform(4);
    const ConstraintBox box;
    RolloutConfig cfg;
    cfg.scenario_count = 8;
    const Controller controller = make_rollout_controller(table, actions, w, box, cfg);

    const EpisodeResult at_target = simulate_episode({{5, 5}, {1, 1}}, {1.5, 1}, controller, w, cost, box, 50, 1);
    CHECK(at_target.time_to_target == 0);
    CHECK_FALSE(at_target.timed_out);
    REQUIRE(at_target.trajectory.size() == 1);

    const WorldState s0{{3, 17}, {15, 4}};
    const EpisodeResult a = simulate_episode(s0, {2, 2}, controller, w, cost, box, 200, 9);
    const EpisodeResult b = simulate_episode(s0, {2, 2}, controller, w, cost, box, 200, 9);
    REQUIRE(a.trajectory.size() == b.trajectory.size());
    for (std::size_t k = 0; k < a.trajectory.size(); ++k) {
        CHECK(a.trajectory[k].r == b.trajectory[k].r);
        CHECK(a.trajectory[k].h == b.trajectory[k].h);
        CHECK(a.trajectory[k].u == b.trajectory[k].u);
    }
    CHECK(a.time_to_target <= 200);
    CHECK(a.min_distance <= norm(s0.h - s0.r));
    CHECK(a.trajectory.back().u == Vec2{0, 0});
    double running = INFINITY;
    for (const TrajectoryStep& st : a.trajectory) {
        CHECK(box.contains(st.h));
        running = std::min(running, norm(st.h - st.r));
    }
    CHECK(running == a.min_distance);
    if (!a.timed_out) CHECK(norm(a.trajectory.back().r - Vec2{2, 2}) <= cost.R);
}

TEST_CASE("disturbance realizations are shared across controllers") {
    const DisturbanceModel w = build_disturbance_uniform(8);
    const ActionSet actions(8);
    const Controller still = [&](const WorldState&, Vec2, std::uint64_t) { return ControlDecision{{0, 0}, false}; };
    const Controller east = [&](const WorldState&, Vec2, std::uint64_t) { return ControlDecision{{1, 0}, true}; };
    const CostParams cost{0.5, 1, 1e-8};
    const ConstraintBox big{{-1000, -1000}, {1000, 1000}};
    const EpisodeResult a = simulate_episode({{0, 0}, {50, 50}}, {-500, -500}, still, w, cost, big, 30, 4);
    const EpisodeResult b = simulate_episode({{0, 0}, {50, 50}}, {-500, -500}, east, w, cost, big, 30, 4);
    CHECK(a.timed_out);
    CHECK(a.time_to_target == 30);
    CHECK(b.fallback_count == 30);
    for (std::size_t k = 0; k < a.trajectory.size(); ++k) CHECK(a.trajectory[k].w == b.trajectory[k].w);
}

TEST_CASE("collisions are flagged without ending the episode") {
    const DisturbanceModel w = build_disturbance_point_mass(2, 4);
    const Controller east = [&](const WorldState&, Vec2, std::uint64_t) { return ControlDecision{{1, 0}, false}; };
    const EpisodeResult r =
        simulate_episode({{5, 0}, {0, 0}}, {10, 0}, east, w, {0.5, 1, 1e-8}, ConstraintBox{{-20, -20}, {20, 20}}, 100, 0);
    CHECK(r.collided);
    CHECK(r.min_distance == 0.0);
    CHECK(r.time_to_target == 9);
}
