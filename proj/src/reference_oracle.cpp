#include "symplan/reference_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "symplan/random.hpp"

namespace symplan {

OracleReport make_report(std::string name, double max_residual, double tolerance, std::string detail) {
    const bool passed = max_residual <= tolerance;
    return {std::move(name), max_residual, tolerance, true, passed, std::move(detail)};
}

OracleReport make_info_report(std::string name, double max_residual, std::string detail) {
    return {std::move(name), max_residual, 0.0, false, true, std::move(detail)};
}

void DiscreteWorld::validate() const {
    if (L < 1 || L % 2 == 0) throw std::invalid_argument("discrete world side length must be odd and positive");
    disturbance.validate();
    if (disturbance.n2 != 2) throw std::invalid_argument("discrete world requires n2 = 2");
}

std::size_t DiscreteWorld::state_count() const {
    const auto n = static_cast<std::size_t>(L);
    return n * n * n * n;
}

std::size_t DiscreteWorld::index(const LatticeState& s) const {
    const auto n = static_cast<std::size_t>(L);
    return ((static_cast<std::size_t>(s.h.x) * n + static_cast<std::size_t>(s.h.y)) * n +
            static_cast<std::size_t>(s.r.x)) * n + static_cast<std::size_t>(s.r.y);
}

LatticeState DiscreteWorld::state(std::size_t index) const {
    const auto n = static_cast<std::size_t>(L);
    LatticeState s;
    s.r.y = static_cast<int>(index % n);
    index /= n;
    s.r.x = static_cast<int>(index % n);
    index /= n;
    s.h.y = static_cast<int>(index % n);
    s.h.x = static_cast<int>(index / n);
    return s;
}

Cell2 DiscreteWorld::clamp(Cell2 p) const { return {std::clamp(p.x, 0, L - 1), std::clamp(p.y, 0, L - 1)}; }

WorldState DiscreteWorld::to_world(const LatticeState& s) {
    return {{static_cast<double>(s.h.x), static_cast<double>(s.h.y)},
            {static_cast<double>(s.r.x), static_cast<double>(s.r.y)}};
}

std::array<std::function<Cell2(Cell2)>, 8> square_symmetries(const DiscreteWorld& world) {
    const int c = world.center();
    const auto about = [c](auto map) {
        return [c, map](Cell2 p) {
            const auto [x, y] = map(p.x - c, p.y - c);
            return Cell2{x + c, y + c};
        };
    };
    using P = std::pair<int, int>;
    return {about([](int x, int y) { return P{x, y}; }),   about([](int x, int y) { return P{-y, x}; }),
            about([](int x, int y) { return P{-x, -y}; }), about([](int x, int y) { return P{y, -x}; }),
            about([](int x, int y) { return P{x, -y}; }),  about([](int x, int y) { return P{-x, y}; }),
            about([](int x, int y) { return P{y, x}; }),   about([](int x, int y) { return P{-y, -x}; })};
}

namespace {

Cell2 to_cell(Vec2 v) { return {static_cast<int>(std::lround(v.x)), static_cast<int>(std::lround(v.y))}; }

/// Precomputed per-state data for full-state backups.
struct FullModel {
    const DiscreteWorld& world;
    std::vector<Cell2> moves;
    std::vector<Cell2> outcomes;
    std::vector<double> probabilities;
    std::vector<double> stage;
    std::vector<char> terminal;

    FullModel(const DiscreteWorld& w, const CostParams& p) : world(w) {
        const ActionSet actions(2);
        for (const Vec2& u : actions.actions()) moves.push_back(to_cell(u));
        for (std::size_t i = 0; i < w.disturbance.size(); ++i) {
            outcomes.push_back(to_cell(w.disturbance.outcomes[i]));
            probabilities.push_back(w.disturbance.probabilities[i]);
        }
        const Vec2 t = w.target();
        stage.resize(w.state_count());
        terminal.resize(w.state_count());
        for (std::size_t i = 0; i < w.state_count(); ++i) {
            const WorldState s = DiscreteWorld::to_world(w.state(i));
            terminal[i] = norm(s.r - t) <= p.R;
            stage[i] = incremental_cost(s, t, p);
        }
    }

    double backup(std::size_t i, const std::vector<double>& v) const {
        if (terminal[i]) return 0.0;
        const LatticeState s = world.state(i);
        double best = std::numeric_limits<double>::infinity();
        for (const Cell2& u : moves) {
            const Cell2 r = world.clamp({s.r.x + u.x, s.r.y + u.y});
            double expected = 0.0;
            for (std::size_t k = 0; k < outcomes.size(); ++k) {
                if (probabilities[k] == 0.0) continue;
                const Cell2 h = world.clamp({s.h.x + outcomes[k].x, s.h.y + outcomes[k].y});
                expected += probabilities[k] * v[world.index({h, r})];
            }
            best = std::min(best, expected);
        }
        return stage[i] + best;
    }
};

std::string format_residual(const char* label, double value) {
    std::ostringstream out;
    out.precision(3);
    out << label << '=' << value;
    return out.str();
}

}  // namespace

FullValueTable full_value_iteration(const DiscreteWorld& world, const CostParams& p, double tol, int max_iters) {
    world.validate();
    p.validate();
    if (!(tol > 0.0)) throw std::invalid_argument("full_value_iteration: tol must be positive");
    const FullModel model(world, p);
    FullValueTable table{world.L, std::vector<double>(world.state_count(), 0.0), 0, 0.0};
    std::vector<double> next(table.values.size());
    for (int k = 0; k < max_iters; ++k) {
        double delta = 0.0;
        for (std::size_t i = 0; i < next.size(); ++i) {
            next[i] = model.backup(i, table.values);
            delta = std::max(delta, std::abs(next[i] - table.values[i]));
        }
        table.values.swap(next);
        table.sweeps = k + 1;
        table.last_delta = delta;
        if (delta < tol) return table;
    }
    throw NonConvergenceError("full value iteration did not converge within " + std::to_string(max_iters) +
                              " sweeps (last change " + std::to_string(table.last_delta) + ")");
}

double full_bellman_residual(const FullValueTable& table, const DiscreteWorld& world, const CostParams& p) {
    const FullModel model(world, p);
    double residual = 0.0;
    for (std::size_t i = 0; i < table.values.size(); ++i)
        if (!model.terminal[i]) residual = std::max(residual, std::abs(model.backup(i, table.values) - table.values[i]));
    return residual;
}

OracleReport check_group_axioms(std::span<const double> angles, std::span<const WorldState> states, Vec2 t) {
    const auto gap = [](Vec2 a, Vec2 b) { return std::max(std::abs(a.x - b.x), std::abs(a.y - b.y)); };
    const auto state_gap = [&](const WorldState& a, const WorldState& b) {
        return std::max(gap(a.h, b.h), gap(a.r, b.r));
    };
    double identity = 0.0;
    double composition = 0.0;
    double inverse = 0.0;
    for (const WorldState& x : states) {
        identity = std::max({identity, state_gap(rotate_about(x, t, 0.0), x), gap(rotate(x.r, 0.0), x.r)});
        for (double a : angles) {
            inverse = std::max({inverse, state_gap(rotate_about(rotate_about(x, t, a), t, -a), x),
                                gap(rotate(rotate(x.h, a), -a), x.h)});
            for (double b : angles) {
                composition = std::max(
                    {composition, state_gap(rotate_about(x, t, a + b), rotate_about(rotate_about(x, t, b), t, a)),
                     gap(rotate(x.r, a + b), rotate(rotate(x.r, b), a))});
            }
        }
    }
    const double worst = std::max({identity, composition, inverse});
    return make_report("group_axioms", worst, 1e-10,
                       format_residual("identity", identity) + " " + format_residual("composition", composition) +
                           " " + format_residual("inverse", inverse));
}

OracleReport check_group_axioms(std::size_t samples, std::uint64_t seed) {
    Rng rng(derive_seed(seed, {0x6a0bULL}));
    std::vector<double> angles;
    for (int i = 0; i < 8; ++i) angles.push_back(uniform(rng, -2.0 * std::numbers::pi, 2.0 * std::numbers::pi));
    std::vector<WorldState> states;
    for (std::size_t i = 0; i < samples; ++i)
        states.push_back({{uniform(rng, 0.0, 20.0), uniform(rng, 0.0, 20.0)},
                          {uniform(rng, 0.0, 20.0), uniform(rng, 0.0, 20.0)}});
    const Vec2 t{uniform(rng, 0.0, 20.0), uniform(rng, 0.0, 20.0)};
    return check_group_axioms(angles, states, t);
}

std::vector<OracleReport> check_invariance_conditions(std::span<const TransitionSample> samples,
                                                      std::span<const double> angles,
                                                      const DisturbanceModel& disturbance) {
    double equivariance = 0.0;
    double cost_gap = 0.0;
    for (const TransitionSample& s : samples) {
        for (double beta : angles) {
            const WorldState lhs = step_full(rotate_about(s.x, s.t, beta), rotate(s.u, beta), rotate(s.w, beta));
            const WorldState rhs = rotate_about(step_full(s.x, s.u, s.w), s.t, beta);
            equivariance = std::max({equivariance, norm(lhs.h - rhs.h), norm(lhs.r - rhs.r)});
            for (double lambda : {0.0, 0.5, 1.0}) {
                const CostParams p{lambda, 1.0, 1e-8};
                const double original = incremental_cost(s.x, s.t, p);
                const double rotated = incremental_cost(rotate_about(s.x, s.t, beta), s.t, p);
                cost_gap = std::max(cost_gap, std::abs(rotated - original) / std::max(1.0, std::abs(original)));
            }
        }
    }

    double law_gap = 0.0;
    for (int k = 0; k < 2 * disturbance.n2; ++k) {
        const double beta = k * std::numbers::pi / disturbance.n2;
        for (std::size_t i = 0; i < disturbance.size(); ++i) {
            const Vec2 image = rotate(disturbance.outcomes[i], beta);
            double gap = std::numeric_limits<double>::infinity();
            for (std::size_t j = 0; j < disturbance.size(); ++j)
                if (norm(image - disturbance.outcomes[j]) < 1e-9)
                    gap = std::abs(disturbance.probabilities[i] - disturbance.probabilities[j]);
            law_gap = std::max(law_gap, gap);
        }
    }

    std::vector<OracleReport> reports{make_report("dynamics_equivariance", equivariance, 1e-10),
                                      make_report("cost_invariance", cost_gap, 1e-10,
                                                  "relative residual, lambda in {0, 0.5, 1}")};
    if (is_radially_symmetric(disturbance, 1e-12))
        reports.push_back(make_report("disturbance_law_invariance", law_gap, 1e-12));
    else
        reports.push_back(make_info_report("disturbance_law_invariance", law_gap, "law is not radially symmetric"));
    return reports;
}

std::vector<OracleReport> check_invariance_conditions(std::size_t samples, std::uint64_t seed,
                                                      const DisturbanceModel& disturbance) {
    Rng rng(derive_seed(seed, {0x1a7eULL}));
    const ActionSet actions(disturbance.n2);
    std::vector<TransitionSample> draws;
    for (std::size_t i = 0; i < samples; ++i) {
        TransitionSample s;
        s.x = {{uniform(rng, 0.0, 20.0), uniform(rng, 0.0, 20.0)}, {uniform(rng, 0.0, 20.0), uniform(rng, 0.0, 20.0)}};
        s.t = {uniform(rng, 0.0, 20.0), uniform(rng, 0.0, 20.0)};
        s.u = actions[static_cast<std::size_t>(uniform(rng, 0.0, static_cast<double>(actions.size()))) %
                      actions.size()];
        s.w = disturbance.outcomes[sample_outcome(disturbance, uniform01(rng))];
        draws.push_back(s);
    }
    std::vector<double> angles;
    for (int i = 0; i < 6; ++i) angles.push_back(uniform(rng, -std::numbers::pi, std::numbers::pi));
    return check_invariance_conditions(draws, angles, disturbance);
}

std::vector<OracleReport> check_value_symmetry(const FullValueTable& table, const DiscreteWorld& world,
                                               double tolerance) {
    const auto symmetries = square_symmetries(world);
    double image_gap = 0.0;
    for (std::size_t i = 0; i < table.values.size(); ++i) {
        const LatticeState s = world.state(i);
        for (const auto& sigma : symmetries)
            image_gap = std::max(image_gap, std::abs(table.at(world, {sigma(s.h), sigma(s.r)}) - table.values[i]));
    }

    // Group states by their exact reduced coordinates (squared lengths, dot
    // product and |cross product| are integers on the lattice).
    const int c = world.center();
    std::map<std::tuple<int, int, int, int>, std::vector<std::size_t>> classes;
    for (std::size_t i = 0; i < table.values.size(); ++i) {
        const LatticeState s = world.state(i);
        const int ex = s.r.x - c, ey = s.r.y - c;
        const int dx = s.h.x - s.r.x, dy = s.h.y - s.r.y;
        classes[{dx * dx + dy * dy, ex * ex + ey * ey, ex * dx + ey * dy, std::abs(ex * dy - ey * dx)}].push_back(i);
    }
    const auto orbit_id = [&](std::size_t i) {
        const LatticeState s = world.state(i);
        std::size_t id = i;
        for (const auto& sigma : symmetries) id = std::min(id, world.index({sigma(s.h), sigma(s.r)}));
        return id;
    };
    double pair_gap = 0.0;
    std::size_t mixed_classes = 0;
    for (const auto& [key, members] : classes) {
        const std::size_t first_orbit = orbit_id(members.front());
        bool mixed = false;
        for (std::size_t i : members) mixed = mixed || orbit_id(i) != first_orbit;
        if (!mixed) continue;
        ++mixed_classes;
        const auto [lo, hi] = std::minmax_element(members.begin(), members.end(), [&](std::size_t a, std::size_t b) {
            return table.values[a] < table.values[b];
        });
        pair_gap = std::max(pair_gap, table.values[*hi] - table.values[*lo]);
    }

    return {make_report("value_symmetry", image_gap, tolerance, "8 square symmetries about the target"),
            make_info_report("value_symmetry_non_orbit_pairs", pair_gap,
                             std::to_string(mixed_classes) +
                                 " reduced classes span several square-symmetry orbits; boundary clamping "
                                 "breaks the continuous rotation")};
}

IsolatingPartition build_isolating_partition(const DiscreteWorld& world) {
    world.validate();
    const int c = world.center();
    std::vector<int> squared;
    for (int a = -c; a <= c; ++a)
        for (int b = -c; b <= c; ++b) squared.push_back(a * a + b * b);
    std::sort(squared.begin(), squared.end());
    squared.erase(std::unique(squared.begin(), squared.end()), squared.end());

    std::vector<double> e_edges;
    for (int s : squared) e_edges.push_back(std::sqrt(static_cast<double>(s)));
    e_edges.push_back(e_edges.back() + 1.0);
    const double d_max = 2.0 * world.L;
    PartitionGrid grid({0.0, d_max}, e_edges, {0.0, std::numbers::pi});

    std::vector<ReducedState> samples;
    for (std::size_t l = 0; l + 1 < e_edges.size(); ++l) samples.push_back({0.0, e_edges[l], 0.0});
    return {std::move(grid), std::move(samples)};
}

SolveResult solve_isolated_reduced(const DiscreteWorld& world, const CostParams& p, int max_iters) {
    const IsolatingPartition partition = build_isolating_partition(world);
    SolverConfig cfg;
    cfg.samples_per_cell = 1;
    cfg.eps_tol = 1e-13;
    cfg.max_iters = max_iters;
    return solve_with_samples(partition.samples, partition.grid, p, ActionSet(2), world.disturbance, cfg);
}

std::vector<OracleReport> check_reduced_vs_full(const FullValueTable& full, const DiscreteWorld& world,
                                                const ValueTable& reduced, double tolerance) {
    const Vec2 t = world.target();
    const int c = world.center();
    double on_axis = 0.0;
    double off_axis = 0.0;
    std::size_t on_count = 0;
    for (std::size_t i = 0; i < full.values.size(); ++i) {
        const LatticeState s = world.state(i);
        const double gap = std::abs(evaluate_full(reduced, DiscreteWorld::to_world(s), t) - full.values[i]);
        if (s.r.x == c || s.r.y == c) {
            on_axis = std::max(on_axis, gap);
            ++on_count;
        } else {
            off_axis = std::max(off_axis, gap);
        }
    }
    return {make_report("reduced_vs_full", on_axis, tolerance,
                        std::to_string(on_count) + " states with r - t on a lattice axis"),
            make_info_report("reduced_vs_full_off_axis", off_axis,
                             "diagonal states have no exact counterpart in the reduced dynamics")};
}

std::vector<OracleReport> check_moving_frame(std::size_t samples, std::uint64_t seed,
                                             const FrameAngleFn& frame_angle, double tolerance) {
    Rng rng(derive_seed(seed, {0xb6aULL}));
    double cross_section = 0.0;
    double invariant_map = 0.0;
    for (std::size_t i = 0; i < samples; ++i) {
        const Vec2 r{uniform(rng, 0.0, 20.0), uniform(rng, 0.0, 20.0)};
        const Vec2 t{uniform(rng, 0.0, 20.0), uniform(rng, 0.0, 20.0)};
        const Vec2 h{uniform(rng, 0.0, 20.0), uniform(rng, 0.0, 20.0)};
        if (norm(r - t) < 1e-6) continue;
        const double beta = frame_angle(r, t);
        const Vec2 image = rotate(r - t, beta);
        cross_section = std::max({cross_section, std::abs(image.x - norm(r - t)), std::abs(image.y)});

        const Vec2 obstacle = rotate(h - t, beta);
        const CrossSectionCoords rho{t.x + norm(r - t), t.x + obstacle.x, t.y + obstacle.y};
        const ReducedState via_rho = reduced_from_cross_section(rho, t);
        const ReducedState direct = reduce({h, r}, t);
        invariant_map = std::max({invariant_map, std::abs(via_rho.d - direct.d), std::abs(via_rho.e - direct.e),
                                  std::abs(via_rho.theta - direct.theta)});
    }

    double round_trip = 0.0;
    for (std::size_t i = 0; i < samples; ++i) {
        const ReducedState rs{uniform(rng, 1e-6, 30.0), uniform(rng, 1e-6, 30.0), uniform(rng, 0.0, std::numbers::pi)};
        const Vec2 t{uniform(rng, 0.0, 20.0), uniform(rng, 0.0, 20.0)};
        const ReducedState back = reduce(lift(rs, t), t);
        round_trip = std::max(
            {round_trip, std::abs(back.d - rs.d), std::abs(back.e - rs.e), std::abs(back.theta - rs.theta)});
    }

    return {make_report("moving_frame_cross_section", cross_section, tolerance, "R(beta*)(r - t) = (|r - t|, 0)"),
            make_report("moving_frame_invariant_map", invariant_map, 1e-9, "reduce via cross-section coordinates"),
            make_report("reduce_lift_round_trip", round_trip, tolerance, "d, e > 1e-6")};
}

}  // namespace symplan
