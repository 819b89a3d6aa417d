#include "symplan/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <queue>
#include <stdexcept>
#include <unordered_map>

namespace symplan {

void CbfParams::validate() const {
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("CBF alpha must lie in (0, 1)");
    if (!(d0 > 0.0)) throw std::invalid_argument("CBF d0 must be positive");
}

Vec2 nominal_control(const WorldState& s, Vec2 t, const ActionSet& actions) {
    std::size_t best = 0;
    double best_distance = std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < actions.size(); ++a) {
        const double distance = norm(s.r + actions[a] - t);
        if (distance < best_distance) {
            best_distance = distance;
            best = a;
        }
    }
    return actions[best];
}

double cbf_next_barrier(const WorldState& s, Vec2 u, const DisturbanceModel& disturbance,
                        const CbfParams& prm, RolloutMode mode) {
    const Vec2 r_next = s.r + u;
    if (mode == RolloutMode::certainty_equivalence)
        return norm(s.h + mean_disturbance(disturbance) - r_next) - prm.d0;
    double expected = 0.0;
    for (std::size_t i = 0; i < disturbance.size(); ++i)
        expected += disturbance.probabilities[i] * (norm(s.h + disturbance.outcomes[i] - r_next) - prm.d0);
    return expected;
}

CbfDecision cbf_control(const WorldState& s, Vec2 t, const ActionSet& actions,
                        const DisturbanceModel& disturbance, const CbfParams& prm, RolloutMode mode) {
    const Vec2 u_nom = nominal_control(s, t, actions);
    const double bound = prm.alpha * (norm(s.h - s.r) - prm.d0);

    std::size_t best = actions.size();
    double best_deviation = std::numeric_limits<double>::infinity();
    std::size_t least_violating = 0;
    double largest_lhs = -std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < actions.size(); ++a) {
        const double lhs = cbf_next_barrier(s, actions[a], disturbance, prm, mode);
        if (lhs > largest_lhs) {
            largest_lhs = lhs;
            least_violating = a;
        }
        if (lhs < bound) continue;
        const Vec2 diff = actions[a] - u_nom;
        const double deviation = dot(diff, diff);
        if (deviation < best_deviation) {
            best_deviation = deviation;
            best = a;
        }
    }
    if (best == actions.size()) return {actions[least_violating], least_violating, false};
    return {actions[best], best, true};
}

namespace {

struct NodeKey {
    std::int64_t x;
    std::int64_t y;
    bool operator==(const NodeKey&) const = default;
};

struct NodeKeyHash {
    std::size_t operator()(const NodeKey& k) const {
        return std::hash<std::int64_t>{}(k.x) * 0x9e3779b97f4a7c15ULL ^ std::hash<std::int64_t>{}(k.y);
    }
};

NodeKey key_of(Vec2 p) { return {std::llround(p.x * 1e9), std::llround(p.y * 1e9)}; }

struct Node {
    Vec2 position;
    int g;
    std::size_t parent;
    std::size_t move;
};

struct OpenEntry {
    int f;
    int g;
    std::size_t node;
};

/// Smallest f first, deeper nodes first among equal f, then creation order.
struct OpenOrder {
    bool operator()(const OpenEntry& a, const OpenEntry& b) const {
        if (a.f != b.f) return a.f > b.f;
        if (a.g != b.g) return a.g < b.g;
        return a.node > b.node;
    }
};

}  // namespace

AStarPath astar_search(Vec2 start, Vec2 t, double arrival_radius, const ActionSet& actions,
                       const ConstraintBox& box, std::size_t node_budget) {
    // Lower bound on the number of unit moves left.
    const auto heuristic = [&](Vec2 p) {
        const double gap = norm(p - t) - arrival_radius - 1e-9;
        return gap <= 0.0 ? 0 : static_cast<int>(std::ceil(gap));
    };

    AStarPath result;
    std::vector<Node> nodes{{start, 0, 0, 0}};
    std::unordered_map<NodeKey, int, NodeKeyHash> best_g{{key_of(start), 0}};
    std::priority_queue<OpenEntry, std::vector<OpenEntry>, OpenOrder> open;
    open.push({heuristic(start), 0, 0});

    while (!open.empty()) {
        const OpenEntry entry = open.top();
        open.pop();
        const Node node = nodes[entry.node];
        if (best_g[key_of(node.position)] < node.g) continue;
        if (norm(node.position - t) <= arrival_radius) {
            result.found = true;
            for (std::size_t i = entry.node; i != 0; i = nodes[i].parent) result.moves.push_back(nodes[i].move);
            std::reverse(result.moves.begin(), result.moves.end());
            return result;
        }
        if (++result.expanded > node_budget) return result;
        for (std::size_t a = 0; a < actions.size(); ++a) {
            if (a == actions.zero_index()) continue;
            const Vec2 next = node.position + actions[a];
            if (!box.contains(next)) continue;
            const NodeKey key = key_of(next);
            const int g = node.g + 1;
            const auto it = best_g.find(key);
            if (it != best_g.end() && it->second <= g) continue;
            best_g[key] = g;
            nodes.push_back({next, g, entry.node, a});
            open.push({g + heuristic(next), g, nodes.size() - 1});
        }
    }
    return result;
}

Vec2 astar_control(const WorldState& s, Vec2 t, const ActionSet& actions, const ConstraintBox& box,
                   double arrival_radius) {
    const AStarPath path = astar_search(s.r, t, arrival_radius, actions, box);
    if (!path.found) return nominal_control(s, t, actions);
    if (path.moves.empty()) return actions[actions.zero_index()];
    return actions[path.moves.front()];
}

Controller make_nominal_controller(const ActionSet& actions) {
    return [&actions](const WorldState& s, Vec2 t, std::uint64_t) {
        return ControlDecision{nominal_control(s, t, actions), false};
    };
}

Controller make_astar_controller(const ActionSet& actions, const ConstraintBox& box, double arrival_radius) {
    return [&actions, box, arrival_radius](const WorldState& s, Vec2 t, std::uint64_t) {
        return ControlDecision{astar_control(s, t, actions, box, arrival_radius), false};
    };
}

Controller make_cbf_controller(const ActionSet& actions, const DisturbanceModel& disturbance, CbfParams prm,
                               RolloutMode mode) {
    prm.validate();
    return [&actions, &disturbance, prm, mode](const WorldState& s, Vec2 t, std::uint64_t) {
        const CbfDecision decision = cbf_control(s, t, actions, disturbance, prm, mode);
        return ControlDecision{decision.u, !decision.feasible};
    };
}

}  // namespace symplan
