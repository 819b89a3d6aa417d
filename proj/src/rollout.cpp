#include "symplan/rollout.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <stdexcept>

#include "symplan/random.hpp"

namespace symplan {

namespace {

constexpr std::uint64_t kScenarioStream = 0x5ce7a210ULL;
constexpr std::uint64_t kDisturbanceStream = 0xd157ULL;
constexpr std::uint64_t kControllerStream = 0xc047ULL;

/// Depth-first enumeration of U^N that reuses prefix states across siblings.
class SequenceSearch {
public:
    SequenceSearch(Vec2 t, const ValueTable& table, const ActionSet& actions, const ConstraintBox& box,
                   const std::vector<Scenario>& scenarios, int horizon, double penalty)
        : t_(t), table_(table), actions_(actions), box_(box), scenarios_(scenarios), horizon_(horizon),
          penalty_(penalty),
          states_(horizon + 1, std::vector<WorldState>(scenarios.size())),
          accumulated_(horizon + 1, std::vector<double>(scenarios.size(), 0.0)),
          stage_(horizon, std::vector<double>(scenarios.size())), current_(horizon), best_(horizon) {}

    PlanResult run(const WorldState& s) {
        std::fill(states_[0].begin(), states_[0].end(), s);
        descend(0);
        return {best_[0], actions_[best_[0]], best_value_, best_};
    }

private:
    void descend(int level) {
        const std::size_t count = scenarios_.size();
        if (level == horizon_) {
            double total = 0.0;
            for (std::size_t k = 0; k < count; ++k) {
                const double terminal = evaluate_full(table_, states_[level][k], t_);
                total += scenarios_[k].weight * (accumulated_[level][k] + terminal);
            }
            if (total < best_value_) {
                best_value_ = total;
                best_ = current_;
            }
            return;
        }
        std::vector<double>& stage = stage_[static_cast<std::size_t>(level)];
        for (std::size_t k = 0; k < count; ++k) stage[k] = incremental_cost(states_[level][k], t_, table_.cost);
        for (std::size_t a = 0; a < actions_.size(); ++a) {
            const Vec2 u = actions_[a];
            for (std::size_t k = 0; k < count; ++k) {
                const WorldState& from = states_[level][k];
                const Vec2 r = from.r + u;
                const Vec2 h = box_.clamp(from.h + scenarios_[k].disturbances[level]);
                states_[level + 1][k] = {h, r};
                const double penalty = box_.contains(r) ? 0.0 : penalty_;
                accumulated_[level + 1][k] = accumulated_[level][k] + stage[k] + penalty;
            }
            current_[level] = a;
            descend(level + 1);
        }
    }

    Vec2 t_;
    const ValueTable& table_;
    const ActionSet& actions_;
    const ConstraintBox& box_;
    const std::vector<Scenario>& scenarios_;
    int horizon_;
    double penalty_;
    std::vector<std::vector<WorldState>> states_;
    std::vector<std::vector<double>> accumulated_;
    std::vector<std::vector<double>> stage_;
    std::vector<std::size_t> current_;
    std::vector<std::size_t> best_;
    double best_value_ = std::numeric_limits<double>::infinity();
};

}  // namespace

Vec2 ConstraintBox::clamp(Vec2 p) const {
    return {std::clamp(p.x, lo.x, hi.x), std::clamp(p.y, lo.y, hi.y)};
}

void ConstraintBox::validate() const {
    if (!(lo.x <= hi.x && lo.y <= hi.y)) throw std::invalid_argument("constraint box needs lo <= hi");
}

const char* to_string(RolloutMode mode) {
    return mode == RolloutMode::expectation ? "expectation" : "certainty_equivalence";
}

RolloutMode parse_rollout_mode(const std::string& name) {
    if (name == "expectation") return RolloutMode::expectation;
    if (name == "certainty_equivalence" || name == "ce") return RolloutMode::certainty_equivalence;
    throw std::invalid_argument("unknown rollout mode '" + name + "'");
}

void RolloutConfig::validate() const {
    if (horizon < 1) throw std::invalid_argument("rollout horizon must be >= 1");
    if (scenario_count < 1) throw std::invalid_argument("scenario_count must be >= 1");
    if (!(infeasibility_penalty > 0.0)) throw std::invalid_argument("infeasibility_penalty must be positive");
}

std::vector<Scenario> build_scenarios(const DisturbanceModel& disturbance, const RolloutConfig& cfg) {
    const auto horizon = static_cast<std::size_t>(cfg.horizon);
    if (cfg.mode == RolloutMode::certainty_equivalence)
        return {Scenario{std::vector<Vec2>(horizon, mean_disturbance(disturbance)), 1.0}};

    Rng rng(derive_seed(cfg.seed, {kScenarioStream}));
    std::vector<std::vector<std::size_t>> draws;
    std::map<std::vector<std::size_t>, std::size_t> position;
    std::vector<std::size_t> multiplicity;
    for (int m = 0; m < cfg.scenario_count; ++m) {
        std::vector<std::size_t> seq(horizon);
        for (auto& idx : seq) idx = sample_outcome(disturbance, uniform01(rng));
        const auto [it, inserted] = position.try_emplace(seq, draws.size());
        if (inserted) {
            draws.push_back(std::move(seq));
            multiplicity.push_back(1);
        } else {
            ++multiplicity[it->second];
        }
    }
    std::vector<Scenario> out;
    out.reserve(draws.size());
    for (std::size_t i = 0; i < draws.size(); ++i) {
        Scenario sc;
        for (std::size_t idx : draws[i]) sc.disturbances.push_back(disturbance.outcomes[idx]);
        sc.weight = static_cast<double>(multiplicity[i]) / static_cast<double>(cfg.scenario_count);
        out.push_back(std::move(sc));
    }
    return out;
}

PlanResult plan(const WorldState& s, Vec2 t, const ValueTable& table, const ActionSet& actions,
                const DisturbanceModel& disturbance, const ConstraintBox& box, const RolloutConfig& cfg) {
    cfg.validate();
    const std::vector<Scenario> scenarios = build_scenarios(disturbance, cfg);
    SequenceSearch search(t, table, actions, box, scenarios, cfg.horizon, cfg.infeasibility_penalty);
    return search.run(s);
}

Controller make_rollout_controller(const ValueTable& table, const ActionSet& actions,
                                   const DisturbanceModel& disturbance, const ConstraintBox& box,
                                   RolloutConfig cfg) {
    cfg.validate();
    return [&table, &actions, &disturbance, box, cfg](const WorldState& s, Vec2 t, std::uint64_t step_seed) {
        RolloutConfig step_cfg = cfg;
        step_cfg.seed = derive_seed(cfg.seed, {step_seed});
        return ControlDecision{plan(s, t, table, actions, disturbance, box, step_cfg).u, false};
    };
}

EpisodeResult simulate_episode(const WorldState& s0, Vec2 t, const Controller& controller,
                               const DisturbanceModel& disturbance, const CostParams& cost,
                               const ConstraintBox& box, int max_steps, std::uint64_t seed) {
    if (max_steps < 1) throw std::invalid_argument("max_steps must be >= 1");
    Rng noise(derive_seed(seed, {kDisturbanceStream}));
    EpisodeResult result;
    WorldState s = s0;
    result.min_distance = std::numeric_limits<double>::infinity();
    for (int k = 0;; ++k) {
        const double distance = norm(s.h - s.r);
        result.min_distance = std::min(result.min_distance, distance);
        if (distance <= cost.R) result.collided = true;
        result.trajectory.push_back({k, s.r, s.h, {}, {}});
        if (norm(s.r - t) <= cost.R) {
            result.time_to_target = k;
            return result;
        }
        if (k == max_steps) {
            result.time_to_target = max_steps;
            result.timed_out = true;
            return result;
        }
        const ControlDecision decision =
            controller(s, t, derive_seed(seed, {kControllerStream, static_cast<std::uint64_t>(k)}));
        if (decision.fallback) ++result.fallback_count;
        const Vec2 w = disturbance.outcomes[sample_outcome(disturbance, uniform01(noise))];
        result.trajectory.back().u = decision.u;
        result.trajectory.back().w = w;
        s = step_full(s, decision.u, w);
        s.h = box.clamp(s.h);
    }
}

}  // namespace symplan
