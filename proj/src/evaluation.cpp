#include "symplan/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "symplan/parallel.hpp"
#include "symplan/random.hpp"
#include "symplan/table_io.hpp"

namespace symplan {

namespace {

constexpr std::uint64_t kInstanceStream = 0x1257ULL;
constexpr std::uint64_t kRealizationStream = 0x4ea1ULL;

Vec2 uniform_in(Rng& rng, const ConstraintBox& box) {
    return {uniform(rng, box.lo.x, box.hi.x), uniform(rng, box.lo.y, box.hi.y)};
}

std::string optional_field(double v) { return std::isnan(v) ? std::string() : format_double(v); }

void write_provenance(std::ostream& out, const nlohmann::json& provenance) {
    if (!provenance.is_null()) out << "# " << provenance.dump() << '\n';
}

}  // namespace

std::vector<InstanceSpec> sample_instances(int count, int realizations_per_instance, const ConstraintBox& box,
                                           std::uint64_t seed, double min_separation) {
    if (count < 1) throw std::invalid_argument("instance count must be >= 1");
    if (realizations_per_instance < 1) throw std::invalid_argument("realizations per instance must be >= 1");
    box.validate();
    Rng rng(derive_seed(seed, {kInstanceStream}));
    std::vector<InstanceSpec> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        InstanceSpec spec;
        do {
            spec.t = uniform_in(rng, box);
            spec.r0 = uniform_in(rng, box);
            spec.h0 = uniform_in(rng, box);
        } while (!(norm(spec.r0 - spec.t) > min_separation && norm(spec.h0 - spec.r0) > min_separation));
        for (int j = 0; j < realizations_per_instance; ++j)
            spec.realization_seeds.push_back(
                derive_seed(seed, {kRealizationStream, static_cast<std::uint64_t>(i), static_cast<std::uint64_t>(j)}));
        out.push_back(std::move(spec));
    }
    return out;
}

std::vector<EpisodeRecord> run_episodes(const ControllerFactory& factory, const std::vector<InstanceSpec>& instances,
                                        const DisturbanceModel& disturbance, const CostParams& cost,
                                        const EvalProtocol& protocol) {
    std::vector<EpisodeRecord> records;
    for (std::size_t i = 0; i < instances.size(); ++i)
        for (std::size_t j = 0; j < instances[i].realization_seeds.size(); ++j)
            records.push_back({records.size(), i, j, {}});
    parallel_for(records.size(), protocol.threads, [&](std::size_t k) {
        EpisodeRecord& rec = records[k];
        const InstanceSpec& spec = instances[rec.instance];
        const Controller controller = factory();
        rec.result = simulate_episode({spec.h0, spec.r0}, spec.t, controller, disturbance, cost, protocol.box,
                                      protocol.max_steps, spec.realization_seeds[rec.realization]);
    });
    return records;
}

TradeOffPoint aggregate(const std::vector<EpisodeRecord>& episodes) {
    TradeOffPoint point;
    double time_sum = 0.0;
    double distance_sum = 0.0;
    for (const EpisodeRecord& rec : episodes) {
        time_sum += rec.result.time_to_target;
        distance_sum += rec.result.min_distance;
        point.collision_count += rec.result.collided ? 1 : 0;
        point.timeout_count += rec.result.timed_out ? 1 : 0;
        point.fallback_count += rec.result.fallback_count;
    }
    point.episode_count = static_cast<int>(episodes.size());
    if (!episodes.empty()) {
        point.mean_time = time_sum / static_cast<double>(episodes.size());
        point.mean_min_distance = distance_sum / static_cast<double>(episodes.size());
    }
    return point;
}

TradeOffPoint evaluate_lambda(double lambda, const ValueTable& table, const RolloutConfig& rollout,
                              const std::vector<InstanceSpec>& instances, const DisturbanceModel& eval_disturbance,
                              const EvalProtocol& protocol, std::vector<EpisodeRecord>* episodes) {
    if (lambda != table.cost.lambda)
        throw std::invalid_argument("evaluate_lambda: table was solved for a different lambda");
    const ActionSet actions(table.n1);
    const auto factory = [&] { return make_rollout_controller(table, actions, eval_disturbance, protocol.box, rollout); };
    std::vector<EpisodeRecord> records = run_episodes(factory, instances, eval_disturbance, table.cost, protocol);
    TradeOffPoint point = aggregate(records);
    point.lambda = lambda;
    point.horizon = rollout.horizon;
    point.mode = to_string(rollout.mode);
    point.planner = "rollout";
    if (episodes) *episodes = std::move(records);
    return point;
}

std::vector<TradeOffPoint> tradeoff_sweep(std::vector<double> lambdas, const std::vector<int>& horizons,
                                          const std::vector<RolloutMode>& modes, const TableProvider& tables,
                                          const RolloutConfig& rollout_base,
                                          const std::vector<InstanceSpec>& instances,
                                          const DisturbanceModel& eval_disturbance, const EvalProtocol& protocol) {
    std::stable_sort(lambdas.begin(), lambdas.end());
    std::vector<TradeOffPoint> points;
    for (double lambda : lambdas) {
        const ValueTable& table = tables(lambda);
        for (int horizon : horizons) {
            for (RolloutMode mode : modes) {
                RolloutConfig cfg = rollout_base;
                cfg.horizon = horizon;
                cfg.mode = mode;
                points.push_back(evaluate_lambda(lambda, table, cfg, instances, eval_disturbance, protocol));
            }
        }
    }
    return points;
}

const char* to_string(BaselineKind kind) {
    switch (kind) {
        case BaselineKind::astar: return "astar";
        case BaselineKind::cbf: return "cbf";
        case BaselineKind::cbf_ce: return "cbf_ce";
        case BaselineKind::nominal: return "nominal";
    }
    return "unknown";
}

BaselineKind parse_baseline(const std::string& name) {
    if (name == "astar") return BaselineKind::astar;
    if (name == "cbf") return BaselineKind::cbf;
    if (name == "cbf_ce") return BaselineKind::cbf_ce;
    if (name == "nominal") return BaselineKind::nominal;
    throw std::invalid_argument("unknown baseline '" + name + "'");
}

std::vector<TradeOffPoint> evaluate_baseline(BaselineKind kind, const std::vector<double>& alphas,
                                             const std::vector<double>& d0s, int n1, const CostParams& cost,
                                             const std::vector<InstanceSpec>& instances,
                                             const DisturbanceModel& eval_disturbance,
                                             const EvalProtocol& protocol, std::vector<EpisodeRecord>* episodes) {
    const ActionSet actions(n1);
    std::vector<TradeOffPoint> points;
    const auto finish = [&](std::vector<EpisodeRecord> records, TradeOffPoint point) {
        point.planner = to_string(kind);
        points.push_back(point);
        if (episodes) episodes->insert(episodes->end(), records.begin(), records.end());
    };

    if (kind == BaselineKind::astar || kind == BaselineKind::nominal) {
        const ControllerFactory factory = [&]() -> Controller {
            if (kind == BaselineKind::astar) return make_astar_controller(actions, protocol.box, cost.R);
            return make_nominal_controller(actions);
        };
        std::vector<EpisodeRecord> records = run_episodes(factory, instances, eval_disturbance, cost, protocol);
        const TradeOffPoint point = aggregate(records);
        finish(std::move(records), point);
        return points;
    }

    const RolloutMode mode = kind == BaselineKind::cbf ? RolloutMode::expectation : RolloutMode::certainty_equivalence;
    for (double alpha : alphas) {
        for (double d0 : d0s) {
            const CbfParams prm{alpha, d0};
            prm.validate();
            const auto factory = [&] { return make_cbf_controller(actions, eval_disturbance, prm, mode); };
            std::vector<EpisodeRecord> records = run_episodes(factory, instances, eval_disturbance, cost, protocol);
            TradeOffPoint point = aggregate(records);
            point.alpha = alpha;
            point.d0 = d0;
            point.mode = to_string(mode);
            finish(std::move(records), point);
        }
    }
    return points;
}

void write_episode_csv(std::ostream& out, const std::vector<EpisodeRecord>& episodes,
                       const std::vector<InstanceSpec>& instances, const nlohmann::json& provenance) {
    write_provenance(out, provenance);
    out << "episode_id,step,r_x,r_y,h_x,h_y,u_x,u_y,w_x,w_y,dist_to_target,dist_to_obstacle\n";
    for (const EpisodeRecord& rec : episodes) {
        const Vec2 t = instances.at(rec.instance).t;
        for (const TrajectoryStep& st : rec.result.trajectory) {
            out << rec.episode_id << ',' << st.step << ',' << format_double(st.r.x) << ',' << format_double(st.r.y)
                << ',' << format_double(st.h.x) << ',' << format_double(st.h.y) << ',' << format_double(st.u.x)
                << ',' << format_double(st.u.y) << ',' << format_double(st.w.x) << ',' << format_double(st.w.y)
                << ',' << format_double(norm(st.r - t)) << ',' << format_double(norm(st.h - st.r)) << '\n';
        }
    }
}

void write_tradeoff_csv(std::ostream& out, const std::vector<TradeOffPoint>& points,
                        const nlohmann::json& provenance) {
    write_provenance(out, provenance);
    out << "lambda,horizon,mode,planner,alpha,d0,mean_time,mean_min_distance,episodes,collisions,timeouts\n";
    for (const TradeOffPoint& p : points) {
        out << optional_field(p.lambda) << ',' << p.horizon << ',' << p.mode << ',' << p.planner << ','
            << optional_field(p.alpha) << ',' << optional_field(p.d0) << ',' << format_double(p.mean_time) << ','
            << format_double(p.mean_min_distance) << ',' << p.episode_count << ',' << p.collision_count << ','
            << p.timeout_count << '\n';
    }
}

}  // namespace symplan
