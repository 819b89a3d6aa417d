#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

#include <json.hpp>

#include "symplan/baselines.hpp"
#include "symplan/rollout.hpp"
#include "symplan/value_solver.hpp"

namespace symplan {

/// One initial condition plus the seeds of its disturbance realizations.
struct InstanceSpec {
    Vec2 t;
    Vec2 r0;
    Vec2 h0;
    std::vector<std::uint64_t> realization_seeds;
};

/// Uniform positions in the box, rejection-sampled until |r0 - t| > min_separation
/// and |h0 - r0| > min_separation.
std::vector<InstanceSpec> sample_instances(int count, int realizations_per_instance, const ConstraintBox& box,
                                           std::uint64_t seed, double min_separation = 1.0);

struct EvalProtocol {
    ConstraintBox box;
    int max_steps = 500;
    int threads = 1;
};

/// One point of a trade-off curve. Fields that do not apply to a planner
/// (lambda/horizon for baselines, alpha/d0 for non-CBF) are NaN / 0.
struct TradeOffPoint {
    double lambda = std::numeric_limits<double>::quiet_NaN();
    int horizon = 0;
    std::string mode;
    std::string planner;
    double alpha = std::numeric_limits<double>::quiet_NaN();
    double d0 = std::numeric_limits<double>::quiet_NaN();
    double mean_time = 0.0;
    double mean_min_distance = 0.0;
    int episode_count = 0;
    int collision_count = 0;
    int timeout_count = 0;
    int fallback_count = 0;
};

struct EpisodeRecord {
    std::size_t episode_id = 0;
    std::size_t instance = 0;
    std::size_t realization = 0;
    EpisodeResult result;
};

/// Builds a fresh controller for each episode (controllers may hold scratch state).
using ControllerFactory = std::function<Controller()>;

/// Runs every (instance, realization) episode and aggregates them in
/// instance-major order. Episodes may run in parallel; the output does not
/// depend on the thread count.
std::vector<EpisodeRecord> run_episodes(const ControllerFactory& factory, const std::vector<InstanceSpec>& instances,
                                        const DisturbanceModel& disturbance, const CostParams& cost,
                                        const EvalProtocol& protocol);

TradeOffPoint aggregate(const std::vector<EpisodeRecord>& episodes);

/// Rollout planner with the given table; lambda must equal the table's.
/// The planner's expectation uses the evaluation disturbance.
TradeOffPoint evaluate_lambda(double lambda, const ValueTable& table, const RolloutConfig& rollout,
                              const std::vector<InstanceSpec>& instances, const DisturbanceModel& eval_disturbance,
                              const EvalProtocol& protocol, std::vector<EpisodeRecord>* episodes = nullptr);

/// Provides the solved table for a given lambda.
using TableProvider = std::function<const ValueTable&(double lambda)>;

/// Cartesian product lambda x horizon x mode on a shared instance set,
/// sorted by lambda (then horizon, then mode order as given).
std::vector<TradeOffPoint> tradeoff_sweep(std::vector<double> lambdas, const std::vector<int>& horizons,
                                          const std::vector<RolloutMode>& modes, const TableProvider& tables,
                                          const RolloutConfig& rollout_base,
                                          const std::vector<InstanceSpec>& instances,
                                          const DisturbanceModel& eval_disturbance, const EvalProtocol& protocol);

enum class BaselineKind { astar, cbf, cbf_ce, nominal };

const char* to_string(BaselineKind kind);
BaselineKind parse_baseline(const std::string& name);

/// A* and nominal yield one point; CBF variants yield one point per
/// (alpha, d0) pair in the given grid (alpha-major).
std::vector<TradeOffPoint> evaluate_baseline(BaselineKind kind, const std::vector<double>& alphas,
                                             const std::vector<double>& d0s, int n1, const CostParams& cost,
                                             const std::vector<InstanceSpec>& instances,
                                             const DisturbanceModel& eval_disturbance,
                                             const EvalProtocol& protocol,
                                             std::vector<EpisodeRecord>* episodes = nullptr);

/// Columns: episode_id, step, r_x, r_y, h_x, h_y, u_x, u_y, w_x, w_y,
/// dist_to_target, dist_to_obstacle. A non-null provenance is written as a
/// leading "# " comment line.
void write_episode_csv(std::ostream& out, const std::vector<EpisodeRecord>& episodes,
                       const std::vector<InstanceSpec>& instances, const nlohmann::json& provenance = nullptr);

/// Columns: lambda, horizon, mode, planner, alpha, d0, mean_time,
/// mean_min_distance, episodes, collisions, timeouts.
void write_tradeoff_csv(std::ostream& out, const std::vector<TradeOffPoint>& points,
                        const nlohmann::json& provenance = nullptr);

}  // namespace symplan
