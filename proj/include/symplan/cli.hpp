#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "symplan/baselines.hpp"
#include "symplan/evaluation.hpp"
#include "symplan/rollout.hpp"
#include "symplan/value_solver.hpp"

namespace symplan {

/// Invalid configuration; field() is the dotted path of the offending entry.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string field, const std::string& message);
    const std::string& field() const { return field_; }

private:
    std::string field_;
};

/// "uniform", "weighted" (high_weight, low_weight), "point_mass" (index) or
/// "explicit" (probabilities).
struct DisturbanceSpec {
    std::string model = "uniform";
    double high_weight = 100.0;
    double low_weight = 1.0;
    std::size_t index = 0;
    std::vector<double> probabilities;

    DisturbanceModel build(int n2) const;
    nlohmann::json to_json() const;
};

inline DisturbanceSpec weighted_disturbance_spec() {
    DisturbanceSpec spec;
    spec.model = "weighted";
    return spec;
}

struct InstancePositions {
    Vec2 t;
    Vec2 r0;
    Vec2 h0;
};

struct SimulationSpec {
    std::string planner = "rollout";
    /// Explicit instances; when empty, random_instances are sampled.
    std::vector<InstancePositions> instances;
    int random_instances = 1;
    int realizations = 1;
    int max_steps = 500;
    CbfParams cbf;
};

struct SweepSpec {
    std::vector<double> lambdas;
    std::vector<int> horizons{1};
    std::vector<RolloutMode> modes{RolloutMode::expectation};
    int instances = 20;
    int realizations = 1;
    int max_steps = 500;
    std::vector<BaselineKind> baselines;
    std::vector<double> cbf_alphas{0.75};
    std::vector<double> cbf_d0s{1.0};
    std::string cache_dir = "tables";
    bool solve_missing = true;
};

/// One JSON document driving one command. Component seeds are derived from
/// the top-level seed.
struct RunConfig {
    std::uint64_t seed = 0;
    ConstraintBox box;
    CostParams cost;
    int n1 = 16;
    int n2 = 16;
    DisturbanceSpec solver_disturbance;
    DisturbanceSpec eval_disturbance = weighted_disturbance_spec();
    nlohmann::json grid = "coarse";
    SolverConfig solver;
    RolloutConfig rollout;
    SimulationSpec simulation;
    SweepSpec sweep;
    /// The document as given, with "seed" set to the effective seed.
    nlohmann::json document;

    PartitionGrid build_grid() const;
};

/// Throws ConfigError naming the first invalid field.
RunConfig parse_run_config(nlohmann::json document, std::optional<std::uint64_t> seed_override = std::nullopt);
RunConfig load_run_config(const std::filesystem::path& path, std::optional<std::uint64_t> seed_override = std::nullopt);

/// Content hash of everything that determines a solved table.
std::string table_cache_key(const RunConfig& cfg);

/// Entry point shared by the executable and the tests. Exit codes: 0 success,
/// 1 usage or configuration error, 2 solve finished without converging.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace symplan
