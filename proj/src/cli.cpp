#include "symplan/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>

#include "symplan/random.hpp"
#include "symplan/reference_oracle.hpp"
#include "symplan/table_io.hpp"

namespace symplan {

using nlohmann::json;

ConfigError::ConfigError(std::string field, const std::string& message)
    : std::runtime_error(field + ": " + message), field_(std::move(field)) {}

namespace {

constexpr std::uint64_t kSolverSeedStream = 1;
constexpr std::uint64_t kRolloutSeedStream = 2;
constexpr std::uint64_t kInstanceSeedStream = 3;

/// A JSON object together with its dotted path, for error messages.
class Node {
public:
    Node(const json* value, std::string path) : value_(value), path_(std::move(path)) {}

    bool has(const char* key) const { return value_ && value_->contains(key); }
    std::string path(const char* key) const { return path_.empty() ? key : path_ + "." + key; }

    Node child(const char* key) const {
        if (!has(key)) return {nullptr, path(key)};
        const json& v = value_->at(key);
        if (!v.is_object()) throw ConfigError(path(key), "expected an object");
        return {&v, path(key)};
    }

    const json* raw(const char* key) const { return has(key) ? &value_->at(key) : nullptr; }

    template <class T>
    T get(const char* key, T fallback) const {
        if (!has(key)) return fallback;
        try {
            return value_->at(key).get<T>();
        } catch (const json::exception&) {
            throw ConfigError(path(key), "has the wrong type");
        }
    }

    template <class T>
    T require(const char* key) const {
        if (!has(key)) throw ConfigError(path(key), "is required");
        return get<T>(key, T{});
    }

    Vec2 vec(const char* key, Vec2 fallback) const {
        if (!has(key)) return fallback;
        const auto v = get<std::vector<double>>(key, {});
        if (v.size() != 2) throw ConfigError(path(key), "expected [x, y]");
        return {v[0], v[1]};
    }

private:
    const json* value_;
    std::string path_;
};

/// Runs a validate() call and rethrows its message against `field`.
template <class Fn>
void check(const std::string& field, Fn&& fn) {
    try {
        fn();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(field, e.what());
    }
}

DisturbanceSpec parse_disturbance(const Node& node, DisturbanceSpec fallback) {
    DisturbanceSpec spec = fallback;
    spec.model = node.get<std::string>("model", spec.model);
    spec.high_weight = node.get<double>("high_weight", spec.high_weight);
    spec.low_weight = node.get<double>("low_weight", spec.low_weight);
    spec.index = node.get<std::size_t>("index", spec.index);
    spec.probabilities = node.get<std::vector<double>>("probabilities", spec.probabilities);
    return spec;
}

RolloutMode parse_mode(const std::string& name, const std::string& field) {
    try {
        return parse_rollout_mode(name);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(field, e.what());
    }
}

std::uint64_t fnv1a64(const std::string& text) {
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (unsigned char ch : text) {
        hash ^= ch;
        hash *= 0x100000001b3ULL;
    }
    return hash;
}

std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

json provenance(const char* command, const RunConfig& cfg) {
    return {{"command", command}, {"seed", cfg.seed}, {"config", cfg.document}};
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream file(path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open '" + path + "' for writing");
    file << text;
    if (!file) throw std::runtime_error("failed writing '" + path + "'");
}

void check_table_matches(const ValueTable& table, const RunConfig& cfg) {
    if (!(table.cost == cfg.cost)) throw ConfigError("cost", "does not match the value table's cost parameters");
    if (table.n1 != cfg.n1) throw ConfigError("actions.n1", "does not match the value table");
}

std::vector<InstanceSpec> simulation_instances(const RunConfig& cfg) {
    const SimulationSpec& sim = cfg.simulation;
    const std::uint64_t seed = derive_seed(cfg.seed, {kInstanceSeedStream});
    if (sim.instances.empty()) return sample_instances(sim.random_instances, sim.realizations, cfg.box, seed);
    std::vector<InstanceSpec> out;
    for (std::size_t i = 0; i < sim.instances.size(); ++i) {
        InstanceSpec spec{sim.instances[i].t, sim.instances[i].r0, sim.instances[i].h0, {}};
        for (int j = 0; j < sim.realizations; ++j)
            spec.realization_seeds.push_back(derive_seed(seed, {i, static_cast<std::uint64_t>(j)}));
        out.push_back(std::move(spec));
    }
    return out;
}

void print_deltas(std::ostream& out, const std::vector<double>& deltas) {
    for (std::size_t k = 0; k < deltas.size(); ++k)
        out << "iteration " << k + 1 << " delta " << format_double(deltas[k]) << '\n';
}

int cmd_solve(const RunConfig& cfg, const std::string& out_path, std::ostream& out) {
    const SolveResult result = solve(cfg.build_grid(), cfg.cost, ActionSet(cfg.n1),
                                     cfg.solver_disturbance.build(cfg.n2), cfg.solver);
    print_deltas(out, result.deltas);
    write_value_table_file(out_path, result.table, provenance("solve", cfg));
    out << (result.converged ? "converged" : "not converged") << " after " << result.deltas.size()
        << " iterations; " << result.table.coefficients.size() << " coefficients written to " << out_path << '\n';
    return result.converged ? 0 : 2;
}

int cmd_simulate(const RunConfig& cfg, const std::string& table_path, const std::string& out_path, int threads,
                 std::ostream& out) {
    const SimulationSpec& sim = cfg.simulation;
    const DisturbanceModel eval_w = cfg.eval_disturbance.build(cfg.n2);
    const std::vector<InstanceSpec> instances = simulation_instances(cfg);
    const EvalProtocol protocol{cfg.box, sim.max_steps, threads};

    std::vector<EpisodeRecord> episodes;
    if (sim.planner == "rollout") {
        if (table_path.empty()) throw ConfigError("simulation.planner", "rollout requires --table");
        const ValueTable table = read_value_table_file(table_path);
        check_table_matches(table, cfg);
        evaluate_lambda(cfg.cost.lambda, table, cfg.rollout, instances, eval_w, protocol, &episodes);
    } else {
        BaselineKind kind;
        try {
            kind = parse_baseline(sim.planner);
        } catch (const std::invalid_argument& e) {
            throw ConfigError("simulation.planner", e.what());
        }
        evaluate_baseline(kind, {sim.cbf.alpha}, {sim.cbf.d0}, cfg.n1, cfg.cost, instances, eval_w, protocol,
                          &episodes);
    }

    std::ostringstream csv;
    write_episode_csv(csv, episodes, instances, provenance("simulate", cfg));
    write_text_file(out_path, csv.str());
    for (const EpisodeRecord& rec : episodes) {
        out << "episode " << rec.episode_id << " instance " << rec.instance << " realization " << rec.realization
            << ": time " << rec.result.time_to_target << " min_distance " << format_double(rec.result.min_distance)
            << (rec.result.collided ? " collided" : "") << (rec.result.timed_out ? " timed_out" : "")
            << (rec.result.fallback_count > 0 ? " fallbacks " + std::to_string(rec.result.fallback_count) : "")
            << '\n';
    }
    return 0;
}

int cmd_sweep(const RunConfig& cfg, const std::filesystem::path& config_dir, const std::string& out_path,
              int threads, std::ostream& out) {
    const SweepSpec& sweep = cfg.sweep;
    const DisturbanceModel eval_w = cfg.eval_disturbance.build(cfg.n2);
    const std::vector<InstanceSpec> instances = sample_instances(
        sweep.instances, sweep.realizations, cfg.box, derive_seed(cfg.seed, {kInstanceSeedStream}));
    const EvalProtocol protocol{cfg.box, sweep.max_steps, threads};

    std::filesystem::path cache_dir = sweep.cache_dir;
    if (cache_dir.is_relative()) cache_dir = config_dir / cache_dir;
    std::map<double, std::unique_ptr<ValueTable>> tables;
    int status = 0;
    for (double lambda : sweep.lambdas) {
        RunConfig point = cfg;
        point.cost.lambda = lambda;
        check("sweep.lambdas", [&] { point.cost.validate(); });
        const std::filesystem::path file = cache_dir / ("table-" + table_cache_key(point) + ".json");
        if (std::filesystem::exists(file)) {
            tables[lambda] = std::make_unique<ValueTable>(read_value_table_file(file.string()));
            out << "lambda " << format_double(lambda) << ": loaded " << file.string() << '\n';
            continue;
        }
        if (!sweep.solve_missing)
            throw ConfigError("sweep.solve_missing", "no cached table for lambda " + format_double(lambda));
        SolverConfig solver = cfg.solver;
        solver.threads = threads;
        const SolveResult result = solve(cfg.build_grid(), point.cost, ActionSet(cfg.n1),
                                         cfg.solver_disturbance.build(cfg.n2), solver);
        std::filesystem::create_directories(cache_dir);
        write_value_table_file(file.string(), result.table, provenance("solve", point));
        out << "lambda " << format_double(lambda) << ": solved in " << result.deltas.size() << " iterations"
            << (result.converged ? "" : " (not converged)") << '\n';
        if (!result.converged) status = 2;
        tables[lambda] = std::make_unique<ValueTable>(result.table);
    }

    const TableProvider provider = [&](double lambda) -> const ValueTable& { return *tables.at(lambda); };
    std::vector<TradeOffPoint> points = tradeoff_sweep(sweep.lambdas, sweep.horizons, sweep.modes, provider,
                                                       cfg.rollout, instances, eval_w, protocol);
    for (BaselineKind kind : sweep.baselines) {
        std::vector<TradeOffPoint> extra = evaluate_baseline(kind, sweep.cbf_alphas, sweep.cbf_d0s, cfg.n1,
                                                             cfg.cost, instances, eval_w, protocol);
        for (const TradeOffPoint& p : extra)
            if (p.fallback_count > 0)
                out << p.planner << " alpha " << format_double(p.alpha) << " d0 " << format_double(p.d0) << ": "
                    << p.fallback_count << " infeasible-step fallbacks\n";
        points.insert(points.end(), extra.begin(), extra.end());
    }

    std::ostringstream csv;
    write_tradeoff_csv(csv, points, provenance("sweep", cfg));
    write_text_file(out_path, csv.str());
    out << points.size() << " trade-off points written to " << out_path << '\n';
    return status;
}

void print_report(std::ostream& out, const OracleReport& r) {
    out << (r.asserted ? (r.passed ? "PASS " : "FAIL ") : "INFO ") << r.name
        << " max_residual=" << format_double(r.max_residual);
    if (r.asserted) out << " tolerance=" << format_double(r.tolerance);
    if (!r.detail.empty()) out << " (" << r.detail << ')';
    out << '\n';
}

int cmd_oracle(bool flip_frame_sign, std::uint64_t seed, const std::string& out_path, std::ostream& out) {
    std::vector<OracleReport> reports;
    const auto add = [&](std::vector<OracleReport> more) { reports.insert(reports.end(), more.begin(), more.end()); };

    reports.push_back(check_group_axioms(1000, seed));
    const DiscreteWorld world;
    add(check_invariance_conditions(1000, seed, world.disturbance));

    const CostParams blended{0.5, 1.0, 1.0};
    const FullValueTable full = full_value_iteration(world, blended, 1e-12, 5000);
    reports.push_back(make_report("full_value_iteration_residual", full_bellman_residual(full, world, blended), 1e-12,
                                  std::to_string(full.sweeps) + " sweeps, lambda 0.5"));
    add(check_value_symmetry(full, world));

    const CostParams target_only{1.0, 1.0, 1.0};
    const FullValueTable full_target = full_value_iteration(world, target_only, 1e-12, 5000);
    const SolveResult reduced = solve_isolated_reduced(world, target_only, 200);
    add(check_reduced_vs_full(full_target, world, reduced.table));

    const FrameAngleFn frame = flip_frame_sign ? FrameAngleFn([](Vec2 r, Vec2 t) { return -moving_frame_angle(r, t); })
                                               : FrameAngleFn(moving_frame_angle);
    add(check_moving_frame(10000, seed, frame));

    bool ok = true;
    json summary = json::array();
    for (const OracleReport& r : reports) {
        print_report(out, r);
        ok = ok && r.passed;
        summary.push_back({{"name", r.name},
                           {"max_residual", r.max_residual},
                           {"tolerance", r.tolerance},
                           {"asserted", r.asserted},
                           {"passed", r.passed},
                           {"detail", r.detail}});
    }
    if (!out_path.empty()) write_text_file(out_path, summary.dump(2) + "\n");
    out << (ok ? "all oracle checks passed" : "oracle checks FAILED") << '\n';
    return ok ? 0 : 1;
}

}  // namespace

DisturbanceModel DisturbanceSpec::build(int n2) const {
    if (model == "uniform") return build_disturbance_uniform(n2);
    if (model == "weighted") return build_disturbance_weighted(n2, high_weight, low_weight);
    if (model == "point_mass") return build_disturbance_point_mass(n2, index);
    if (model == "explicit") return make_disturbance(n2, probabilities);
    throw std::invalid_argument("unknown disturbance model '" + model + "'");
}

json DisturbanceSpec::to_json() const {
    json j{{"model", model}};
    if (model == "weighted") {
        j["high_weight"] = high_weight;
        j["low_weight"] = low_weight;
    } else if (model == "point_mass") {
        j["index"] = index;
    } else if (model == "explicit") {
        j["probabilities"] = probabilities;
    }
    return j;
}

PartitionGrid RunConfig::build_grid() const {
    if (grid.is_string()) {
        if (grid == "paper") return build_paper_grid();
        if (grid == "coarse") return build_coarse_grid();
        throw ConfigError("grid", "expected \"paper\", \"coarse\" or an object of edges");
    }
    const Node node(&grid, "grid");
    try {
        return PartitionGrid(node.require<std::vector<double>>("d_edges"), node.require<std::vector<double>>("e_edges"),
                             node.require<std::vector<double>>("theta_edges"));
    } catch (const std::invalid_argument& e) {
        throw ConfigError("grid", e.what());
    }
}

RunConfig parse_run_config(json document, std::optional<std::uint64_t> seed_override) {
    if (!document.is_object()) throw ConfigError("<root>", "expected a JSON object");
    const Node root(&document, "");
    RunConfig cfg;
    cfg.seed = seed_override ? *seed_override : root.get<std::uint64_t>("seed", 0);

    const Node box = root.child("world").child("box");
    cfg.box.lo = box.vec("lo", cfg.box.lo);
    cfg.box.hi = box.vec("hi", cfg.box.hi);
    check("world.box", [&] { cfg.box.validate(); });

    const Node cost = root.child("cost");
    cfg.cost.lambda = cost.get<double>("lambda", cfg.cost.lambda);
    cfg.cost.R = cost.get<double>("R", cfg.cost.R);
    cfg.cost.epsilon = cost.get<double>("epsilon", cfg.cost.epsilon);
    check("cost", [&] { cfg.cost.validate(); });

    cfg.n1 = root.child("actions").get<int>("n1", cfg.n1);
    if (cfg.n1 < 1) throw ConfigError("actions.n1", "must be >= 1");

    const Node dist = root.child("disturbance");
    cfg.n2 = dist.get<int>("n2", cfg.n2);
    if (cfg.n2 < 1) throw ConfigError("disturbance.n2", "must be >= 1");
    cfg.solver_disturbance = parse_disturbance(dist.child("solver"), cfg.solver_disturbance);
    cfg.eval_disturbance = parse_disturbance(dist.child("eval"), cfg.eval_disturbance);
    check("disturbance.solver", [&] { cfg.solver_disturbance.build(cfg.n2); });
    check("disturbance.eval", [&] { cfg.eval_disturbance.build(cfg.n2); });

    if (const json* grid = root.raw("grid")) cfg.grid = *grid;
    cfg.build_grid();

    const Node solver = root.child("solver");
    cfg.solver.samples_per_cell = solver.get<int>("samples_per_cell", cfg.solver.samples_per_cell);
    cfg.solver.eps_tol = solver.get<double>("eps_tol", cfg.solver.eps_tol);
    cfg.solver.max_iters = solver.get<int>("max_iters", cfg.solver.max_iters);
    cfg.solver.seed = derive_seed(cfg.seed, {kSolverSeedStream});
    check("solver", [&] { cfg.solver.validate(); });

    const Node rollout = root.child("rollout");
    cfg.rollout.horizon = rollout.get<int>("horizon", cfg.rollout.horizon);
    if (rollout.has("mode"))
        cfg.rollout.mode = parse_mode(rollout.get<std::string>("mode", ""), rollout.path("mode"));
    cfg.rollout.scenario_count = rollout.get<int>("scenario_count", cfg.rollout.scenario_count);
    cfg.rollout.infeasibility_penalty =
        rollout.get<double>("infeasibility_penalty", cfg.rollout.infeasibility_penalty);
    cfg.rollout.seed = derive_seed(cfg.seed, {kRolloutSeedStream});
    check("rollout", [&] { cfg.rollout.validate(); });

    const Node sim = root.child("simulation");
    SimulationSpec& s = cfg.simulation;
    s.planner = sim.get<std::string>("planner", s.planner);
    if (const json* list = sim.raw("instances")) {
        if (!list->is_array()) throw ConfigError("simulation.instances", "expected an array");
        for (std::size_t i = 0; i < list->size(); ++i) {
            const std::string path = "simulation.instances[" + std::to_string(i) + "]";
            if (!(*list)[i].is_object()) throw ConfigError(path, "expected an object");
            const Node item(&(*list)[i], path);
            if (!item.has("t") || !item.has("r0") || !item.has("h0"))
                throw ConfigError(path, "requires t, r0 and h0");
            s.instances.push_back({item.vec("t", {}), item.vec("r0", {}), item.vec("h0", {})});
        }
    }
    s.random_instances = sim.get<int>("random_instances", s.random_instances);
    s.realizations = sim.get<int>("realizations", s.realizations);
    s.max_steps = sim.get<int>("max_steps", s.max_steps);
    if (s.random_instances < 1) throw ConfigError("simulation.random_instances", "must be >= 1");
    if (s.realizations < 1) throw ConfigError("simulation.realizations", "must be >= 1");
    if (s.max_steps < 1) throw ConfigError("simulation.max_steps", "must be >= 1");
    const Node cbf = sim.child("cbf");
    s.cbf.alpha = cbf.get<double>("alpha", s.cbf.alpha);
    s.cbf.d0 = cbf.get<double>("d0", s.cbf.d0);
    check("simulation.cbf", [&] { s.cbf.validate(); });

    const Node sweep = root.child("sweep");
    SweepSpec& w = cfg.sweep;
    w.lambdas = sweep.get<std::vector<double>>("lambdas", w.lambdas);
    w.horizons = sweep.get<std::vector<int>>("horizons", w.horizons);
    for (int h : w.horizons)
        if (h < 1) throw ConfigError("sweep.horizons", "horizons must be >= 1");
    if (sweep.has("modes")) {
        w.modes.clear();
        for (const std::string& m : sweep.get<std::vector<std::string>>("modes", {}))
            w.modes.push_back(parse_mode(m, "sweep.modes"));
    }
    w.instances = sweep.get<int>("instances", w.instances);
    w.realizations = sweep.get<int>("realizations", w.realizations);
    w.max_steps = sweep.get<int>("max_steps", w.max_steps);
    if (w.instances < 1) throw ConfigError("sweep.instances", "must be >= 1");
    if (w.realizations < 1) throw ConfigError("sweep.realizations", "must be >= 1");
    if (w.max_steps < 1) throw ConfigError("sweep.max_steps", "must be >= 1");
    for (const std::string& b : sweep.get<std::vector<std::string>>("baselines", {})) {
        try {
            w.baselines.push_back(parse_baseline(b));
        } catch (const std::invalid_argument& e) {
            throw ConfigError("sweep.baselines", e.what());
        }
    }
    w.cbf_alphas = sweep.get<std::vector<double>>("cbf_alphas", w.cbf_alphas);
    w.cbf_d0s = sweep.get<std::vector<double>>("cbf_d0s", w.cbf_d0s);
    for (double a : w.cbf_alphas)
        for (double d : w.cbf_d0s) check("sweep.cbf_alphas", [&] { CbfParams{a, d}.validate(); });
    w.cache_dir = sweep.get<std::string>("cache_dir", w.cache_dir);
    w.solve_missing = sweep.get<bool>("solve_missing", w.solve_missing);

    document["seed"] = cfg.seed;
    cfg.document = std::move(document);
    return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path, std::optional<std::uint64_t> seed_override) {
    std::ifstream file(path);
    if (!file) throw ConfigError("--config", "cannot open '" + path.string() + "'");
    json document;
    try {
        document = json::parse(file);
    } catch (const json::parse_error& e) {
        throw ConfigError("--config", std::string("invalid JSON: ") + e.what());
    }
    return parse_run_config(std::move(document), seed_override);
}

std::string table_cache_key(const RunConfig& cfg) {
    const PartitionGrid grid = cfg.build_grid();
    const json key{{"d_edges", grid.d_edges()},
                   {"e_edges", grid.e_edges()},
                   {"theta_edges", grid.theta_edges()},
                   {"cost", {format_double(cfg.cost.lambda), format_double(cfg.cost.R), format_double(cfg.cost.epsilon)}},
                   {"n1", cfg.n1},
                   {"n2", cfg.n2},
                   {"disturbance", cfg.solver_disturbance.to_json()},
                   {"solver",
                    {cfg.solver.samples_per_cell, format_double(cfg.solver.eps_tol), cfg.solver.max_iters,
                     cfg.solver.seed}}};
    return hex64(fnv1a64(key.dump()));
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Symmetry-reduced value iteration and rollout planning"};
    app.require_subcommand(1);
    std::string config_path;
    std::string table_path;
    std::string out_path;
    std::uint64_t seed = 0;
    int threads = 1;
    bool flip_frame_sign = false;

    const auto common = [&](CLI::App* sub) {
        sub->add_option("--seed", seed, "Top-level seed (overrides the config)");
        sub->add_option("--threads", threads, "Worker thread cap")->check(CLI::PositiveNumber);
    };
    CLI::App* solve_cmd = app.add_subcommand("solve", "Solve a value table");
    solve_cmd->add_option("--config", config_path)->required();
    solve_cmd->add_option("--out", out_path)->required();
    common(solve_cmd);
    CLI::App* simulate_cmd = app.add_subcommand("simulate", "Run episodes and write the episode CSV");
    simulate_cmd->add_option("--config", config_path)->required();
    simulate_cmd->add_option("--table", table_path);
    simulate_cmd->add_option("--out", out_path)->required();
    common(simulate_cmd);
    CLI::App* sweep_cmd = app.add_subcommand("sweep", "Evaluate a trade-off sweep and write its CSV");
    sweep_cmd->add_option("--config", config_path)->required();
    sweep_cmd->add_option("--out", out_path)->required();
    common(sweep_cmd);
    CLI::App* oracle_cmd = app.add_subcommand("oracle", "Run the reference oracle checks");
    oracle_cmd->add_option("--out", out_path, "Optional JSON report");
    oracle_cmd->add_flag("--flip-frame-sign", flip_frame_sign, "Negate the moving-frame angle (fault injection)");
    common(oracle_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    }

    const bool seed_given = app.get_subcommands().front()->count("--seed") > 0;
    const std::optional<std::uint64_t> seed_override = seed_given ? std::optional(seed) : std::nullopt;
    try {
        if (oracle_cmd->parsed()) return cmd_oracle(flip_frame_sign, seed, out_path, out);
        RunConfig cfg = load_run_config(config_path, seed_override);
        cfg.solver.threads = threads;
        if (solve_cmd->parsed()) return cmd_solve(cfg, out_path, out);
        if (simulate_cmd->parsed()) return cmd_simulate(cfg, table_path, out_path, threads, out);
        const std::filesystem::path dir = std::filesystem::absolute(config_path).parent_path();
        return cmd_sweep(cfg, dir, out_path, threads, out);
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    std::vector<const char*> argv{"symplan"};
    for (const std::string& a : args) argv.push_back(a.c_str());
    return run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace symplan
