#include "symplan/value_solver.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <numbers>
#include <string>

#include "symplan/parallel.hpp"
#include "symplan/random.hpp"

namespace symplan {

namespace {

void check_edges(const std::vector<double>& edges, const char* axis) {
    if (edges.size() < 2)
        throw std::invalid_argument(std::string(axis) + " edges need at least two entries");
    if (edges.front() != 0.0) throw std::invalid_argument(std::string(axis) + " edges must start at 0");
    for (std::size_t i = 1; i < edges.size(); ++i)
        if (!(edges[i] > edges[i - 1]) || !std::isfinite(edges[i]))
            throw std::invalid_argument(std::string(axis) + " edges must be finite and strictly increasing");
}

std::size_t axis_index(const std::vector<double>& edges, double v) {
    const auto it = std::upper_bound(edges.begin(), edges.end(), v);
    if (it == edges.begin()) return 0;
    return std::min<std::size_t>(static_cast<std::size_t>(it - edges.begin()) - 1, edges.size() - 2);
}

double draw_in(Rng& rng, double lo, double hi) {
    const double v = uniform(rng, lo, hi);
    return v < hi ? v : std::nextafter(hi, lo);
}

}  // namespace

PartitionGrid::PartitionGrid(std::vector<double> d_edges, std::vector<double> e_edges,
                             std::vector<double> theta_edges)
    : d_edges_(std::move(d_edges)), e_edges_(std::move(e_edges)), theta_edges_(std::move(theta_edges)) {
    check_edges(d_edges_, "d");
    check_edges(e_edges_, "e");
    check_edges(theta_edges_, "theta");
    if (std::abs(theta_edges_.back() - std::numbers::pi) > 1e-12)
        throw std::invalid_argument("theta edges must end at pi");
}

std::size_t PartitionGrid::cell_index(const ReducedState& rs) const {
    return flat_index(axis_index(d_edges_, rs.d), axis_index(e_edges_, rs.e),
                      axis_index(theta_edges_, rs.theta));
}

PartitionGrid::Cell PartitionGrid::cell_bounds(std::size_t index) const {
    const std::size_t m = index % theta_intervals();
    const std::size_t l = (index / theta_intervals()) % e_intervals();
    const std::size_t j = index / (theta_intervals() * e_intervals());
    return {d_edges_[j], d_edges_[j + 1], e_edges_[l], e_edges_[l + 1], theta_edges_[m], theta_edges_[m + 1]};
}

std::vector<double> evenly_spaced(double lo, double hi, double step) {
    const auto count = static_cast<std::size_t>(std::llround((hi - lo) / step)) + 1;
    std::vector<double> out;
    out.reserve(count);
    for (std::size_t k = 0; k < count; ++k) out.push_back(lo + static_cast<double>(k) * step);
    return out;
}

PartitionGrid build_paper_grid() {
    std::vector<double> d = evenly_spaced(0.0, 3.0, 0.05);
    for (double v : evenly_spaced(3.5, 30.0, 0.5)) d.push_back(v);
    std::vector<double> e = evenly_spaced(0.0, 3.0, 0.1);
    for (double v : evenly_spaced(3.5, 30.0, 0.5)) e.push_back(v);
    std::vector<double> theta;
    for (int k = 0; k <= 25; ++k) theta.push_back(k * std::numbers::pi / 25.0);
    theta.back() = std::numbers::pi;
    return PartitionGrid(std::move(d), std::move(e), std::move(theta));
}

PartitionGrid build_coarse_grid() {
    std::vector<double> d{0.0, 0.25, 0.5, 0.75, 1.0, 1.25, 1.5, 2.0, 2.5, 3.0, 4.0,
                          5.0, 6.0, 8.0, 10.0, 12.0, 15.0, 18.0, 22.0, 26.0, 30.0};
    std::vector<double> e = evenly_spaced(0.0, 3.0, 0.5);
    for (double v : evenly_spaced(4.0, 30.0, 1.0)) e.push_back(v);
    std::vector<double> theta;
    for (int k = 0; k <= 8; ++k) theta.push_back(k * std::numbers::pi / 8.0);
    theta.back() = std::numbers::pi;
    return PartitionGrid(std::move(d), std::move(e), std::move(theta));
}

void SolverConfig::validate() const {
    if (samples_per_cell < 1) throw std::invalid_argument("samples_per_cell must be >= 1");
    if (!(eps_tol > 0.0)) throw std::invalid_argument("eps_tol must be positive");
    if (max_iters < 1) throw std::invalid_argument("max_iters must be >= 1");
    if (threads < 1) throw std::invalid_argument("threads must be >= 1");
}

EmptyCellError::EmptyCellError(std::size_t cell)
    : std::runtime_error("partition cell " + std::to_string(cell) + " contains no sample"), cell_(cell) {}

std::vector<ReducedState> generate_samples(const PartitionGrid& grid, const SolverConfig& cfg) {
    cfg.validate();
    const std::size_t per_cell = static_cast<std::size_t>(cfg.samples_per_cell);
    std::vector<ReducedState> samples(grid.cell_count() * per_cell);
    parallel_for(grid.cell_count(), cfg.threads, [&](std::size_t cell) {
        const PartitionGrid::Cell b = grid.cell_bounds(cell);
        ReducedState* out = samples.data() + cell * per_cell;
        out[0] = {0.5 * (b.d_lo + b.d_hi), 0.5 * (b.e_lo + b.e_hi), 0.5 * (b.theta_lo + b.theta_hi)};
        Rng rng(derive_seed(cfg.seed, {cell}));
        for (std::size_t slot = 1; slot < per_cell; ++slot) {
            const double d = draw_in(rng, b.d_lo, b.d_hi);
            const double e = draw_in(rng, b.e_lo, b.e_hi);
            const double theta = draw_in(rng, b.theta_lo, b.theta_hi);
            out[slot] = {d, e, theta};
        }
    });
    return samples;
}

double evaluate_reduced(const ValueTable& table, const ReducedState& rs) {
    return table.coefficients[table.grid.cell_index(rs)];
}

double evaluate_full(const ValueTable& table, const WorldState& s, Vec2 t) {
    return evaluate_reduced(table, reduce(s, t));
}

double bellman_backup(const ReducedState& sample, const ValueTable& table, const ActionSet& actions) {
    if (sample.e <= table.cost.R) return 0.0;
    const double stage = reduced_cost(sample, table.cost);
    const DisturbanceModel& dist = table.disturbance;
    // Hoisted pieces of step_reduced; same arithmetic, evaluated once.
    const double obstacle_x = sample.d * std::cos(sample.theta);
    const double obstacle_y = sample.d * std::sin(sample.theta);

    double best = std::numeric_limits<double>::infinity();
    for (const Vec2& u : actions.actions()) {
        const Vec2 nu{sample.e + u.x, u.y};
        const double e_next = std::sqrt(nu.x * nu.x + nu.y * nu.y);
        double continuation = 0.0;
        for (std::size_t i = 0; i < dist.size(); ++i) {
            const double p = dist.probabilities[i];
            if (p == 0.0) continue;
            const Vec2& w = dist.outcomes[i];
            const Vec2 xi{obstacle_x + w.x - u.x, obstacle_y + w.y - u.y};
            const double d_next = std::sqrt(xi.x * xi.x + xi.y * xi.y);
            const ReducedState next{d_next, e_next, angle_between(nu, xi)};
            continuation += p * evaluate_reduced(table, next);
        }
        const double q = continuation + stage;
        if (q < best) best = q;
    }
    return best;
}

std::vector<double> fit_parameters(std::span<const ReducedState> samples, std::span<const double> betas,
                                   const PartitionGrid& grid) {
    if (samples.size() != betas.size())
        throw std::invalid_argument("fit_parameters: samples and betas differ in length");
    std::vector<double> sums(grid.cell_count(), 0.0);
    std::vector<std::size_t> counts(grid.cell_count(), 0);
    for (std::size_t s = 0; s < samples.size(); ++s) {
        const std::size_t cell = grid.cell_index(samples[s]);
        sums[cell] += betas[s];
        ++counts[cell];
    }
    for (std::size_t cell = 0; cell < sums.size(); ++cell) {
        if (counts[cell] == 0) throw EmptyCellError(cell);
        sums[cell] /= static_cast<double>(counts[cell]);
    }
    return sums;
}

SolveResult solve(const PartitionGrid& grid, const CostParams& cost, const ActionSet& actions,
                  const DisturbanceModel& disturbance, const SolverConfig& cfg,
                  const IterationObserver& observer) {
    const std::vector<ReducedState> samples = generate_samples(grid, cfg);
    return solve_with_samples(samples, grid, cost, actions, disturbance, cfg, observer);
}

SolveResult solve_with_samples(std::span<const ReducedState> samples, const PartitionGrid& grid,
                               const CostParams& cost, const ActionSet& actions,
                               const DisturbanceModel& disturbance, const SolverConfig& cfg,
                               const IterationObserver& observer) {
    cost.validate();
    cfg.validate();
    disturbance.validate();
    if (!is_radially_symmetric(disturbance, 1e-12))
        std::clog << "warning: disturbance model is not radially symmetric; "
                     "the reduced value function is only an approximation\n";

    SolveResult result{ValueTable{grid, std::vector<double>(grid.cell_count(), 0.0), cost, actions.n(),
                                  disturbance.n2, disturbance},
                       {},
                       false};
    ValueTable& table = result.table;
    std::vector<double> betas(samples.size());

    for (int k = 0; k < cfg.max_iters; ++k) {
        parallel_for(samples.size(), cfg.threads,
                     [&](std::size_t s) { betas[s] = bellman_backup(samples[s], table, actions); });
        std::vector<double> next = fit_parameters(samples, betas, grid);
        double delta = 0.0;
        for (std::size_t i = 0; i < next.size(); ++i)
            delta = std::max(delta, std::abs(next[i] - table.coefficients[i]));
        table.coefficients = std::move(next);
        result.deltas.push_back(delta);
        if (observer) observer(k, table.coefficients);
        if (delta <= cfg.eps_tol) {
            result.converged = true;
            break;
        }
    }
    return result;
}

}  // namespace symplan
