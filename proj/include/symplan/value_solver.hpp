#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

#include "symplan/action_models.hpp"
#include "symplan/geometry.hpp"

namespace symplan {

/// Axis-aligned partition of (d, e, theta) space into boxes. Intervals are
/// half-open [lo, hi) except the last one on each axis, which is closed.
/// Coordinates beyond the last edge clamp to the boundary cell.
class PartitionGrid {
public:
    PartitionGrid(std::vector<double> d_edges, std::vector<double> e_edges,
                  std::vector<double> theta_edges);

    const std::vector<double>& d_edges() const { return d_edges_; }
    const std::vector<double>& e_edges() const { return e_edges_; }
    const std::vector<double>& theta_edges() const { return theta_edges_; }

    std::size_t d_intervals() const { return d_edges_.size() - 1; }
    std::size_t e_intervals() const { return e_edges_.size() - 1; }
    std::size_t theta_intervals() const { return theta_edges_.size() - 1; }
    std::size_t cell_count() const { return d_intervals() * e_intervals() * theta_intervals(); }

    /// Flat index from 0-based interval indices (d-major, theta fastest).
    std::size_t flat_index(std::size_t j, std::size_t l, std::size_t m) const {
        return (j * e_intervals() + l) * theta_intervals() + m;
    }
    std::size_t cell_index(const ReducedState& rs) const;

    struct Cell {
        double d_lo, d_hi, e_lo, e_hi, theta_lo, theta_hi;
    };
    Cell cell_bounds(std::size_t index) const;

    friend bool operator==(const PartitionGrid&, const PartitionGrid&) = default;

private:
    std::vector<double> d_edges_;
    std::vector<double> e_edges_;
    std::vector<double> theta_edges_;
};

/// lo, lo + step, ..., hi computed as lo + k*step (no accumulated drift).
std::vector<double> evenly_spaced(double lo, double hi, double step);

/// 115 x 85 x 26 edges: fine spacing below 3, 0.5 spacing up to 30.
PartitionGrid build_paper_grid();

/// Desk-scale grid covering the same range with ~5k cells.
PartitionGrid build_coarse_grid();

/// Piecewise-constant value function W(d, e, theta) = a[cell(d, e, theta)].
struct ValueTable {
    PartitionGrid grid;
    std::vector<double> coefficients;
    CostParams cost;
    int n1 = 0;
    int n2 = 0;
    DisturbanceModel disturbance;
};

struct SolverConfig {
    int samples_per_cell = 3;
    double eps_tol = 1e-5;
    int max_iters = 20;
    std::uint64_t seed = 0;
    /// Worker count for the value update; results do not depend on it.
    int threads = 1;

    void validate() const;
};

class EmptyCellError : public std::runtime_error {
public:
    explicit EmptyCellError(std::size_t cell);
    std::size_t cell() const { return cell_; }

private:
    std::size_t cell_;
};

/// samples_per_cell points per cell ordered by cell then slot; slot 0 is
/// the cell center, the rest are uniform draws from a stream keyed by
/// (seed, cell).
std::vector<ReducedState> generate_samples(const PartitionGrid& grid, const SolverConfig& cfg);

double evaluate_reduced(const ValueTable& table, const ReducedState& rs);
double evaluate_full(const ValueTable& table, const WorldState& s, Vec2 t);

/// One Bellman backup at a sample: zero for terminal samples (e <= R),
/// otherwise min over u of the stage cost plus the expected table value at
/// the successor, using table.cost and table.disturbance.
double bellman_backup(const ReducedState& sample, const ValueTable& table, const ActionSet& actions);

/// Least-squares fit with indicator features, i.e. the per-cell mean of
/// betas. Throws EmptyCellError if some cell has no sample.
std::vector<double> fit_parameters(std::span<const ReducedState> samples, std::span<const double> betas,
                                   const PartitionGrid& grid);

struct SolveResult {
    ValueTable table;
    /// delta_k = max |a_{k+1} - a_k| for each completed iteration.
    std::vector<double> deltas;
    bool converged = false;
};

/// Called after every parameter update with the iteration index and a_{k+1}.
using IterationObserver = std::function<void(int, std::span<const double>)>;

/// Reduced-space fitted value iteration starting from a = 0.
SolveResult solve(const PartitionGrid& grid, const CostParams& cost, const ActionSet& actions,
                  const DisturbanceModel& disturbance, const SolverConfig& cfg,
                  const IterationObserver& observer = {});

/// Same iteration on caller-supplied samples (every cell must be covered).
SolveResult solve_with_samples(std::span<const ReducedState> samples, const PartitionGrid& grid,
                               const CostParams& cost, const ActionSet& actions,
                               const DisturbanceModel& disturbance, const SolverConfig& cfg,
                               const IterationObserver& observer = {});

}  // namespace symplan
