#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "symplan/action_models.hpp"
#include "symplan/geometry.hpp"
#include "symplan/value_solver.hpp"

namespace symplan {

/// Outcome of one oracle check. Checks with asserted == false only report
/// their residual and always pass.
struct OracleReport {
    std::string name;
    double max_residual = 0.0;
    double tolerance = 0.0;
    bool asserted = true;
    bool passed = true;
    std::string detail;
};

OracleReport make_report(std::string name, double max_residual, double tolerance, std::string detail = {});
OracleReport make_info_report(std::string name, double max_residual, std::string detail = {});

/// Integer lattice position.
struct Cell2 {
    int x = 0;
    int y = 0;
    friend bool operator==(const Cell2&, const Cell2&) = default;
};

struct LatticeState {
    Cell2 h;
    Cell2 r;
    friend bool operator==(const LatticeState&, const LatticeState&) = default;
};

/// L x L lattice {0..L-1}^2 with the target at the center, n1 = n2 = 2
/// unit moves and clamping at the boundary. L must be odd.
struct DiscreteWorld {
    int L = 9;
    DisturbanceModel disturbance = build_disturbance_uniform(2);

    void validate() const;
    int center() const { return (L - 1) / 2; }
    Vec2 target() const { return {static_cast<double>(center()), static_cast<double>(center())}; }
    std::size_t state_count() const;
    std::size_t index(const LatticeState& s) const;
    LatticeState state(std::size_t index) const;
    Cell2 clamp(Cell2 p) const;
    static WorldState to_world(const LatticeState& s);
};

/// The 8 symmetries of the square about the world center, identity first.
std::array<std::function<Cell2(Cell2)>, 8> square_symmetries(const DiscreteWorld& world);

struct FullValueTable {
    int L = 0;
    std::vector<double> values;
    int sweeps = 0;
    double last_delta = 0.0;

    double at(const DiscreteWorld& world, const LatticeState& s) const { return values[world.index(s)]; }
};

class NonConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Full-state synchronous value iteration from V = 0 with terminal states
/// pinned at zero. Stops once the sup-norm change is below tol.
FullValueTable full_value_iteration(const DiscreteWorld& world, const CostParams& p, double tol, int max_iters);

/// max over non-terminal states of |T V - V|.
double full_bellman_residual(const FullValueTable& table, const DiscreteWorld& world, const CostParams& p);

/// Identity, composition and inverse axioms of the rotation actions on
/// states, controls and disturbances.
OracleReport check_group_axioms(std::span<const double> angles, std::span<const WorldState> states, Vec2 t);

/// Random-sample variant of check_group_axioms.
OracleReport check_group_axioms(std::size_t samples, std::uint64_t seed);

struct TransitionSample {
    WorldState x;
    Vec2 u;
    Vec2 w;
    Vec2 t;
};

/// Dynamics equivariance, stage-cost invariance (lambda in {0, 0.5, 1}) and
/// invariance of the disturbance law under rotations by multiples of pi/n2.
std::vector<OracleReport> check_invariance_conditions(std::span<const TransitionSample> samples,
                                                      std::span<const double> angles,
                                                      const DisturbanceModel& disturbance);

std::vector<OracleReport> check_invariance_conditions(std::size_t samples, std::uint64_t seed,
                                                      const DisturbanceModel& disturbance);

/// Max |V(sigma(x)) - V(x)| over the 8 square symmetries (asserted), and
/// over lattice pairs with equal (d, e, |theta|) that are not related by a
/// square symmetry (reported).
std::vector<OracleReport> check_value_symmetry(const FullValueTable& table, const DiscreteWorld& world,
                                               double tolerance = 1e-9);

/// Partition with a single d and theta interval and one e interval per
/// realizable lattice distance |r - t|; samples sit on the lower edges.
struct IsolatingPartition {
    PartitionGrid grid;
    std::vector<ReducedState> samples;
};

IsolatingPartition build_isolating_partition(const DiscreteWorld& world);

/// Reduced fitted value iteration on the isolating partition.
SolveResult solve_isolated_reduced(const DiscreteWorld& world, const CostParams& p, int max_iters);

/// Reduced table against the full table: asserted over states with r - t on
/// a lattice axis, reported over the rest.
std::vector<OracleReport> check_reduced_vs_full(const FullValueTable& full, const DiscreteWorld& world,
                                                const ValueTable& reduced, double tolerance = 1e-6);

using FrameAngleFn = std::function<double(Vec2 r, Vec2 t)>;

/// Cross-section condition R(beta*)(r - t) = (|r - t|, 0) for the given frame
/// angle, agreement of the invariant map with reduce(), and the reduce(lift)
/// round trip for d, e > 1e-6.
std::vector<OracleReport> check_moving_frame(std::size_t samples, std::uint64_t seed,
                                             const FrameAngleFn& frame_angle = moving_frame_angle,
                                             double tolerance = 1e-10);

}  // namespace symplan
