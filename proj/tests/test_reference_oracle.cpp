#include <doctest.h>

#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>
#include <vector>

#include "symplan/reference_oracle.hpp"

using namespace symplan;

namespace {

/// Robot-only shortest path costs on the lattice for lambda = 1 (the obstacle
/// does not enter the cost, so h is irrelevant), by Bellman-Ford relaxation.
std::vector<double> robot_shortest_costs(int L, double R) {
    const int c = (L - 1) / 2;
    const auto stage = [&](int x, int y) {
        const double e = std::hypot(x - c, y - c);
        return e <= R ? 0.0 : (e - R) * (e - R);
    };
    const auto clampi = [&](int v) { return std::max(0, std::min(L - 1, v)); };
    std::vector<double> v(static_cast<std::size_t>(L * L), std::numeric_limits<double>::infinity());
    for (int x = 0; x < L; ++x)
        for (int y = 0; y < L; ++y)
            if (stage(x, y) == 0.0) v[x * L + y] = 0.0;
    for (int pass = 0; pass < L * L; ++pass)
        for (int x = 0; x < L; ++x)
            for (int y = 0; y < L; ++y) {
                if (stage(x, y) == 0.0) continue;
                for (const auto& [dx, dy] : {std::pair{1, 0}, {-1, 0}, {0, 1}, {0, -1}}) {
                    const double next = v[clampi(x + dx) * L + clampi(y + dy)];
                    v[x * L + y] = std::min(v[x * L + y], stage(x, y) + next);
                }
            }
    return v;
}

const OracleReport& find(const std::vector<OracleReport>& reports, const std::string& name) {
    for (const OracleReport& r : reports)
        if (r.name == name) return r;
    throw std::out_of_range(name);
}

}  // namespace

TEST_CASE("report helpers") {
    CHECK(make_report("a", 1e-13, 1e-12).passed);
    CHECK_FALSE(make_report("a", 1e-11, 1e-12).passed);
    CHECK_FALSE(make_report("a", std::nan(""), 1e-12).passed);
    const OracleReport info = make_info_report("b", 5.0);
    CHECK_FALSE(info.asserted);
    CHECK(info.passed);
}

TEST_CASE("discrete world indexing and clamping") {
    const DiscreteWorld world;
    CHECK_NOTHROW(world.validate());
    CHECK(world.state_count() == 6561);
    CHECK(world.target() == Vec2{4, 4});
    for (std::size_t i = 0; i < world.state_count(); i += 37) CHECK(world.index(world.state(i)) == i);
    CHECK(world.clamp({-1, 9}) == Cell2{0, 8});
    CHECK(world.clamp({3, 4}) == Cell2{3, 4});
    CHECK_THROWS_AS((DiscreteWorld{8}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((DiscreteWorld{9, build_disturbance_uniform(4)}.validate()), std::invalid_argument);
}

TEST_CASE("square symmetries form the dihedral group") {
    const DiscreteWorld world;
    const auto sym = square_symmetries(world);
    std::set<std::vector<int>> images;
    for (const auto& s : sym) {
        std::vector<int> image;
        std::set<std::pair<int, int>> seen;
        for (int x = 0; x < world.L; ++x)
            for (int y = 0; y < world.L; ++y) {
                const Cell2 p = s({x, y});
                image.push_back(p.x * world.L + p.y);
                seen.insert({p.x, p.y});
            }
        CHECK(seen.size() == 81);
        CHECK(s({4, 4}) == Cell2{4, 4});
        images.insert(image);
    }
    CHECK(images.size() == 8);
    CHECK(sym[0]({2, 7}) == Cell2{2, 7});
    for (const auto& a : sym)
        for (const auto& b : sym) {
            std::vector<int> composed;
            for (int x = 0; x < world.L; ++x)
                for (int y = 0; y < world.L; ++y) {
                    const Cell2 p = a(b({x, y}));
                    composed.push_back(p.x * world.L + p.y);
                }
            CHECK(images.count(composed) == 1);
        }
}

TEST_CASE("full value iteration") {
    SUBCASE("an all-terminal world is zero after one sweep") {
        const DiscreteWorld world{3};
        const FullValueTable t = full_value_iteration(world, {0.5, 10.0, 1.0}, 1e-12, 10);
        CHECK(t.sweeps == 1);
        for (double v : t.values) CHECK(v == 0.0);
    }

    SUBCASE("lambda = 1 reproduces robot shortest paths") {
        for (int L : {5, 9}) {
            const DiscreteWorld world{L};
            const FullValueTable t = full_value_iteration(world, {1.0, 1.0, 1.0}, 1e-12, 1000);
            const std::vector<double> oracle = robot_shortest_costs(L, 1.0);
            double worst = 0.0;
            for (std::size_t i = 0; i < world.state_count(); ++i) {
                const LatticeState s = world.state(i);
                worst = std::max(worst, std::abs(t.values[i] - oracle[s.r.x * L + s.r.y]));
            }
            CHECK(worst <= 1e-12);
        }
        const DiscreteWorld world{5};
        const FullValueTable t = full_value_iteration(world, {1.0, 1.0, 1.0}, 1e-12, 1000);
        const double diag = (std::sqrt(2.0) - 1.0) * (std::sqrt(2.0) - 1.0);
        CHECK(t.at(world, {{0, 0}, {3, 3}}) == doctest::Approx(diag).epsilon(1e-15));
        const double corner = std::pow(2 * std::sqrt(2.0) - 1, 2) + std::pow(std::sqrt(5.0) - 1, 2) + diag;
        CHECK(t.at(world, {{0, 0}, {4, 4}}) == doctest::Approx(corner).epsilon(1e-14));
    }

    SUBCASE("blended cost converges with a vanishing residual") {
        const DiscreteWorld world;
        const CostParams p{0.5, 1.0, 1.0};
        const FullValueTable t = full_value_iteration(world, p, 1e-12, 5000);
        CHECK(t.last_delta < 1e-12);
        CHECK(full_bellman_residual(t, world, p) < 1e-12);
        CHECK(t.at(world, {{0, 0}, {4, 4}}) == 0.0);
        CHECK(t.at(world, {{2, 2}, {2, 2}}) > t.at(world, {{8, 8}, {2, 2}}));
        CHECK_THROWS_AS(full_value_iteration(world, p, 1e-12, 1), NonConvergenceError);
    }
}

TEST_CASE("value symmetry holds on the lattice and detects corruption") {
    const DiscreteWorld world;
    FullValueTable t = full_value_iteration(world, {0.5, 1.0, 1.0}, 1e-12, 5000);
    const auto good = check_value_symmetry(t, world);
    CHECK(find(good, "value_symmetry").passed);
    CHECK(find(good, "value_symmetry").max_residual < 1e-9);
    CHECK_FALSE(find(good, "value_symmetry_non_orbit_pairs").asserted);

    t.values[world.index({{1, 2}, {6, 7}})] += 1e-3;
    const auto bad = check_value_symmetry(t, world);
    CHECK_FALSE(find(bad, "value_symmetry").passed);
}

TEST_CASE("reduced solver on the isolating partition matches the full table on axis states") {
    const DiscreteWorld world;
    const CostParams p{1.0, 1.0, 1.0};
    const IsolatingPartition part = build_isolating_partition(world);
    CHECK(part.grid.d_intervals() == 1);
    CHECK(part.grid.theta_intervals() == 1);
    CHECK(part.samples.size() == part.grid.cell_count());
    for (std::size_t i = 0; i < part.samples.size(); ++i) CHECK(part.grid.cell_index(part.samples[i]) == i);

    const FullValueTable full = full_value_iteration(world, p, 1e-12, 1000);
    const SolveResult reduced = solve_isolated_reduced(world, p, 200);
    const auto reports = check_reduced_vs_full(full, world, reduced.table);
    CHECK(find(reports, "reduced_vs_full").passed);
    CHECK(find(reports, "reduced_vs_full").max_residual <= 1e-6);
}

TEST_CASE("group axioms and invariance conditions") {
    const OracleReport axioms = check_group_axioms(500, 3);
    CHECK(axioms.passed);
    CHECK(axioms.max_residual < 1e-10);

    const auto uniform_reports = check_invariance_conditions(500, 3, build_disturbance_uniform(2));
    for (const OracleReport& r : uniform_reports) {
        CHECK(r.asserted);
        CHECK(r.passed);
    }
    const auto weighted = check_invariance_conditions(500, 3, build_disturbance_weighted(16, 100, 1));
    CHECK(find(weighted, "dynamics_equivariance").passed);
    CHECK(find(weighted, "cost_invariance").passed);
    CHECK_FALSE(find(weighted, "disturbance_law_invariance").asserted);
    CHECK(find(weighted, "disturbance_law_invariance").max_residual > 0.1);
}

TEST_CASE("moving frame checks accept the correct angle and reject a flipped sign") {
    const auto good = check_moving_frame(2000, 7);
    for (const OracleReport& r : good) CHECK(r.passed);

    const auto flipped = check_moving_frame(2000, 7, [](Vec2 r, Vec2 t) { return -moving_frame_angle(r, t); });
    CHECK_FALSE(find(flipped, "moving_frame_cross_section").passed);
    CHECK_FALSE(find(flipped, "moving_frame_invariant_map").passed);
    CHECK(find(flipped, "reduce_lift_round_trip").passed);
}
