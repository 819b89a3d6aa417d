#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "symplan/geometry.hpp"

namespace symplan {

/// Unit direction at angle q*pi/n. Components within 1e-15 of 0 or +-1 are
/// snapped so that quarter-turn directions are exact.
Vec2 unit_direction(int q, int n);

/// Finite control set: 2n unit moves at angles q*pi/n (q = 0..2n-1) followed
/// by the zero move. This order is the tie-break order for every argmin.
class ActionSet {
public:
    explicit ActionSet(int n1);

    int n() const { return n_; }
    std::size_t size() const { return actions_.size(); }
    std::size_t zero_index() const { return actions_.size() - 1; }
    const Vec2& operator[](std::size_t i) const { return actions_[i]; }
    std::span<const Vec2> actions() const { return actions_; }

private:
    int n_;
    std::vector<Vec2> actions_;
};

ActionSet build_action_set(int n1);

/// Distribution over the 2n2+1 obstacle moves (same layout as ActionSet).
struct DisturbanceModel {
    int n2 = 0;
    std::vector<Vec2> outcomes;
    std::vector<double> probabilities;

    std::size_t size() const { return outcomes.size(); }
    /// Throws std::invalid_argument on layout or probability violations.
    void validate() const;
};

/// Builds the outcome layout for n2 and attaches the given (normalized) probabilities.
DisturbanceModel make_disturbance(int n2, std::vector<double> probabilities);
DisturbanceModel build_disturbance_uniform(int n2);
/// Outcomes strictly inside the open first quadrant get high_weight, the
/// rest low_weight; weights are then normalized.
DisturbanceModel build_disturbance_weighted(int n2, double high_weight, double low_weight);
/// All mass on outcome `index` (index 2*n2 is the zero move).
DisturbanceModel build_disturbance_point_mass(int n2, std::size_t index);

Vec2 mean_disturbance(const DisturbanceModel& m);

/// True iff every unit-direction outcome carries the same probability
/// (within tol of the first one).
bool is_radially_symmetric(const DisturbanceModel& m, double tol);

/// Inverse-CDF draw; u01 must lie in [0, 1). Zero-probability outcomes are
/// never returned.
std::size_t sample_outcome(const DisturbanceModel& m, double u01);

}  // namespace symplan
