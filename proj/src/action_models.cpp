#include "symplan/action_models.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace symplan {

namespace {

constexpr double kSnapTol = 1e-15;

double snap(double v) {
    if (std::abs(v) < kSnapTol) return 0.0;
    if (std::abs(v - 1.0) < kSnapTol) return 1.0;
    if (std::abs(v + 1.0) < kSnapTol) return -1.0;
    return v;
}

std::vector<Vec2> build_layout(int n) {
    if (n < 1) throw std::invalid_argument("direction count n must be >= 1, got " + std::to_string(n));
    std::vector<Vec2> out;
    out.reserve(2 * static_cast<std::size_t>(n) + 1);
    for (int q = 0; q < 2 * n; ++q) out.push_back(unit_direction(q, n));
    out.push_back({0.0, 0.0});
    return out;
}

}  // namespace

Vec2 unit_direction(int q, int n) {
    const double angle = static_cast<double>(q) * std::numbers::pi / static_cast<double>(n);
    return {snap(std::cos(angle)), snap(std::sin(angle))};
}

ActionSet::ActionSet(int n1) : n_(n1), actions_(build_layout(n1)) {}

ActionSet build_action_set(int n1) { return ActionSet(n1); }

void DisturbanceModel::validate() const {
    const std::size_t expected = 2 * static_cast<std::size_t>(n2) + 1;
    if (n2 < 1 || outcomes.size() != expected || probabilities.size() != expected)
        throw std::invalid_argument("disturbance model must have 2*n2+1 outcomes and probabilities");
    if (outcomes.back() != Vec2{0.0, 0.0})
        throw std::invalid_argument("last disturbance outcome must be the zero move");
    double total = 0.0;
    for (double p : probabilities) {
        if (!(p >= 0.0) || !std::isfinite(p))
            throw std::invalid_argument("disturbance probabilities must be finite and nonnegative");
        total += p;
    }
    if (std::abs(total - 1.0) > 1e-12)
        throw std::invalid_argument("disturbance probabilities must sum to 1, got " + std::to_string(total));
}

DisturbanceModel make_disturbance(int n2, std::vector<double> probabilities) {
    DisturbanceModel m{n2, build_layout(n2), std::move(probabilities)};
    m.validate();
    return m;
}

DisturbanceModel build_disturbance_uniform(int n2) {
    if (n2 < 1) throw std::invalid_argument("n2 must be >= 1");
    const std::size_t count = 2 * static_cast<std::size_t>(n2) + 1;
    return make_disturbance(n2, std::vector<double>(count, 1.0 / static_cast<double>(count)));
}

DisturbanceModel build_disturbance_weighted(int n2, double high_weight, double low_weight) {
    if (!(high_weight > 0.0) || !(low_weight > 0.0))
        throw std::invalid_argument("disturbance weights must be positive");
    const std::vector<Vec2> layout = build_layout(n2);
    std::vector<double> weights;
    weights.reserve(layout.size());
    double total = 0.0;
    for (const Vec2& w : layout) {
        const double weight = (w.x > 0.0 && w.y > 0.0) ? high_weight : low_weight;
        weights.push_back(weight);
        total += weight;
    }
    for (double& weight : weights) weight /= total;
    return make_disturbance(n2, std::move(weights));
}

DisturbanceModel build_disturbance_point_mass(int n2, std::size_t index) {
    const std::size_t count = 2 * static_cast<std::size_t>(n2) + 1;
    if (index >= count) throw std::invalid_argument("point-mass index out of range");
    std::vector<double> probabilities(count, 0.0);
    probabilities[index] = 1.0;
    return make_disturbance(n2, std::move(probabilities));
}

Vec2 mean_disturbance(const DisturbanceModel& m) {
    Vec2 mean{0.0, 0.0};
    for (std::size_t i = 0; i < m.size(); ++i) mean = mean + m.probabilities[i] * m.outcomes[i];
    return mean;
}

bool is_radially_symmetric(const DisturbanceModel& m, double tol) {
    const std::size_t directions = m.size() - 1;
    for (std::size_t i = 1; i < directions; ++i)
        if (std::abs(m.probabilities[i] - m.probabilities[0]) > tol) return false;
    return true;
}

std::size_t sample_outcome(const DisturbanceModel& m, double u01) {
    double cumulative = 0.0;
    std::size_t last_positive = 0;
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (m.probabilities[i] <= 0.0) continue;
        cumulative += m.probabilities[i];
        last_positive = i;
        if (u01 < cumulative) return i;
    }
    return last_positive;
}

}  // namespace symplan
