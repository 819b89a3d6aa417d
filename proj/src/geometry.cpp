#include "symplan/geometry.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace symplan {

void CostParams::validate() const {
    if (!(lambda >= 0.0 && lambda <= 1.0))
        throw std::invalid_argument("lambda must lie in [0, 1], got " + std::to_string(lambda));
    if (!(R > 0.0) || !std::isfinite(R))
        throw std::invalid_argument("R must be positive, got " + std::to_string(R));
    if (!(epsilon > 0.0) || !std::isfinite(epsilon))
        throw std::invalid_argument("epsilon must be positive, got " + std::to_string(epsilon));
}

WorldState step_full(const WorldState& s, Vec2 u, Vec2 w) { return {s.h + w, s.r + u}; }

double incremental_cost(const WorldState& s, Vec2 t, const CostParams& p) {
    const double e = norm(s.r - t);
    if (e <= p.R) return 0.0;
    const double d = norm(s.h - s.r);
    return p.lambda * (e - p.R) * (e - p.R) + (1.0 - p.lambda) / (d + p.epsilon);
}

double reduced_cost(const ReducedState& rs, const CostParams& p) {
    if (rs.e <= p.R) return 0.0;
    return p.lambda * (rs.e - p.R) * (rs.e - p.R) + (1.0 - p.lambda) / (rs.d + p.epsilon);
}

Vec2 rotate(Vec2 v, double beta) {
    const double c = std::cos(beta);
    const double s = std::sin(beta);
    return {c * v.x - s * v.y, s * v.x + c * v.y};
}

Vec2 rotate_about(Vec2 p, Vec2 center, double beta) { return center + rotate(p - center, beta); }

WorldState rotate_about(const WorldState& s, Vec2 t, double beta) {
    return {rotate_about(s.h, t, beta), rotate_about(s.r, t, beta)};
}

double moving_frame_angle(Vec2 r, Vec2 t) {
    const Vec2 rel = r - t;
    if (norm(rel) < kDegenerateTol)
        throw std::domain_error("moving frame undefined: robot coincides with target");
    return -std::atan2(rel.y, rel.x);
}

CrossSectionCoords cross_section_coords(const WorldState& s, Vec2 t) {
    const double beta = moving_frame_angle(s.r, t);
    const double c = std::cos(beta);
    const double sn = std::sin(beta);
    const Vec2 ht = s.h - t;
    return {t.x + norm(s.r - t), t.x + c * ht.x - sn * ht.y, t.y + sn * ht.x + c * ht.y};
}

ReducedState reduced_from_cross_section(const CrossSectionCoords& rho, Vec2 t) {
    const double e = rho.rho1 - t.x;
    const Vec2 obstacle{rho.rho2 - rho.rho1, rho.rho3 - t.y};
    const double d = norm(obstacle);
    double theta = 0.0;
    if (d >= kDegenerateTol && e >= kDegenerateTol)
        theta = std::acos(std::clamp(obstacle.x / d, -1.0, 1.0));
    return {d, e, theta};
}

double angle_between(Vec2 a, Vec2 b) {
    const double na = norm(a);
    const double nb = norm(b);
    if (na < kDegenerateTol || nb < kDegenerateTol) return 0.0;
    return std::acos(std::clamp(dot(a, b) / (na * nb), -1.0, 1.0));
}

ReducedState reduce(const WorldState& s, Vec2 t) {
    const Vec2 to_robot = s.r - t;
    const Vec2 to_obstacle = s.h - s.r;
    return {norm(to_obstacle), norm(to_robot), angle_between(to_robot, to_obstacle)};
}

WorldState lift(const ReducedState& rs, Vec2 t) {
    const Vec2 r = t + Vec2{rs.e, 0.0};
    const Vec2 h = r + rs.d * Vec2{std::cos(rs.theta), std::sin(rs.theta)};
    return {h, r};
}

ReducedState step_reduced(const ReducedState& rs, Vec2 u, Vec2 w) {
    const Vec2 nu{rs.e + u.x, u.y};
    const Vec2 xi{rs.d * std::cos(rs.theta) + w.x - u.x, rs.d * std::sin(rs.theta) + w.y - u.y};
    return {norm(xi), norm(nu), angle_between(nu, xi)};
}

}  // namespace symplan
