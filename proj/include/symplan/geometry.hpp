#pragma once

#include <cmath>

namespace symplan {

/// Absolute threshold below which a vector norm is treated as zero.
inline constexpr double kDegenerateTol = 1e-12;

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    friend constexpr Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
    friend constexpr Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
    friend constexpr Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
    friend constexpr bool operator==(const Vec2&, const Vec2&) = default;
};

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double norm(Vec2 a) { return std::sqrt(a.x * a.x + a.y * a.y); }

/// Positions of the moving obstacle (h) and the robot (r).
struct WorldState {
    Vec2 h;
    Vec2 r;

    friend constexpr bool operator==(const WorldState&, const WorldState&) = default;
};

/// Symmetry-reduced coordinates: obstacle distance d, target distance e and
/// the angle between (r - t) and (h - r).
struct ReducedState {
    double d = 0.0;
    double e = 0.0;
    double theta = 0.0;
};

struct CostParams {
    double lambda = 0.5;
    double R = 1.0;
    double epsilon = 1e-8;

    /// Throws std::invalid_argument when a field is out of range.
    void validate() const;

    friend bool operator==(const CostParams&, const CostParams&) = default;
};

/// Constant-position model: h+ = h + w, r+ = r + u.
WorldState step_full(const WorldState& s, Vec2 u, Vec2 w);

/// Stage cost: zero inside the arrival radius, otherwise a lambda-weighted
/// blend of squared target distance and inverse obstacle distance.
double incremental_cost(const WorldState& s, Vec2 t, const CostParams& p);

/// Stage cost written in reduced coordinates; independent of theta.
double reduced_cost(const ReducedState& rs, const CostParams& p);

/// Counter-clockwise rotation by beta radians.
Vec2 rotate(Vec2 v, double beta);
Vec2 rotate_about(Vec2 p, Vec2 center, double beta);
/// Rotates both h and r about t (the state-space group action).
WorldState rotate_about(const WorldState& s, Vec2 t, double beta);

/// Angle beta* with R(beta*)(r - t) = (|r - t|, 0), i.e. the rotation that
/// moves the state onto the cross-section r^y = t^y, r^x > t^x.
/// Throws std::domain_error when r coincides with t.
double moving_frame_angle(Vec2 r, Vec2 t);

/// Invariant coordinates of the state after applying the moving frame:
/// (t^x + e, rotated h^x, rotated h^y).
struct CrossSectionCoords {
    double rho1 = 0.0;
    double rho2 = 0.0;
    double rho3 = 0.0;
};

CrossSectionCoords cross_section_coords(const WorldState& s, Vec2 t);
/// Maps cross-section coordinates to (d, e, theta).
ReducedState reduced_from_cross_section(const CrossSectionCoords& rho, Vec2 t);

/// Angle between a and b in [0, pi]; zero if either is degenerate.
double angle_between(Vec2 a, Vec2 b);

ReducedState reduce(const WorldState& s, Vec2 t);

/// Canonical representative on the cross-section: r = t + e(1,0),
/// h = r + d(cos theta, sin theta).
WorldState lift(const ReducedState& rs, Vec2 t);

/// One step of the dynamics expressed directly in reduced coordinates.
ReducedState step_reduced(const ReducedState& rs, Vec2 u, Vec2 w);

}  // namespace symplan
