#pragma once

#include <array>
#include <functional>
#include <vector>

namespace cairy::geometry {

struct Vec2 {
    double x = 0.0, y = 0.0;

    Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    double dot(Vec2 o) const { return x * o.x + y * o.y; }
    double norm() const;
};

/// Closed planar curve in arclength parametrization, with derivatives and a
/// consistent outward normal. |gamma'(s)| = 1 and gamma(0) = gamma(length).
struct BoundaryCurve {
    double length = 0.0;
    std::function<Vec2(double)> point;
    std::function<Vec2(double)> tangent;     // gamma'
    std::function<Vec2(double)> second;      // gamma''
    std::function<Vec2(double)> outward_normal;

    /// Circle of given radius centered at `center`. `outward_away_from_center`
    /// selects whether the domain lies inside (true: normal points away from
    /// the center, e.g. the boundary of a disk) or outside (false: e.g. the
    /// inner boundary of an annulus, where "outward" points into the hole).
    static BoundaryCurve circle(Vec2 center, double radius, bool outward_away_from_center);
};

/// Potential with exact gradient and Hessian.
struct PotentialModel {
    std::function<double(Vec2)> value;
    std::function<Vec2(Vec2)> gradient;
    std::function<std::array<double, 3>(Vec2)> hessian; // (xx, xy, yy)

    static PotentialModel linear(Vec2 c);
    /// V(x) = x^T Q x / 2 + c . x  with Q = [[qxx, qxy], [qxy, qyy]].
    static PotentialModel quadratic(double qxx, double qxy, double qyy, Vec2 c);
};

} // namespace cairy::geometry
