#include "cairy/geometry.hpp"

#include <cmath>

namespace cairy::geometry {

double Vec2::norm() const { return std::hypot(x, y); }

BoundaryCurve BoundaryCurve::circle(Vec2 center, double radius, bool outward_away_from_center) {
    BoundaryCurve c;
    c.length = 2.0 * M_PI * radius;
    const double sgn = outward_away_from_center ? 1.0 : -1.0;
    c.point = [=](double s) -> Vec2 {
        const double t = s / radius;
        return {center.x + radius * std::cos(t), center.y + radius * std::sin(t)};
    };
    c.tangent = [=](double s) -> Vec2 {
        const double t = s / radius;
        return {-std::sin(t), std::cos(t)};
    };
    c.second = [=](double s) -> Vec2 {
        const double t = s / radius;
        return {-std::cos(t) / radius, -std::sin(t) / radius};
    };
    c.outward_normal = [=](double s) -> Vec2 {
        const double t = s / radius;
        return {sgn * std::cos(t), sgn * std::sin(t)};
    };
    return c;
}

PotentialModel PotentialModel::linear(Vec2 c) {
    PotentialModel p;
    p.value = [=](Vec2 x) { return c.dot(x); };
    p.gradient = [=](Vec2) { return c; };
    p.hessian = [](Vec2) { return std::array<double, 3>{0.0, 0.0, 0.0}; };
    return p;
}

PotentialModel PotentialModel::quadratic(double qxx, double qxy, double qyy, Vec2 c) {
    PotentialModel p;
    p.value = [=](Vec2 x) {
        return 0.5 * (qxx * x.x * x.x + 2.0 * qxy * x.x * x.y + qyy * x.y * x.y) + c.dot(x);
    };
    p.gradient = [=](Vec2 x) -> Vec2 {
        return {qxx * x.x + qxy * x.y + c.x, qxy * x.x + qyy * x.y + c.y};
    };
    p.hessian = [=](Vec2) { return std::array<double, 3>{qxx, qxy, qyy}; };
    return p;
}

} // namespace cairy::geometry
