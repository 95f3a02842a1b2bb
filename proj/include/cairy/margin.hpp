#pragma once

#include <complex>
#include <string>
#include <vector>

#include "cairy/geometry.hpp"
#include "cairy/parallel.hpp"

namespace cairy::margin {

using Complex = std::complex<double>;
using geometry::BoundaryCurve;
using geometry::PotentialModel;
using geometry::Vec2;

/// Boundary-condition selector for margin computations. Transmission applies
/// the transmission condition on interface components and `outer_bc` on outer
/// ones.
enum class Bc { Dirichlet, Neumann, Robin, Transmission };

enum class ComponentRole { Outer, Interface };

/// A planar domain given by its boundary components. Disk and annulus
/// factories are circles centered at the origin; residual verification is
/// restricted to those (exact polar coordinates), general curves get margin
/// computation only.
struct Domain {
    std::vector<BoundaryCurve> components;
    std::vector<ComponentRole> roles;
    std::vector<double> circle_radius; // NaN when not a centered circle

    static Domain disk(double radius = 1.0);
    /// Annulus r_inner < |x| < r_outer. For Bc::Transmission the inner circle
    /// is the interface of the two-sided domain |x| < r_outer.
    static Domain annulus(double r_inner = 1.0, double r_outer = 2.0);
};

/// A boundary point where grad V is orthogonal to the boundary.
struct PerpPoint {
    Vec2 location;
    double s = 0.0;          // arclength on its component
    int component = 0;
    double j0 = 0.0;         // |grad V|
    int normal_sign = 0;     // sign of the outward normal derivative of V
    double alpha = 0.0;      // second arclength derivative of V along the boundary
    bool nondegenerate = false;
    Complex mu1;             // (|alpha|/2)^{1/2} e^{i(pi/4) sign(alpha)}
    double v0 = 0.0;         // V at the point
};

/// All zeros of s -> <grad V(gamma(s)), gamma'(s)> on one component:
/// sign-change bisection on a 2048-point grid, Newton-polished.
std::vector<PerpPoint> find_perp_points(const BoundaryCurve& curve, const PotentialModel& pot,
                                        int component = 0);

/// Second arclength derivative of the boundary restriction of V at s.
double restricted_hessian(const BoundaryCurve& curve, const PotentialModel& pot, double s);

struct MarginReport {
    Bc bc;
    double kappa = 0.0;
    std::vector<PerpPoint> points;
    std::vector<double> point_values; // Re lambda^#(j0, kappa) per point
    double lambda_m = 0.0;
    std::vector<int> minimizers;
};

MarginReport margin(const Domain& domain, const PotentialModel& pot, Bc bc, double kappa);

/// Leading eigenvalue expansion attached to a perp point:
///   i V(x0) + h^{2/3} lambda_1^#(kappa*) j0^{2/3} + h mu1,
/// kappa* = kappa j0^{-1/3}. For Bc::Transmission lambda_1^T is used.
Complex quasimode_value(const PerpPoint& point, Bc bc, double kappa, double h);

struct GridSpec {
    double dtau = 0.05;    // normal grid step in boundary-layer units rho/h^{2/3}
    double dsigma = 0.1;   // tangential grid step in units s/h^{1/2}
    double gamma = 0.4;    // cutoff exponent, in (0, 1/2)
};

struct QuasimodeReport {
    std::vector<double> h_list;
    std::vector<Complex> lambda_values; // the expansion value per h
    std::vector<double> residuals;
    std::vector<double> running_slope; // LSQ slope of rows 0..k (NaN for k = 0)
    double fitted_slope = 0.0;
    double cutoff_exponent = 0.4;
};

/// Builds the quasimode on a polar grid around the point, applies the
/// second-order finite-difference discretization of -h^2 Lap + iV and records
/// ||(A_h - Lambda) U|| / ||U|| for each h. The numerator is taken over the
/// cutoff plateau |x - x0| <= h^gamma where the profile is untouched by the
/// cutoff; the commutator supported on the transition shell is scaffolding of
/// the localization, not part of the expansion being measured.
QuasimodeReport residual_scaling(const Domain& domain, const PotentialModel& pot,
                                 const PerpPoint& point, Bc bc, double kappa,
                                 const std::vector<double>& h_list, const GridSpec& grid = {},
                                 Exec exec = Exec::Parallel);

/// Single-h residual with Lambda shifted by `lambda_shift` (used by the
/// perturbation diagnostics; shift = h spoils the O(h) term).
double residual_single(const Domain& domain, const PotentialModel& pot, const PerpPoint& point,
                       Bc bc, double kappa, double h, const GridSpec& grid,
                       Complex lambda_shift);

} // namespace cairy::margin
