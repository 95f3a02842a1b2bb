#pragma once

#include <complex>
#include <iosfwd>
#include <vector>

#include "cairy/parallel.hpp"

namespace cairy::halfline {

using Complex = std::complex<double>;

enum class BcKind { Dirichlet, Neumann, Robin };

/// Boundary condition of the half-line operator -d^2/dx^2 + i x in the
/// reduced (unit current) variable; y >= 0 is the reduced Robin parameter.
struct BoundaryKind {
    BcKind kind = BcKind::Neumann;
    double y = 0.0;

    static BoundaryKind dirichlet() { return {BcKind::Dirichlet, 0.0}; }
    static BoundaryKind neumann() { return {BcKind::Neumann, 0.0}; }
    static BoundaryKind robin(double y);
};

/// -d^2/dx^2 + i j x on the half line with u'(0) = kappa u(0) (Robin),
/// u'(0) = 0 (Neumann) or u(0) = 0 (Dirichlet). Dirichlet/Neumann ignore
/// kappa. Reduced parameter: y = kappa j^{-1/3}.
struct HalfLineProblem {
    double j = 1.0;
    double kappa = 0.0;
    BcKind bc = BcKind::Neumann;
};

/// Characteristic function whose zeros are the unit-problem eigenvalues.
/// Convention: the spectrum lies in the upper-right quadrant (Im > 0), so the
/// rotation is e^{+i2pi/3}:
///   Dirichlet:  Ai(e^{i2pi/3} lambda)
///   Neumann:    Ai'(e^{i2pi/3} lambda)
///   Robin(y):   i e^{i2pi/3} Ai'(e^{i2pi/3} lambda) + y Ai(e^{i2pi/3} lambda)
Complex characteristic(BoundaryKind bc, Complex lambda);

/// d/dlambda of characteristic (via Ai''(w) = w Ai(w)).
Complex characteristic_dlambda(BoundaryKind bc, Complex lambda);

/// The conjugate-variable form (rotation e^{-i2pi/3}); it vanishes exactly at
/// the conjugates of the spectrum, i.e. at the poles of the resolvent kernel
/// written in the conjugate variable. For Robin:
///   i e^{-i2pi/3} Ai'(e^{-i2pi/3} z) - y Ai(e^{-i2pi/3} z).
Complex conjugate_characteristic(BoundaryKind bc, Complex z);

/// Newton on the characteristic. Residual tolerance 1e-12, max 25 iterations.
Complex newton_polish(BoundaryKind bc, Complex lambda0);

/// n-th eigenvalue of the unit problem (n >= 1, n <= 10).
/// Dirichlet/Neumann: |a_n| e^{i pi/3}, |a'_n| e^{i pi/3}. Robin: continuation
/// in y from the Neumann value, Newton-polished; for y > 1e3 the branch is
/// seeded from the Dirichlet value plus a -i/y correction instead.
Complex eigenvalue_unit(BoundaryKind bc, int n);

/// Eigenvalue of the general problem: j^{2/3} * eigenvalue_unit(y = kappa j^{-1/3}).
Complex eigenvalue(const HalfLineProblem& p, int n);

/// An eigenvalue branch sampled on a uniform y-grid, with the implicit-ODE
/// derivative dlambda/dy = i/(lambda + y^2) and the monotonicity diagnostic
/// delta(y) = 2 - y Re(lambda')/Re(lambda).
struct Trajectory {
    BoundaryKind bc; // Robin kind; bc.y == y_max
    int n = 1;
    std::vector<double> y;
    std::vector<Complex> lambda;
    std::vector<Complex> dlambda;
    std::vector<double> delta;

    /// CSV columns: y, re_lambda, im_lambda, re_dlambda, im_dlambda, delta.
    void write_csv(std::ostream& os) const;
};

/// Continue the n-th Robin branch from y = 0 to y_max, sampled at steps+1
/// uniform grid points. steps >= 64, y_max <= 1e4.
Trajectory trajectory(int n, double y_max, int steps);

/// Parallel batch over branch indices (serial reference via exec).
std::vector<Trajectory> trajectory_batch(const std::vector<int>& ns, double y_max,
                                         int steps, Exec exec);

/// max over the grid of y * Re(lambda') / Re(lambda); for n = 1 this is
/// bounded by 1/(2 sqrt(2) |a'_1|^{3/2}).
double delta_bound_check(const Trajectory& traj);

/// d lambda_n / d j at (j, kappa) via the chain rule
///   (lambda(y)/(3 j^{1/3})) (2 - y lambda'(y)/lambda(y)),  y = kappa j^{-1/3}.
Complex dlambda_dj(const HalfLineProblem& p, int n);

} // namespace cairy::halfline
