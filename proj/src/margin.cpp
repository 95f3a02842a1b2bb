#include "cairy/margin.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cairy/airy.hpp"
#include "cairy/errors.hpp"
#include "cairy/halfline.hpp"
#include "cairy/transmission.hpp"

namespace cairy::margin {

namespace {

constexpr double kPi = 3.14159265358979323846;
const Complex kI(0.0, 1.0);
const Complex kRotP = std::polar(1.0, 2.0 * kPi / 3.0);
const Complex kRotM = std::polar(1.0, -2.0 * kPi / 3.0);
const Complex kE16 = std::polar(1.0, kPi / 6.0);
const Complex kE16m = std::polar(1.0, -kPi / 6.0);

double zero_abs(airy::ZeroKind kind, int n) {
    return std::abs(airy::real_zero(kind, n).value);
}

/// Leftmost unit eigenvalue (canonical branch, Im > 0) for the requested
/// boundary condition at reduced parameter y.
Complex lambda_unit(Bc bc, double y) {
    switch (bc) {
        case Bc::Dirichlet:
            return zero_abs(airy::ZeroKind::OfAi, 1) * std::polar(1.0, kPi / 3.0);
        case Bc::Neumann:
            return zero_abs(airy::ZeroKind::OfAiPrime, 1) * std::polar(1.0, kPi / 3.0);
        case Bc::Robin:
            return halfline::eigenvalue_unit(halfline::BoundaryKind::robin(y), 1);
        case Bc::Transmission: {
            if (y <= 1e-12)
                return zero_abs(airy::ZeroKind::OfAiPrime, 1) * std::polar(1.0, kPi / 3.0);
            const int steps = std::max(64, static_cast<int>(std::ceil(8.0 * y)));
            return transmission::pair_unit(1, y, steps).lambda.back();
        }
    }
    return {};
}

Complex tangential_rate(double alpha) {
    // sqrt(i alpha / 2), principal branch; Re > 0 for alpha != 0.
    return std::sqrt(kI * alpha / 2.0);
}

} // namespace

Domain Domain::disk(double radius) {
    Domain d;
    d.components.push_back(BoundaryCurve::circle({0.0, 0.0}, radius, true));
    d.roles.push_back(ComponentRole::Outer);
    d.circle_radius.push_back(radius);
    return d;
}

Domain Domain::annulus(double r_inner, double r_outer) {
    Domain d;
    d.components.push_back(BoundaryCurve::circle({0.0, 0.0}, r_outer, true));
    d.roles.push_back(ComponentRole::Outer);
    d.circle_radius.push_back(r_outer);
    d.components.push_back(BoundaryCurve::circle({0.0, 0.0}, r_inner, false));
    d.roles.push_back(ComponentRole::Interface);
    d.circle_radius.push_back(r_inner);
    return d;
}

double restricted_hessian(const BoundaryCurve& curve, const PotentialModel& pot, double s) {
    const Vec2 x = curve.point(s);
    const Vec2 t = curve.tangent(s);
    const Vec2 dd = curve.second(s);
    const Vec2 g = pot.gradient(x);
    const auto h = pot.hessian(x);
    const double quad = h[0] * t.x * t.x + 2.0 * h[1] * t.x * t.y + h[2] * t.y * t.y;
    return dd.dot(g) + quad;
}

std::vector<PerpPoint> find_perp_points(const BoundaryCurve& curve, const PotentialModel& pot,
                                        int component) {
    const int grid = 2048;
    auto g = [&](double s) { return pot.gradient(curve.point(s)).dot(curve.tangent(s)); };

    std::vector<double> zeros;
    std::vector<double> gs(grid + 1);
    for (int i = 0; i <= grid; ++i) gs[i] = g(curve.length * i / grid);

    for (int i = 0; i < grid; ++i) {
        const double s0 = curve.length * i / grid, s1 = curve.length * (i + 1) / grid;
        if (gs[i] == 0.0) {
            zeros.push_back(s0);
            continue;
        }
        if (gs[i] * gs[i + 1] < 0.0) {
            double lo = s0, hi = s1, flo = gs[i];
            for (int it = 0; it < 60; ++it) {
                const double mid = 0.5 * (lo + hi);
                const double fm = g(mid);
                if (flo * fm <= 0.0)
                    hi = mid;
                else {
                    lo = mid;
                    flo = fm;
                }
            }
            double s = 0.5 * (lo + hi);
            for (int it = 0; it < 3; ++it) {
                const double dg = restricted_hessian(curve, pot, s);
                if (dg == 0.0) break;
                s -= g(s) / dg;
            }
            zeros.push_back(s);
        }
    }

    std::vector<PerpPoint> out;
    for (double s : zeros) {
        double swrap = std::fmod(s, curve.length);
        if (swrap < 0.0) swrap += curve.length;
        bool dup = false;
        for (const PerpPoint& p : out)
            if (std::abs(p.s - swrap) < 1e-9 * curve.length ||
                std::abs(std::abs(p.s - swrap) - curve.length) < 1e-9 * curve.length)
                dup = true;
        if (dup) continue;

        PerpPoint p;
        p.s = swrap;
        p.component = component;
        p.location = curve.point(swrap);
        const Vec2 grad = pot.gradient(p.location);
        p.j0 = grad.norm();
        if (!(p.j0 > 0.0))
            throw DomainError("potential gradient vanishes at a perp point");
        const double dn = grad.dot(curve.outward_normal(swrap));
        p.normal_sign = dn > 0.0 ? 1 : -1;
        p.alpha = restricted_hessian(curve, pot, swrap);
        if (std::abs(p.alpha) < 1e-12)
            throw DegenerateZeroError("perp point is not a simple zero of the tangential derivative");
        p.nondegenerate = std::abs(p.alpha) > 1e-10;
        p.mu1 = tangential_rate(p.alpha);
        p.v0 = pot.value(p.location);
        out.push_back(p);
    }
    std::sort(out.begin(), out.end(), [](const PerpPoint& a, const PerpPoint& b) { return a.s < b.s; });
    return out;
}

MarginReport margin(const Domain& domain, const PotentialModel& pot, Bc bc, double kappa) {
    if (kappa < 0.0) throw DomainError("margin: kappa must be >= 0");
    MarginReport rep;
    rep.bc = bc;
    rep.kappa = kappa;

    for (std::size_t c = 0; c < domain.components.size(); ++c) {
        auto pts = find_perp_points(domain.components[c], pot, static_cast<int>(c));
        rep.points.insert(rep.points.end(), pts.begin(), pts.end());
    }
    if (rep.points.empty()) throw EmptyPerpSetError("no boundary point with normal gradient");

    rep.point_values.resize(rep.points.size());
    for (std::size_t i = 0; i < rep.points.size(); ++i) {
        const PerpPoint& p = rep.points[i];
        Bc point_bc = bc;
        if (bc == Bc::Transmission)
            point_bc = domain.roles[p.component] == ComponentRole::Interface ? Bc::Transmission
                                                                             : Bc::Neumann;
        const double y = kappa * std::pow(p.j0, -1.0 / 3.0);
        rep.point_values[i] =
            std::pow(p.j0, 2.0 / 3.0) *
            lambda_unit(point_bc, point_bc == Bc::Dirichlet || point_bc == Bc::Neumann ? 0.0 : y)
                .real();
    }

    if (bc == Bc::Transmission) {
        rep.lambda_m = *std::min_element(rep.point_values.begin(), rep.point_values.end());
    } else {
        // monotonicity in j: the margin is attained at the smallest |grad V|
        double jm = std::numeric_limits<double>::infinity();
        for (const PerpPoint& p : rep.points) jm = std::min(jm, p.j0);
        const double y = kappa * std::pow(jm, -1.0 / 3.0);
        rep.lambda_m =
            std::pow(jm, 2.0 / 3.0) *
            lambda_unit(bc, bc == Bc::Robin ? y : 0.0).real();
    }

    for (std::size_t i = 0; i < rep.points.size(); ++i)
        if (rep.point_values[i] <= rep.lambda_m + 1e-10 * (1.0 + std::abs(rep.lambda_m)))
            rep.minimizers.push_back(static_cast<int>(i));

    for (int i : rep.minimizers)
        if (!rep.points[i].nondegenerate)
            throw NondegeneracyError("degenerate boundary Hessian at a margin minimizer");
    return rep;
}

Complex quasimode_value(const PerpPoint& point, Bc bc, double kappa, double h) {
    if (!(h > 0.0 && h <= 0.5)) throw DomainError("quasimode_value: h must lie in (0, 0.5]");
    if (!point.nondegenerate)
        throw NondegeneracyError("quasimode requires a nondegenerate perp point");
    const double kstar = kappa * std::pow(point.j0, -1.0 / 3.0);
    const Complex lam = lambda_unit(bc, kstar);
    return kI * point.v0 + std::pow(h, 2.0 / 3.0) * std::pow(point.j0, 2.0 / 3.0) * lam +
           h * point.mu1;
}

namespace {

double smoothstep(double t) {
    if (t <= 0.0) return 1.0;
    if (t >= 1.0) return 0.0;
    const double fa = std::exp(-1.0 / (1.0 - t));
    const double fb = std::exp(-1.0 / t);
    return fa / (fa + fb);
}

struct ResidualEngine {
    // geometry
    double R0;          // circle radius carrying the point
    double theta0;
    bool two_sided;     // transmission interface
    bool interior_below; // one-sided case: domain at r < R0
    // expansion data (orientation-normalized: dV/drho > 0)
    double sV;          // +1 direct, -1 conjugated (potential sign flip)
    double j0, v0, alpha_eff;
    Complex lam;        // canonical unit eigenvalue
    Complex beta;       // tangential Gaussian rate
    Complex cminus;     // tau < 0 matching constant (transmission)
    const PotentialModel* pot;
    double gamma_cut;

    Complex profile(double tau, bool plus_branch) const {
        const double j13 = std::cbrt(j0);
        if (plus_branch)
            return airy::eval_pair(kRotP * lam + kE16 * (j13 * std::abs(tau))).ai;
        return cminus * airy::eval_pair(kRotM * lam + kE16m * (j13 * std::abs(tau))).ai;
    }

    // side: +1 evaluate the tau>0 formula, -1 the tau<0 one (analytic
    // extension across the interface for FD stencils); 0 follows tau's sign.
    Complex U(double r, double th, double h, int side) const {
        // One-sided components: rho = inward distance. Interface: rho = signed
        // distance out of Omega_- (positive on the Omega_+ side). Both reduce
        // to the same expression for centered circles.
        const double rho = interior_below ? (R0 - r) : (r - R0);
        const double dx = r * std::cos(th) - R0 * std::cos(theta0);
        const double dy = r * std::sin(th) - R0 * std::sin(theta0);
        const double d = std::hypot(dx, dy);
        const double hg = std::pow(h, gamma_cut);
        const double chi = smoothstep((d - hg) / hg);
        if (chi == 0.0) return {};
        const double s = R0 * (th - theta0);
        const double h23 = std::pow(h, 2.0 / 3.0);
        const double tau = rho / h23;
        const bool plus_branch = !two_sided || (side != 0 ? side > 0 : tau >= 0.0);
        const double sigma = s / std::sqrt(h);
        const Complex gaussian = std::exp(-beta * (sigma * sigma) / 2.0);
        return chi * profile(tau, plus_branch) * gaussian;
    }
};

} // namespace

double residual_single(const Domain& domain, const PotentialModel& pot, const PerpPoint& point,
                       Bc bc, double kappa, double h, const GridSpec& grid,
                       Complex lambda_shift) {
    if (!(grid.gamma > 0.0 && grid.gamma < 0.5))
        throw DomainError("residual: cutoff exponent must lie in (0, 1/2)");
    if (!(grid.dtau > 0.0) || !(grid.dsigma > 0.0) || grid.dsigma > 0.5)
        throw DomainError("residual: grid steps must be positive (dsigma <= 0.5)");
    if (1.0 / grid.dtau < 12.0)
        throw GridResolutionError("boundary layer h^{2/3} resolved by fewer than 12 points");
    const double R0 = domain.circle_radius.at(point.component);
    if (!(R0 > 0.0) || std::isnan(R0))
        throw DomainError("residual verification requires a centered circular component");

    ResidualEngine eng;
    eng.R0 = R0;
    eng.theta0 = point.s / R0;
    eng.two_sided = (bc == Bc::Transmission &&
                     domain.roles[point.component] == ComponentRole::Interface);
    // one-sided: does the domain lie at r < R0? outward normal away from
    // center <=> interior below. two-sided: is Omega_+ (the nu-ward side) at
    // r > R0? interface normal points out of Omega_-.
    const bool outward_away = domain.components[point.component].outward_normal(point.s).dot(
                                  point.location - Vec2{0.0, 0.0}) > 0.0;
    eng.interior_below = outward_away;
    eng.pot = &pot;
    eng.gamma_cut = grid.gamma;
    eng.j0 = point.j0;

    // Orientation: dV/drho at the point. rho points inward for one-sided
    // components and out of Omega_- at the interface; in both cases that is
    // opposite to the domain's outward normal, so dV/drho = -normal_sign*j0.
    const double dvdrho = -point.normal_sign * point.j0;
    const bool direct = dvdrho > 0.0;
    eng.sV = direct ? 1.0 : -1.0;
    eng.v0 = eng.sV * point.v0;
    eng.alpha_eff = eng.sV * point.alpha;
    eng.beta = tangential_rate(eng.alpha_eff);

    const double kstar = kappa * std::pow(point.j0, -1.0 / 3.0);
    Bc ubc = eng.two_sided ? Bc::Transmission : bc;
    if (bc == Bc::Transmission && !eng.two_sided) ubc = Bc::Neumann;
    eng.lam = lambda_unit(ubc, kstar);
    if (eng.two_sided) {
        const Complex ap = airy::eval_pair(kRotP * eng.lam).ai_prime;
        const Complex am = airy::eval_pair(kRotM * eng.lam).ai_prime;
        if (std::abs(am) < 1e-13) throw DegenerateScaleError("transmission matching degenerate");
        eng.cminus = -std::polar(1.0, kPi / 3.0) * ap / am;
    }

    const Complex lambda_full = kI * eng.v0 +
                                std::pow(h, 2.0 / 3.0) * std::pow(point.j0, 2.0 / 3.0) * eng.lam +
                                h * eng.beta + lambda_shift;

    const double h23 = std::pow(h, 2.0 / 3.0);
    const double dr = grid.dtau * h23;
    const double dth = grid.dsigma * std::sqrt(h) / R0;
    const double hg = std::pow(h, grid.gamma);
    const double r_extent = 2.0 * hg * 1.02 + 4.0 * dr;
    const int nr = static_cast<int>(std::ceil(r_extent / dr));
    const int nth = static_cast<int>(std::ceil((2.0 * hg * 1.08 / R0) / dth)) + 4;

    // node lattice: index (ir, ith); one-sided keeps the interior side only.
    const int ir_lo = eng.two_sided ? -nr : (eng.interior_below ? -nr : 0);
    const int ir_hi = eng.two_sided ? nr : (eng.interior_below ? 0 : nr);

    const int nrows = ir_hi - ir_lo + 1;
    const int ncols = 2 * nth + 1;
    // For the two-sided case each side is extended analytically one row past
    // the interface so stencils never mix formulas.
    std::vector<Complex> up(static_cast<std::size_t>(nrows) * ncols),
        um(eng.two_sided ? up.size() : 0);

    auto fill = [&](std::vector<Complex>& buf, int side) {
        parallel_for(buf.size(), [&](std::size_t idx) {
            const int ir = ir_lo + static_cast<int>(idx) / ncols;
            const int ith = static_cast<int>(idx) % ncols - nth;
            const double r = R0 + ir * dr;
            if (r <= 0.02) {
                buf[idx] = {};
                return;
            }
            buf[idx] = eng.U(r, eng.theta0 + ith * dth, h, side);
        }, Exec::Parallel);
    };
    if (eng.two_sided) {
        fill(up, +1);
        fill(um, -1);
    } else {
        fill(up, 0);
    }

    auto at = [&](const std::vector<Complex>& buf, int ir, int ith) -> Complex {
        if (ir < ir_lo || ir > ir_hi || ith < -nth || ith > nth) return {};
        return buf[static_cast<std::size_t>(ir - ir_lo) * ncols + (ith + nth)];
    };

    double num = 0.0, den = 0.0;
    for (int ir = ir_lo + 1; ir < ir_hi; ++ir) {
        if (eng.two_sided && ir == 0) continue; // interface row carries no PDE residual
        const bool plus_side = !eng.two_sided || ir > 0;
        const std::vector<Complex>& buf = plus_side ? up : um;
        const double r = R0 + ir * dr;
        if (r <= 0.02 + dr) continue;
        for (int ith = -nth + 1; ith < nth; ++ith) {
            const double th = eng.theta0 + ith * dth;
            const Complex u0 = at(buf, ir, ith);
            const double wgt = r * dr * dth; // polar measure r dr dtheta
            den += std::norm(u0) * wgt;
            const double dxc = r * std::cos(th) - R0 * std::cos(eng.theta0);
            const double dyc = r * std::sin(th) - R0 * std::sin(eng.theta0);
            if (std::hypot(dxc, dyc) > hg) continue; // cutoff plateau only
            const Complex urp = at(buf, ir + 1, ith), urm = at(buf, ir - 1, ith);
            const Complex utp = at(buf, ir, ith + 1), utm = at(buf, ir, ith - 1);
            const Complex lap = (urp - 2.0 * u0 + urm) / (dr * dr) +
                                (urp - urm) / (2.0 * dr * r) +
                                (utp - 2.0 * u0 + utm) / (dth * dth * r * r);
            const double v = eng.sV * pot.value({r * std::cos(th), r * std::sin(th)});
            const Complex res = -h * h * lap + kI * v * u0 - lambda_full * u0;
            num += std::norm(res) * wgt;
        }
    }
    if (!(den > 0.0)) throw GridResolutionError("quasimode support not resolved by the grid");
    return std::sqrt(num / den);
}

QuasimodeReport residual_scaling(const Domain& domain, const PotentialModel& pot,
                                 const PerpPoint& point, Bc bc, double kappa,
                                 const std::vector<double>& h_list, const GridSpec& grid,
                                 Exec exec) {
    for (std::size_t i = 1; i < h_list.size(); ++i)
        if (!(h_list[i] < h_list[i - 1]))
            throw DomainError("residual_scaling: h_list must be strictly decreasing");
    for (double h : h_list)
        if (!(h >= 0.01 && h <= 0.1))
            throw DomainError("residual_scaling: h values must lie in [0.01, 0.1]");

    QuasimodeReport rep;
    rep.h_list = h_list;
    rep.cutoff_exponent = grid.gamma;
    rep.residuals.resize(h_list.size());
    parallel_for(h_list.size(), [&](std::size_t i) {
        rep.residuals[i] =
            residual_single(domain, pot, point, bc, kappa, h_list[i], grid, Complex(0.0, 0.0));
    }, exec);
    Bc ubc = bc;
    if (bc == Bc::Transmission && domain.roles[point.component] != ComponentRole::Interface)
        ubc = Bc::Neumann;
    for (double h : h_list) rep.lambda_values.push_back(quasimode_value(point, ubc, kappa, h));

    rep.running_slope.assign(h_list.size(), std::numeric_limits<double>::quiet_NaN());
    auto slope_upto = [&](std::size_t k) {
        double mx = 0.0, my = 0.0;
        for (std::size_t i = 0; i <= k; ++i) {
            mx += std::log(h_list[i]);
            my += std::log(rep.residuals[i]);
        }
        mx /= (k + 1);
        my /= (k + 1);
        double a = 0.0, b = 0.0;
        for (std::size_t i = 0; i <= k; ++i) {
            const double dx = std::log(h_list[i]) - mx;
            a += dx * (std::log(rep.residuals[i]) - my);
            b += dx * dx;
        }
        return a / b;
    };
    for (std::size_t k = 1; k < h_list.size(); ++k) rep.running_slope[k] = slope_upto(k);
    rep.fitted_slope = h_list.size() > 1 ? rep.running_slope.back() : 0.0;
    return rep;
}

} // namespace cairy::margin
