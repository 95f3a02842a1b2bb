#include "cairy/halfline.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "cairy/airy.hpp"
#include "cairy/errors.hpp"
#include "cairy/io.hpp"

namespace cairy::halfline {

namespace {

constexpr double kPi = 3.14159265358979323846;
const Complex kI(0.0, 1.0);
const Complex kRotP = std::polar(1.0, 2.0 * kPi / 3.0);
const Complex kRotM = std::polar(1.0, -2.0 * kPi / 3.0);

double zero_abs(airy::ZeroKind kind, int n) {
    return std::abs(airy::real_zero(kind, n).value);
}

// Branch ODE in the canonical convention: lambda'(y) (lambda + y^2) = i.
Complex branch_rhs(double y, Complex lambda) { return kI / (lambda + y * y); }

// Distance guard between neighbouring branches, used by the jump detector.
double branch_gap(int n) {
    const double a = zero_abs(airy::ZeroKind::OfAiPrime, n);
    const double b = zero_abs(airy::ZeroKind::OfAiPrime, std::min(n + 1, 20));
    return n >= 20 ? 0.35 : 0.5 * (b - a);
}

} // namespace

BoundaryKind BoundaryKind::robin(double y) {
    if (y < 0.0) throw DomainError("Robin parameter y must be >= 0");
    return {BcKind::Robin, y};
}

Complex characteristic(BoundaryKind bc, Complex lambda) {
    const Complex w = kRotP * lambda;
    const airy::AiryPair p = airy::eval_pair(w);
    switch (bc.kind) {
        case BcKind::Dirichlet: return p.ai;
        case BcKind::Neumann: return p.ai_prime;
        case BcKind::Robin: return kI * kRotP * p.ai_prime + bc.y * p.ai;
    }
    return {};
}

Complex characteristic_dlambda(BoundaryKind bc, Complex lambda) {
    const Complex w = kRotP * lambda;
    const airy::AiryPair p = airy::eval_pair(w);
    switch (bc.kind) {
        case BcKind::Dirichlet: return kRotP * p.ai_prime;
        case BcKind::Neumann: return kRotP * w * p.ai; // Ai'' = w Ai
        case BcKind::Robin: return kRotP * (kI * kRotP * w * p.ai + bc.y * p.ai_prime);
    }
    return {};
}

Complex conjugate_characteristic(BoundaryKind bc, Complex z) {
    const Complex w = kRotM * z;
    const airy::AiryPair p = airy::eval_pair(w);
    switch (bc.kind) {
        case BcKind::Dirichlet: return p.ai;
        case BcKind::Neumann: return p.ai_prime;
        case BcKind::Robin: return kI * kRotM * p.ai_prime - bc.y * p.ai;
    }
    return {};
}

Complex newton_polish(BoundaryKind bc, Complex lambda0) {
    // Residual tolerance 1e-12 at unit scale; for large Robin y the
    // characteristic magnitude grows like y and the achievable floor is the
    // rounding of lambda itself, so a vanishing Newton update also counts as
    // converged.
    Complex lam = lambda0;
    for (int it = 0; it < 25; ++it) {
        const Complex f = characteristic(bc, lam);
        if (std::abs(f) <= 1e-12) return lam;
        const Complex df = characteristic_dlambda(bc, lam);
        if (std::abs(df) == 0.0) break;
        const Complex delta = f / df;
        lam -= delta;
        if (std::abs(delta) <= 4e-16 * (1.0 + std::abs(lam))) return lam;
    }
    if (std::abs(characteristic(bc, lam)) <= 1e-12 * (1.0 + bc.y * 1e-3)) return lam;
    throw ConvergenceError("Newton stalled on half-line characteristic");
}

namespace {

// One adaptive continuation pass along the Robin branch. Calls `record` after
// every polished target hit in `targets` (ascending).
template <class Record>
void continue_branch(int n, const std::vector<double>& targets, Record&& record) {
    const double gap = branch_gap(n);
    const double jump_tol = 0.1 * gap;

    Complex lam = zero_abs(airy::ZeroKind::OfAiPrime, n) * std::polar(1.0, kPi / 3.0);
    double y = 0.0;
    std::size_t next = 0;
    while (next < targets.size() && targets[next] <= 1e-14) {
        record(targets[next], newton_polish(BoundaryKind::robin(targets[next]), lam));
        ++next;
    }

    double dy = 0.05;
    while (next < targets.size()) {
        const double y_stop = targets[next];
        double step = std::min(dy, y_stop - y);
        bool at_target = (y + step >= y_stop - 1e-14);
        if (at_target) step = y_stop - y;

        // RK4 predictor on lambda' = i/(lambda + y^2).
        const Complex k1 = branch_rhs(y, lam);
        const Complex k2 = branch_rhs(y + 0.5 * step, lam + 0.5 * step * k1);
        const Complex k3 = branch_rhs(y + 0.5 * step, lam + 0.5 * step * k2);
        const Complex k4 = branch_rhs(y + step, lam + step * k3);
        const Complex pred = lam + step / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

        Complex corrected;
        try {
            corrected = newton_polish(BoundaryKind::robin(y + step), pred);
        } catch (const ConvergenceError&) {
            dy *= 0.5;
            if (dy < 1e-12) throw StepFailure("continuation step underflow");
            continue;
        }
        if (std::abs(corrected - pred) > jump_tol) {
            dy *= 0.5;
            if (dy < 1e-12)
                throw BranchJumpError("polished root left the continuation tube");
            continue;
        }

        lam = corrected;
        y += step;
        if (at_target) {
            record(y_stop, lam);
            ++next;
        }
        const double cap = y > 10.0 ? 1.0 : 0.25;
        dy = std::min(cap, dy * 1.4);
    }
}

Complex robin_unit_large_y(int n, double y) {
    // Dirichlet limit seed: lambda ~ |a_n| e^{i pi/3} - i/y.
    const Complex seed =
        zero_abs(airy::ZeroKind::OfAi, n) * std::polar(1.0, kPi / 3.0) - kI / y;
    return newton_polish(BoundaryKind::robin(y), seed);
}

} // namespace

Complex eigenvalue_unit(BoundaryKind bc, int n) {
    if (n < 1 || n > 10) throw DomainError("eigenvalue_unit: n must be in [1, 10]");
    switch (bc.kind) {
        case BcKind::Dirichlet:
            return zero_abs(airy::ZeroKind::OfAi, n) * std::polar(1.0, kPi / 3.0);
        case BcKind::Neumann:
            return zero_abs(airy::ZeroKind::OfAiPrime, n) * std::polar(1.0, kPi / 3.0);
        case BcKind::Robin: break;
    }
    if (bc.y > 1e4) throw DomainError("eigenvalue_unit: Robin y must be <= 1e4");
    if (bc.y > 1e3) return robin_unit_large_y(n, bc.y);

    Complex out{};
    continue_branch(n, {bc.y}, [&](double, Complex lam) { out = lam; });
    return out;
}

Complex eigenvalue(const HalfLineProblem& p, int n) {
    if (!(p.j > 0.0)) throw DomainError("eigenvalue: current magnitude j must be > 0");
    if (p.kappa < 0.0) throw DomainError("eigenvalue: kappa must be >= 0");
    BoundaryKind bc{p.bc, 0.0};
    if (p.bc == BcKind::Robin) bc.y = p.kappa * std::pow(p.j, -1.0 / 3.0);
    return std::pow(p.j, 2.0 / 3.0) * eigenvalue_unit(bc, n);
}

void Trajectory::write_csv(std::ostream& os) const {
    io::CsvWriter csv(os, {"y", "re_lambda", "im_lambda", "re_dlambda", "im_dlambda", "delta"});
    for (std::size_t i = 0; i < y.size(); ++i)
        csv.row({y[i], lambda[i].real(), lambda[i].imag(), dlambda[i].real(),
                 dlambda[i].imag(), delta[i]});
}

Trajectory trajectory(int n, double y_max, int steps) {
    if (steps < 64) throw DomainError("trajectory: steps must be >= 64");
    if (!(y_max > 0.0) || y_max > 1e4) throw DomainError("trajectory: y_max in (0, 1e4]");

    Trajectory t;
    t.bc = BoundaryKind::robin(y_max);
    t.n = n;
    t.y.resize(steps + 1);
    for (int i = 0; i <= steps; ++i) t.y[i] = y_max * i / steps;
    t.lambda.resize(t.y.size());
    t.dlambda.resize(t.y.size());
    t.delta.resize(t.y.size());

    std::size_t idx = 0;
    continue_branch(n, t.y, [&](double yv, Complex lam) {
        t.lambda[idx] = lam;
        const Complex d = branch_rhs(yv, lam);
        t.dlambda[idx] = d;
        t.delta[idx] = 2.0 - yv * d.real() / lam.real();
        ++idx;
    });
    return t;
}

std::vector<Trajectory> trajectory_batch(const std::vector<int>& ns, double y_max,
                                         int steps, Exec exec) {
    std::vector<Trajectory> out(ns.size());
    parallel_for(ns.size(), [&](std::size_t i) { out[i] = trajectory(ns[i], y_max, steps); },
                 exec);
    return out;
}

double delta_bound_check(const Trajectory& traj) {
    double m = 0.0;
    for (std::size_t i = 0; i < traj.y.size(); ++i)
        m = std::max(m, traj.y[i] * traj.dlambda[i].real() / traj.lambda[i].real());
    return m;
}

Complex dlambda_dj(const HalfLineProblem& p, int n) {
    if (!(p.j > 0.0)) throw DomainError("dlambda_dj: j must be > 0");
    const double y = p.bc == BcKind::Robin ? p.kappa * std::pow(p.j, -1.0 / 3.0) : 0.0;
    BoundaryKind bc{p.bc, y};
    const Complex lam = eigenvalue_unit(bc, n);
    const Complex dlam = branch_rhs(y, lam);
    return lam / (3.0 * std::cbrt(p.j)) * (2.0 - y * dlam / lam);
}

} // namespace cairy::halfline
