#include "cairy/transmission.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "cairy/airy.hpp"
#include "cairy/errors.hpp"
#include "cairy/io.hpp"

namespace cairy::transmission {

namespace {

constexpr double kPi = 3.14159265358979323846;
const Complex kI(0.0, 1.0);
const Complex kRotP = std::polar(1.0, 2.0 * kPi / 3.0);
const Complex kRotM = std::polar(1.0, -2.0 * kPi / 3.0);

Complex polish(double y, Complex lambda0, double tol = 1e-12) {
    Complex lam = lambda0;
    for (int it = 0; it < 30; ++it) {
        const Complex f = char_T(y, lam);
        if (std::abs(f) <= tol) return lam;
        const Complex df = char_T_dlambda(lam);
        if (std::abs(df) < 1e-8)
            throw SimplicityError("char_T derivative below 1e-8 during polish");
        lam -= f / df;
    }
    if (std::abs(char_T(y, lam)) <= tol) return lam;
    throw ConvergenceError("Newton stalled on transmission characteristic");
}

} // namespace

Complex char_T(double y, Complex lambda) {
    const airy::AiryPair pp = airy::eval_pair(kRotP * lambda);
    const airy::AiryPair pm = airy::eval_pair(kRotM * lambda);
    return 2.0 * kPi * pp.ai_prime * pm.ai_prime + y;
}

Complex char_T_dlambda(Complex lambda) {
    const airy::AiryPair pp = airy::eval_pair(kRotP * lambda);
    const airy::AiryPair pm = airy::eval_pair(kRotM * lambda);
    return 2.0 * kPi * lambda *
           (kRotP * kRotP * pp.ai * pm.ai_prime + kRotM * kRotM * pm.ai * pp.ai_prime);
}

double simplicity_check(double /*y*/, Complex lambda) {
    return std::abs(char_T_dlambda(lambda));
}

void TransmissionBranch::write_csv(std::ostream& os) const {
    io::CsvWriter csv(os, {"y", "re_lambda", "im_lambda", "re_dlambda", "im_dlambda", "delta"});
    for (std::size_t i = 0; i < y.size(); ++i)
        csv.row({y[i], lambda[i].real(), lambda[i].imag(), dlambda[i].real(),
                 dlambda[i].imag(), delta[i]});
}

TransmissionBranch pair_unit(int n, double y_max, int steps) {
    if (n < 1 || n > 5) throw DomainError("pair_unit: n must be in [1, 5]");
    if (!(y_max > 0.0) || y_max > 1e3) throw DomainError("pair_unit: y_max in (0, 1e3]");
    if (steps < 8) throw DomainError("pair_unit: steps must be >= 8");

    TransmissionBranch t;
    t.n = n;
    t.y.resize(steps + 1);
    for (int i = 0; i <= steps; ++i) t.y[i] = y_max * i / steps;
    t.lambda.resize(t.y.size());
    t.dlambda.resize(t.y.size());
    t.delta.resize(t.y.size());

    Complex lam =
        std::abs(airy::real_zero(airy::ZeroKind::OfAiPrime, n).value) * std::polar(1.0, kPi / 3.0);
    double y = 0.0;
    double dy = 0.05;
    const double jump_tol = 0.25;

    auto rhs = [](Complex l) { return -1.0 / char_T_dlambda(l); };

    for (std::size_t idx = 0; idx < t.y.size(); ++idx) {
        const double y_stop = t.y[idx];
        while (y < y_stop - 1e-14) {
            double step = std::min(dy, y_stop - y);
            const Complex k1 = rhs(lam);
            const Complex k2 = rhs(lam + 0.5 * step * k1);
            const Complex k3 = rhs(lam + 0.5 * step * k2);
            const Complex k4 = rhs(lam + step * k3);
            const Complex pred = lam + step / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            Complex corrected;
            try {
                corrected = polish(y + step, pred);
            } catch (const ConvergenceError&) {
                dy *= 0.5;
                if (dy < 1e-12) throw StepFailure("transmission continuation step underflow");
                continue;
            }
            if (std::abs(corrected - pred) > jump_tol) {
                dy *= 0.5;
                if (dy < 1e-12)
                    throw BranchJumpError("transmission root left the continuation tube");
                continue;
            }
            lam = corrected;
            y += step;
            dy = std::min(y > 10.0 ? 2.0 : 0.5, dy * 1.4);
        }
        lam = polish(y_stop, lam);
        const double dmag = simplicity_check(y_stop, lam);
        if (dmag < 1e-8) throw SimplicityError("polished transmission root nearly defective");
        t.lambda[idx] = lam;
        const Complex d = rhs(lam);
        t.dlambda[idx] = d;
        t.delta[idx] = 2.0 - y_stop * d.real() / lam.real();
    }
    return t;
}

std::vector<TransmissionBranch> pair_unit_batch(const std::vector<int>& ns, double y_max,
                                                int steps, Exec exec) {
    std::vector<TransmissionBranch> out(ns.size());
    parallel_for(ns.size(), [&](std::size_t i) { out[i] = pair_unit(ns[i], y_max, steps); },
                 exec);
    return out;
}

namespace {

// Sampled trapezoid of F'/F over the four rectangle sides; returns the raw
// winding number estimate and the closest Newton-estimated root distance to
// the rectangle edges.
struct ContourPass {
    Complex integral;
    double min_root_edge_dist;
};

ContourPass contour_pass(double y, const Rect& r, int per_side, Exec exec) {
    const int m = 4 * per_side;
    std::vector<Complex> ratio(m + 1);
    std::vector<double> edge_dist(m + 1);

    auto point = [&](int i) -> Complex {
        const int side = i / per_side;
        const double t = static_cast<double>(i % per_side) / per_side;
        switch (side) {
            case 0: return {r.re_min + t * (r.re_max - r.re_min), r.im_min};
            case 1: return {r.re_max, r.im_min + t * (r.im_max - r.im_min)};
            case 2: return {r.re_max - t * (r.re_max - r.re_min), r.im_max};
            default: return {r.re_min, r.im_max - t * (r.im_max - r.im_min)};
        }
    };

    parallel_for(static_cast<std::size_t>(m) + 1, [&](std::size_t i) {
        const Complex z = point(i == static_cast<std::size_t>(m) ? 0 : static_cast<int>(i));
        const Complex f = char_T(y, z);
        ratio[i] = char_T_dlambda(z) / f;
        // Newton estimate of the nearest root; meaningful only close by
        const Complex step = 1.0 / ratio[i];
        edge_dist[i] = 1e9;
        if (std::abs(step) < 0.2) {
            const Complex root = z - step;
            edge_dist[i] = std::min(
                std::min(std::abs(root.real() - r.re_min), std::abs(root.real() - r.re_max)),
                std::min(std::abs(root.imag() - r.im_min), std::abs(root.imag() - r.im_max)));
        }
    }, exec);

    Complex acc(0.0, 0.0);
    double mind = edge_dist[0];
    for (int i = 0; i < m; ++i) {
        const Complex za = point(i), zb = point(i + 1 == m ? 0 : i + 1);
        acc += 0.5 * (ratio[i] + ratio[i + 1]) * (zb - za);
        mind = std::min(mind, edge_dist[i]);
    }
    return {acc / (2.0 * kPi * kI), mind};
}

} // namespace

ZeroCountReport count_zeros(double y, Rect rect, Exec exec) {
    Rect r = rect;
    for (int attempt = 0;; ++attempt) {
        ContourPass probe = contour_pass(y, r, 256, exec);
        if (probe.min_root_edge_dist >= 1e-3) break;
        if (attempt >= 3)
            throw ContourOnZeroError("contour stayed near a root after 3 nudges");
        r.re_min -= 1e-2;
        r.re_max += 1e-2;
        r.im_min -= 1e-2;
        r.im_max += 1e-2;
    }

    int per_side = 512;
    ContourPass a = contour_pass(y, r, per_side, exec);
    for (; per_side <= 4096; per_side *= 2) {
        ContourPass b = contour_pass(y, r, per_side * 2, exec);
        if (std::abs(b.integral - a.integral) < 5e-3) {
            a = b;
            break;
        }
        a = b;
    }

    ZeroCountReport rep;
    rep.rect = r;
    rep.y = y;
    const double w = a.integral.real();
    rep.count = static_cast<int>(std::lround(w));
    rep.winding_residual = std::abs(w - std::lround(w)) + std::abs(a.integral.imag());
    return rep;
}

double eigenfunction_defect(double y, Complex lambda) {
    const Complex mu = std::conj(lambda);
    const airy::AiryPair pp = airy::eval_pair(kRotP * mu);
    const airy::AiryPair pm = airy::eval_pair(kRotM * mu);
    // u_-(x) = C_- Ai(-e^{i pi/6}(x - i mu)), u_+(x) = C_+ Ai(e^{-i pi/6}(x - i mu));
    // at x = 0 the arguments are e^{i2pi/3} mu and e^{-i2pi/3} mu.
    const Complex dm = -std::polar(1.0, kPi / 6.0) * pp.ai_prime;  // u_-'(0)/C_-
    const Complex dp = std::polar(1.0, -kPi / 6.0) * pm.ai_prime;  // u_+'(0)/C_+
    if (std::abs(dm) < 1e-13 && std::abs(dp) < 1e-13)
        throw DegenerateScaleError("both boundary derivatives vanish");
    const Complex cm = 1.0 / dm, cp = 1.0 / dp; // common derivative D = 1
    const Complex um0 = cm * pp.ai;
    const Complex up0 = cp * pm.ai;
    const double num = std::abs(1.0 - y * (up0 - um0));
    const double den = 1.0 + y * (std::abs(up0) + std::abs(um0));
    return num / den;
}

Complex eigenvalue(double j, double kappa, int n) {
    if (j == 0.0) throw DomainError("transmission eigenvalue: j must be nonzero");
    if (kappa < 0.0) throw DomainError("transmission eigenvalue: kappa must be >= 0");
    const double aj = std::abs(j);
    const double y = kappa * std::pow(aj, -1.0 / 3.0);
    const int steps = std::max(64, static_cast<int>(std::ceil(y * 8)));
    TransmissionBranch b = pair_unit(n, std::max(y, 1e-6), steps);
    Complex lam = y <= 1e-6
                      ? std::abs(airy::real_zero(airy::ZeroKind::OfAiPrime, n).value) *
                            std::polar(1.0, kPi / 3.0)
                      : b.lambda.back();
    Complex v = std::pow(aj, 2.0 / 3.0) * lam;
    return j > 0 ? v : std::conj(v);
}

} // namespace cairy::transmission
