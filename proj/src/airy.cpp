#include "cairy/airy.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "cairy/dd.hpp"
#include "cairy/errors.hpp"

namespace cairy::airy {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Ai(0) and -Ai'(0) in double-double precision:
//   Ai(0)  = 3^{-2/3}/Gamma(2/3),  Ai'(0) = -3^{-1/3}/Gamma(1/3).
const dd::Real kAi0 = {0.3550280538878172, 2.05233632436212e-17};
const dd::Real kAip0 = {0.2588194037928068, -2.522243111610832e-17};

const Complex kI(0.0, 1.0);
const Complex kRotP = std::polar(1.0, 2.0 * kPi / 3.0);  // e^{+i 2pi/3}
const Complex kRotM = std::polar(1.0, -2.0 * kPi / 3.0); // e^{-i 2pi/3}

struct SeriesResult {
    Complex ai, aip;
    double max_mag; // max accumulated |term| magnitude entering Ai
};

// Maclaurin series in double-double arithmetic. The two solutions
//   f = sum c_k z^{3k},  g = sum d_k z^{3k+1}
// satisfy c_k = c_{k-1}/((3k)(3k-1)), d_k = d_{k-1}/((3k)(3k+1)); Ai combines
// them with dominant cancellation on rays where Ai is recessive, hence the
// extended working precision.
SeriesResult series_eval(Complex z) {
    const dd::Complex zc = dd::Complex::from(z);
    const dd::Complex z3 = dd::mul(dd::mul(zc, zc), zc);

    dd::Complex f = {{1.0, 0.0}, {0.0, 0.0}};
    dd::Complex g = zc;
    dd::Complex fp = {{0.0, 0.0}, {0.0, 0.0}};
    dd::Complex gp = {{1.0, 0.0}, {0.0, 0.0}};

    dd::Complex tf = f, tg = g, tgp = gp;
    // f' term enters at k=1 as z^2/2.
    dd::Complex tfp = dd::div(dd::mul(zc, zc), 2.0);
    fp = tfp;

    double magf = 1.0, magg = std::abs(z), magfp = tfp.abs1(), maggp = 1.0;

    const double tiny = 1e-40;
    for (int k = 1; k <= 200; ++k) {
        const double k3 = 3.0 * k;
        tf = dd::div(dd::mul(tf, z3), k3 * (k3 - 1.0));
        tg = dd::div(dd::mul(tg, z3), k3 * (k3 + 1.0));
        tgp = dd::div(dd::mul(tgp, z3), k3 * (k3 - 2.0));
        if (k >= 2) {
            // T^{f'}_k / T^{f'}_{k-1} = (k/(k-1)) z^3 / ((3k)(3k-1))
            tfp = dd::div(dd::mul(dd::mul(tfp, z3), static_cast<double>(k)),
                          k3 * (k3 - 1.0) * (k - 1.0));
        }
        f = dd::add(f, tf);
        g = dd::add(g, tg);
        gp = dd::add(gp, tgp);
        if (k >= 2) fp = dd::add(fp, tfp);

        magf = std::max(magf, tf.abs1());
        magg = std::max(magg, tg.abs1());
        magfp = std::max(magfp, tfp.abs1());
        maggp = std::max(maggp, tgp.abs1());

        const double scale = f.abs1() + g.abs1() + 1.0;
        if (tf.abs1() < tiny * scale && tg.abs1() < tiny * scale &&
            tfp.abs1() < tiny * scale && tgp.abs1() < tiny * scale)
            break;
    }

    SeriesResult r;
    const dd::Complex ai = {dd::sub(dd::mul(f.re, kAi0), dd::mul(g.re, kAip0)),
                            dd::sub(dd::mul(f.im, kAi0), dd::mul(g.im, kAip0))};
    const dd::Complex aip = {dd::sub(dd::mul(fp.re, kAi0), dd::mul(gp.re, kAip0)),
                             dd::sub(dd::mul(fp.im, kAi0), dd::mul(gp.im, kAip0))};
    r.ai = ai.value();
    r.aip = aip.value();
    r.max_mag = 0.36 * std::max(magf, magfp) + 0.26 * std::max(magg, maggp);
    return r;
}

// Coefficients u_k, v_k of the asymptotic expansions,
//   u_k = u_{k-1} (6k-5)(6k-3)(6k-1) / (216 k (2k-1)),  v_k = u_k (6k+1)/(1-6k).
struct AsymCoeffs {
    std::array<double, asymptotic_max_terms + 2> u{}, v{};
    AsymCoeffs() {
        u[0] = v[0] = 1.0;
        for (int k = 1; k < static_cast<int>(u.size()); ++k) {
            const double a = 6.0 * k;
            u[k] = u[k - 1] * (a - 5.0) * (a - 3.0) * (a - 1.0) / (216.0 * k * (2.0 * k - 1.0));
            v[k] = u[k] * (a + 1.0) / (1.0 - a);
        }
    }
};
const AsymCoeffs kAsym;

struct AsymResult {
    Complex ai, aip;
    double rel_err;
};

// Asymptotic expansion in the principal sector. zeta = (2/3) z^{3/2} with the
// principal branch; the term-ratio stopping rule truncates at the first
// non-decreasing term.
AsymResult asym_eval(Complex z) {
    const Complex sz = std::sqrt(z);
    const Complex zeta = (2.0 / 3.0) * z * sz;
    if (std::abs(zeta.real()) > 690.0)
        throw OverflowError("airy asymptotic exponential out of double range");

    const Complex p = 1.0 / zeta;
    Complex su(1.0, 0.0), sv(1.0, 0.0);
    Complex powk(1.0, 0.0);
    double sgn = -1.0;
    double last_mag = 1.0, trunc = 0.0;
    for (int k = 1; k <= asymptotic_max_terms; ++k) {
        powk *= p;
        const Complex tu = sgn * kAsym.u[k] * powk;
        const double mag = std::abs(tu);
        if (mag >= last_mag || mag < 1e-18) {
            trunc = mag;
            break;
        }
        su += tu;
        sv += sgn * kAsym.v[k] * powk;
        last_mag = mag;
        sgn = -sgn;
        trunc = kAsym.u[k + 1] * std::abs(powk * p);
    }

    const Complex z14 = std::sqrt(sz); // z^{1/4}, principal
    const Complex ez = std::exp(-zeta);
    const double c = 0.28209479177387814; // 1/(2 sqrt(pi))
    AsymResult r;
    r.ai = c / z14 * ez * su;
    r.aip = -c * z14 * ez * sv;
    r.rel_err = trunc / std::max(std::abs(su), 0.5) + 1e-15;
    return r;
}

bool in_asym_sector(Complex z) {
    return std::abs(std::arg(z)) <= 2.0 * kPi / 3.0 + 1e-12;
}

} // namespace

AiryPair eval_pair(Complex z) {
    const double az = std::abs(z);
    if (!(az <= max_abs))
        throw DomainError("airy eval outside supported disk |z| <= 40");

    if (az <= series_radius) {
        const SeriesResult s = series_eval(z);
        const double denom = std::abs(s.ai) + std::abs(s.aip) + 1e-300;
        double err = 1.5e-32 * s.max_mag / denom + 2e-16;
        return {s.ai, s.aip, Method::Series, err};
    }

    if (in_asym_sector(z)) {
        const AsymResult a = asym_eval(z);
        return {a.ai, a.aip, Method::Asymptotic, a.rel_err};
    }

    // Rotation identity: both rotated arguments fall back into the sector.
    const Complex zp = kRotP * z;
    const Complex zm = kRotM * z;
    const AsymResult ap = asym_eval(zp);
    const AsymResult am = asym_eval(zm);
    AiryPair r;
    r.ai = -(kRotM * am.ai + kRotP * ap.ai);
    r.ai_prime = -(kRotP * am.aip + kRotM * ap.aip);
    r.method = Method::ConnectionRotated;
    const double big = std::max({std::abs(am.ai), std::abs(ap.ai), std::abs(am.aip), std::abs(ap.aip)});
    const double denom = std::max(std::abs(r.ai), std::abs(r.ai_prime)) + 1e-300;
    r.est_rel_error = (ap.rel_err + am.rel_err) * big / denom + 2e-16;
    return r;
}

namespace {

double eval_real_ai(double x, ZeroKind kind) {
    const AiryPair p = eval_pair(Complex(x, 0.0));
    return kind == ZeroKind::OfAi ? p.ai.real() : p.ai_prime.real();
}

} // namespace

RealZero real_zero(ZeroKind kind, int n) {
    if (n < 1 || n > 20)
        throw DomainError("real_zero index must satisfy 1 <= n <= 20");

    // A&S-style estimates: a_n ~ -T(3pi(4n-1)/8), a'_n ~ -U(3pi(4n-3)/8).
    const double t = kind == ZeroKind::OfAi ? 3.0 * kPi * (4.0 * n - 1.0) / 8.0
                                            : 3.0 * kPi * (4.0 * n - 3.0) / 8.0;
    const double t23 = std::pow(t, 2.0 / 3.0);
    const double est = kind == ZeroKind::OfAi ? -t23 * (1.0 + 5.0 / (48.0 * t * t))
                                              : -t23 * (1.0 - 7.0 / (48.0 * t * t));
    const double gap = kPi / std::sqrt(-est);
    const double half = std::min(0.45 * gap, 0.5);

    double lo = est - half, hi = est + half;
    double flo = eval_real_ai(lo, kind), fhi = eval_real_ai(hi, kind);
    if (flo * fhi > 0.0)
        throw ConvergenceError("real_zero bracketing failed (series evaluation bug?)");
    for (int it = 0; it < 80; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = eval_real_ai(mid, kind);
        if (flo * fm <= 0.0) {
            hi = mid;
            fhi = fm;
        } else {
            lo = mid;
            flo = fm;
        }
    }
    double x = 0.5 * (lo + hi);
    // Newton polish; for Ai' use Ai'' = z Ai.
    for (int it = 0; it < 4; ++it) {
        const AiryPair p = eval_pair(Complex(x, 0.0));
        const double fx = kind == ZeroKind::OfAi ? p.ai.real() : p.ai_prime.real();
        const double dfx = kind == ZeroKind::OfAi ? p.ai_prime.real() : x * p.ai.real();
        x -= fx / dfx;
    }
    if (std::abs(eval_real_ai(x, kind)) > 1e-12)
        throw ConvergenceError("real_zero residual above 1e-12 after polish");
    return {kind, n, x};
}

double wronskian_defect(Complex z) {
    if (std::abs(z) > 20.0 * (1.0 + 1e-12))
        throw DomainError("wronskian_defect supported for |z| <= 20");
    const AiryPair pp = eval_pair(kRotP * z);
    const AiryPair pm = eval_pair(kRotM * z);
    const Complex w =
        kRotM * pm.ai_prime * pp.ai - kRotP * pp.ai_prime * pm.ai - kI / (2.0 * kPi);
    return std::abs(w);
}

double connection_defect(Complex z) {
    if (std::abs(z) > 20.0 * (1.0 + 1e-12))
        throw DomainError("connection_defect supported for |z| <= 20");
    const AiryPair p0 = eval_pair(z);
    const AiryPair pp = eval_pair(kRotP * z);
    const AiryPair pm = eval_pair(kRotM * z);

    const Complex t1 = kRotM * pm.ai, t2 = kRotP * pp.ai;
    const double s1 = std::abs(p0.ai + t1 + t2) /
                      (1.0 + std::max({std::abs(p0.ai), std::abs(t1), std::abs(t2)}));

    const Complex d1 = kRotP * pm.ai_prime, d2 = kRotM * pp.ai_prime;
    const double s2 = std::abs(p0.ai_prime + d1 + d2) /
                      (1.0 + std::max({std::abs(p0.ai_prime), std::abs(d1), std::abs(d2)}));
    return std::max(s1, s2);
}

std::vector<double> wronskian_defect_grid(const std::vector<Complex>& pts, Exec exec) {
    std::vector<double> out(pts.size());
    parallel_for(pts.size(), [&](std::size_t i) { out[i] = wronskian_defect(pts[i]); }, exec);
    return out;
}

std::vector<double> connection_defect_grid(const std::vector<Complex>& pts, Exec exec) {
    std::vector<double> out(pts.size());
    parallel_for(pts.size(), [&](std::size_t i) { out[i] = connection_defect(pts[i]); }, exec);
    return out;
}

namespace detail {

AiryPair series_pair(Complex z) {
    const SeriesResult s = series_eval(z);
    const double denom = std::abs(s.ai) + std::abs(s.aip) + 1e-300;
    return {s.ai, s.aip, Method::Series, 1.5e-32 * s.max_mag / denom + 2e-16};
}

AiryPair asymptotic_pair(Complex z) {
    if (!in_asym_sector(z)) throw DomainError("asymptotic_pair outside |arg z| <= 2pi/3");
    const AsymResult a = asym_eval(z);
    return {a.ai, a.aip, Method::Asymptotic, a.rel_err};
}

} // namespace detail

} // namespace cairy::airy
