#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "cairy/airy.hpp"
#include "cairy/errors.hpp"
#include "cairy/transmission.hpp"

using namespace cairy::transmission;
using cairy::airy::ZeroKind;

namespace {

constexpr double kPi = 3.14159265358979323846;

double zap(int n) { return std::abs(cairy::airy::real_zero(ZeroKind::OfAiPrime, n).value); }

// Independent oracle for count_zeros: dense minimum-modulus scan over the
// rectangle, Newton polish of every local minimum, dedupe, count roots
// strictly inside.
int scan_count(double y, const Rect& r) {
    const int nx = 120, ny = 240;
    auto absF = [&](int i, int k) {
        const Complex z{r.re_min + (r.re_max - r.re_min) * i / (nx - 1.0),
                        r.im_min + (r.im_max - r.im_min) * k / (ny - 1.0)};
        return std::abs(char_T(y, z));
    };
    std::vector<double> vals(static_cast<std::size_t>(nx) * ny);
    for (int i = 0; i < nx; ++i)
        for (int k = 0; k < ny; ++k) vals[i * ny + k] = absF(i, k);

    std::vector<Complex> roots;
    for (int i = 1; i + 1 < nx; ++i)
        for (int k = 1; k + 1 < ny; ++k) {
            const double v = vals[i * ny + k];
            if (v > 2.0) continue;
            bool localmin = true;
            for (int di = -1; di <= 1 && localmin; ++di)
                for (int dk = -1; dk <= 1; ++dk)
                    if ((di || dk) && vals[(i + di) * ny + (k + dk)] < v) {
                        localmin = false;
                        break;
                    }
            if (!localmin) continue;
            Complex lam{r.re_min + (r.re_max - r.re_min) * i / (nx - 1.0),
                        r.im_min + (r.im_max - r.im_min) * k / (ny - 1.0)};
            bool ok = true;
            for (int it = 0; it < 50; ++it) {
                const Complex f = char_T(y, lam);
                if (std::abs(f) < 1e-11) break;
                const Complex df = char_T_dlambda(lam);
                if (std::abs(df) < 1e-12) {
                    ok = false;
                    break;
                }
                lam -= f / df;
            }
            if (!ok || std::abs(char_T(y, lam)) > 1e-10) continue;
            if (!(lam.real() > r.re_min && lam.real() < r.re_max && lam.imag() > r.im_min &&
                  lam.imag() < r.im_max))
                continue;
            bool dup = false;
            for (const Complex& q : roots)
                if (std::abs(q - lam) < 1e-6) dup = true;
            if (!dup) roots.push_back(lam);
        }
    return static_cast<int>(roots.size());
}

} // namespace

TEST_CASE("char_T vanishes at the Neumann pair and is real on the real axis") {
    const Complex base = zap(1) * std::polar(1.0, kPi / 3.0);
    CHECK(std::abs(char_T(0.0, base)) <= 1e-11);
    CHECK(std::abs(char_T(0.0, std::conj(base))) <= 1e-11);

    for (int i = 0; i < 50; ++i) {
        const double t = -6.0 + 12.0 * i / 49.0;
        const Complex v = char_T(0.7, {t, 0.0}) - 0.7;
        CHECK(std::abs(v.imag()) <= 1e-13 * (1.0 + std::abs(v.real())));
    }
}

TEST_CASE("conjugate-pair symmetry of the characteristic") {
    for (int i = 0; i < 30; ++i) {
        const Complex lam{0.3 + 0.1 * i, 0.8 + 0.07 * i};
        const Complex a = char_T(1.3, std::conj(lam));
        const Complex b = std::conj(char_T(1.3, lam));
        CHECK(std::abs(a - b) <= 1e-14 * (1.0 + std::abs(b)));
    }
}

TEST_CASE("pair continuation: initial data, frozen value, asymptotic band") {
    const TransmissionBranch t = pair_unit(1, 100.0, 400);
    CHECK(t.lambda.front().real() == doctest::Approx(zap(1) / 2.0).epsilon(1e-12));
    CHECK(t.delta.front() == doctest::Approx(2.0).epsilon(1e-12));

    for (std::size_t i = 0; i < t.y.size(); ++i) {
        CHECK(t.lambda[i].imag() > 0.0);
        CHECK(std::abs(char_T(t.y[i], t.lambda[i])) <= 1e-10);
        // the conjugate is also a root
        CHECK(std::abs(char_T(t.y[i], std::conj(t.lambda[i]))) <= 1e-10);
        CHECK(simplicity_check(t.y[i], t.lambda[i]) > 1e-8);
    }

    // Re lambda_1^T(100) tracks ((3/4) log 100)^{2/3} loosely
    const double ref = std::pow(0.75 * std::log(100.0), 2.0 / 3.0);
    CHECK(t.lambda.back().real() / ref >= 0.7);
    CHECK(t.lambda.back().real() / ref <= 1.3);

    // frozen from an extended-precision solve at y = 1
    TransmissionBranch t1 = pair_unit(1, 1.0, 64);
    CHECK(std::abs(t1.lambda.back() - Complex(1.0028939540697868, 1.036283310762591)) <= 1e-12);

    struct Ref {
        double y, re, im;
    };
    const Ref refs[] = {
        {2.0, 1.22091141931546031, 1.04833347517928077},
        {5.0, 1.52676124464646914, 1.03465252764036702},
        {10.0, 1.75508462940364752, 1.01143300396200098},
        {50.0, 2.25651136043595095, 0.947172358384628664},
    };
    for (const Ref& r : refs) {
        const TransmissionBranch b = pair_unit(1, r.y, 128);
        CHECK(std::abs(b.lambda.back() - Complex(r.re, r.im)) <= 1e-12);
    }
}

TEST_CASE("figure bound: y Re lambda'/Re lambda stays below 0.30") {
    const TransmissionBranch t = pair_unit(1, 100.0, 500);
    double peak = 0.0;
    for (std::size_t i = 0; i < t.y.size(); ++i)
        peak = std::max(peak, t.y[i] * t.dlambda[i].real() / t.lambda[i].real());
    CHECK(peak < 0.30);
    for (double d : t.delta) CHECK(d > 1.70);
}

TEST_CASE("argument principle counts match the scan oracle at y = 0") {
    const Rect r{0.0, 2.0, -5.0, 5.0};
    const auto rep = count_zeros(0.0, r);
    CHECK(rep.count == 4);
    CHECK(rep.winding_residual <= 0.05);
    CHECK(scan_count(0.0, r) == 4);

    const Rect small{0.0, 0.4, -5.0, 5.0};
    const auto rep2 = count_zeros(0.0, small);
    CHECK(rep2.count == 0);
    CHECK(rep2.winding_residual <= 0.05);
    CHECK(scan_count(0.0, small) == 0);
}

TEST_CASE("counts match continued branches for positive y") {
    for (double y : {0.5, 1.0, 5.0}) {
        const Rect r{0.0, 2.0, -5.0, 5.0};
        const auto rep = count_zeros(y, r);
        CHECK(rep.winding_residual <= 0.05);

        int expected = 0;
        for (int n = 1; n <= 4; ++n) {
            const TransmissionBranch b = pair_unit(n, y, 64);
            const Complex lam = b.lambda.back();
            if (lam.real() > r.re_min && lam.real() < r.re_max && lam.imag() < r.im_max)
                expected += 2; // the branch and its conjugate
        }
        CHECK(rep.count == expected);
        CHECK(rep.count == scan_count(y, r));
    }
}

TEST_CASE("a contour starting on a root is nudged off it") {
    // right edge exactly through the first pair's real part at y = 0; the
    // auto-expansion by 1e-2 pulls the pair inside
    const double re1 = zap(1) / 2.0;
    const auto rep = count_zeros(0.0, {0.0, re1, -5.0, 5.0});
    CHECK(rep.rect.re_max > re1);
    CHECK(rep.count == 2);
    CHECK(rep.winding_residual <= 0.05);
}

TEST_CASE("zero counts stay bounded along y") {
    const Rect r{0.0, 2.0, -5.0, 5.0};
    int prev = -1;
    for (double y : {0.0, 0.5, 1.0, 2.0, 5.0, 8.0}) {
        const int c = count_zeros(y, r).count;
        CHECK(c >= 0);
        CHECK(c <= 8);
        if (prev >= 0) CHECK(std::abs(c - prev) <= 2);
        prev = c;
    }
}

TEST_CASE("derivative magnitude calibration on a colliding-root surrogate") {
    // |d/dlambda| of (lambda - a)(lambda - b) at the midpoint collapses as the
    // roots collide, while staying O(|a-b|) at the roots themselves.
    auto surrogate_deriv = [](Complex lam, Complex a, Complex b) {
        return std::abs(2.0 * lam - a - b);
    };
    const Complex a{1.0, 1.0};
    for (double eps : {1e-2, 1e-5, 1e-8}) {
        const Complex b = a + Complex(eps, 0.0);
        CHECK(surrogate_deriv(0.5 * (a + b), a, b) <= eps);
        CHECK(surrogate_deriv(a, a, b) == doctest::Approx(eps));
    }
}

TEST_CASE("eigenfunction transmission defect at and off roots") {
    const TransmissionBranch t = pair_unit(1, 1.0, 64);
    const Complex root = t.lambda.back();
    CHECK(eigenfunction_defect(1.0, root) <= 1e-8);
    CHECK(eigenfunction_defect(1.0, root + 0.1) >= 1e-3);

    // 20 sampled roots along the first two pairs
    for (int n = 1; n <= 2; ++n) {
        const TransmissionBranch b = pair_unit(n, 5.0, 64);
        for (int k = 1; k <= 10; ++k) {
            const std::size_t i = k * (b.y.size() - 1) / 10;
            CHECK(eigenfunction_defect(b.y[i], b.lambda[i]) <= 1e-8);
        }
    }

    // y -> 0: the normalization keeps the defect finite (pieces decouple)
    const double d0 = eigenfunction_defect(1e-9, zap(1) * std::polar(1.0, kPi / 3.0));
    CHECK(std::isfinite(d0));
}

TEST_CASE("scaling and conjugation in j") {
    const Complex unit1 = pair_unit(1, 1.0, 64).lambda.back();
    const Complex v = eigenvalue(8.0, 2.0, 1); // y = 2 * 8^{-1/3} = 1
    CHECK(std::abs(v - 4.0 * unit1) <= 1e-10);
    const Complex w = eigenvalue(-8.0, 2.0, 1);
    CHECK(std::abs(w - std::conj(v)) <= 1e-12);
    CHECK_THROWS_AS(eigenvalue(0.0, 1.0, 1), cairy::DomainError);
}
