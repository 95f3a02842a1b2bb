// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Tolerances are pinned in code next to each check.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "cairy/airy.hpp"
#include "cairy/bounds.hpp"
#include "cairy/galerkin.hpp"
#include "cairy/halfline.hpp"
#include "cairy/margin.hpp"
#include "cairy/transmission.hpp"

namespace {

using Complex = std::complex<double>;
using Clock = std::chrono::steady_clock;
constexpr double kPi = 3.14159265358979323846;

int g_failures = 0;

struct Criterion {
    std::string label;
    bool ok = true;
    std::string detail;

    void require(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            if (!detail.empty()) detail += "; ";
            detail += what;
        }
    }
};

void run(const std::string& label, const std::function<void(Criterion&)>& body) {
    Criterion c{label};
    const auto t0 = Clock::now();
    try {
        body(c);
    } catch (const std::exception& e) {
        c.ok = false;
        c.detail = std::string("exception: ") + e.what();
    }
    const double sec = std::chrono::duration<double>(Clock::now() - t0).count();
    if (c.ok) {
        std::printf("PASS  %-38s (%.2f s)\n", label.c_str(), sec);
    } else {
        std::printf("FAIL  %-38s (%.2f s): %s\n", label.c_str(), sec, c.detail.c_str());
        ++g_failures;
    }
    std::fflush(stdout);
}

double zap(int n) {
    return std::abs(cairy::airy::real_zero(cairy::airy::ZeroKind::OfAiPrime, n).value);
}
double za(int n) {
    return std::abs(cairy::airy::real_zero(cairy::airy::ZeroKind::OfAi, n).value);
}

std::string fmt_num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

} // namespace

int main() {
    using namespace cairy;

    run("1. Neumann leftmost 0.5094", [](Criterion& c) {
        const auto t0 = Clock::now();
        const Complex lam = halfline::eigenvalue_unit(halfline::BoundaryKind::neumann(), 1);
        const double sec = std::chrono::duration<double>(Clock::now() - t0).count();
        c.require(std::abs(lam.real() - 0.5094) <= 1e-3,
                  "Re = " + fmt_num(lam.real()) + " not within 1e-3 of 0.5094");
        c.require(sec < 1.0, "runtime " + fmt_num(sec) + " s >= 1 s");
    });

    run("2. Dirichlet limit at y = 1e4", [](Criterion& c) {
        const auto t0 = Clock::now();
        const auto traj = halfline::trajectory(1, 1e4, 10000);
        const double sec = std::chrono::duration<double>(Clock::now() - t0).count();
        const double re = traj.lambda.back().real();
        c.require(std::abs(re - 1.1691) <= 2e-3,
                  "Re = " + fmt_num(re) + " not within 2e-3 of 1.1691");
        c.require(sec < 5.0, "full continuation took " + fmt_num(sec) + " s >= 5 s");
        // the large-y seeded solve lands on the same root
        const Complex seeded = halfline::eigenvalue_unit(halfline::BoundaryKind::robin(1e4), 1);
        c.require(std::abs(seeded - traj.lambda.back()) <= 1e-9,
                  "seeded root disagrees with continuation");
    });

    run("3. Robin monotonicity and slope bound", [](Criterion& c) {
        for (int n = 1; n <= 5; ++n) {
            const auto t = halfline::trajectory(n, 50.0, 499);
            for (std::size_t i = 0; i + 1 < t.y.size(); ++i)
                if (!(t.lambda[i + 1].real() > t.lambda[i].real())) {
                    c.require(false, "Re not strictly increasing at n = " + std::to_string(n));
                    break;
                }
            if (n == 1) {
                const double peak = halfline::delta_bound_check(t);
                c.require(peak <= 0.344,
                          "max y u'/u = " + fmt_num(peak) + " above 0.344");
            }
        }
    });

    run("4. oracle triangle (< 60 s)", [](Criterion& c) {
        const auto t0 = Clock::now();
        for (double j : {1.0, 2.0, 5.0})
            for (double kappa : {0.1, 1.0, 10.0}) {
                halfline::HalfLineProblem p{j, kappa, halfline::BcKind::Robin};
                const Complex cont = halfline::eigenvalue(p, 1);

                // direct Newton from ten perturbed starts
                const double y = kappa * std::pow(j, -1.0 / 3.0);
                const Complex unit = cont / std::pow(j, 2.0 / 3.0);
                for (int s = 0; s < 10; ++s) {
                    const Complex seed = unit + std::polar(0.02, 2.0 * kPi * s / 10.0);
                    const Complex direct =
                        std::pow(j, 2.0 / 3.0) *
                        halfline::newton_polish(halfline::BoundaryKind::robin(y), seed);
                    c.require(std::abs(direct - cont) <= 1e-6,
                              "direct Newton disagrees at j=" + fmt_num(j) +
                                  " kappa=" + fmt_num(kappa));
                }

                galerkin::GalerkinConfig cfg{10.0, 200, j, galerkin::LeftBc::Robin, kappa};
                const Complex gal = galerkin::leftmost(cfg);
                c.require(std::abs(gal - cont) <= 1e-6,
                          "Galerkin |diff| = " + fmt_num(std::abs(gal - cont)) + " at j=" +
                              fmt_num(j) + " kappa=" + fmt_num(kappa));
            }
        const double sec = std::chrono::duration<double>(Clock::now() - t0).count();
        c.require(sec < 60.0, "triangle took " + fmt_num(sec) + " s >= 60 s");
    });

    run("5. transmission pair diagnostics", [](Criterion& c) {
        const auto t = transmission::pair_unit(1, 100.0, 500);
        const Complex expect0 = zap(1) * std::polar(1.0, kPi / 3.0);
        c.require(std::abs(t.lambda.front() - expect0) <= 1e-10,
                  "lambda_1^T(0) off the Neumann pair value");
        double peak = 0.0;
        for (std::size_t i = 0; i < t.y.size(); ++i) {
            peak = std::max(peak, t.y[i] * t.dlambda[i].real() / t.lambda[i].real());
            c.require(transmission::simplicity_check(t.y[i], t.lambda[i]) > 1e-8,
                      "simplicity violated");
        }
        c.require(peak < 0.30, "max y Re lambda'/Re lambda = " + fmt_num(peak) + " >= 0.30");
        for (int k = 1; k <= 20; ++k) {
            const std::size_t i = k * (t.y.size() - 1) / 20;
            const double d = transmission::eigenfunction_defect(t.y[i], t.lambda[i]);
            c.require(d <= 1e-8, "eigenfunction defect " + fmt_num(d) + " at sample " +
                                     std::to_string(k));
        }
    });

    run("6. zero counting vs branch oracle", [](Criterion& c) {
        struct Case {
            double y, re_max, im_max;
        };
        const std::vector<Case> cases = {
            {0.0, 0.4, 5.0}, {0.0, 1.4, 5.0}, {0.0, 2.2, 5.0}, {0.5, 1.4, 5.0},
            {0.5, 2.2, 5.0}, {1.0, 1.4, 5.0}, {1.0, 2.9, 5.0}, {5.0, 2.2, 5.0},
            {5.0, 2.9, 5.0}, {1.0, 2.2, 3.0},
        };
        for (const auto& cs : cases) {
            const transmission::Rect r{0.0, cs.re_max, -cs.im_max, cs.im_max};
            const auto rep = transmission::count_zeros(cs.y, r);
            c.require(rep.winding_residual <= 0.05,
                      "winding residual " + fmt_num(rep.winding_residual));
            int expected = 0;
            for (int n = 1; n <= 5; ++n) {
                const Complex lam =
                    cs.y == 0.0 ? zap(n) * std::polar(1.0, kPi / 3.0)
                                : transmission::pair_unit(n, cs.y, 96).lambda.back();
                if (lam.real() > r.re_min && lam.real() < r.re_max && lam.imag() < r.im_max)
                    expected += 2;
            }
            c.require(rep.count == expected,
                      "count " + std::to_string(rep.count) + " != oracle " +
                          std::to_string(expected) + " at y=" + fmt_num(cs.y) +
                          " w=" + fmt_num(cs.re_max));
        }
    });

    run("7. Airy substrate on the testable half-disk", [](Criterion& c) {
        std::vector<Complex> pts;
        const int nr = 25, nth = 21;
        for (int i = 0; i < nr; ++i)
            for (int k = 0; k < nth; ++k) {
                const double r = 20.0 * (i + 1) / nr;
                const double th = kPi / 2.0 + (kPi / 2.0) * k / (nth - 1);
                pts.push_back(std::polar(r, th));
                if (k > 0) pts.push_back(std::polar(r, -th));
            }
        c.require(pts.size() >= 1000, "grid has fewer than 1e3 points");
        const auto wd = airy::wronskian_defect_grid(pts, Exec::Parallel);
        const auto cd = airy::connection_defect_grid(pts, Exec::Parallel);
        double wmax = 0.0, cmax = 0.0;
        for (double v : wd) wmax = std::max(wmax, v);
        for (double v : cd) cmax = std::max(cmax, v);
        c.require(wmax <= 1e-10, "max wronskian defect " + fmt_num(wmax));
        c.require(cmax <= 1e-10, "max connection defect " + fmt_num(cmax));

        for (int n = 1; n <= 19; ++n) {
            const double an = za(n), apn = zap(n), apn1 = zap(n + 1);
            c.require(apn < an && an < apn1, "interlacing fails at n = " + std::to_string(n));
        }
    });

    run("8. cubic-exponential integral bounds", [](Criterion& c) {
        const auto rows = bounds::laplace_grid(20, 20, Exec::Parallel);
        c.require(rows.size() == 400, "grid size");
        for (const auto& r : rows)
            c.require(r.integral <= r.bound, "integral above bound at alpha=" +
                                                 fmt_num(r.alpha) + " beta=" + fmt_num(r.beta));
        const double r30 = bounds::laplace_asymptotic_ratio(30.0);
        const double r50 = bounds::laplace_asymptotic_ratio(50.0);
        c.require(std::abs(r30 / r50 - 1.0) <= 0.02,
                  "ratio drift " + fmt_num(std::abs(r30 / r50 - 1.0)));
    });

    run("9. resolvent and semigroup bounds", [](Criterion& c) {
        // numerical-range bound sigma_min(M - z) >= |Re z| on the acceptance
        // matrices
        const std::vector<Complex> zs = {{-0.1, 0.4}, {-1.0, 0.4}, {-10.0, 0.4}};
        galerkin::GalerkinConfig r1{10.0, 200, 1.0, galerkin::LeftBc::Robin, 1.0};
        galerkin::GalerkinConfig r2{10.0, 200, 5.0, galerkin::LeftBc::Robin, 10.0};
        galerkin::GalerkinConfig wl;
        wl.L = 24.0;
        wl.N = 400;
        wl.j = 1.0;
        wl.left_bc = galerkin::LeftBc::Dirichlet;

        const auto m1 = galerkin::assemble(r1);
        const auto m2 = galerkin::assemble(r2);
        const auto mw = galerkin::assemble(wl);
        for (const auto* m : {&m1, &m2, &mw}) {
            const auto sig = galerkin::sigma_min_many(*m, zs);
            for (std::size_t i = 0; i < zs.size(); ++i)
                c.require(sig[i] >= std::abs(zs[i].real()),
                          "sigma_min " + fmt_num(sig[i]) + " below |Re z| = " +
                              fmt_num(std::abs(zs[i].real())));
        }

        // whole-line surrogate decay: Dirichlet truncation decays at least as
        // fast as exp(-t^3/12)
        const auto norms = galerkin::semigroup_sweep(mw, 3.0, 29);
        for (int k = 0; k < 30; ++k) {
            const double t = 3.0 * k / 29.0;
            const double bound = std::exp(-t * t * t / 12.0) * (1.0 + 1e-6);
            c.require(norms[k] <= bound, "||exp(-tM)|| = " + fmt_num(norms[k]) +
                                             " above e^{-t^3/12} at t = " + fmt_num(t));
        }

        // Robin long-time slope <= -(Re lambda_1 - 0.05) on [2, 4]
        const auto rn = galerkin::semigroup_sweep(m1, 4.0, 20);
        const double slope = (std::log(rn[20]) - std::log(rn[10])) / 2.0;
        const Complex lam1 =
            halfline::eigenvalue(halfline::HalfLineProblem{1.0, 1.0, halfline::BcKind::Robin}, 1);
        c.require(slope <= -(lam1.real() - 0.05),
                  "log-norm slope " + fmt_num(slope) + " above " +
                      fmt_num(-(lam1.real() - 0.05)));
    });

    run("10. semiclassical margins", [](Criterion& c) {
        const auto pot = geometry::PotentialModel::linear({1.0, 0.0});
        const auto disk = margin::Domain::disk();
        const auto d = margin::margin(disk, pot, margin::Bc::Dirichlet, 0.0);
        c.require(d.points.size() == 2, "disk perp point count");
        for (const auto& p : d.points)
            c.require(std::abs(p.j0 - 1.0) <= 1e-12, "j0 != 1");
        c.require(std::abs(d.lambda_m - 1.1691) <= 2e-3,
                  "Dirichlet margin " + fmt_num(d.lambda_m));
        const auto n = margin::margin(disk, pot, margin::Bc::Neumann, 0.0);
        c.require(std::abs(n.lambda_m - 0.5094) <= 1e-3,
                  "Neumann margin " + fmt_num(n.lambda_m));

        const auto ann = margin::Domain::annulus();
        const auto a = margin::margin(ann, pot, margin::Bc::Neumann, 0.0);
        c.require(a.points.size() == 4, "annulus perp point count");
    });

    run("11. quasimode residual exponent (< 10 min)", [](Criterion& c) {
        const auto t0 = Clock::now();
        const auto pot = geometry::PotentialModel::linear({1.0, 0.0});
        const std::vector<double> hs{0.04, 0.03, 0.02, 0.015, 0.01};

        const auto disk = margin::Domain::disk();
        auto dpts = margin::find_perp_points(disk.components[0], pot, 0);
        const auto& dp = dpts[0].normal_sign < 0 ? dpts[0] : dpts[1];
        const auto drep = margin::residual_scaling(disk, pot, dp, margin::Bc::Robin, 1.0, hs);
        c.require(drep.fitted_slope >= 1.05 && drep.fitted_slope <= 1.30,
                  "Robin slope " + fmt_num(drep.fitted_slope) + " outside [1.05, 1.30]");

        const auto ann = margin::Domain::annulus();
        auto apts = margin::find_perp_points(ann.components[1], pot, 1);
        const auto arep =
            margin::residual_scaling(ann, pot, apts[0], margin::Bc::Transmission, 1.0, hs);
        c.require(arep.fitted_slope >= 1.05 && arep.fitted_slope <= 1.30,
                  "transmission slope " + fmt_num(arep.fitted_slope) + " outside [1.05, 1.30]");

        margin::GridSpec coarse, fine;
        fine.dtau = coarse.dtau / 2.0;
        fine.dsigma = coarse.dsigma / 2.0;
        for (double h : {0.04, 0.01}) {
            const double ra =
                margin::residual_single(disk, pot, dp, margin::Bc::Robin, 1.0, h, coarse, {});
            const double rb =
                margin::residual_single(disk, pot, dp, margin::Bc::Robin, 1.0, h, fine, {});
            c.require(std::abs(ra - rb) <= 0.05 * ra,
                      "grid halving moved the residual by " +
                          fmt_num(std::abs(ra - rb) / ra * 100.0) + "%");
        }
        const double sec = std::chrono::duration<double>(Clock::now() - t0).count();
        c.require(sec < 600.0, "residual suite took " + fmt_num(sec) + " s");
    });

    if (g_failures == 0) {
        std::printf("acceptance: all criteria passed\n");
        return 0;
    }
    std::printf("acceptance: %d criterion(s) failed\n", g_failures);
    return 1;
}
