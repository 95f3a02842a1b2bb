// Serial-reference vs OpenMP equivalence for every data-parallel kernel.
// Kernels scatter into preassigned slots, so the two policies must agree bit
// for bit.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <cstring>

#include "cairy/airy.hpp"
#include "cairy/bounds.hpp"
#include "cairy/galerkin.hpp"
#include "cairy/halfline.hpp"
#include "cairy/margin.hpp"
#include "cairy/transmission.hpp"

using cairy::Exec;

namespace {

template <class T>
bool same_bits(const std::vector<T>& a, const std::vector<T>& b) {
    return a.size() == b.size() &&
           (a.empty() || std::memcmp(a.data(), b.data(), a.size() * sizeof(T)) == 0);
}

} // namespace

TEST_CASE("airy defect grids") {
    std::vector<std::complex<double>> pts;
    for (int i = 0; i < 300; ++i)
        pts.push_back(std::polar(0.05 + 19.0 * i / 299.0, M_PI / 2.0 + M_PI / 2.0 * (i % 7) / 6.0));
    CHECK(same_bits(cairy::airy::wronskian_defect_grid(pts, Exec::Serial),
                    cairy::airy::wronskian_defect_grid(pts, Exec::Parallel)));
    CHECK(same_bits(cairy::airy::connection_defect_grid(pts, Exec::Serial),
                    cairy::airy::connection_defect_grid(pts, Exec::Parallel)));
}

TEST_CASE("trajectory and pair batches") {
    const std::vector<int> ns{1, 2, 3};
    const auto ts = cairy::halfline::trajectory_batch(ns, 10.0, 64, Exec::Serial);
    const auto tp = cairy::halfline::trajectory_batch(ns, 10.0, 64, Exec::Parallel);
    REQUIRE(ts.size() == tp.size());
    for (std::size_t i = 0; i < ts.size(); ++i) {
        CHECK(same_bits(ts[i].lambda, tp[i].lambda));
        CHECK(same_bits(ts[i].delta, tp[i].delta));
    }

    const auto bs = cairy::transmission::pair_unit_batch({1, 2}, 5.0, 32, Exec::Serial);
    const auto bp = cairy::transmission::pair_unit_batch({1, 2}, 5.0, 32, Exec::Parallel);
    for (std::size_t i = 0; i < bs.size(); ++i) CHECK(same_bits(bs[i].lambda, bp[i].lambda));
}

TEST_CASE("winding contour sampling") {
    const cairy::transmission::Rect r{0.0, 2.0, -5.0, 5.0};
    const auto a = cairy::transmission::count_zeros(0.5, r, Exec::Serial);
    const auto b = cairy::transmission::count_zeros(0.5, r, Exec::Parallel);
    CHECK(a.count == b.count);
    CHECK(a.winding_residual == b.winding_residual);
}

TEST_CASE("laplace grid") {
    const auto a = cairy::bounds::laplace_grid(12, 9, Exec::Serial);
    const auto b = cairy::bounds::laplace_grid(12, 9, Exec::Parallel);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].integral == b[i].integral);
        CHECK(a[i].bound == b[i].bound);
    }
}

TEST_CASE("galerkin assembly and resolvent scan") {
    cairy::galerkin::GalerkinConfig cfg;
    cfg.N = 40;
    cfg.left_bc = cairy::galerkin::LeftBc::Robin;
    cfg.kappa = 1.0;
    const auto ms = cairy::galerkin::assemble(cfg, Exec::Serial);
    const auto mp = cairy::galerkin::assemble(cfg, Exec::Parallel);
    CHECK(ms == mp);

    const auto ss = cairy::galerkin::resolvent_scan(ms, -1.0, {-3.0, 3.0}, 64, Exec::Serial);
    const auto sp = cairy::galerkin::resolvent_scan(ms, -1.0, {-3.0, 3.0}, 64, Exec::Parallel);
    CHECK(ss.sup_norm == sp.sup_norm);
    CHECK(ss.argmax_nu == sp.argmax_nu);
}

TEST_CASE("quasimode residual sweep") {
    const auto disk = cairy::margin::Domain::disk();
    const auto pot = cairy::geometry::PotentialModel::linear({1.0, 0.0});
    auto pts = cairy::margin::find_perp_points(disk.components[0], pot, 0);
    const auto& p = pts[0].normal_sign < 0 ? pts[0] : pts[1];
    const std::vector<double> hs{0.04, 0.02};
    const auto a = cairy::margin::residual_scaling(disk, pot, p, cairy::margin::Bc::Robin, 1.0,
                                                   hs, {}, Exec::Serial);
    const auto b = cairy::margin::residual_scaling(disk, pot, p, cairy::margin::Bc::Robin, 1.0,
                                                   hs, {}, Exec::Parallel);
    CHECK(same_bits(a.residuals, b.residuals));
}
