// Timing harness comparing the OpenMP kernels against their serial reference
// twins. Each kernel is verified to produce bit-identical results under both
// policies before timing.

#include <chrono>
#include <complex>
#include <cstdio>
#include <cstring>
#include <vector>

#include "cairy/airy.hpp"
#include "cairy/bounds.hpp"
#include "cairy/galerkin.hpp"
#include "cairy/halfline.hpp"
#include "cairy/parallel.hpp"

namespace {

using Clock = std::chrono::steady_clock;

template <class F>
double time_ms(F&& fn, int reps) {
    fn(); // warm up
    const auto t0 = Clock::now();
    for (int r = 0; r < reps; ++r) fn();
    const auto t1 = Clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count() / reps;
}

template <class T>
bool same_bits(const std::vector<T>& a, const std::vector<T>& b) {
    return a.size() == b.size() &&
           std::memcmp(a.data(), b.data(), a.size() * sizeof(T)) == 0;
}

void report(const char* name, double serial_ms, double parallel_ms, bool identical) {
    std::printf("%-28s serial %9.2f ms   parallel %9.2f ms   speedup %5.2fx   %s\n", name,
                serial_ms, parallel_ms, serial_ms / parallel_ms,
                identical ? "bit-identical" : "MISMATCH");
}

} // namespace

int main(int argc, char** argv) {
    const bool quick = argc > 1 && std::string_view(argv[1]) == "--quick";
    const int scale = quick ? 1 : 4;

    {
        std::vector<std::complex<double>> pts;
        const int n = 24 * scale, m = 48;
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < m; ++k) {
                const double r = 19.0 * (i + 1) / n;
                const double th = M_PI / 2.0 + M_PI / 2.0 * k / (m - 1);
                pts.emplace_back(r * std::cos(th), r * std::sin(th));
            }
        auto ser = cairy::airy::wronskian_defect_grid(pts, cairy::Exec::Serial);
        auto par = cairy::airy::wronskian_defect_grid(pts, cairy::Exec::Parallel);
        report("wronskian defect grid",
               time_ms([&] { cairy::airy::wronskian_defect_grid(pts, cairy::Exec::Serial); }, 2),
               time_ms([&] { cairy::airy::wronskian_defect_grid(pts, cairy::Exec::Parallel); }, 2),
               same_bits(ser, par));

        ser = cairy::airy::connection_defect_grid(pts, cairy::Exec::Serial);
        par = cairy::airy::connection_defect_grid(pts, cairy::Exec::Parallel);
        report("connection defect grid",
               time_ms([&] { cairy::airy::connection_defect_grid(pts, cairy::Exec::Serial); }, 2),
               time_ms([&] { cairy::airy::connection_defect_grid(pts, cairy::Exec::Parallel); }, 2),
               same_bits(ser, par));
    }

    {
        const std::vector<int> ns = {1, 2, 3, 4};
        auto lam = [](const std::vector<cairy::halfline::Trajectory>& ts) {
            std::vector<std::complex<double>> out;
            for (const auto& t : ts) out.insert(out.end(), t.lambda.begin(), t.lambda.end());
            return out;
        };
        auto ser = lam(cairy::halfline::trajectory_batch(ns, 20.0, 64 * scale, cairy::Exec::Serial));
        auto par = lam(cairy::halfline::trajectory_batch(ns, 20.0, 64 * scale, cairy::Exec::Parallel));
        report("trajectory batch",
               time_ms([&] { cairy::halfline::trajectory_batch(ns, 20.0, 64 * scale,
                                                               cairy::Exec::Serial); }, 1),
               time_ms([&] { cairy::halfline::trajectory_batch(ns, 20.0, 64 * scale,
                                                               cairy::Exec::Parallel); }, 1),
               same_bits(ser, par));
    }

    {
        const int na = 10 * scale, nb = 10;
        auto margin = [](const std::vector<cairy::bounds::LaplaceGridRow>& rows) {
            std::vector<double> out;
            for (const auto& r : rows) out.push_back(r.margin);
            return out;
        };
        auto ser = margin(cairy::bounds::laplace_grid(na, nb, cairy::Exec::Serial));
        auto par = margin(cairy::bounds::laplace_grid(na, nb, cairy::Exec::Parallel));
        report("laplace bound grid",
               time_ms([&] { cairy::bounds::laplace_grid(na, nb, cairy::Exec::Serial); }, 1),
               time_ms([&] { cairy::bounds::laplace_grid(na, nb, cairy::Exec::Parallel); }, 1),
               same_bits(ser, par));
    }

    {
        cairy::galerkin::GalerkinConfig cfg;
        cfg.N = quick ? 32 : 96;
        cfg.left_bc = cairy::galerkin::LeftBc::Robin;
        cfg.kappa = 1.0;
        Eigen::MatrixXcd ms = cairy::galerkin::detail::assemble_quadrature(cfg, cairy::Exec::Serial);
        Eigen::MatrixXcd mp = cairy::galerkin::detail::assemble_quadrature(cfg, cairy::Exec::Parallel);
        const bool identical = ms == mp;
        report("galerkin assemble (quad)",
               time_ms([&] { cairy::galerkin::detail::assemble_quadrature(cfg, cairy::Exec::Serial); }, 1),
               time_ms([&] { cairy::galerkin::detail::assemble_quadrature(cfg, cairy::Exec::Parallel); }, 1),
               identical);

        auto scan_vals = [&](cairy::Exec e) {
            auto s = cairy::galerkin::resolvent_scan(ms, -1.0, {-4.0, 4.0}, quick ? 64 : 768, e);
            return std::vector<double>{s.sup_norm, s.argmax_nu};
        };
        auto ser = scan_vals(cairy::Exec::Serial);
        auto par = scan_vals(cairy::Exec::Parallel);
        report("resolvent line scan",
               time_ms([&] { scan_vals(cairy::Exec::Serial); }, 1),
               time_ms([&] { scan_vals(cairy::Exec::Parallel); }, 1), same_bits(ser, par));
    }

    return 0;
}
