#include "cairy/bounds.hpp"

#include <cmath>

#include "cairy/errors.hpp"
#include "cairy/quadrature.hpp"

namespace cairy::bounds {

namespace {

constexpr double kPi = 3.14159265358979323846;

// log-scaled integral: returns log of int_0^inf exp(-alpha t^3 + beta t) dt.
double log_integral(double alpha, double beta) {
    const double tstar = std::sqrt(beta / (3.0 * alpha));
    const double phimax = -alpha * tstar * tstar * tstar + beta * tstar;
    // choose T so the integrand is below exp(phimax) * 1e-20 past it
    double T = tstar;
    auto phi = [&](double t) { return -alpha * t * t * t + beta * t; };
    while (phi(T) - phimax > -50.0) T = T * 1.25 + 0.5;
    const double scaled = quad::adaptive_simpson(
        [&](double t) { return std::exp(phi(t) - phimax); }, 0.0, T, 1e-13);
    return phimax + std::log(scaled);
}

} // namespace

LaplacePair laplace_pair(double alpha, double beta) {
    if (!(alpha >= 1e-3 && alpha <= 10.0 && beta >= 1e-3 && beta <= 10.0))
        throw DomainError("laplace_pair: alpha, beta must lie in [1e-3, 10]");
    LaplacePair r;
    r.integral = std::exp(log_integral(alpha, beta));
    r.bound = std::sqrt(kPi) * std::pow(3.0 * beta * alpha, -0.25) *
              std::exp(std::pow(beta, 1.5) / std::sqrt(3.0 * alpha));
    return r;
}

double laplace_asymptotic_ratio(double omega) {
    if (!(omega >= 5.0 && omega <= 50.0))
        throw DomainError("laplace_asymptotic_ratio: omega must lie in [5, 50]");
    const double li = log_integral(1.0 / 12.0, omega);
    const double lref = -0.25 * std::log(omega) + (4.0 / 3.0) * std::pow(omega, 1.5);
    const double lr = li - lref;
    if (lr > 700.0) throw OverflowError("laplace ratio out of double range");
    return std::exp(lr);
}

std::vector<LaplaceGridRow> laplace_grid(int na, int nb, Exec exec) {
    std::vector<LaplaceGridRow> rows(static_cast<std::size_t>(na) * nb);
    const double lo = std::log(1e-3), hi = std::log(10.0);
    auto grid_at = [&](int i, int n) {
        if (i == 0) return 1e-3;
        if (i == n - 1) return 10.0;
        return std::exp(lo + (hi - lo) * i / (n - 1));
    };
    parallel_for(rows.size(), [&](std::size_t idx) {
        const int i = static_cast<int>(idx) / nb;
        const int k = static_cast<int>(idx) % nb;
        const double alpha = grid_at(i, na);
        const double beta = grid_at(k, nb);
        const LaplacePair p = laplace_pair(alpha, beta);
        rows[idx] = {alpha, beta, p.integral, p.bound, p.bound - p.integral};
    }, exec);
    return rows;
}

} // namespace cairy::bounds
