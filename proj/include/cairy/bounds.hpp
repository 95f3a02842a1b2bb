#pragma once

#include <vector>

#include "cairy/parallel.hpp"

namespace cairy::bounds {

struct LaplacePair {
    double integral; // int_0^inf exp(-alpha t^3 + beta t) dt
    double bound;    // sqrt(pi) (3 beta alpha)^{-1/4} exp(beta^{3/2}/(3 alpha)^{1/2})
};

/// Quadrature value of the cubic-exponential integral together with its
/// closed-form upper bound. alpha, beta in [1e-3, 10].
LaplacePair laplace_pair(double alpha, double beta);

/// integral(1/12, omega) / (omega^{-1/4} exp((4/3) omega^{3/2})), computed in
/// log space; stabilizes as omega grows. omega in [5, 50].
double laplace_asymptotic_ratio(double omega);

struct LaplaceGridRow {
    double alpha, beta, integral, bound, margin;
};

/// Full log-spaced grid sweep of laplace_pair (used by the inequality
/// invariant, the CLI export and the benchmark).
std::vector<LaplaceGridRow> laplace_grid(int na, int nb, Exec exec);

} // namespace cairy::bounds
