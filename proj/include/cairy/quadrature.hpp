#pragma once

#include <functional>
#include <vector>

namespace cairy::quad {

/// Adaptive Simpson with Richardson acceptance. Throws QuadratureError when
/// the depth budget is exhausted before the tolerance is met.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double rel_tol = 1e-13, int max_depth = 48);

struct GaussRule {
    std::vector<double> nodes;   // on [-1, 1]
    std::vector<double> weights;
};

/// Gauss-Legendre rule computed by Newton on the Legendre polynomial.
const GaussRule& gauss_legendre(int n);

} // namespace cairy::quad
