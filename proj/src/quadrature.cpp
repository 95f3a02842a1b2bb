#include "cairy/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include "cairy/errors.hpp"

namespace cairy::quad {

namespace {

struct SimpsonCtx {
    const std::function<double(double)>& f;
    double rel_tol;
    int max_depth;
    double scale; // running magnitude estimate for the relative test
};

double simpson_rec(const SimpsonCtx& ctx, double a, double m, double b, double fa, double fm,
                   double fb, double whole, int depth) {
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = ctx.f(lm), frm = ctx.f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (std::abs(delta) <= 15.0 * ctx.rel_tol * (std::abs(left + right) + ctx.scale))
        return left + right + delta / 15.0;
    if (depth >= ctx.max_depth)
        throw QuadratureError("adaptive Simpson depth budget exhausted");
    return simpson_rec(ctx, a, lm, m, fa, flm, fm, left, depth + 1) +
           simpson_rec(ctx, m, rm, b, fm, frm, fb, right, depth + 1);
}

} // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double rel_tol, int max_depth) {
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    SimpsonCtx ctx{f, rel_tol, max_depth, 1e-300 + std::abs(whole)};
    return simpson_rec(ctx, a, m, b, fa, fm, fb, whole, 0);
}

const GaussRule& gauss_legendre(int n) {
    static std::map<int, GaussRule> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    GaussRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        // Chebyshev-based initial guess, then Newton on P_n(x).
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it2 = 0; it2 < 100; ++it2) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        rule.nodes[i] = x;
        rule.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    auto [pos, ok] = cache.emplace(n, std::move(rule));
    (void)ok;
    return pos->second;
}

} // namespace cairy::quad
