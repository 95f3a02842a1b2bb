#include "cairy/galerkin.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/MatrixFunctions>

#include "cairy/errors.hpp"
#include "cairy/io.hpp"
#include "cairy/quadrature.hpp"

namespace cairy::galerkin {

namespace {

constexpr double kPi = 3.14159265358979323846;

void validate(const GalerkinConfig& cfg) {
    if (cfg.N < 16) throw DomainError("GalerkinConfig: N must be >= 16");
    if (cfg.N > 1024) throw DomainError("GalerkinConfig: N must be <= 1024");
    if (!(cfg.L >= 5.0)) throw DomainError("GalerkinConfig: L must be >= 5");
    if (!(cfg.j > 0.0)) throw DomainError("GalerkinConfig: j must be > 0");
    if (cfg.kappa < 0.0) throw DomainError("GalerkinConfig: kappa must be >= 0");
}

double robin_freq_fn(double w, double L, double kappa) {
    return std::cos(w * L) + kappa / w * std::sin(w * L);
}

// Basis function phi_n(x) = A (cos(w x) + (kappa/w) sin(w x)) with unit L2
// norm; Dirichlet uses sin, Neumann cos.
struct BasisFn {
    double w, ccos, csin; // phi = ccos cos(wx) + csin sin(wx)
    double eval(double x) const { return ccos * std::cos(w * x) + csin * std::sin(w * x); }
};

std::vector<BasisFn> build_basis(const GalerkinConfig& cfg) {
    const std::vector<double> ws = basis_frequencies(cfg);
    std::vector<BasisFn> out(ws.size());
    for (std::size_t i = 0; i < ws.size(); ++i) {
        const double w = ws[i];
        double a, b; // phi = a cos + b sin (unnormalized)
        switch (cfg.left_bc) {
            case LeftBc::Dirichlet: a = 0.0; b = 1.0; break;
            case LeftBc::Neumann: a = 1.0; b = 0.0; break;
            default: a = 1.0; b = cfg.kappa / w; break;
        }
        // ||phi||^2 = (a^2+b^2) L/2 + (a^2-b^2) sin(2wL)/(4w) + a b (1 - cos(2wL))/(2w)
        const double s2 = std::sin(2.0 * w * cfg.L), c2 = std::cos(2.0 * w * cfg.L);
        const double nrm2 = (a * a + b * b) * cfg.L / 2.0 + (a * a - b * b) * s2 / (4.0 * w) +
                            a * b * (1.0 - c2) / (2.0 * w);
        const double s = 1.0 / std::sqrt(nrm2);
        out[i] = {w, a * s, b * s};
    }
    return out;
}

} // namespace

std::vector<double> basis_frequencies(const GalerkinConfig& cfg) {
    validate(cfg);
    std::vector<double> ws(cfg.N);
    switch (cfg.left_bc) {
        case LeftBc::Dirichlet:
            for (int n = 1; n <= cfg.N; ++n) ws[n - 1] = n * kPi / cfg.L;
            return ws;
        case LeftBc::Neumann:
            for (int n = 1; n <= cfg.N; ++n) ws[n - 1] = (n - 0.5) * kPi / cfg.L;
            return ws;
        case LeftBc::Robin: break;
    }
    if (cfg.kappa == 0.0) {
        for (int n = 1; n <= cfg.N; ++n) ws[n - 1] = (n - 0.5) * kPi / cfg.L;
        return ws;
    }
    for (int n = 1; n <= cfg.N; ++n) {
        double lo = std::max((n - 1) * kPi / cfg.L, 1e-9);
        double hi = n * kPi / cfg.L;
        double flo = robin_freq_fn(lo, cfg.L, cfg.kappa);
        double fhi = robin_freq_fn(hi, cfg.L, cfg.kappa);
        if (flo * fhi > 0.0)
            throw FrequencySolveError("no sign change in Robin frequency bracket");
        for (int it = 0; it < 80; ++it) {
            const double mid = 0.5 * (lo + hi);
            const double fm = robin_freq_fn(mid, cfg.L, cfg.kappa);
            if (flo * fm <= 0.0) {
                hi = mid;
                fhi = fm;
            } else {
                lo = mid;
                flo = fm;
            }
        }
        double w = 0.5 * (lo + hi);
        for (int it = 0; it < 3; ++it) { // Newton polish
            const double f = robin_freq_fn(w, cfg.L, cfg.kappa);
            const double df = -cfg.L * std::sin(w * cfg.L) +
                              cfg.kappa * (w * cfg.L * std::cos(w * cfg.L) - std::sin(w * cfg.L)) /
                                  (w * w);
            if (df == 0.0) break;
            w -= f / df;
        }
        ws[n - 1] = w;
    }
    return ws;
}

namespace {

// First moments of cos/sin over [0, L]: int_0^L x cos(ax) dx, int_0^L x sin(ax) dx.
double moment_cos(double a, double L) {
    if (a == 0.0) return 0.5 * L * L;
    return L * std::sin(a * L) / a + (std::cos(a * L) - 1.0) / (a * a);
}

double moment_sin(double a, double L) {
    if (a == 0.0) return 0.0;
    return -L * std::cos(a * L) / a + std::sin(a * L) / (a * a);
}

// Exact int_0^L x phi_m phi_n dx by product-to-sum reduction.
double x_moment(const BasisFn& pm, const BasisFn& pn, double L) {
    const double wm = pm.w, wn = pn.w;
    const double cc = pm.ccos * pn.ccos, ss = pm.csin * pn.csin;
    const double cs = pm.ccos * pn.csin, sc = pm.csin * pn.ccos;
    const double mcd = moment_cos(wm - wn, L), mcs = moment_cos(wm + wn, L);
    const double msd = moment_sin(wm - wn, L), mss = moment_sin(wm + wn, L);
    // coscos + sinsin on the difference/sum lines, sincos/cossin likewise
    return 0.5 * (cc * (mcd + mcs) + ss * (mcd - mcs) + sc * (mss + msd) + cs * (mss - msd));
}

Matrix assemble_impl(const GalerkinConfig& cfg, Exec exec, bool quadrature) {
    validate(cfg);
    const std::vector<BasisFn> phi = build_basis(cfg);
    const int n = cfg.N;
    Matrix m(n, n);

    // upper triangle of X (symmetric), one slot per (row, col >= row) pair
    std::vector<std::pair<int, int>> pairs;
    pairs.reserve(static_cast<std::size_t>(n) * (n + 1) / 2);
    for (int r = 0; r < n; ++r)
        for (int c = r; c < n; ++c) pairs.emplace_back(r, c);

    const quad::GaussRule& rule = quad::gauss_legendre(64);
    std::vector<double> xv(pairs.size());
    parallel_for(pairs.size(), [&](std::size_t idx) {
        const auto [r, c] = pairs[idx];
        const BasisFn &pr = phi[r], &pc = phi[c];
        if (!quadrature) {
            xv[idx] = x_moment(pr, pc, cfg.L);
            return;
        }
        const double freq = pr.w + pc.w;
        const int panels = std::max(4, static_cast<int>(std::ceil(freq * cfg.L / (2.0 * kPi))));
        const double hpan = cfg.L / panels;
        double acc = 0.0;
        for (int p = 0; p < panels; ++p) {
            const double a = p * hpan;
            double loc = 0.0;
            for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
                const double x = a + 0.5 * hpan * (rule.nodes[q] + 1.0);
                loc += rule.weights[q] * x * pr.eval(x) * pc.eval(x);
            }
            acc += loc * 0.5 * hpan;
        }
        xv[idx] = acc;
    }, exec);

    const Complex ij(0.0, cfg.j);
    std::size_t idx = 0;
    for (int r = 0; r < n; ++r)
        for (int c = r; c < n; ++c, ++idx) {
            m(r, c) = ij * xv[idx];
            m(c, r) = ij * xv[idx];
        }
    for (int r = 0; r < n; ++r) m(r, r) += phi[r].w * phi[r].w;
    return m;
}

} // namespace

Matrix assemble(const GalerkinConfig& cfg, Exec exec) { return assemble_impl(cfg, exec, false); }

namespace detail {
Matrix assemble_quadrature(const GalerkinConfig& cfg, Exec exec) {
    return assemble_impl(cfg, exec, true);
}
} // namespace detail

SpectrumResult eigensolve(const Matrix& m) {
    if (m.rows() != m.cols() || m.rows() > 1024)
        throw DomainError("eigensolve: square matrix with dimension <= 1024 required");
    Eigen::ComplexEigenSolver<Matrix> solver(m, /*computeEigenvectors=*/true);
    if (solver.info() != Eigen::Success)
        throw EigenFailure("dense complex eigensolver did not converge");

    const double mnorm = m.norm(); // Frobenius
    const int n = static_cast<int>(m.rows());
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    const auto& vals = solver.eigenvalues();
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (vals[a].real() != vals[b].real()) return vals[a].real() < vals[b].real();
        return vals[a].imag() < vals[b].imag();
    });

    SpectrumResult out;
    out.eigenvalues.resize(n);
    out.residuals.resize(n);
    for (int i = 0; i < n; ++i) {
        const int k = order[i];
        const auto v = solver.eigenvectors().col(k);
        out.eigenvalues[i] = vals[k];
        out.residuals[i] = (m * v - vals[k] * v).norm() / (mnorm * v.norm());
        if (!(out.residuals[i] <= 1e-9))
            throw EigenFailure("eigenpair backward residual above 1e-9");
    }
    return out;
}

Complex leftmost(const GalerkinConfig& cfg) {
    const SpectrumResult s = eigensolve(assemble(cfg));
    return s.eigenvalues.front();
}

void write_matrix_csv(std::ostream& os, const Matrix& m) {
    io::CsvWriter csv(os, {"row", "col", "re", "im"});
    for (int r = 0; r < m.rows(); ++r)
        for (int c = 0; c < m.cols(); ++c)
            csv.row({static_cast<double>(r), static_cast<double>(c), m(r, c).real(),
                     m(r, c).imag()});
}

void write_spectrum_csv(std::ostream& os, const SpectrumResult& s) {
    io::CsvWriter csv(os, {"index", "re", "im", "residual"});
    for (std::size_t i = 0; i < s.eigenvalues.size(); ++i)
        csv.row({static_cast<double>(i), s.eigenvalues[i].real(), s.eigenvalues[i].imag(),
                 s.residuals[i]});
}

void write_spectrum_json(std::ostream& os, const SpectrumResult& s) {
    os << "{\n  \"eigenvalues\": [";
    for (std::size_t i = 0; i < s.eigenvalues.size(); ++i) {
        os << (i ? ", " : "") << '[' << io::fmt(s.eigenvalues[i].real()) << ", "
           << io::fmt(s.eigenvalues[i].imag()) << ']';
    }
    os << "],\n  \"residuals\": [";
    for (std::size_t i = 0; i < s.residuals.size(); ++i)
        os << (i ? ", " : "") << io::fmt(s.residuals[i]);
    os << "]\n}\n";
}

namespace {

// sigma_min of the upper-triangular T - z I via inverse power iteration on
// (A^* A)^{-1}; O(N^2) per application.
double sigma_min_tri(const Matrix& t, Complex z) {
    const int n = static_cast<int>(t.rows());
    Matrix a = t;
    a.diagonal().array() -= z;
    Eigen::VectorXcd v(n);
    for (int i = 0; i < n; ++i)
        v[i] = Complex(1.0 + 0.1 * std::sin(1.0 + i), 0.05 * std::cos(2.0 + i));
    v.normalize();
    double prev = 0.0;
    for (int it = 0; it < 128; ++it) {
        Eigen::VectorXcd w = a.adjoint().triangularView<Eigen::Lower>().solve(v);
        Eigen::VectorXcd u = a.triangularView<Eigen::Upper>().solve(w);
        const double lam = u.norm();
        v = u / lam;
        const double cur = 1.0 / std::sqrt(lam);
        if (it > 4 && std::abs(cur - prev) <= 1e-8 * cur) return cur;
        prev = cur;
    }
    return prev;
}

} // namespace

double sigma_min(const Matrix& m, Complex z) {
    Eigen::ComplexSchur<Matrix> schur(m, /*computeU=*/false);
    if (schur.info() != Eigen::Success) throw EigenFailure("Schur factorization failed");
    return sigma_min_tri(schur.matrixT(), z);
}

std::vector<double> sigma_min_many(const Matrix& m, const std::vector<Complex>& zs) {
    Eigen::ComplexSchur<Matrix> schur(m, /*computeU=*/false);
    if (schur.info() != Eigen::Success) throw EigenFailure("Schur factorization failed");
    std::vector<double> out(zs.size());
    for (std::size_t i = 0; i < zs.size(); ++i) out[i] = sigma_min_tri(schur.matrixT(), zs[i]);
    return out;
}

ResolventScan resolvent_scan(const Matrix& m, double gamma, std::pair<double, double> nu_range,
                             int samples, Exec exec) {
    if (samples < 8) throw DomainError("resolvent_scan: samples must be >= 8");
    Eigen::ComplexSchur<Matrix> schur(m, /*computeU=*/false);
    if (schur.info() != Eigen::Success) throw EigenFailure("Schur factorization failed");
    const Matrix& t = schur.matrixT();

    for (int i = 0; i < t.rows(); ++i)
        if (std::abs(t(i, i).real() - gamma) < 1e-6)
            throw NearSpectrumError("scan line within 1e-6 of an eigenvalue");

    const double a = nu_range.first, b = nu_range.second;
    std::vector<double> vals(samples);
    parallel_for(static_cast<std::size_t>(samples), [&](std::size_t i) {
        const double nu = a + (b - a) * static_cast<double>(i) / (samples - 1);
        vals[i] = 1.0 / sigma_min_tri(t, Complex(gamma, nu));
    }, exec);

    // indices of the three largest local maxima
    std::vector<int> order(samples);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int x, int y) { return vals[x] > vals[y]; });

    double best = vals[order[0]];
    double best_nu = a + (b - a) * order[0] / (samples - 1);
    const double golden = 0.5 * (std::sqrt(5.0) - 1.0);
    int refined = 0;
    for (int oi = 0; oi < samples && refined < 3; ++oi) {
        const int i = order[oi];
        const bool local_max = (i == 0 || vals[i] >= vals[i - 1]) &&
                               (i == samples - 1 || vals[i] >= vals[i + 1]);
        if (!local_max) continue;
        ++refined;
        double lo = a + (b - a) * std::max(0, i - 1) / (samples - 1);
        double hi = a + (b - a) * std::min(samples - 1, i + 1) / (samples - 1);
        double x1 = hi - golden * (hi - lo), x2 = lo + golden * (hi - lo);
        double f1 = 1.0 / sigma_min_tri(t, Complex(gamma, x1));
        double f2 = 1.0 / sigma_min_tri(t, Complex(gamma, x2));
        for (int it = 0; it < 40; ++it) {
            if (f1 < f2) {
                lo = x1;
                x1 = x2;
                f1 = f2;
                x2 = lo + golden * (hi - lo);
                f2 = 1.0 / sigma_min_tri(t, Complex(gamma, x2));
            } else {
                hi = x2;
                x2 = x1;
                f2 = f1;
                x1 = hi - golden * (hi - lo);
                f1 = 1.0 / sigma_min_tri(t, Complex(gamma, x1));
            }
        }
        const double fx = std::max(f1, f2);
        const double nux = f1 > f2 ? x1 : x2;
        if (fx > best) {
            best = fx;
            best_nu = nux;
        }
    }
    return {best, best_nu};
}

namespace {

// operator 2-norm by power iteration on E^* E, deterministic start vector
double operator_norm(const Matrix& e) {
    Eigen::VectorXcd v(e.rows());
    for (int i = 0; i < e.rows(); ++i)
        v[i] = Complex(1.0 + 0.1 * std::sin(1.0 + i), 0.05 * std::cos(2.0 + i));
    v.normalize();
    double s = 0.0;
    for (int it = 0; it < 200; ++it) {
        Eigen::VectorXcd w = e * v;
        Eigen::VectorXcd u = e.adjoint() * w;
        const double nrm = u.norm();
        if (nrm == 0.0) return 0.0;
        v = u / nrm;
        const double cur = std::sqrt(nrm);
        if (it > 4 && std::abs(cur - s) <= 1e-10 * cur) return cur;
        s = cur;
    }
    return s;
}

} // namespace

double semigroup_norm(const Matrix& m, double t) {
    if (t < 0.0) throw DomainError("semigroup_norm: t must be >= 0");
    const Matrix e = (-t * m).exp();
    if (!e.allFinite()) throw OverflowError("matrix exponential overflowed");
    return operator_norm(e);
}

std::vector<double> semigroup_sweep(const Matrix& m, double t_max, int steps) {
    if (!(t_max > 0.0) || steps < 1) throw DomainError("semigroup_sweep: bad grid");
    const double dt = t_max / steps;
    const Matrix e1 = (-dt * m).exp();
    if (!e1.allFinite()) throw OverflowError("matrix exponential overflowed");
    std::vector<double> out(steps + 1);
    out[0] = 1.0;
    Matrix ek = e1;
    for (int k = 1; k <= steps; ++k) {
        out[k] = operator_norm(ek);
        if (k < steps) ek = ek * e1;
    }
    return out;
}

} // namespace cairy::galerkin
