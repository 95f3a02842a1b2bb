#pragma once

#include <complex>
#include <iosfwd>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "cairy/parallel.hpp"

namespace cairy::galerkin {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

enum class LeftBc { Dirichlet, Neumann, Robin };

/// Discretization of -d^2/dx^2 + i j x on [0, L] in the Laplacian eigenbasis
/// for the given end conditions (right end is always Dirichlet).
struct GalerkinConfig {
    double L = 10.0;
    int N = 200;
    double j = 1.0;
    LeftBc left_bc = LeftBc::Robin;
    double kappa = 0.0; // Robin only
};

/// Frequencies of the mixed-condition Laplacian basis; Robin frequencies are
/// the roots of cos(wL) + (kappa/w) sin(wL) in ((n-1)pi/L, n pi/L).
std::vector<double> basis_frequencies(const GalerkinConfig& cfg);

/// Dense matrix diag(w_n^2) + i j X, X_mn = int_0^L x phi_m phi_n dx. The
/// moments are evaluated in closed form (exact trigonometric integrals); the
/// composite 64-point Gauss-Legendre route with one panel per basis-frequency
/// period is kept as detail::assemble_quadrature and the two are compared in
/// the tests.
Matrix assemble(const GalerkinConfig& cfg, Exec exec = Exec::Parallel);

namespace detail {
Matrix assemble_quadrature(const GalerkinConfig& cfg, Exec exec = Exec::Parallel);
} // namespace detail

struct SpectrumResult {
    std::vector<Complex> eigenvalues; // ascending Re
    std::vector<double> residuals;    // backward residuals ||Mv - lambda v|| / ||M||_F
};

SpectrumResult eigensolve(const Matrix& m);

/// CSV: row,col,re,im. JSON: {"eigenvalues": [[re, im], ...], "residuals": [...]}.
void write_matrix_csv(std::ostream& os, const Matrix& m);
void write_spectrum_csv(std::ostream& os, const SpectrumResult& s);
void write_spectrum_json(std::ostream& os, const SpectrumResult& s);

/// Eigenvalue of minimal real part of the assembled matrix.
Complex leftmost(const GalerkinConfig& cfg);

struct ResolventScan {
    double sup_norm;
    double argmax_nu;
};

/// sup over nu in [nu_range] of 1/sigma_min(M - (gamma + i nu) I), via one
/// Schur factorization and triangular inverse iteration per sample; uniform
/// samples plus golden-section refinement around the three largest.
ResolventScan resolvent_scan(const Matrix& m, double gamma, std::pair<double, double> nu_range,
                             int samples, Exec exec = Exec::Parallel);

/// sigma_min(M - z I) (same machinery, single point).
double sigma_min(const Matrix& m, Complex z);

/// Batched variant: one Schur factorization for many shifts.
std::vector<double> sigma_min_many(const Matrix& m, const std::vector<Complex>& zs);

/// ||exp(-t M)||_2 by scaling-and-squaring plus power iteration for the
/// operator norm. The error model is the backward bound of the Pade
/// scaling-and-squaring method applied to -tM.
double semigroup_norm(const Matrix& m, double t);

/// Norms on the uniform grid t_k = k t_max/steps, k = 0..steps, computed by
/// powers of E = exp(-(t_max/steps) M); consistent with semigroup_norm to
/// the accuracy of the contraction property.
std::vector<double> semigroup_sweep(const Matrix& m, double t_max, int steps);

} // namespace cairy::galerkin
