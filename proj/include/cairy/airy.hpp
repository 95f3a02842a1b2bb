#pragma once

#include <complex>
#include <vector>

#include "cairy/parallel.hpp"

namespace cairy::airy {

using Complex = std::complex<double>;

enum class Method { Series, Asymptotic, ConnectionRotated };

struct AiryPair {
    Complex ai;
    Complex ai_prime;
    Method method;
    double est_rel_error;
};

/// Supported disk: evaluations outside |z| <= max_abs throw DomainError.
inline constexpr double max_abs = 40.0;

/// Radius of the series/asymptotic switch. Below it the Maclaurin series is
/// summed in double-double arithmetic, which keeps the relative error of the
/// recessive solution below 1e-12 everywhere in the disk. Above it the
/// asymptotic expansion reaches the same accuracy with at most
/// asymptotic_max_terms terms.
inline constexpr double series_radius = 9.0;
inline constexpr int asymptotic_max_terms = 24;

/// Ai(z), Ai'(z) with sector-aware method selection: series inside
/// |z| <= series_radius; the asymptotic expansion (principal branch of
/// z^{3/2}) for |arg z| <= 2pi/3; the rotation identity otherwise, which maps
/// arguments near the negative real axis onto two evaluations inside the
/// asymptotic sector.
AiryPair eval_pair(Complex z);

enum class ZeroKind { OfAi, OfAiPrime };

struct RealZero {
    ZeroKind kind;
    int index;
    double value; // negative real zero
};

/// n-th real zero (from the right, n >= 1) of Ai or Ai'. n <= 20.
RealZero real_zero(ZeroKind kind, int n);

/// | e^{-i2pi/3} Ai'(e^{-i2pi/3} z) Ai(e^{i2pi/3} z)
///   - e^{i2pi/3} Ai'(e^{i2pi/3} z) Ai(e^{-i2pi/3} z) - i/(2pi) |
double wronskian_defect(Complex z);

/// Max over the function/derivative rotation identities of
/// |identity sum| / (1 + max |term|).
double connection_defect(Complex z);

/// Grid kernels (parallel with serial reference). Both scatter one defect per
/// input point; used by the invariant tests, the CLI and the benchmark.
std::vector<double> wronskian_defect_grid(const std::vector<Complex>& pts, Exec exec);
std::vector<double> connection_defect_grid(const std::vector<Complex>& pts, Exec exec);

namespace detail {
/// Method-pinned evaluations for the overlap-agreement checks. The series is
/// valid on the whole supported disk; the asymptotic form requires
/// |arg z| <= 2pi/3.
AiryPair series_pair(Complex z);
AiryPair asymptotic_pair(Complex z);
} // namespace detail

} // namespace cairy::airy
