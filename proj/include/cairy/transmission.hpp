#pragma once

#include <complex>
#include <iosfwd>
#include <vector>

#include "cairy/parallel.hpp"

namespace cairy::transmission {

using Complex = std::complex<double>;

/// Characteristic of the unit transmission problem,
///   F(y, lambda) = 2 pi Ai'(e^{i2pi/3} lambda) Ai'(e^{-i2pi/3} lambda) + y.
/// Roots come in conjugate pairs; the stored branch member has Im > 0.
Complex char_T(double y, Complex lambda);

/// d/dlambda of char_T (y-independent), via Ai''(w) = w Ai(w).
Complex char_T_dlambda(Complex lambda);

/// |dF/dlambda| at a polished root; simple eigenvalues keep it > 1e-8.
double simplicity_check(double y, Complex lambda);

/// One conjugate pair tracked along y. lambda is the Im > 0 member.
struct TransmissionBranch {
    int n = 1;
    std::vector<double> y;
    std::vector<Complex> lambda;
    std::vector<Complex> dlambda;
    std::vector<double> delta;

    void write_csv(std::ostream& os) const;
};

/// Continuation of the n-th pair from lambda_n(0) = |a'_n| e^{i pi/3} using
/// the implicit derivative lambda'(y) = -1/dF_dlambda, Newton-polished at
/// each grid point. n <= 5, y_max <= 1e3.
TransmissionBranch pair_unit(int n, double y_max, int steps);

std::vector<TransmissionBranch> pair_unit_batch(const std::vector<int>& ns, double y_max,
                                                int steps, Exec exec);

struct Rect {
    double re_min, re_max, im_min, im_max;
};

struct ZeroCountReport {
    Rect rect;
    double y;
    int count;
    double winding_residual;
};

/// Argument-principle count of roots of char_T(y, .) inside the rectangle:
/// adaptive trapezoid of F'/F along the boundary (512 base points per side,
/// doubled until stable), rounded with the residual recorded. The rectangle
/// is nudged outward by 1e-2 up to 3 times if the contour runs too close to
/// a root.
ZeroCountReport count_zeros(double y, Rect rect, Exec exec = Exec::Parallel);

/// Transmission-condition defect of the explicit eigenfunction attached to a
/// root lambda of char_T(y, .): the two half-line pieces are normalized to a
/// common boundary derivative D and the defect
///   |D - y (u_+(0) - u_-(0))| / (|D| + y (|u_+(0)| + |u_-(0)|))
/// is returned. The eigenfunction formula lives in the conjugate variable
/// mu = conj(lambda).
double eigenfunction_defect(double y, Complex lambda);

/// Eigenvalue of the general problem: j^{2/3} lambda_unit(kappa |j|^{-1/3}),
/// conjugated when j < 0.
Complex eigenvalue(double j, double kappa, int n);

} // namespace cairy::transmission
