#pragma once

#include <cmath>
#include <complex>

// Minimal double-double arithmetic (Dekker/Knuth error-free transforms).
// Used by the Airy Maclaurin series, where the dominant/recessive cancellation
// exceeds what plain doubles can absorb at moderate |z|.

namespace cairy::dd {

struct Real {
    double hi = 0.0;
    double lo = 0.0;
};

inline Real two_sum(double a, double b) {
    double s = a + b;
    double bb = s - a;
    double err = (a - (s - bb)) + (b - bb);
    return {s, err};
}

inline Real quick_two_sum(double a, double b) {
    double s = a + b;
    return {s, b - (s - a)};
}

inline Real two_prod(double a, double b) {
    double p = a * b;
    return {p, std::fma(a, b, -p)};
}

inline Real add(const Real& a, const Real& b) {
    Real s = two_sum(a.hi, b.hi);
    double lo = s.lo + a.lo + b.lo;
    return quick_two_sum(s.hi, lo);
}

inline Real sub(const Real& a, const Real& b) { return add(a, {-b.hi, -b.lo}); }

inline Real mul(const Real& a, const Real& b) {
    Real p = two_prod(a.hi, b.hi);
    double lo = p.lo + a.hi * b.lo + a.lo * b.hi;
    return quick_two_sum(p.hi, lo);
}

inline Real mul(const Real& a, double b) {
    Real p = two_prod(a.hi, b);
    double lo = p.lo + a.lo * b;
    return quick_two_sum(p.hi, lo);
}

inline Real div(const Real& a, double b) {
    double q0 = a.hi / b;
    Real p = two_prod(q0, b);
    double r = ((a.hi - p.hi) - p.lo) + a.lo;
    double q1 = r / b;
    return quick_two_sum(q0, q1);
}

inline double to_double(const Real& a) { return a.hi + a.lo; }

struct Complex {
    Real re, im;

    static Complex from(std::complex<double> z) { return {{z.real(), 0.0}, {z.imag(), 0.0}}; }
    std::complex<double> value() const { return {to_double(re), to_double(im)}; }
    double abs1() const { return std::abs(to_double(re)) + std::abs(to_double(im)); }
};

inline Complex add(const Complex& a, const Complex& b) {
    return {add(a.re, b.re), add(a.im, b.im)};
}

inline Complex mul(const Complex& a, const Complex& b) {
    return {sub(mul(a.re, b.re), mul(a.im, b.im)),
            add(mul(a.re, b.im), mul(a.im, b.re))};
}

inline Complex div(const Complex& a, double b) { return {div(a.re, b), div(a.im, b)}; }

inline Complex mul(const Complex& a, const Real& b) { return {mul(a.re, b), mul(a.im, b)}; }

inline Complex mul(const Complex& a, double b) { return {mul(a.re, b), mul(a.im, b)}; }

} // namespace cairy::dd
