// special.hpp — Bessel J1, Catalan numbers, vacuum moments, quadrature.

#pragma once

#include <complex>
#include <cstdint>
#include <functional>

namespace qbatt {

// Bessel function of the first kind, order 1. Power series for |x| <= 12,
// Hankel asymptotic expansion beyond; |error| < 1e-10 everywhere.
double bessel_j1(double x);

// <0| D(k alpha) |0> prefactor J1(2y)/y at y = k|alpha| (limit 1 at y = 0).
double vacuum_overlap(double y);

// Catalan number C_n, exact for n <= 36 (the last value below 2^64).
std::uint64_t catalan(int n);

// 2n-th vacuum moment of the displacement generator:
//   <0| [i(alpha B - conj(alpha) B+)]^{2n} |0> -> (-1)^n |alpha|^{2n} C_n
// on the half-infinite ladder (odd moments vanish).
double vacuum_moment(int n, std::complex<double> alpha);

// Adaptive Gauss-Kronrod (G7, K15) integration of fn over [a, b] to the
// given absolute tolerance.
double integrate_gk(const std::function<double(double)>& fn, double a,
                    double b, double abs_tol);

}  // namespace qbatt
