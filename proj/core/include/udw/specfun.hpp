#pragma once

#include "udw/types.hpp"

namespace udw::specfun {

inline constexpr double kEulerGamma = 0.5772156649015328606065121;

// Faddeeva function w(z) = e^{-z^2} erfc(-iz). Accurate over the whole plane;
// throws OverflowDomain where the reflection e^{-z^2} overflows.
Complex faddeeva_w(Complex z);

// Scaled complement erfcx(z) = e^{z^2} erfc(z) = w(iz).
Complex erfcx(Complex z);

// Dawson integral D(x) = e^{-x^2} int_0^x e^{t^2} dt, real argument.
double dawson(double x);

// Error functions on the complex plane. Guard radius |z| <= 30; overflowing
// results are reported as OverflowDomain rather than returned as Inf.
Complex erf(Complex z);
Complex erfc(Complex z);
Complex erfi(Complex z);

// Principal-value exponential integral Ei(x), real x != 0.
double expint_ei(double x);

// e^z E1(z) for complex z off the cut (-inf, 0]; the scaled form stays
// representable for |Re z| up to ~700.
Complex e1x(Complex z);

// E1(z) = e^{-z} * e1x(z); overflows for Re z << 0 are reported.
Complex expint_e1(Complex z);

// Analytic continuation of Ei to the cut plane: Ei(z) = -E1(-z) + i pi sgn(Im z).
Complex expint_ei_c(Complex z);

// Hyperbolic sine/cosine integrals, principal branch of the log in Chi.
Complex shi(Complex z);
Complex chi(Complex z);

}  // namespace udw::specfun
