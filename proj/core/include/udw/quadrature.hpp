#pragma once

#include <functional>

#include "udw/types.hpp"

namespace udw::quadrature {

struct QuadratureSpec {
  double rel_tol = 1e-9;
  double abs_tol = 1e-14;
  long max_evals = 200000;
  // coefficient c of the e^{-c xi^2} envelope used to truncate [0, inf);
  // truncation point is sqrt(ln(1/abs_tol)/c).
  double envelope_decay = 0.5;

  void validate() const {
    if (!(rel_tol > 0)) fail(ErrorKind::InvalidArgument, "rel_tol must be > 0");
    if (!(abs_tol > 0)) fail(ErrorKind::InvalidArgument, "abs_tol must be > 0");
    if (max_evals < 100) fail(ErrorKind::InvalidArgument, "max_evals must be >= 100");
    if (!(envelope_decay > 0)) fail(ErrorKind::InvalidArgument, "envelope_decay must be > 0");
  }
};

struct QuadResult {
  Complex value{0.0, 0.0};
  double err_estimate = 0.0;
  long evals = 0;
  double truncation_point = 0.0;
  bool converged = true;  // false <=> ToleranceNotMet (result still usable)
};

using Integrand1D = std::function<Complex(double)>;
using Integrand2D = std::function<Complex(double, double)>;

// Adaptive Gauss-Kronrod (7,15) on a finite interval. Deterministic.
QuadResult integrate_interval(const Integrand1D& f, double a, double b,
                              const QuadratureSpec& spec);

// Gaussian-damped integral over [0, inf): truncates at
// xi_max = sqrt(ln(1/abs_tol)/envelope_decay) and integrates adaptively.
// Throws IntegrandNonFinite if f returns NaN/Inf inside the domain.
QuadResult integrate_semi_infinite(const Integrand1D& f, const QuadratureSpec& spec);

// Nested adaptive integration, outer v over [v_lo, v_hi], inner q over
// [0, q_max]; combined error = outer estimate + propagated inner estimates.
QuadResult integrate_2d(const Integrand2D& f, double v_lo, double v_hi,
                        double q_max, const QuadratureSpec& spec);

}  // namespace udw::quadrature
