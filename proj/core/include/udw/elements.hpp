#pragma once

#include "udw/quadrature.hpp"
#include "udw/types.hpp"

namespace udw::elements {

using quadrature::QuadratureSpec;

// Default integration settings for the semi-closed 1D element integrals:
// two digits of headroom over the 1e-5 oracle-equivalence gate.
inline QuadratureSpec default_spec() {
  QuadratureSpec s;
  s.rel_tol = 1e-9;
  s.abs_tol = 1e-14;
  s.max_evals = 200000;
  return s;
}

// Vacuum excitation probability L_AA (identical for detector B by relabeling).
// Finite-eta and eta=0 share one stabilized formula; result is exactly real.
ElementResult l_aa_linear(const Params& p, const QuadratureSpec& spec = default_spec());
ElementResult l_aa_quadratic(const Params& p, const QuadratureSpec& spec = default_spec());

// Cross term L_AB, general gamma_a != gamma_b; beta = 0 handled by series.
ElementResult l_ab_linear(const Params& p, const QuadratureSpec& spec = default_spec());
ElementResult l_ab_quadratic(const Params& p, const QuadratureSpec& spec = default_spec());

// Simultaneous-switching M terms (gamma_a = gamma_b = gamma required; gamma
// enters only through the phase e^{2 i alpha gamma}).
ElementResult m_linear_simultaneous(const Params& p, const QuadratureSpec& spec = default_spec());
// eta > 0 required: this matrix element diverges logarithmically as eta -> 0.
ElementResult m_quadratic_simultaneous(const Params& p, const QuadratureSpec& spec = default_spec());

// Dispatch by (term, coupling); L_BB maps onto l_aa_*.
ElementResult element(Term term, Coupling coupling, const Params& p,
                      const QuadratureSpec& spec = default_spec());

// Closed forms of the Gaussian-window integrals
//   f_m(q) = int dv exp(v (t_a - t_b)/T^2 - v^2/(2T^2) - i v Omega) / (q^2 - (v - i eps)^2)^m
// for m = 1 (f1) and m = 2 (f2); q > 0, eps > 0.
Complex f1(double q, double omega, double eps, double t_a, double t_b, double T = 1.0);
Complex f2(double q, double omega, double eps, double t_a, double t_b, double T = 1.0);

// Integrand G(xi) of the quadratic M term (uses beta, delta, eta of p; the
// eta = 0 form is the xi-pointwise limit used by the Laurent analysis).
Complex g_integrand(double xi, const Params& p);

}  // namespace udw::elements
