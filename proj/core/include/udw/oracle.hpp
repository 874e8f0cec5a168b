#pragma once

#include "udw/quadrature.hpp"
#include "udw/types.hpp"

namespace udw::oracle {

struct OracleSpec {
  double v_halfwidth = 8.0;  // Gaussian e^{-v^2/2} tail < 1e-14 beyond this
  quadrature::QuadratureSpec quad{1e-7, 1e-12, 400000, 0.5};

  void validate() const {
    if (!(v_halfwidth >= 8.0))
      fail(ErrorKind::InvalidArgument, "OracleSpec: v_halfwidth >= 8 required");
    quad.validate();
  }
};

// Brute-force evaluation of a matrix element from its 2D (v, q) form, the
// nested v-integral done numerically with the -i eta pole shift kept
// explicitly in the denominator. Ground truth for the semi-closed 1D paths;
// shares only the generic integrator with them.
ElementResult oracle_element(Term term, Coupling coupling, const Params& p,
                             const OracleSpec& spec = {});

// Quasi-Monte-Carlo evaluation of the raw 2-time x 2-space integral using the
// Wightman functions directly, Gaussian importance sampling matched to the
// switching and smearing profiles. 1-sigma statistical error from block means.
ElementResult oracle_mode_sum(Term term, Coupling coupling, const Params& p,
                              long samples);

}  // namespace udw::oracle
