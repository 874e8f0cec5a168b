#pragma once

#include "udw/quadrature.hpp"
#include "udw/types.hpp"

namespace udw::correlators {

// Spacetime-pair arguments in units of the switching width T.
struct SpacetimePair {
  double dt = 0.0;   // t - t'
  double dx = 0.0;   // |x - x'|, >= 0
  double eps = 0.0;  // soft UV cutoff, >= 0

  void validate() const {
    if (!(dx >= 0)) fail(ErrorKind::InvalidArgument, "dx must be >= 0");
    if (!(eps >= 0)) fail(ErrorKind::InvalidArgument, "eps must be >= 0");
  }
};

// Vacuum two-point function of the massless field in 3+1D,
//   W(dt, dx) = 1 / (4 pi^2 [dx^2 - (dt - i eps)^2]).
Complex wightman_linear(const SpacetimePair& p);

// Normal-ordered squared-field correlator, W_2 = 2 W^2.
Complex wightman_quadratic(const SpacetimePair& p);

// Radial mode-integral evaluation of the same two-point function (numeric
// check of the closed form); requires eps > 0 for absolute convergence.
Complex mode_sum_wightman(const SpacetimePair& p,
                          const quadrature::QuadratureSpec& spec = {});

}  // namespace udw::correlators
