#include "udw/correlators.hpp"

#include <cmath>

namespace udw::correlators {

namespace {
constexpr double kFourPiSq = 39.478417604357434475337964;
}

Complex wightman_linear(const SpacetimePair& p) {
  p.validate();
  Complex dt_shift(p.dt, -p.eps);
  Complex den = p.dx * p.dx - dt_shift * dt_shift;
  if (std::abs(den) < 1e-300)
    fail(ErrorKind::PoleOnLightcone, "wightman_linear: null-separated pole");
  return 1.0 / (kFourPiSq * den);
}

Complex wightman_quadratic(const SpacetimePair& p) {
  Complex w = wightman_linear(p);
  return 2.0 * w * w;
}

Complex mode_sum_wightman(const SpacetimePair& p,
                          const quadrature::QuadratureSpec& spec) {
  p.validate();
  if (p.eps <= 0.0)
    fail(ErrorKind::CutoffRequired, "mode_sum_wightman: eps > 0 required");
  // W = 1/(4 pi^2 dx) int_0^inf sin(k dx) e^{-k(eps + i dt)} dk; truncate where
  // the envelope e^{-k eps} is below 1e-16.
  double kmax = 37.0 / p.eps;
  quadrature::QuadratureSpec s = spec;
  Complex decay(p.eps, p.dt);
  quadrature::QuadResult r;
  if (p.dx < 1e-6) {
    // removable: sin(k dx)/dx -> k (1 - (k dx)^2/6)
    double dx2 = p.dx * p.dx;
    r = quadrature::integrate_interval(
        [&](double k) {
          return k * (1.0 - k * k * dx2 / 6.0) * std::exp(-decay * k);
        },
        0.0, kmax, s);
    return r.value / kFourPiSq;
  }
  r = quadrature::integrate_interval(
      [&](double k) { return std::sin(k * p.dx) * std::exp(-decay * k); }, 0.0,
      kmax, s);
  return r.value / (kFourPiSq * p.dx);
}

}  // namespace udw::correlators
