#include "udw/oracle.hpp"

#include <cmath>
#include <vector>

#include "udw/correlators.hpp"
#include "udw/sobol.hpp"

namespace udw::oracle {

namespace {

constexpr double kPi = 3.14159265358979323846264338;

double radial_kernel(double q, double b, double d) {
  double d2 = d * d;
  double t = q * b / d2;
  if (t < 1e-4)
    return std::exp(-(q * q + b * b) / (2.0 * d2)) * (q / d2) * (1.0 + t * t / 6.0);
  double up = -(q - b) * (q - b) / (2.0 * d2);
  double dn = -(q + b) * (q + b) / (2.0 * d2);
  return (std::exp(up) - std::exp(dn)) / (2.0 * b);
}

ElementResult pack(Complex pref, const quadrature::QuadResult& q) {
  ElementResult r;
  r.value = pref * q.value;
  r.err_estimate = std::abs(pref) * q.err_estimate;
  r.evals = q.evals;
  r.converged = q.converged;
  return r;
}

}  // namespace

ElementResult oracle_element(Term term, Coupling coupling, const Params& p,
                             const OracleSpec& spec) {
  p.validate();
  spec.validate();
  if (p.eta <= 0.0)
    fail(ErrorKind::CutoffRequired, "oracle_element: eta > 0 required (pole prescription)");
  if (p.eta < 1e-6)
    fail(ErrorKind::PoleProximity,
         "oracle_element: eta < 1e-6 defeats real-axis quadrature of the v integral");
  const int m = coupling == Coupling::Linear ? 1 : 2;
  const double d = p.delta;
  const double eta = p.eta;
  const double V = spec.v_halfwidth;
  const double qmax =
      p.beta + std::abs(p.gamma_a - p.gamma_b) +
      (d + 1.0) * std::sqrt(2.0 * std::log(1.0 / spec.quad.abs_tol));
  const double pi2 = kPi * kPi;
  const double pi4 = pi2 * pi2;

  auto pole = [&](double v, double q) -> Complex {
    Complex den = q * q - Complex(v, -eta) * Complex(v, -eta);
    return m == 1 ? 1.0 / den : 1.0 / (den * den);
  };

  switch (term) {
    case Term::LAA: {
      double c = m == 1 ? 1.0 / (4.0 * pi2 * d * d * d) : 1.0 / (8.0 * pi4 * d * d * d);
      auto f = [&](double v, double q) -> Complex {
        return q * q * std::exp(-q * q / (2.0 * d * d)) *
               std::exp(Complex(-v * v / 2.0, -v * p.alpha)) * pole(v, q);
      };
      return pack(c, quadrature::integrate_2d(f, -V, V, qmax, spec.quad));
    }
    case Term::LAB: {
      double D = p.gamma_a - p.gamma_b;
      double Vd = V + std::abs(D);  // the v Gaussian is centered at D
      Complex c = std::exp(Complex(-D * D / 2.0, 0.0)) *
                  (m == 1 ? 1.0 / (4.0 * pi2 * d) : 1.0 / (8.0 * pi4 * d));
      auto f = [&](double v, double q) -> Complex {
        return q * radial_kernel(q, p.beta, d) *
               std::exp(Complex(-v * v / 2.0 + v * D, -v * p.alpha)) * pole(v, q);
      };
      return pack(c, quadrature::integrate_2d(f, -Vd, Vd, qmax, spec.quad));
    }
    case Term::M: {
      if (p.gamma_a != p.gamma_b)
        fail(ErrorKind::InvalidArgument, "oracle_element: M requires gamma_a == gamma_b");
      Complex c = -std::exp(Complex(-p.alpha * p.alpha / 2.0, 2.0 * p.alpha * p.gamma_a));
      c *= (m == 1 ? 1.0 / (4.0 * pi2 * d) : 1.0 / (8.0 * pi4 * d));
      // time-ordered: v runs over (0, V), the symmetrized kernel contributes 2
      auto f = [&](double v, double q) -> Complex {
        return 2.0 * q * radial_kernel(q, p.beta, d) * std::exp(-v * v / 2.0) * pole(v, q);
      };
      return pack(c, quadrature::integrate_2d(f, 0.0, V, qmax, spec.quad));
    }
  }
  fail(ErrorKind::InvalidArgument, "oracle_element: unknown term");
}

ElementResult oracle_mode_sum(Term term, Coupling coupling, const Params& p,
                              long samples) {
  p.validate();
  if (samples < 1000000)
    fail(ErrorKind::InsufficientSamples, "oracle_mode_sum: samples >= 1e6 required");
  if (p.eta < 1e-2)
    fail(ErrorKind::InvalidArgument, "oracle_mode_sum: eta >= 1e-2 (noise floor)");
  if (term == Term::M && p.gamma_a != p.gamma_b)
    fail(ErrorKind::InvalidArgument, "oracle_mode_sum: M requires gamma_a == gamma_b");

  // centers of the Gaussian importance density; detector A at origin,
  // B displaced by beta along x.
  double tc1 = p.gamma_a, tc2 = (term == Term::LAA) ? p.gamma_a : p.gamma_b;
  double xc2 = (term == Term::LAA) ? 0.0 : p.beta;
  const double st = 1.0 / std::sqrt(2.0);           // switching width T/sqrt2
  const double sx = p.delta / std::sqrt(2.0);       // smearing width sigma/sqrt2

  sobol::Sobol8 seq(8);
  const int kBlocks = 32;
  std::vector<Complex> block_sum(kBlocks, Complex(0, 0));
  std::vector<long> block_n(kBlocks, 0);
  double pt[8];
  long per_block = samples / kBlocks;
  for (long i = 0; i < samples; ++i) {
    seq.next(pt);
    double t1 = tc1 + st * sobol::inverse_normal_cdf(pt[0]);
    double t2 = tc2 + st * sobol::inverse_normal_cdf(pt[1]);
    double dx0 = sx * (sobol::inverse_normal_cdf(pt[2]) - sobol::inverse_normal_cdf(pt[5])) - xc2;
    double dx1 = sx * (sobol::inverse_normal_cdf(pt[3]) - sobol::inverse_normal_cdf(pt[6]));
    double dx2 = sx * (sobol::inverse_normal_cdf(pt[4]) - sobol::inverse_normal_cdf(pt[7]));
    correlators::SpacetimePair sp;
    sp.dx = std::sqrt(dx0 * dx0 + dx1 * dx1 + dx2 * dx2);
    sp.eps = p.eta;
    Complex phase;
    if (term == Term::M) {
      sp.dt = std::abs(t1 - t2);  // time-ordered kernel: later argument first
      phase = -std::exp(Complex(0.0, p.alpha * (t1 + t2)));
    } else {
      sp.dt = t1 - t2;
      phase = std::exp(Complex(0.0, -p.alpha * (t1 - t2)));
    }
    Complex w = coupling == Coupling::Linear ? correlators::wightman_linear(sp)
                                             : correlators::wightman_quadratic(sp);
    int blk = (int)std::min<long>(i / std::max<long>(per_block, 1), kBlocks - 1);
    block_sum[blk] += phase * w;
    block_n[blk] += 1;
  }
  Complex mean(0, 0);
  for (int b = 0; b < kBlocks; ++b) mean += block_sum[b];
  mean *= kPi / (double)samples;
  double var = 0.0;
  for (int b = 0; b < kBlocks; ++b) {
    Complex bm = block_sum[b] * (kPi / (double)block_n[b]);
    var += std::norm(bm - mean);
  }
  double sigma = std::sqrt(var / (kBlocks * (kBlocks - 1.0)));
  ElementResult r;
  r.value = mean;
  r.err_estimate = sigma;
  r.evals = samples;
  r.converged = true;
  if (sigma > 0.1 * std::abs(mean))
    fail(ErrorKind::InsufficientSamples,
         "oracle_mode_sum: 1-sigma error exceeds 10% of |value|");
  return r;
}

}  // namespace udw::oracle
