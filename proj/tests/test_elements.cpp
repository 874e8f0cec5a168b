#include <doctest.h>

#include <cmath>

#include "udw/elements.hpp"
#include "udw/quadrature.hpp"

using namespace udw;
using namespace udw::elements;

namespace {

double rel(Complex got, Complex want) {
  return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

Params make(double alpha, double beta, double delta, double eta, double ga = 0.0,
            double gb = 0.0) {
  Params p;
  p.alpha = alpha;
  p.beta = beta;
  p.delta = delta;
  p.eta = eta;
  p.gamma_a = ga;
  p.gamma_b = gb;
  return p;
}

// direct quadrature of the defining v-integral of f_m
Complex fm_direct(int m, double q, double om, double eps, double ta, double tb) {
  double D = ta - tb;
  quadrature::QuadratureSpec s;
  s.rel_tol = 1e-11;
  s.abs_tol = 1e-16;
  s.max_evals = 400000;
  double V = 10.0 + std::abs(D) + std::abs(om);
  auto f = [&](double v) {
    Complex den = q * q - Complex(v, -eps) * Complex(v, -eps);
    Complex d = m == 1 ? den : den * den;
    return std::exp(Complex(v * D - v * v / 2.0, -v * om)) / d;
  };
  return quadrature::integrate_interval(f, -V, V, s).value;
}

}  // namespace

TEST_CASE("L_AA pinned against brute-force references") {
  CHECK(rel(l_aa_linear(make(1, 0, 1, 1e-2)).value, {0.0108885771641, 0}) < 1e-9);
  CHECK(rel(l_aa_linear(make(1, 0, 1, 1e-4)).value, {0.0109643085841, 0}) < 1e-9);
  CHECK(rel(l_aa_linear(make(1, 0, 1, 0)).value, {0.0109650770957849814, 0}) < 1e-9);
  CHECK(rel(l_aa_linear(make(2, 0, 0.5, 0.1)).value, {0.00147370929365, 0}) < 1e-9);
  CHECK(rel(l_aa_quadratic(make(1, 0, 1, 1e-2)).value, {8.5171884347e-05, 0}) < 1e-9);
  CHECK(rel(l_aa_quadratic(make(1, 0, 1, 0)).value, {8.62482860108520046e-05, 0}) < 1e-9);
  CHECK(rel(l_aa_quadratic(make(0, 0, 1, 1e-2)).value, {0.000566429751637, 0}) < 1e-9);
}

TEST_CASE("L_AA is real and positive; large gap suppresses it") {
  for (Coupling c : {Coupling::Linear, Coupling::Quadratic}) {
    ElementResult r = element(Term::LAA, c, make(1, 0, 1, 1e-3));
    CHECK(r.value.imag() == 0.0);
    CHECK(r.value.real() > 0.0);
    ElementResult big = element(Term::LAA, c, make(40, 0, 1, 1e-3));
    CHECK(std::abs(big.value) < 1e-12);
  }
}

TEST_CASE("L_AB pinned values, general gamma_a != gamma_b") {
  CHECK(rel(l_ab_linear(make(1, 4, 1, 1e-2, 0, 4)).value,
            {0.001902033911, -0.00265450719}) < 1e-9);
  CHECK(rel(l_ab_linear(make(1, 1, 1, 1e-3, 0, 0)).value, {0.009852614058, 0}) < 1e-9);
  CHECK(rel(l_ab_linear(make(2, 2, 1, 0.05, 1.5, 0)).value,
            {-0.0007706165797, 0.0004648312705}) < 1e-9);
  CHECK(rel(l_ab_quadratic(make(1, 4, 1, 1e-2, 0, 4)).value,
            {8.15808377e-06, 3.4822285e-06}) < 1e-9);
  CHECK(rel(l_ab_quadratic(make(2, 2, 1, 0.05, 1.5, 0)).value,
            {-1.235795124e-06, 3.045874187e-06}) < 1e-9);
}

TEST_CASE("L_AB tail at large separation is polynomial, not Gaussian") {
  // the sinh kernel eats the e^{-beta^2/(2 delta^2)} prefactor; what survives
  // is the power-law tail of the vacuum correlator
  Complex v50 = l_ab_linear(make(1, 50, 1, 1e-3)).value;
  Complex v25 = l_ab_linear(make(1, 25, 1, 1e-3)).value;
  CHECK(rel(v50, {1.93141806495015168e-05, 0}) < 1e-8);
  CHECK(std::abs(v25 / v50) > 3.5);  // ~ (50/25)^2
  CHECK(std::abs(v25 / v50) < 4.5);
}

TEST_CASE("L_AB Hermiticity partner: swapped switch-on times conjugate") {
  for (Coupling c : {Coupling::Linear, Coupling::Quadratic}) {
    ElementResult a = element(Term::LAB, c, make(1, 2, 1, 1e-3, 0.5, -1.0));
    ElementResult b = element(Term::LAB, c, make(1, 2, 1, 1e-3, -1.0, 0.5));
    CHECK(std::abs(a.value - std::conj(b.value)) < 1e-12);
  }
}

TEST_CASE("L_AB beta -> 0 is removable") {
  Params p0 = make(1, 0, 1, 1e-2, 1, 0);
  Params pe = make(1, 1e-9, 1, 1e-2, 1, 0);
  CHECK(rel(l_ab_linear(p0).value, {-0.00120849033216977681, -0.00999576845357691673}) < 1e-9);
  CHECK(rel(l_ab_linear(pe).value, l_ab_linear(p0).value) < 1e-9);
  CHECK(rel(l_ab_quadratic(pe).value, l_ab_quadratic(p0).value) < 1e-9);
}

TEST_CASE("M linear pinned values and the eta -> 0 path") {
  CHECK(rel(m_linear_simultaneous(make(1, 1, 1, 0.1)).value,
            {-0.0189028545263, 0.0154954161365}) < 1e-9);
  CHECK(rel(m_linear_simultaneous(make(1, 2, 1, 0)).value,
            {-0.0129855201760772226, 0.00663035467721826743}) < 1e-9);
  CHECK(rel(m_linear_simultaneous(make(1, 4, 1, 0)).value,
            {-0.0036361370856586346, 0.000194945689116288402}) < 1e-9);
  // the finite-eta path approaches the eta = 0 path
  CHECK(rel(m_linear_simultaneous(make(1, 4, 1, 1e-7)).value,
            m_linear_simultaneous(make(1, 4, 1, 0)).value) < 1e-5);
}

TEST_CASE("M modulus does not depend on the common switch-on time") {
  ElementResult a = m_linear_simultaneous(make(1, 2, 1, 1e-3, 0, 0));
  ElementResult b = m_linear_simultaneous(make(1, 2, 1, 1e-3, 2, 2));
  CHECK(std::abs(std::abs(a.value) - std::abs(b.value)) < 1e-12);
  ElementResult qa = m_quadratic_simultaneous(make(1, 2, 1, 1e-3, 0, 0));
  ElementResult qb = m_quadratic_simultaneous(make(1, 2, 1, 1e-3, 2, 2));
  CHECK(std::abs(std::abs(qa.value) - std::abs(qb.value)) < 1e-12);
}

TEST_CASE("M quadratic pinned values") {
  CHECK(rel(m_quadratic_simultaneous(make(1, 4, 1, 1e-2)).value,
            {-1.91377303746e-05, 8.09373950589e-06}) < 1e-9);
  CHECK(rel(m_quadratic_simultaneous(make(1, 4, 1, 1e-4)).value,
            {-1.92358360821e-05, 9.97233095055e-06}) < 1e-9);
  CHECK(rel(m_quadratic_simultaneous(make(1, 4, 1, 1e-6)).value,
            {-1.92368183949e-05, 1.18609699849e-05}) < 1e-8);
}

TEST_CASE("M quadratic requires a cutoff") {
  CHECK_THROWS_AS((void)m_quadratic_simultaneous(make(1, 4, 1, 0)), DomainError);
  try {
    (void)m_quadratic_simultaneous(make(1, 4, 1, 0));
  } catch (const DomainError& e) {
    CHECK(e.kind() == ErrorKind::CutoffRequired);
  }
}

TEST_CASE("M requires simultaneous switching") {
  CHECK_THROWS_AS((void)m_linear_simultaneous(make(1, 2, 1, 1e-3, 0, 1)), DomainError);
}

TEST_CASE("f1/f2 match direct quadrature of their defining integral") {
  struct Pt {
    double q, om, eps, ta, tb;
  };
  for (const Pt& pt : {Pt{1, 1, 0.1, 0, 0}, Pt{0.5, 0, 0.01, 0, 0}, Pt{2, 5, 1, 0, 0},
                       Pt{1, 2, 0.3, 0.7, -0.4}, Pt{0.8, 0.5, 0.05, 1.2, 0.9}}) {
    Complex d1 = fm_direct(1, pt.q, pt.om, pt.eps, pt.ta, pt.tb);
    Complex d2 = fm_direct(2, pt.q, pt.om, pt.eps, pt.ta, pt.tb);
    CHECK(rel(f1(pt.q, pt.om, pt.eps, pt.ta, pt.tb), d1) < 1e-8);
    CHECK(rel(f2(pt.q, pt.om, pt.eps, pt.ta, pt.tb), d2) < 1e-8);
  }
}

TEST_CASE("f1/f2 vanish for a fast detector (Gaussian Fourier suppression)") {
  CHECK(std::abs(f1(1, 50, 0.1, 0, 0)) < 1e-12);
  CHECK(std::abs(f2(1, 50, 0.1, 0, 0)) < 1e-12);
}

TEST_CASE("f1/f2 general T scaling") {
  double T = 2.0;
  Complex direct = fm_direct(1, 1.0, 0.5, 0.1, 0.3, 0.0);  // T = 1 case in scaled vars
  // f_m at width T equals T^{1-2m} f_m^{T=1}(q/T, T om, eps/T, dt/T)
  Complex scaled = f1(2.0, 0.25, 0.2, 0.6, 0.0, T);
  CHECK(rel(scaled, direct / T) < 1e-8);
}

TEST_CASE("G integrand pinned against term-by-term high-precision evaluation") {
  Params p = make(1, 4, 1, 0.1);
  CHECK(rel(g_integrand(1.0, p), {63.1161277922226807, -215.779022946885844}) < 1e-11);
  CHECK(rel(g_integrand(0.3, p), {2.32229455561700455, -126.915848019883999}) < 1e-11);
  CHECK(rel(g_integrand(2.5, p), {818.359415557442185, -330.137999714045974}) < 1e-11);
  Params p2 = make(1, 2, 2, 1e-2);
  CHECK(rel(g_integrand(0.5, p2), {0.727257678474249225, -13.2184790810413403}) < 1e-11);
  Params p3 = make(1, 1, 1, 1e-4);
  CHECK(rel(g_integrand(1.0, p3), {3.21237441187490967, -10.8640651825938547}) < 1e-11);
}

TEST_CASE("G vanishes pointwise at beta = 0") {
  Params p = make(1, 0, 1, 0.1);
  CHECK(std::abs(g_integrand(0.7, p)) == 0.0);
}

TEST_CASE("G small-xi series matches the direct path across the switch") {
  // frozen term-by-term evaluations on both sides of xi_switch = 1e-3
  Params p = make(1, 4, 1, 0.05);
  CHECK(rel(g_integrand(0.000999, p),
            {2.43040696434070706e-05, -0.170452849421086595}) < 1e-11);
  CHECK(rel(g_integrand(0.001001, p),
            {2.44014808199190866e-05, -0.171135699849135725}) < 1e-11);
  // deep in the small-cutoff regime the reorganized branch takes over
  Params p2 = make(1, 4, 1, 1e-5);
  CHECK(rel(g_integrand(4.999e-6, p2),
            {6.68154300957966489e-10, -407221.366503368395}) < 1e-11);
  CHECK(rel(g_integrand(5.001e-6, p2),
            {6.6868903616996257e-10, -407468.028621573025}) < 1e-11);
}

TEST_CASE("eta-sweep Cauchy behavior (spot)") {
  double prev = -1, prevdiff = -1;
  for (double eta : {1e-1, 1e-2, 1e-3, 1e-4, 1e-5}) {
    double v = std::abs(l_aa_linear(make(1, 0, 1, eta)).value);
    if (prev >= 0) {
      double diff = std::abs(v - prev);
      if (prevdiff >= 0) CHECK(diff < prevdiff);
      prevdiff = diff;
    }
    prev = v;
  }
}
