#include <doctest.h>

#include <cmath>

#include "udw/quadrature.hpp"

using namespace udw;
using namespace udw::quadrature;

TEST_CASE("Gaussian integral") {
  QuadratureSpec s;
  s.envelope_decay = 1.0;
  QuadResult r = integrate_semi_infinite(
      [](double x) { return Complex(std::exp(-x * x), 0.0); }, s);
  double want = 0.8862269254527580136490837;  // sqrt(pi)/2
  CHECK(r.converged);
  CHECK(std::abs(r.value.real() - want) <= std::max(s.rel_tol * want, r.err_estimate));
  CHECK(std::abs(r.value.real() - want) < 1e-12);
  CHECK(std::abs(r.value.imag()) < 1e-14);
}

TEST_CASE("oscillatory Gaussian against a frozen high-precision value") {
  QuadratureSpec s;
  s.envelope_decay = 1.0;
  QuadResult r = integrate_semi_infinite(
      [](double x) { return x * std::exp(Complex(-x * x, -x)); }, s);
  Complex want(0.2877818082489888520329788, -0.3450971117607857436933538);
  CHECK(r.converged);
  CHECK(std::abs(r.value - want) < 1e-12);
}

TEST_CASE("non-finite integrand is reported") {
  QuadratureSpec s;
  s.envelope_decay = 1.0;
  CHECK_THROWS_AS((void)integrate_semi_infinite(
                      [](double x) {
                        return Complex(x == x && std::abs(x - 0.5) < 0.2
                                           ? std::numeric_limits<double>::quiet_NaN()
                                           : 1.0,
                                       0.0) *
                               std::exp(-x * x);
                      },
                      s),
                  DomainError);
}

TEST_CASE("tolerance exhaustion still returns an honest estimate") {
  QuadratureSpec s;
  s.rel_tol = 1e-15;
  s.abs_tol = 1e-300;  // unreachable
  s.max_evals = 300;
  s.envelope_decay = 1e-3;
  QuadResult r = integrate_interval(
      [](double x) { return Complex(1.0 / std::sqrt(x + 1e-8), 0.0); }, 0.0, 1.0, s);
  CHECK_FALSE(r.converged);
  CHECK(r.err_estimate > 0.0);
  CHECK(r.evals <= 300 + 30);
}

TEST_CASE("determinism: identical inputs give bit-identical outputs") {
  QuadratureSpec s;
  s.envelope_decay = 0.5;
  auto f = [](double x) { return std::exp(Complex(-0.5 * x * x, 0.7 * x)); };
  QuadResult a = integrate_semi_infinite(f, s);
  QuadResult b = integrate_semi_infinite(f, s);
  CHECK(a.value.real() == b.value.real());
  CHECK(a.value.imag() == b.value.imag());
  CHECK(a.err_estimate == b.err_estimate);
  CHECK(a.evals == b.evals);
}

TEST_CASE("separable 2D Gaussian") {
  QuadratureSpec s;
  QuadResult r = integrate_2d(
      [](double v, double q) { return Complex(std::exp(-v * v - q * q), 0.0); }, -6.0,
      6.0, 6.0, s);
  double want = 1.7724538509055160272981675 * 0.8862269254527580136490837;  // sqrt(pi)*sqrt(pi)/2
  CHECK(r.converged);
  CHECK(std::abs(r.value.real() - want) < 1e-9);
}

TEST_CASE("2D with truncated domain reports the shortfall") {
  QuadratureSpec s;
  s.rel_tol = 1e-12;
  s.abs_tol = 1e-16;
  s.max_evals = 2000;  // too small for this tolerance
  QuadResult r = integrate_2d(
      [](double v, double q) {
        return Complex(std::exp(-0.1 * v * v - 0.1 * q * q) * std::cos(3 * v * q), 0.0);
      },
      -6.0, 6.0, 6.0, s);
  CHECK_FALSE(r.converged);
}

TEST_CASE("spec validation") {
  QuadratureSpec s;
  s.rel_tol = -1.0;
  CHECK_THROWS_AS(s.validate(), DomainError);
  QuadratureSpec s2;
  s2.max_evals = 10;
  CHECK_THROWS_AS(s2.validate(), DomainError);
}
