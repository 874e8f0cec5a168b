#include <doctest.h>

#include <cmath>

#include "udw/elements.hpp"
#include "udw/oracle.hpp"

using namespace udw;
using namespace udw::oracle;

namespace {
Params make(double alpha, double beta, double delta, double eta, double ga = 0,
            double gb = 0) {
  Params p;
  p.alpha = alpha;
  p.beta = beta;
  p.delta = delta;
  p.eta = eta;
  p.gamma_a = ga;
  p.gamma_b = gb;
  return p;
}
}  // namespace

TEST_CASE("oracle contracts") {
  CHECK_THROWS_AS((void)oracle_element(Term::M, Coupling::Quadratic, make(1, 4, 1, 0)),
                  DomainError);
  CHECK_THROWS_AS((void)oracle_element(Term::LAA, Coupling::Linear, make(1, 0, 1, 1e-7)),
                  DomainError);
  CHECK_THROWS_AS(
      (void)oracle_mode_sum(Term::LAA, Coupling::Linear, make(1, 0, 1, 0.1), 100),
      DomainError);
}

TEST_CASE("oracle reproduces the power-law far tail") {
  Params p = make(1, 50, 1, 1e-2);
  ElementResult r = oracle_element(Term::LAB, Coupling::Linear, p);
  ElementResult e = elements::l_ab_linear(p);
  CHECK(std::abs(r.value) < 1e-4);
  CHECK(std::abs(r.value - e.value) <= 1e-5 * std::abs(e.value) + r.err_estimate);
}

TEST_CASE("oracle vs semi-closed elements at one interior point") {
  Params p = make(1, 2, 1, 1e-2, 0, 1.0);
  for (Coupling c : {Coupling::Linear, Coupling::Quadratic}) {
    ElementResult o = oracle_element(Term::LAB, c, p);
    ElementResult e = elements::element(Term::LAB, c, p);
    CHECK(std::abs(o.value - e.value) <=
          std::max(1e-5 * std::abs(e.value), o.err_estimate + e.err_estimate));
  }
  Params pm = make(1, 2, 1, 1e-2);
  for (Coupling c : {Coupling::Linear, Coupling::Quadratic}) {
    ElementResult o = oracle_element(Term::M, c, pm);
    ElementResult e = elements::element(Term::M, c, pm);
    CHECK(std::abs(o.value - e.value) <= 1e-5 * std::abs(e.value));
  }
}

TEST_CASE("mode sum three-way agreement at a soft cutoff") {
  // eta = 0.1 keeps the light-cone peak wide enough for Gaussian-importance
  // QMC; linear terms are tight, quadratic ones carry heavy-tailed variance.
  Params p = make(1, 0, 1, 0.1);
  long n = 2000000;
  ElementResult mc = oracle_mode_sum(Term::LAA, Coupling::Linear, p, n);
  ElementResult cl = elements::l_aa_linear(p);
  CHECK(std::abs(mc.value - cl.value) < 3.0 * mc.err_estimate + 1e-4 * std::abs(cl.value));

  Params pb = make(1, 1, 1, 0.1);
  ElementResult mb = oracle_mode_sum(Term::LAB, Coupling::Linear, pb, n);
  ElementResult cb = elements::l_ab_linear(pb);
  CHECK(std::abs(mb.value - cb.value) < 3.0 * mb.err_estimate + 1e-3 * std::abs(cb.value));

  ElementResult mm = oracle_mode_sum(Term::M, Coupling::Linear, pb, n);
  ElementResult cm = elements::m_linear_simultaneous(pb);
  CHECK(std::abs(mm.value - cm.value) < 3.0 * mm.err_estimate + 1e-3 * std::abs(cm.value));
}

TEST_CASE("mode sum quadratic coupling: 3-sigma agreement or an honest refusal") {
  // W^2 concentrates on the eta-softened light cone; with Gaussian importance
  // sampling its variance is heavy-tailed, and at desk-scale sample counts the
  // estimator may correctly report InsufficientSamples instead of a value.
  Params p = make(1, 0, 1, 0.1);
  ElementResult cl = elements::l_aa_quadratic(p);
  try {
    ElementResult mc = oracle_mode_sum(Term::LAA, Coupling::Quadratic, p, 4000000);
    CHECK(std::abs(mc.value - cl.value) < 3.0 * mc.err_estimate + 1e-6);
  } catch (const DomainError& e) {
    CHECK(e.kind() == ErrorKind::InsufficientSamples);
  }
}

TEST_CASE("mode sum is deterministic") {
  Params p = make(1, 0, 1, 0.1);
  ElementResult a = oracle_mode_sum(Term::LAA, Coupling::Linear, p, 1000000);
  ElementResult b = oracle_mode_sum(Term::LAA, Coupling::Linear, p, 1000000);
  CHECK(a.value.real() == b.value.real());
  CHECK(a.value.imag() == b.value.imag());
  CHECK(a.err_estimate == b.err_estimate);
}
