#include <benchmark/benchmark.h>

#include "udw/elements.hpp"
#include "udw/measures.hpp"
#include "udw/specfun.hpp"

using namespace udw;

static void BM_FaddeevaW(benchmark::State& state) {
  Complex z(2.3, 1.1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(specfun::faddeeva_w(z));
    z += Complex(1e-12, 0);
  }
}
BENCHMARK(BM_FaddeevaW);

static void BM_ScaledE1(benchmark::State& state) {
  Complex z(-8.0, 0.9);
  for (auto _ : state) {
    benchmark::DoNotOptimize(specfun::e1x(z));
    z += Complex(0, 1e-12);
  }
}
BENCHMARK(BM_ScaledE1);

static void BM_GIntegrand(benchmark::State& state) {
  Params p;
  p.beta = 4;
  p.eta = 1e-4;
  double xi = 0.5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(elements::g_integrand(xi, p));
    xi = xi < 3.0 ? xi + 1e-9 : 0.5;
  }
}
BENCHMARK(BM_GIntegrand);

static void BM_Element(benchmark::State& state) {
  Term term = static_cast<Term>(state.range(0));
  Coupling c = static_cast<Coupling>(state.range(1));
  Params p;
  p.alpha = 1;
  p.beta = 2;
  p.eta = 1e-4;
  for (auto _ : state) {
    benchmark::DoNotOptimize(elements::element(term, c, p));
  }
}
BENCHMARK(BM_Element)
    ->ArgsProduct({{0, 1, 2}, {0, 1}})
    ->ArgNames({"term", "coupling"})
    ->Unit(benchmark::kMicrosecond);

static void BM_DeepCutoffQuadraticM(benchmark::State& state) {
  Params p;
  p.alpha = 1;
  p.beta = 2;
  p.eta = std::pow(10.0, -state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(elements::m_quadratic_simultaneous(p));
  }
}
BENCHMARK(BM_DeepCutoffQuadraticM)->DenseRange(2, 12, 5)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
