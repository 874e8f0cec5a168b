#include "udw/divergence.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

namespace udw::divergence {

namespace {

Fit ols(const std::vector<double>& x, const std::vector<double>& y, int begin) {
  int n = (int)x.size() - begin;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int i = begin; i < (int)x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  double det = n * sxx - sx * sx;
  Fit f;
  f.window_begin = begin;
  f.slope = (n * sxy - sx * sy) / det;
  f.intercept = (sy * sxx - sx * sxy) / det;
  double ss_res = 0, ss_tot = 0, ym = sy / n;
  for (int i = begin; i < (int)x.size(); ++i) {
    double yhat = f.intercept + f.slope * x[i];
    ss_res += (y[i] - yhat) * (y[i] - yhat);
    ss_tot += (y[i] - ym) * (y[i] - ym);
  }
  f.r_squared = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0;
  return f;
}

// Trailing-window fit: drop leading (large-eta) rows while at least 4 remain
// and doing so removes a substantial part of the remaining misfit. The
// pre-asymptotic head otherwise masks a clean logarithmic tail.
Fit fit_tail(const std::vector<double>& x, const std::vector<double>& y) {
  Fit best = ols(x, y, 0);
  int n = (int)x.size();
  for (int s = 1; s + 4 <= n; ++s) {
    Fit f = ols(x, y, s);
    if ((1.0 - f.r_squared) < 0.5 * (1.0 - best.r_squared))
      best = f;
    else
      break;
  }
  return best;
}

}  // namespace

SweepResult sweep_eta(Term term, Coupling coupling, const Params& p,
                      const std::vector<double>& etas,
                      const elements::QuadratureSpec& spec, double conv_threshold,
                      int threads) {
  if ((int)etas.size() < 4)
    fail(ErrorKind::InvalidArgument, "sweep_eta: >= 4 etas required");
  for (std::size_t i = 0; i < etas.size(); ++i) {
    if (!(etas[i] > 0)) fail(ErrorKind::InvalidArgument, "sweep_eta: etas must be positive");
    if (i > 0 && !(etas[i] < etas[i - 1]))
      fail(ErrorKind::InvalidArgument, "sweep_eta: etas must be strictly descending");
  }
  SweepResult out;
  out.term = term;
  out.coupling = coupling;
  out.rows.resize(etas.size());
  auto run_row = [&](std::size_t i) {
    Params q = p;
    q.eta = etas[i];
    out.rows[i] = {etas[i], elements::element(term, coupling, q, spec)};
  };
  if (threads <= 1) {
    for (std::size_t i = 0; i < etas.size(); ++i) run_row(i);
  } else {
    std::vector<std::thread> pool;
    std::atomic<std::size_t> next{0};
    for (int t = 0; t < threads; ++t)
      pool.emplace_back([&]() {
        for (std::size_t i = next.fetch_add(1); i < etas.size(); i = next.fetch_add(1))
          run_row(i);
      });
    for (auto& t : pool) t.join();
  }

  std::vector<double> x, y;
  for (const SweepRow& r : out.rows) {
    x.push_back(std::log(1.0 / r.eta));
    y.push_back(std::abs(r.element.value));
  }
  if (out.rows.size() >= 4) out.fit = fit_tail(x, y);

  // Convergent: successive |differences| decreasing, last below threshold.
  bool conv = true;
  double prev_diff = -1.0;
  for (std::size_t i = 1; i < y.size(); ++i) {
    double diff = std::abs(y[i] - y[i - 1]);
    if (prev_diff >= 0.0 && diff >= prev_diff) conv = false;
    prev_diff = diff;
  }
  double last = std::abs(y.back());
  if (!(prev_diff < conv_threshold * last)) conv = false;
  if (conv) {
    out.verdict = Verdict::Convergent;
  } else if (out.fit && out.fit->slope > 0.0 && out.fit->r_squared > 0.999) {
    out.verdict = Verdict::LogDivergent;
  } else {
    out.verdict = Verdict::Inconclusive;
  }
  return out;
}

LaurentReport laurent_check(const Params& p, const std::vector<double>& xi_values) {
  if (xi_values.size() < 3)
    fail(ErrorKind::InvalidArgument, "laurent_check: >= 3 xi values required");
  Params q = p;
  q.eta = 0.0;
  std::vector<double> xs = xi_values;
  std::sort(xs.begin(), xs.end(), std::greater<double>());
  std::vector<Complex> f(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i)
    f[i] = xs[i] * elements::g_integrand(xs[i], q);
  // Neville extrapolation to xi = 0
  for (std::size_t k = 1; k < xs.size(); ++k)
    for (std::size_t i = xs.size() - 1; i >= k; --i)
      f[i] = f[i] + (f[i] - f[i - 1]) * (0.0 - xs[i]) / (xs[i] - xs[i - k]);
  LaurentReport rep;
  rep.limit = f.back();
  double pi = 3.14159265358979323846264338;
  rep.reference = Complex(0.0, 4.0 * pi * p.beta / (p.delta * p.delta));
  double refn = std::abs(rep.reference);
  rep.rel_deviation = refn > 0 ? std::abs(rep.limit - rep.reference) / refn
                               : std::abs(rep.limit);
  return rep;
}

double planck_extrapolation(const SweepResult& sweep) {
  if (sweep.verdict != Verdict::LogDivergent || !sweep.fit)
    fail(ErrorKind::FitUnavailable,
         "planck_extrapolation: requires a log-divergent fit");
  return sweep.fit->intercept + sweep.fit->slope * 29.0 * std::log(10.0);
}

}  // namespace udw::divergence
