#include "udw/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace udw::quadrature {

namespace {

// Gauss-Kronrod 7-15 pair (QUADPACK abscissae/weights).
const double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
const double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
const double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a, b;
  Complex value;
  double err;
};

struct GKOut {
  Complex k15;
  double err;
};

GKOut gk15(const Integrand1D& f, double a, double b, long& evals) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  Complex fc = f(mid);
  evals += 15;
  if (!std::isfinite(fc.real()) || !std::isfinite(fc.imag()))
    fail(ErrorKind::IntegrandNonFinite, "integrand returned NaN/Inf");
  Complex k15 = kWgk[7] * fc;
  Complex g7 = kWg[3] * fc;
  for (int i = 0; i < 7; ++i) {
    double dx = half * kXgk[i];
    Complex fp = f(mid + dx);
    Complex fm = f(mid - dx);
    if (!std::isfinite(fp.real()) || !std::isfinite(fp.imag()) ||
        !std::isfinite(fm.real()) || !std::isfinite(fm.imag()))
      fail(ErrorKind::IntegrandNonFinite, "integrand returned NaN/Inf");
    Complex s = fp + fm;
    k15 += kWgk[i] * s;
    if (i % 2 == 1) g7 += kWg[i / 2] * s;
  }
  k15 *= half;
  g7 *= half;
  return {k15, std::abs(k15 - g7)};
}

QuadResult adapt(const Integrand1D& f, double a, double b, const QuadratureSpec& spec,
                 long eval_budget) {
  std::vector<Segment> segs;
  long evals = 0;
  {
    GKOut g = gk15(f, a, b, evals);
    segs.push_back({a, b, g.k15, g.err});
  }
  Complex running_value = segs[0].value;
  double running_err = segs[0].err;
  bool converged = false;
  while (true) {
    if (running_err <= std::max(spec.abs_tol, spec.rel_tol * std::abs(running_value))) {
      converged = true;
      break;
    }
    if (evals + 30 > eval_budget) break;
    // split the worst segment; ties broken by left endpoint for determinism
    std::size_t worst = 0;
    for (std::size_t i = 1; i < segs.size(); ++i)
      if (segs[i].err > segs[worst].err ||
          (segs[i].err == segs[worst].err && segs[i].a < segs[worst].a))
        worst = i;
    Segment s = segs[worst];
    double mid = 0.5 * (s.a + s.b);
    if (!(mid > s.a && mid < s.b)) {  // interval exhausted at double resolution
      running_err -= segs[worst].err;
      segs[worst].err = 0.0;
      continue;
    }
    GKOut left = gk15(f, s.a, mid, evals);
    GKOut right = gk15(f, mid, s.b, evals);
    segs[worst] = {s.a, mid, left.k15, left.err};
    segs.push_back({mid, s.b, right.k15, right.err});
    running_value += left.k15 + right.k15 - s.value;
    running_err += left.err + right.err - s.err;
    running_err = std::max(running_err, 0.0);
  }
  // canonical reduction order: sum sorted by left endpoint
  std::sort(segs.begin(), segs.end(),
            [](const Segment& x, const Segment& y) { return x.a < y.a; });
  QuadResult out;
  for (const Segment& s : segs) {
    out.value += s.value;
    out.err_estimate += s.err;
  }
  out.evals = evals;
  out.converged = converged;
  return out;
}

}  // namespace

QuadResult integrate_interval(const Integrand1D& f, double a, double b,
                              const QuadratureSpec& spec) {
  spec.validate();
  QuadResult r = adapt(f, a, b, spec, spec.max_evals);
  r.truncation_point = b;
  return r;
}

QuadResult integrate_semi_infinite(const Integrand1D& f, const QuadratureSpec& spec) {
  spec.validate();
  double xi_max = std::sqrt(std::log(1.0 / spec.abs_tol) / spec.envelope_decay);
  QuadResult r = adapt(f, 0.0, xi_max, spec, spec.max_evals);
  r.truncation_point = xi_max;
  r.err_estimate += spec.abs_tol;  // envelope bound on the discarded tail
  return r;
}

QuadResult integrate_2d(const Integrand2D& f, double v_lo, double v_hi,
                        double q_max, const QuadratureSpec& spec) {
  spec.validate();
  QuadratureSpec inner = spec;
  inner.rel_tol = spec.rel_tol * 0.25;
  inner.abs_tol = spec.abs_tol / std::max(1.0, v_hi - v_lo);
  long inner_evals = 0;
  double inner_err_max = 0.0;
  bool inner_converged = true;
  Integrand1D outer = [&](double v) {
    QuadResult q = adapt([&](double qq) { return f(v, qq); }, 0.0, q_max, inner,
                         inner.max_evals);
    inner_evals += q.evals;
    inner_err_max = std::max(inner_err_max, q.err_estimate);
    inner_converged = inner_converged && q.converged;
    return q.value;
  };
  QuadResult r = adapt(outer, v_lo, v_hi, spec, spec.max_evals);
  r.err_estimate += inner_err_max * (v_hi - v_lo);
  r.evals += inner_evals;
  r.truncation_point = q_max;
  r.converged = r.converged && inner_converged;
  return r;
}

}  // namespace udw::quadrature
