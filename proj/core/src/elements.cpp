#include "udw/elements.hpp"

#include <array>
#include <cmath>

#include "udw/specfun.hpp"

namespace udw::elements {

namespace {

using specfun::e1x;
using specfun::faddeeva_w;

constexpr double kPi = 3.14159265358979323846264338;
constexpr double kSqrt2 = 1.41421356237309504880168872;
constexpr double kSqrtPi = 1.77245385090551602729816748;
constexpr double kSqrt2Pi = 2.50662827463100050241576528;
constexpr double kXiSwitch = 1e-3;  // series fallback below this

const Complex kI(0.0, 1.0);

// sinh(xi b / d^2) e^{-(xi^2+b^2)/(2 d^2)} / b, overflow-free for any b.
// This is the radial kernel of every beta-dependent element with the
// separation Gaussian folded in; beta = 0 is the removable limit xi/d^2.
double radial_kernel(double xi, double b, double d) {
  double d2 = d * d;
  double t = xi * b / d2;
  if (t < 1e-4) {
    return std::exp(-(xi * xi + b * b) / (2.0 * d2)) * (xi / d2) * (1.0 + t * t / 6.0);
  }
  double up = -(xi - b) * (xi - b) / (2.0 * d2);
  double dn = -(xi + b) * (xi + b) / (2.0 * d2);
  return (std::exp(up) - std::exp(dn)) / (2.0 * b);
}

// truncation point for the shifted-Gaussian envelopes, encoded as
// envelope_decay so that sqrt(ln(1/abs_tol)/c) lands on it.
QuadratureSpec with_truncation(const QuadratureSpec& spec, double shift, double d) {
  double xmax = shift + (d + 1.0) * std::sqrt(2.0 * std::log(1.0 / spec.abs_tol));
  QuadratureSpec s = spec;
  s.envelope_decay = std::log(1.0 / spec.abs_tol) / (xmax * xmax);
  return s;
}

// derivatives of the Faddeeva function at z0: w' = -2 z w + 2i/sqrt(pi),
// w^{(n+1)} = -2 z w^{(n)} - 2 n w^{(n-1)}.
template <int N>
std::array<Complex, N + 1> w_derivatives(Complex z0) {
  std::array<Complex, N + 1> d;
  d[0] = faddeeva_w(z0);
  d[1] = -2.0 * z0 * d[0] + Complex(0.0, 2.0 / kSqrtPi);
  for (int n = 1; n < N; ++n) d[n + 1] = -2.0 * z0 * d[n] - 2.0 * (double)n * d[n - 1];
  return d;
}

constexpr int kSeriesOrder = 8;
const double kFactorial[kSeriesOrder + 1] = {1, 1, 2, 6, 24, 120, 720, 5040, 40320};

ElementResult pack(Complex prefactor, const quadrature::QuadResult& q) {
  ElementResult r;
  r.value = prefactor * q.value;
  r.err_estimate = std::abs(prefactor) * q.err_estimate;
  r.evals = q.evals;
  r.converged = q.converged;
  return r;
}

// ---------------------------------------------------------------------------
// L_AA
// ---------------------------------------------------------------------------

double laa_quad_core_series(double xi, double A) {
  // core = (pi/xi) Im[(1 + i A xi + xi^2) w((xi + iA)/sqrt2)] - sqrt(2 pi);
  // the n = 0,1 Taylor terms cancel the subtraction exactly, so start at n = 2.
  auto wd = w_derivatives<kSeriesOrder>(Complex(0.0, A / kSqrt2));
  // coefficients of w(z0 + xi/sqrt2) in powers of xi
  std::array<Complex, kSeriesOrder + 1> c;
  double p = 1.0;
  for (int n = 0; n <= kSeriesOrder; ++n) {
    c[n] = wd[n] * (p / kFactorial[n]);
    p /= kSqrt2;
  }
  // multiply by (1 + i A xi + xi^2)
  std::array<Complex, kSeriesOrder + 1> f{};
  for (int n = 0; n <= kSeriesOrder; ++n) {
    f[n] += c[n];
    if (n + 1 <= kSeriesOrder) f[n + 1] += Complex(0.0, A) * c[n];
    if (n + 2 <= kSeriesOrder) f[n + 2] += c[n];
  }
  double core = 0.0, xp = xi;
  for (int n = 2; n <= kSeriesOrder; ++n) {
    core += f[n].imag() * xp;
    xp *= xi;
  }
  return kPi * core;
}

ElementResult laa_impl(const Params& p, const QuadratureSpec& spec, Coupling c) {
  p.validate();
  const double A = p.alpha + p.eta;
  const double d = p.delta;
  QuadratureSpec s = with_truncation(spec, 0.0, d);
  quadrature::QuadResult q;
  if (c == Coupling::Linear) {
    q = quadrature::integrate_semi_infinite(
        [&](double xi) -> Complex {
          Complex z2 = Complex(xi, A) / kSqrt2;
          return xi * std::exp(-xi * xi / (2.0 * d * d)) * faddeeva_w(z2).imag();
        },
        s);
    return pack(std::exp(-p.alpha * p.alpha / 2.0) / (4.0 * kPi * d * d * d), q);
  }
  q = quadrature::integrate_semi_infinite(
      [&](double xi) -> Complex {
        double core;
        if (xi < kXiSwitch) {
          core = laa_quad_core_series(xi, A);
        } else {
          Complex z2 = Complex(xi, A) / kSqrt2;
          Complex K(1.0 + xi * xi, A * xi);
          core = (kPi / xi) * (K * faddeeva_w(z2)).imag() - kSqrt2Pi;
        }
        return std::exp(-xi * xi / (2.0 * d * d)) * core;
      },
      s);
  double pi4 = kPi * kPi * kPi * kPi;
  return pack(std::exp(-p.alpha * p.alpha / 2.0) / (16.0 * pi4 * d * d * d), q);
}

// ---------------------------------------------------------------------------
// L_AB
// ---------------------------------------------------------------------------

Complex lab_quad_bracket_series(double xi, Complex z10) {
  // bracket = (pi/(4 xi^2)) i [(1+sqrt2 xi z1) w(-z1) - (1+sqrt2 xi z2) w(z2)]
  //           - sqrt(2 pi)/(2 xi),  z1 = z10 + xi/sqrt2, z2 = -z10 + xi/sqrt2;
  // n = 0,1 cancel exactly against the 1/xi subtraction.
  auto wd = w_derivatives<kSeriesOrder>(-z10);
  std::array<Complex, kSeriesOrder + 1> cm, cp;  // w(-z10 -/+ xi/sqrt2)
  double p = 1.0;
  for (int n = 0; n <= kSeriesOrder; ++n) {
    double a = p / kFactorial[n];
    cm[n] = wd[n] * (n % 2 ? -a : a);
    cp[n] = wd[n] * a;
    p /= kSqrt2;
  }
  // (1 + sqrt2 xi z1) = 1 + sqrt2 z10 xi + xi^2 ; (1 + sqrt2 xi z2) = 1 - sqrt2 z10 xi + xi^2
  std::array<Complex, kSeriesOrder + 1> f{};
  Complex s10 = kSqrt2 * z10;
  for (int n = 0; n <= kSeriesOrder; ++n) {
    f[n] += cm[n] - cp[n];
    if (n + 1 <= kSeriesOrder) f[n + 1] += s10 * (cm[n] + cp[n]);
    if (n + 2 <= kSeriesOrder) f[n + 2] += cm[n] - cp[n];
  }
  Complex br(0.0, 0.0);
  double xp = 1.0;
  for (int n = 2; n <= kSeriesOrder; ++n) {
    br += f[n] * xp;
    xp *= xi;
  }
  return (kI * kPi / 4.0) * br;
}

ElementResult lab_impl(const Params& p, const QuadratureSpec& spec, Coupling c) {
  p.validate();
  const double A = p.alpha + p.eta;
  const double d = p.delta;
  const double D = p.gamma_a - p.gamma_b;
  QuadratureSpec s = with_truncation(spec, p.beta + std::abs(D), d);
  // prefactor e^{-D^2/2 + (D - i alpha)^2/2} = e^{-i alpha D - alpha^2/2}
  Complex phase = std::exp(Complex(-p.alpha * p.alpha / 2.0, -p.alpha * D));
  quadrature::QuadResult q;
  if (c == Coupling::Linear) {
    q = quadrature::integrate_semi_infinite(
        [&](double xi) -> Complex {
          Complex z1 = Complex(xi + D, -A) / kSqrt2;
          Complex z2 = Complex(xi - D, A) / kSqrt2;
          return radial_kernel(xi, p.beta, d) * (faddeeva_w(-z1) - faddeeva_w(z2));
        },
        s);
    return pack(kI * phase / (8.0 * kPi * d), q);
  }
  Complex z10 = Complex(D, -A) / kSqrt2;
  q = quadrature::integrate_semi_infinite(
      [&](double xi) -> Complex {
        Complex br;
        if (xi < kXiSwitch) {
          br = lab_quad_bracket_series(xi, z10);
        } else {
          Complex z1 = Complex(xi + D, -A) / kSqrt2;
          Complex z2 = Complex(xi - D, A) / kSqrt2;
          br = (kPi / (4.0 * xi * xi)) * kI *
                   ((1.0 + kSqrt2 * xi * z1) * faddeeva_w(-z1) -
                    (1.0 + kSqrt2 * xi * z2) * faddeeva_w(z2)) -
               kSqrt2Pi / (2.0 * xi);
        }
        return radial_kernel(xi, p.beta, d) * br;
      },
      s);
  double pi4 = kPi * kPi * kPi * kPi;
  return pack(phase / (8.0 * pi4 * d), q);
}

// ---------------------------------------------------------------------------
// M terms (simultaneous switching)
// ---------------------------------------------------------------------------

void require_simultaneous(const Params& p, const char* who) {
  if (p.gamma_a != p.gamma_b)
    fail(ErrorKind::InvalidArgument,
         std::string(who) + ": closed form requires gamma_a == gamma_b");
}

// J(zeta) = int_0^inf e^{-v^2/2}/(v - zeta) dv
//         = (i pi / 2) w(zeta/sqrt2) + (1/2) e^{-zeta^2/2} E1(-zeta^2/2)
Complex one_sided_gauss(Complex zeta) {
  return (kI * kPi / 2.0) * faddeeva_w(zeta / kSqrt2) +
         0.5 * e1x(-zeta * zeta / 2.0);
}

ElementResult m_linear_impl(const Params& p, const QuadratureSpec& spec) {
  p.validate();
  require_simultaneous(p, "m_linear_simultaneous");
  const double d = p.delta;
  QuadratureSpec s = with_truncation(spec, p.beta, d);
  quadrature::QuadResult q;
  if (p.eta == 0.0) {
    q = quadrature::integrate_semi_infinite(
        [&](double xi) -> Complex {
          // limit of J(xi + i eta) - J(-xi + i eta) is i pi w(xi/sqrt2)
          Complex w = faddeeva_w(Complex(xi / kSqrt2, 0.0));
          return radial_kernel(xi, p.beta, d) * (kI * kPi * w);
        },
        s);
  } else {
    q = quadrature::integrate_semi_infinite(
        [&](double xi) -> Complex {
          Complex br = one_sided_gauss(Complex(xi, p.eta)) -
                       one_sided_gauss(Complex(-xi, p.eta));
          return radial_kernel(xi, p.beta, d) * br;
        },
        s);
  }
  Complex pref = std::exp(Complex(-p.alpha * p.alpha / 2.0, 2.0 * p.alpha * p.gamma_a)) /
                 (4.0 * kPi * kPi * d);
  return pack(pref, q);
}

// g1(xi) such that G(xi) = sinh(xi b/d^2) e^{-xi^2/(2 d^2)} g1(xi) / xi^2.
Complex g_bracket(double xi, double eta) {
  Complex u(eta, xi);
  Complex Kbar(1.0 + xi * xi, -eta * xi);
  bool small = xi < kXiSwitch && eta <= 1.0;
  if (!small) {
    return Complex(-4.0 * kSqrt2Pi * xi, 8.0 * eta * xi / (eta * eta + xi * xi)) +
           4.0 * kI * (Kbar * e1x(u * u / 2.0)).imag() -
           4.0 * kPi * (Kbar * specfun::erfcx(u / kSqrt2)).imag();
  }
  // near xi = 0 the 1/eta pieces of the E1 log and the Lorentzian cancel;
  // split the log off analytically and regroup the cancelling terms:
  //   g1 = -4 sqrt(2pi) xi - 4 pi Im[Kbar erfcx(u/sqrt2)]
  //        + 4 Im[P (ln2 - gamma + Ein(u^2/2))] i-part
  //        - 8 ln|u| Im P + 4 (sin 2theta - 2 theta) + 8 theta (1 - Re P),
  // with P = Kbar e^{u^2/2}, theta = atan2(xi, eta).
  double theta = std::atan2(xi, eta);
  double lnu = 0.5 * std::log(eta * eta + xi * xi);
  double sexp = (eta * eta - xi * xi) / 2.0;
  double ce = std::cos(eta * xi), se = std::sin(eta * xi);
  Complex P = Kbar * std::exp(sexp) * Complex(ce, se);
  // Ein(z) = sum (-1)^{k+1} z^k/(k k!), |z| <= ~1 here
  Complex z = u * u / 2.0;
  Complex term(1.0, 0.0), ein(0.0, 0.0);
  for (int k = 1; k <= 24; ++k) {
    term *= -z / (double)k;
    ein -= term / (double)k;
    if (std::norm(term) < 1e-36) break;
  }
  double c1 = std::log(2.0) - specfun::kEulerGamma;
  double im_main = (P * (c1 + ein)).imag() - 2.0 * lnu * P.imag();
  // sin(2 theta) - 2 theta, stable for small theta
  double x2 = 2.0 * theta;
  double sinc_def = (std::abs(x2) < 0.5)
                        ? -x2 * x2 * x2 / 6.0 * (1.0 - x2 * x2 / 20.0 * (1.0 - x2 * x2 / 42.0))
                        : std::sin(x2) - x2;
  // 1 - Re P without cancellation
  double C = (1.0 + xi * xi) * ce + eta * xi * se;
  double Cm1 = xi * xi * ce - 2.0 * std::sin(eta * xi / 2.0) * std::sin(eta * xi / 2.0) +
               eta * xi * se;
  double one_minus_reP = -(std::expm1(sexp) * C + Cm1);
  double im_rest = sinc_def + 2.0 * theta * one_minus_reP;
  return Complex(-4.0 * kSqrt2Pi * xi - 4.0 * kPi * (Kbar * specfun::erfcx(u / kSqrt2)).imag(),
                 4.0 * im_main + 4.0 * im_rest);
}

// eta = 0 pointwise limit of G, stable real/imaginary split.
Complex g_limit_eta0(double xi, double b, double d) {
  double re;
  if (xi < 0.1) {
    double x2 = xi * xi;
    re = kSqrt2Pi * xi * x2 * (2.0 / 3.0 + x2 * (-4.0 / 15.0 + x2 * (2.0 / 35.0)));
  } else {
    // -sqrt(2pi) xi + pi (1+xi^2) (2/sqrt(pi)) D(xi/sqrt2)
    double dawson = 0.5 * kSqrtPi * faddeeva_w(Complex(xi / kSqrt2, 0.0)).imag();
    re = -kSqrt2Pi * xi + kPi * (1.0 + xi * xi) * (2.0 / kSqrtPi) * dawson;
  }
  double im = -kPi * (1.0 + xi * xi) * std::exp(-xi * xi / 2.0);
  double kern = std::exp(-xi * xi / (2.0 * d * d)) * std::sinh(xi * b / (d * d));
  return (4.0 / (xi * xi)) * kern * Complex(re, im);
}

ElementResult m_quadratic_impl(const Params& p, const QuadratureSpec& spec) {
  p.validate();
  require_simultaneous(p, "m_quadratic_simultaneous");
  if (p.eta <= 0.0)
    fail(ErrorKind::CutoffRequired,
         "m_quadratic_simultaneous: logarithmically divergent as eta -> 0; eta > 0 required");
  const double d = p.delta;
  QuadratureSpec s = with_truncation(spec, p.beta, d);
  quadrature::QuadResult q = quadrature::integrate_semi_infinite(
      [&](double xi) -> Complex {
        return radial_kernel(xi, p.beta, d) * g_bracket(xi, p.eta) / (xi * xi);
      },
      s);
  double pi4 = kPi * kPi * kPi * kPi;
  // radial_kernel already divides by beta and carries e^{-beta^2/(2 delta^2)}
  Complex pref = -std::exp(Complex(-p.alpha * p.alpha / 2.0, 2.0 * p.alpha * p.gamma_a)) /
                 (64.0 * pi4 * d);
  return pack(pref, q);
}

// ---------------------------------------------------------------------------
// f1 / f2 closed forms (T = 1 core; general T by scaling)
// ---------------------------------------------------------------------------

void check_fm_args(double q, double eps, double T) {
  if (!(q > 0)) fail(ErrorKind::InvalidArgument, "f_m: q > 0 required");
  if (!(eps > 0)) fail(ErrorKind::InvalidArgument, "f_m: eps > 0 required");
  if (!(T > 0)) fail(ErrorKind::InvalidArgument, "f_m: T > 0 required");
}

Complex f1_unit(double q, double om, double eps, double D) {
  Complex z1 = Complex(q + D, -(om + eps)) / kSqrt2;
  Complex z2 = Complex(q - D, om + eps) / kSqrt2;
  Complex g = std::exp(Complex(D * D / 2.0 - om * om / 2.0, -D * om));
  return (kI * kPi / (2.0 * q)) * g * (faddeeva_w(-z1) - faddeeva_w(z2));
}

Complex f2_unit(double q, double om, double eps, double D) {
  Complex z1 = Complex(q + D, -(om + eps)) / kSqrt2;
  Complex z2 = Complex(q - D, om + eps) / kSqrt2;
  Complex g = std::exp(Complex(D * D / 2.0 - om * om / 2.0, -D * om));
  Complex br = (kPi / (4.0 * q * q * q)) *
                   (kI * (1.0 + kSqrt2 * q * z1) * faddeeva_w(-z1) -
                    kI * (1.0 + kSqrt2 * q * z2) * faddeeva_w(z2)) -
               kSqrt2Pi / (2.0 * q * q);
  return g * br;
}

}  // namespace

ElementResult l_aa_linear(const Params& p, const QuadratureSpec& spec) {
  return laa_impl(p, spec, Coupling::Linear);
}
ElementResult l_aa_quadratic(const Params& p, const QuadratureSpec& spec) {
  return laa_impl(p, spec, Coupling::Quadratic);
}
ElementResult l_ab_linear(const Params& p, const QuadratureSpec& spec) {
  return lab_impl(p, spec, Coupling::Linear);
}
ElementResult l_ab_quadratic(const Params& p, const QuadratureSpec& spec) {
  return lab_impl(p, spec, Coupling::Quadratic);
}
ElementResult m_linear_simultaneous(const Params& p, const QuadratureSpec& spec) {
  return m_linear_impl(p, spec);
}
ElementResult m_quadratic_simultaneous(const Params& p, const QuadratureSpec& spec) {
  return m_quadratic_impl(p, spec);
}

ElementResult element(Term term, Coupling coupling, const Params& p,
                      const QuadratureSpec& spec) {
  switch (term) {
    case Term::LAA:
      return coupling == Coupling::Linear ? l_aa_linear(p, spec) : l_aa_quadratic(p, spec);
    case Term::LAB:
      return coupling == Coupling::Linear ? l_ab_linear(p, spec) : l_ab_quadratic(p, spec);
    case Term::M:
      return coupling == Coupling::Linear ? m_linear_simultaneous(p, spec)
                                          : m_quadratic_simultaneous(p, spec);
  }
  fail(ErrorKind::InvalidArgument, "element: unknown term");
}

Complex f1(double q, double omega, double eps, double t_a, double t_b, double T) {
  check_fm_args(q, eps, T);
  if (T == 1.0) return f1_unit(q, omega, eps, t_a - t_b);
  return (1.0 / T) * f1_unit(q / T, T * omega, eps / T, (t_a - t_b) / T);
}

Complex f2(double q, double omega, double eps, double t_a, double t_b, double T) {
  check_fm_args(q, eps, T);
  if (T == 1.0) return f2_unit(q, omega, eps, t_a - t_b);
  return (1.0 / (T * T * T)) * f2_unit(q / T, T * omega, eps / T, (t_a - t_b) / T);
}

Complex g_integrand(double xi, const Params& p) {
  p.validate();
  if (!(xi > 0)) fail(ErrorKind::InvalidArgument, "g_integrand: xi > 0 required");
  if (p.eta == 0.0) return g_limit_eta0(xi, p.beta, p.delta);
  double d2 = p.delta * p.delta;
  double kern = std::sinh(xi * p.beta / d2) * std::exp(-xi * xi / (2.0 * d2));
  Complex v = kern * g_bracket(xi, p.eta) / (xi * xi);
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
    fail(ErrorKind::OverflowDomain, "g_integrand: overflow");
  return v;
}

}  // namespace udw::elements
