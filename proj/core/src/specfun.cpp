#include "udw/specfun.hpp"

#include <array>
#include <cmath>

namespace udw::specfun {

namespace {

constexpr double kSqrtPi = 1.7724538509055160272981675;
constexpr double kTwoOverSqrtPi = 1.1283791670955125738961589;

// ---------------------------------------------------------------------------
// Faddeeva function, upper half-plane kernel.
//
// Rational expansion of w on Im z >= 0 (Weideman's method): a single global
// approximation w(z) ~ 1/sqrt(pi)/(L-iz) + 2 p(Z)/(L-iz)^2 with
// Z = (L+iz)/(L-iz). Coefficients come from a cosine transform of
// e^{-t^2}(L^2+t^2) sampled at t = L tan(theta/2); computed once at startup
// in long double. N = 64 keeps the error near 1e-15 on the closed upper
// half-plane.
// ---------------------------------------------------------------------------
constexpr int kWeidemanN = 64;

struct WeidemanTable {
  double L;
  std::array<double, kWeidemanN> a;  // a[0] multiplies Z^{N-1}
  WeidemanTable() {
    const int N = kWeidemanN;
    const int M = 2 * N;
    const long double Lld = std::sqrt((long double)N / std::sqrt(2.0L));
    const long double pi = 3.14159265358979323846264338327950288L;
    std::array<long double, 2 * kWeidemanN> f{};  // f[k], k = 1..M-1 used
    for (int k = 1; k < M; ++k) {
      long double t = Lld * std::tan((long double)k * pi / (2 * M));
      f[k] = std::exp(-t * t) * (Lld * Lld + t * t);
    }
    // a_n = (1/2M) [ f_0 + 2 sum_{k=1}^{M-1} f_k cos(pi n k / M) ], f_0 = f at t=0
    long double f0 = Lld * Lld;  // e^0 (L^2 + 0)
    for (int n = 1; n <= N; ++n) {
      long double s = f0;
      for (int k = 1; k < M; ++k)
        s += 2.0L * f[k] * std::cos(pi * (long double)n * k / M);
      // polyval order: a[0] = a_N (highest power Z^{N-1}), ..., a[N-1] = a_1
      a[N - n] = (double)(s / (2 * M));
    }
    L = (double)Lld;
  }
};

const WeidemanTable& weideman() {
  static const WeidemanTable table;
  return table;
}

// Laplace continued fraction, excellent for |z| large in the upper half-plane.
Complex w_continued_fraction(Complex z) {
  // w(z) = (i/sqrt(pi)) / (z - 1/2/(z - 1/(z - 3/2/(z - 2/(z - ...)))))
  const int depth = 14;
  Complex r(0.0, 0.0);
  for (int k = depth; k >= 1; --k) r = (0.5 * k) / (z - r);
  return Complex(0.0, 1.0 / kSqrtPi) / (z - r);
}

// w on Im z >= 0.
Complex w_upper(Complex z) {
  if (std::norm(z) >= 150.0) return w_continued_fraction(z);
  const WeidemanTable& t = weideman();
  Complex iz(-z.imag(), z.real());
  Complex d = t.L - iz;
  Complex Z = (t.L + iz) / d;
  Complex p(0.0, 0.0);
  for (int n = 0; n < kWeidemanN; ++n) p = p * Z + t.a[n];
  return 2.0 * p / (d * d) + (1.0 / kSqrtPi) / d;
}

bool finite(Complex v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); }

// Maclaurin series of erf, |z| <~ 1.5.
Complex erf_series(Complex z) {
  Complex z2 = z * z;
  Complex term = z;
  Complex sum = z;
  for (int n = 1; n < 40; ++n) {
    term *= -z2 / (double)n;
    Complex add = term / (double)(2 * n + 1);
    sum += add;
    if (std::norm(add) < 1e-36 * std::norm(sum)) break;
  }
  return kTwoOverSqrtPi * sum;
}

// ---------------------------------------------------------------------------
// Complex E1 building blocks (all for the scaled form e^z E1(z)).
// ---------------------------------------------------------------------------

// Ein(z) = sum_{k>=1} (-1)^{k+1} z^k / (k k!), entire; E1 = -gamma - Log z + Ein.
Complex ein_series(Complex z) {
  Complex term(1.0, 0.0);
  Complex sum(0.0, 0.0);
  for (int k = 1; k <= 400; ++k) {
    term *= -z / (double)k;
    Complex add = -term / (double)k;  // (-1)^{k+1} z^k/(k k!) = -(-z)^k/(k k!)
    sum += add;
    if (std::norm(add) < 1e-34 * (std::norm(sum) + 1e-300)) break;
  }
  return sum;
}

// Modified Lentz on the contracted fraction
// e^z E1(z) = 1/(z+1- 1/(z+3- 4/(z+5- 9/(z+7- ...)))), partial numerators -k^2.
Complex e1x_cf(Complex z) {
  const double tiny = 1e-300;
  Complex b = z + 1.0;
  Complex c(1.0 / tiny, 0.0);
  Complex d = 1.0 / b;
  Complex h = d;
  for (int i = 1; i <= 500; ++i) {
    double a = -(double)i * (double)i;
    b += 2.0;
    d = 1.0 / (a * d + b);
    c = b + a / c;
    Complex del = c * d;
    h *= del;
    if (std::abs(del - 1.0) < 1e-16) break;
  }
  return h;
}

// Asymptotic e^{-x} Ei(x) = sum k!/x^{k+1}, x >> 1.
double ei_scaled_asymptotic(double x) {
  double term = 1.0 / x;
  double sum = term;
  for (int k = 1; k <= 40; ++k) {
    term *= (double)k / x;
    sum += term;
    if (term < 1e-18 * sum) break;
  }
  return sum;
}

// Fallback for the wedge near (but not on) the negative axis at moderate |z|:
// e^z E1(z) = int_0^inf e^{-s}/(s+z) ds, pole at s = -z stays off the path
// by at least ~0.35|Re z| in this regime, so short composite Gauss panels
// resolve it to machine accuracy.
Complex e1x_quadrature(Complex z) {
  static const double gx[8] = {0.0, 0.2011940939974345, 0.3941513470775634,
                               0.5709721726085388, 0.7244177313601701,
                               0.8482065834104272, 0.9372733924007060,
                               0.9879925180204854};
  static const double gw[8] = {0.2025782419255613, 0.1984314853271116,
                               0.1861610000155622, 0.1662692058169939,
                               0.1395706779261543, 0.1071592204671719,
                               0.0703660474881081, 0.0307532419961173};
  static const double edges[12] = {0.0, 1.0,  1.6,  2.5, 3.8, 5.6,
                                   8.4, 12.5, 19.0, 28.0, 42.0, 60.0};
  Complex total(0.0, 0.0);
  for (int p = 0; p + 1 < 12; ++p) {
    double mid = 0.5 * (edges[p] + edges[p + 1]);
    double half = 0.5 * (edges[p + 1] - edges[p]);
    Complex acc = gw[0] * (std::exp(-mid) / (mid + z));
    for (int i = 1; i < 8; ++i) {
      double sp = mid + half * gx[i];
      double sm = mid - half * gx[i];
      acc += gw[i] * (std::exp(-sp) / (sp + z) + std::exp(-sm) / (sm + z));
    }
    total += half * acc;
  }
  return total;
}

}  // namespace

Complex faddeeva_w(Complex z) {
  if (z.imag() >= 0.0) return w_upper(z);
  // w(z) = 2 e^{-z^2} - w(-z); the reflection term can overflow.
  Complex mz2 = -z * z;
  if (mz2.real() > 705.0)
    fail(ErrorKind::OverflowDomain, "faddeeva_w: reflection overflows for this argument");
  Complex v = 2.0 * std::exp(mz2) - w_upper(-z);
  if (!finite(v)) fail(ErrorKind::OverflowDomain, "faddeeva_w: overflow");
  return v;
}

Complex erfcx(Complex z) {
  return faddeeva_w(Complex(-z.imag(), z.real()));
}

double dawson(double x) {
  // w(x) = e^{-x^2} + (2i/sqrt(pi)) D(x) for real x
  return 0.5 * kSqrtPi * w_upper(Complex(x, 0.0)).imag();
}

Complex erf(Complex z) {
  if (std::abs(z) > 30.0)
    fail(ErrorKind::OverflowDomain, "erf: |z| exceeds guard radius 30");
  if (std::abs(z) < 1.5) return erf_series(z);
  // erf(z) = 1 - e^{-z^2} w(iz) for Re z >= 0; odd reflection otherwise.
  bool flip = z.real() < 0.0;
  Complex zz = flip ? -z : z;
  Complex iz(-zz.imag(), zz.real());  // i*zz, Im >= 0 (upper half)
  Complex v = 1.0 - std::exp(-zz * zz) * w_upper(iz);
  if (!finite(v)) fail(ErrorKind::OverflowDomain, "erf: overflow");
  return flip ? -v : v;
}

Complex erfc(Complex z) {
  if (std::abs(z) > 30.0)
    fail(ErrorKind::OverflowDomain, "erfc: |z| exceeds guard radius 30");
  if (z.real() >= 0.0) {
    Complex iz(-z.imag(), z.real());
    Complex v = std::exp(-z * z) * w_upper(iz);
    if (!finite(v)) fail(ErrorKind::OverflowDomain, "erfc: overflow");
    return v;
  }
  Complex v = 2.0 - erfc(-z);
  if (!finite(v)) fail(ErrorKind::OverflowDomain, "erfc: overflow");
  return v;
}

Complex erfi(Complex z) {
  // erfi(z) = -i erf(iz)
  Complex v = erf(Complex(-z.imag(), z.real()));
  return Complex(v.imag(), -v.real());
}

double expint_ei(double x) {
  if (x == 0.0) fail(ErrorKind::SingularArgument, "expint_ei: Ei(0) is singular");
  if (x > 700.0) fail(ErrorKind::OverflowDomain, "expint_ei: overflow for x > 700");
  if (x > 0.0) {
    if (x > 44.0) return std::exp(x) * ei_scaled_asymptotic(x);
    // all-positive series: Ei(x) = gamma + ln x + sum x^k/(k k!)
    double term = 1.0, sum = 0.0;
    for (int k = 1; k <= 400; ++k) {
      term *= x / (double)k;
      double add = term / (double)k;
      sum += add;
      if (add < 1e-18 * sum) break;
    }
    return kEulerGamma + std::log(x) + sum;
  }
  // Ei(-y) = -E1(y), y > 0
  double y = -x;
  if (y <= 4.5) {
    Complex e1 = -kEulerGamma - std::log(y) + ein_series(Complex(y, 0.0));
    return -e1.real();
  }
  Complex h = e1x_cf(Complex(y, 0.0));
  return -std::exp(-y) * h.real();
}

Complex e1x(Complex z) {
  double x = z.real(), y = z.imag();
  if (x == 0.0 && y == 0.0) fail(ErrorKind::SingularArgument, "e1x: E1(0) is singular");
  double r = std::abs(z);
  if (r <= 4.5) {
    Complex e1 = -kEulerGamma - std::log(z) + ein_series(z);
    return std::exp(z) * e1;
  }
  if (x >= 0.0) return e1x_cf(z);
  if (y == 0.0) fail(ErrorKind::SingularArgument, "e1x: argument on the branch cut");
  if (std::abs(y) <= 0.35 * (-x)) {
    // hugging the negative axis: continuation through Ei
    Complex ez = std::exp(z);  // tiny
    if (-x > 44.0) {
      // e^z E1(z) = -[asymptotic of e^{z}Ei(-z)] - i pi sgn(y) e^z
      Complex mz = -z;
      Complex term = 1.0 / mz, sum = term;
      for (int k = 1; k <= 50; ++k) {
        term *= (double)k / mz;
        sum += term;
        if (std::abs(term) < 1e-18 * std::abs(sum)) break;
      }
      double sgn = y > 0.0 ? 1.0 : -1.0;
      return -sum - Complex(0.0, M_PI * sgn) * ez;
    }
    // Ein series is cancellation-free this close to the axis
    Complex e1 = -kEulerGamma - std::log(z) + ein_series(z);
    return ez * e1;
  }
  if (r < 52.0) return e1x_quadrature(z);
  return e1x_cf(z);
}

Complex expint_e1(Complex z) {
  Complex v = std::exp(-z) * e1x(z);
  if (!finite(v)) fail(ErrorKind::OverflowDomain, "expint_e1: overflow");
  return v;
}

Complex expint_ei_c(Complex z) {
  if (z.imag() == 0.0) {
    if (z.real() == 0.0) fail(ErrorKind::SingularArgument, "expint_ei_c: Ei(0)");
    return Complex(expint_ei(z.real()), 0.0);
  }
  double sgn = z.imag() > 0.0 ? 1.0 : -1.0;
  return -expint_e1(-z) + Complex(0.0, M_PI * sgn);
}

Complex shi(Complex z) {
  if (std::abs(z.real()) > 350.0)
    fail(ErrorKind::OverflowDomain, "shi: |Re z| exceeds guard 350");
  if (std::abs(z) <= 3.0) {
    // sum z^{2n+1} / ((2n+1)(2n+1)!)
    Complex z2 = z * z;
    Complex p = z;  // z^{2n+1}/(2n+1)!
    Complex sum = z;
    for (int n = 1; n <= 60; ++n) {
      p *= z2 / (double)((2 * n) * (2 * n + 1));
      Complex add = p / (double)(2 * n + 1);
      sum += add;
      if (std::norm(add) < 1e-34 * std::norm(sum)) break;
    }
    return sum;
  }
  if (z.imag() == 0.0 && z.real() < 0.0) return -shi(-z);  // odd, avoids the E1 cut
  Complex ei = expint_ei_c(z);
  Complex e1 = expint_e1(z);
  return 0.5 * (ei + e1);
}

Complex chi(Complex z) {
  if (z == Complex(0.0, 0.0))
    fail(ErrorKind::SingularArgument, "chi: logarithmic singularity at 0");
  if (std::abs(z.real()) > 350.0)
    fail(ErrorKind::OverflowDomain, "chi: |Re z| exceeds guard 350");
  if (std::abs(z) <= 3.0) {
    // gamma + Log z + sum z^{2n} / (2n (2n)!)
    Complex z2 = z * z;
    Complex p(1.0, 0.0);  // z^{2n}/(2n)!
    Complex sum(0.0, 0.0);
    for (int n = 1; n <= 60; ++n) {
      p *= z2 / (double)((2 * n - 1) * (2 * n));
      Complex add = p / (double)(2 * n);
      sum += add;
      if (std::norm(add) < 1e-34 * (std::norm(sum) + 1e-300)) break;
    }
    return kEulerGamma + std::log(z) + sum;
  }
  if (z.imag() == 0.0 && z.real() < 0.0) {
    // principal value on the cut: Chi(-x) = Chi(x) + i pi (Log(-x) = ln x + i pi)
    Complex v = chi(-z);
    return Complex(v.real(), M_PI);
  }
  Complex ei = expint_ei_c(z);
  Complex e1 = expint_e1(z);
  return 0.5 * (ei - e1);
}

}  // namespace udw::specfun
