#include "udw/sobol.hpp"

#include <bit>
#include <cmath>

#include "udw/types.hpp"

namespace udw::sobol {

namespace {

// primitive polynomial degree s, coefficient a, initial direction numbers m
// (Joe-Kuo table, dimensions 2..8; dimension 1 is van der Corput).
struct DimInit {
  int s;
  std::uint32_t a;
  std::uint32_t m[5];
};

const DimInit kDims[7] = {
    {1, 0, {1, 0, 0, 0, 0}},  {2, 1, {1, 3, 0, 0, 0}},  {3, 1, {1, 3, 1, 0, 0}},
    {3, 2, {1, 1, 1, 0, 0}},  {4, 1, {1, 1, 3, 3, 0}},  {4, 4, {1, 3, 5, 13, 0}},
    {5, 2, {1, 1, 5, 5, 17}},
};

}  // namespace

Sobol8::Sobol8(int dim) : dim_(dim) {
  if (dim < 1 || dim > 8) fail(ErrorKind::InvalidArgument, "Sobol8: 1 <= dim <= 8");
  const int bits = 32;
  // dimension 0: v_k = 2^{31-k}
  for (int k = 0; k < bits; ++k) dir_[0][k] = 1u << (31 - k);
  for (int d = 1; d < dim; ++d) {
    const DimInit& di = kDims[d - 1];
    int s = di.s;
    std::array<std::uint32_t, 32> m{};
    for (int k = 0; k < s; ++k) m[k] = di.m[k];
    for (int k = s; k < bits; ++k) {
      std::uint32_t v = m[k - s] ^ (m[k - s] << s);
      for (int j = 1; j < s; ++j)
        if ((di.a >> (s - 1 - j)) & 1u) v ^= m[k - j] << j;
      m[k] = v;
    }
    for (int k = 0; k < bits; ++k) dir_[d][k] = m[k] << (31 - k);
  }
}

void Sobol8::next(double* out) {
  // gray-code update: flip the direction of the lowest zero bit of the index
  std::uint64_t i = index_++;
  int c = std::countr_one(i);  // position of lowest zero bit
  for (int d = 0; d < dim_; ++d) {
    state_[d] ^= dir_[d][c];
    out[d] = state_[d] * 0x1p-32;
  }
}

double inverse_normal_cdf(double u) {
  // Acklam's algorithm
  static const double a[6] = {-3.969683028665376e+01, 2.209460984245205e+02,
                              -2.759285104469687e+02, 1.383577518672690e+02,
                              -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[5] = {-5.447609879822406e+01, 1.615858368580409e+02,
                              -1.556989798598866e+02, 6.680131188771972e+01,
                              -1.328068155288572e+01};
  static const double c[6] = {-7.784894002430293e-03, -3.223964580411365e-01,
                              -2.400758277161838e+00, -2.549732539343734e+00,
                              4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[4] = {7.784695709041462e-03, 3.224671290700398e-01,
                              2.445134137142996e+00, 3.754408661907416e+00};
  const double plow = 0.02425, phigh = 1 - plow;
  if (!(u > 0.0 && u < 1.0))
    fail(ErrorKind::InvalidArgument, "inverse_normal_cdf: u in (0,1) required");
  if (u < plow) {
    double q = std::sqrt(-2 * std::log(u));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
  }
  if (u > phigh) {
    double q = std::sqrt(-2 * std::log(1 - u));
    return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
  }
  double q = u - 0.5;
  double r = q * q;
  return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
         (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1);
}

}  // namespace udw::sobol
