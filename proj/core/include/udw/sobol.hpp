#pragma once

#include <array>
#include <cstdint>

namespace udw::sobol {

// Low-discrepancy Sobol sequence in up to 8 dimensions (gray-code order,
// fixed direction numbers => bit-reproducible runs). Point 0 is skipped.
class Sobol8 {
public:
  explicit Sobol8(int dim);

  // next point in [0,1)^dim
  void next(double* out);

private:
  int dim_;
  std::uint64_t index_ = 0;
  std::array<std::uint32_t, 8> state_{};
  std::array<std::array<std::uint32_t, 32>, 8> dir_{};
};

// Inverse standard-normal CDF (Acklam's rational approximation, ~1e-9).
double inverse_normal_cdf(double u);

}  // namespace udw::sobol
