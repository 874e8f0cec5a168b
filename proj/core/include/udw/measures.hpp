#pragma once

#include <array>

#include "udw/types.hpp"

namespace udw::measures {

// Coupling-normalized inputs to the two-detector state.
struct Elements4 {
  double l_aa = 0.0;
  double l_bb = 0.0;
  Complex l_ab{0.0, 0.0};
  Complex m{0.0, 0.0};
};

// Leading-order two-detector state in the basis {gg, eg, ge, ee}:
//   diag(1 - La - Lb, La, Lb, 0), corners m_w (and conjugate), inner
//   off-diagonal lab_w (and conjugate), where La = lambda_a^2 l_aa etc.
// Hermitian with unit trace by construction.
struct DensityMatrix4 {
  double l_aa = 0.0;
  double l_bb = 0.0;
  Complex l_ab{0.0, 0.0};
  Complex m{0.0, 0.0};
  double lambda_a = 0.0;
  double lambda_b = 0.0;

  double La() const { return lambda_a * lambda_a * l_aa; }
  double Lb() const { return lambda_b * lambda_b * l_bb; }
  Complex Lab() const { return lambda_a * lambda_b * l_ab; }
  Complex M() const { return lambda_a * lambda_b * m; }

  // row-major 4x4
  std::array<Complex, 16> matrix() const;
};

struct CorrelationMeasures {
  double negativity_2 = 0.0;      // closed-form N^(2)
  double negativity = 0.0;        // max(N^(2), 0)
  double negativity_eig = 0.0;    // from the explicit partial transpose
  double mutual_information = 0.0;
  double l_plus = 0.0;
  double l_minus = 0.0;
};

// Applies the couplings in p to coupling-normalized elements; rejects
// lambda^2 L > 0.5 (perturbative validity guard).
DensityMatrix4 assemble(const Params& p, const Elements4& elems);

// Fills negativity_2 / negativity (closed form) and negativity_eig (sum of
// negative eigenvalues of the explicit partial transpose, cross-check).
CorrelationMeasures negativity(const DensityMatrix4& dm);

// Fills mutual_information and l_plus/l_minus; x log x extended by 0 at 0.
// Does not reference m at all.
CorrelationMeasures mutual_information(const DensityMatrix4& dm);

// Both at once.
CorrelationMeasures correlation_measures(const DensityMatrix4& dm);

}  // namespace udw::measures
