#pragma once

#include <optional>
#include <vector>

#include "udw/elements.hpp"
#include "udw/types.hpp"

namespace udw::divergence {

enum class Verdict { Convergent, LogDivergent, Inconclusive };

struct Fit {
  double intercept = 0.0;  // a in |value| ~ a + b ln(1/eta)
  double slope = 0.0;      // b
  double r_squared = 0.0;
  int window_begin = 0;    // index of the first row used by the fit
};

struct SweepRow {
  double eta = 0.0;
  ElementResult element;
};

struct SweepResult {
  Term term{};
  Coupling coupling{};
  std::vector<SweepRow> rows;  // sorted by descending eta
  std::optional<Fit> fit;     // present iff >= 4 rows
  Verdict verdict = Verdict::Inconclusive;
};

// Evaluates the element at each cutoff; verdict per the row-difference /
// log-fit rules (conv_threshold is the relative stall level for Convergent).
SweepResult sweep_eta(Term term, Coupling coupling, const Params& p,
                      const std::vector<double>& etas,
                      const elements::QuadratureSpec& spec = elements::default_spec(),
                      double conv_threshold = 1e-3, int threads = 1);

struct LaurentReport {
  Complex limit{0.0, 0.0};       // extrapolated lim xi G(xi) at eta = 0
  Complex reference{0.0, 0.0};   // 4 i pi beta / delta^2
  double rel_deviation = 0.0;    // |limit - reference| / |reference|
};

// Richardson/Neville extrapolation of xi * G(xi) (eta = 0 form) to xi -> 0.
LaurentReport laurent_check(const Params& p, const std::vector<double>& xi_values);

// |M| extrapolated to the Planck-scale cutoff eta = 1e-29 from a log-divergent
// fit: a + b ln(10^29). Throws FitUnavailable unless verdict is LogDivergent.
double planck_extrapolation(const SweepResult& sweep);

}  // namespace udw::divergence
