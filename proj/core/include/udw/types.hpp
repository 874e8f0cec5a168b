#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace udw {

using Complex = std::complex<double>;

enum class Coupling { Linear, Quadratic };
enum class Term { LAA, LAB, M };

// Every contract violation maps to one of these kinds; the CLI turns them
// into exit codes (domain/contract -> 3).
enum class ErrorKind {
  OverflowDomain,
  SingularArgument,
  PoleOnLightcone,
  CutoffRequired,
  IntegrandNonFinite,
  PerturbativityViolated,
  InsufficientSamples,
  PoleProximity,
  FitUnavailable,
  InvalidArgument,
};

class DomainError : public std::runtime_error {
public:
  DomainError(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw DomainError(kind, what);
}

inline const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::OverflowDomain: return "OverflowDomain";
    case ErrorKind::SingularArgument: return "SingularArgument";
    case ErrorKind::PoleOnLightcone: return "PoleOnLightcone";
    case ErrorKind::CutoffRequired: return "CutoffRequired";
    case ErrorKind::IntegrandNonFinite: return "IntegrandNonFinite";
    case ErrorKind::PerturbativityViolated: return "PerturbativityViolated";
    case ErrorKind::InsufficientSamples: return "InsufficientSamples";
    case ErrorKind::PoleProximity: return "PoleProximity";
    case ErrorKind::FitUnavailable: return "FitUnavailable";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "unknown";
}

// Dimensionless parameter set (everything in units of the switching width T).
//   alpha   = Omega*T    detector gap
//   beta    = |x_A-x_B|/T  separation
//   gamma_a, gamma_b = t_nu/T  switch-on times
//   delta   = sigma/T    detector size
//   eta     = eps/T      soft UV cutoff
struct Params {
  double alpha = 1.0;
  double beta = 1.0;
  double gamma_a = 0.0;
  double gamma_b = 0.0;
  double delta = 1.0;
  double eta = 0.0;
  double lambda_a = 1.0;
  double lambda_b = 1.0;
  Coupling coupling = Coupling::Linear;

  void validate() const {
    if (!(delta > 0)) fail(ErrorKind::InvalidArgument, "delta must be > 0");
    if (!(beta >= 0)) fail(ErrorKind::InvalidArgument, "beta must be >= 0");
    if (!(eta >= 0)) fail(ErrorKind::InvalidArgument, "eta must be >= 0");
    for (double v : {alpha, beta, gamma_a, gamma_b, delta, eta, lambda_a, lambda_b})
      if (!std::isfinite(v)) fail(ErrorKind::InvalidArgument, "parameters must be finite");
  }
};

// One computed matrix element, normalized by its coupling-strength prefactor
// (lambda^2 for L_AA, lambda_A lambda_B for L_AB and M).
struct ElementResult {
  Complex value{0.0, 0.0};
  double err_estimate = 0.0;
  long evals = 0;
  bool converged = true;
};

inline const char* to_string(Coupling c) {
  return c == Coupling::Linear ? "linear" : "quadratic";
}
inline const char* to_string(Term t) {
  switch (t) {
    case Term::LAA: return "laa";
    case Term::LAB: return "lab";
    case Term::M: return "m";
  }
  return "?";
}

}  // namespace udw
