#pragma once

#include <vector>

#include "stasis/expansion.hpp"
#include "stasis/model.hpp"
#include "stasis/oracle.hpp"

namespace stasis {

/// psi(p) = -(p - p0)^2 + c on [p1, p2].
struct QuadraticPhase {
  double p0 = 0.5;
  double c = 0.0;
  double p1 = 0.0;
  double p2 = 1.0;

  double psi(double p) const { return -(p - p0) * (p - p0) + c; }
  void validate() const;
};

struct QuadraticCoefficients {
  ComplexValue K_tilde;
  ComplexValue H1_tilde;
  ComplexValue H2_tilde;
};

struct CurveExponents {
  double eps = 0.0;
  double delta = 0.0;
  double lead_mu_exp = 0.0;    // -mu + eps mu
  double lead_half_exp = 0.0;  // -1/2 + eps (1 - mu)
  double alpha = 0.0;
  double beta = 0.0;
  std::vector<double> side1_candidates;  // eps*gap - omega per side-1 term
  std::vector<double> side2_candidates;

  /// Distance between the slowest leading rate and the slowest remainder rate,
  /// min(min(leads) + alpha, lead_half + beta).
  double min_gap() const;
};

QuadraticCoefficients quadratic_coefficients(const SingularAmplitude& amp, const QuadraticPhase& qp,
                                             double omega);

/// Six terms bounding the I^(1) remainder followed by two for I^(2), each
/// coeff * gap^gap_exp * omega^omega_exp with gap = p0 - p1. Terms carrying
/// the constant L are marked non-certified.
std::vector<PowerTerm> quadratic_remainder_terms(const SingularAmplitude& amp, double delta,
                                                 double L_const = 1.0);

CurveExponents curve_exponents(double mu, double eps, double delta);

/// Expansion with cutting point q = p1 + (p0 - p1)/2.
ExpansionResult expand_quadratic(const SingularAmplitude& amp, const QuadraticPhase& qp, double omega,
                                 double delta, double L_const = 1.0);

/// int_{p1}^{p2} U(p) e^{i omega psi(p)} dp, split at the stationary point p0.
OracleValue quadratic_oracle(const SingularAmplitude& amp, const QuadraticPhase& qp, double omega, double tol);

/// The generic (phase, amplitude) pair describing I^(1), the integral over [p1, p0].
struct QuadraticLeftPiece {
  PhaseModel phase;
  SingularAmplitude amp;
};

QuadraticLeftPiece quadratic_left_piece(const SingularAmplitude& amp, const QuadraticPhase& qp);

}  // namespace stasis
