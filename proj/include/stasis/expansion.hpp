#pragma once

#include <optional>
#include <string>
#include <vector>

#include "stasis/model.hpp"

namespace stasis {

/// Parameters of the refined remainder estimate used when mu_j = 1 and rho_j >= 2.
struct ExpansionConfig {
  double gamma = 0.5;
  std::optional<double> delta;  // must equal (gamma + 1) / rho_j when given
  double L_const = 1.0;

  /// delta for a side of order rho; checks a caller-supplied delta.
  double delta_for(double rho) const;
};

/// coeff * omega^omega_exp * gap^gap_exp. Exponents are signed: a decaying
/// term has omega_exp < 0.
struct PowerTerm {
  double coeff = 0.0;
  double omega_exp = 0.0;
  double gap_exp = 0.0;
  std::string origin;
  bool certified = true;

  double value(double omega, double gap = 1.0) const;
  /// The printed positive decay pair, (-gap_exp, -omega_exp).
  double decay_gap() const { return -gap_exp; }
  double decay_omega() const { return -omega_exp; }
};

struct LeadingTerm {
  ComplexValue coeff;  // multiplies omega^omega_exp
  double omega_exp = 0.0;
  std::string origin;

  ComplexValue value(double omega) const;
};

struct ExpansionResult {
  std::vector<LeadingTerm> leading;
  std::vector<PowerTerm> bound_terms;
  double q_used = 0.0;
  ExpansionConfig config;
  double omega = 0.0;
  double gap = 1.0;  // value substituted for gap_exp powers

  ComplexValue leading_sum() const;
  double bound_total() const;
  double certified_bound() const;
  bool all_certified() const;
};

/// A^(j)(omega) = e^{i omega psi(p_j)} k_j(0) Theta^(j) omega^{-mu_j/rho_j}.
ComplexValue leading_term(const SubstitutionFrame& frame, const PhaseModel& phase, double omega);

/// Bound on |R_1^(j)(omega, q)|. Uses the weight s^(mu-1) when mu < 1 and the
/// refined s^(-gamma) estimate (constant L_const, rate omega^-delta) when mu = 1, rho >= 2.
double remainder_bound_r1(const SubstitutionFrame& frame, double omega, const ExpansionConfig& config);

/// Bound on |R_2^(j)(omega, q)|.
double remainder_bound_r2(const SubstitutionFrame& frame, const SingularAmplitude& amp,
                          const PhaseModel& phase, double omega);

/// int_0^{s_j} s^exponent |k_j'(s)| ds, the integral behind the R_1 bound
/// (exponent mu-1 or -gamma).
double weighted_k_prime_integral(const SubstitutionFrame& frame, double exponent);

ExpansionResult expand_integral(const PhaseModel& phase, const SingularAmplitude& amp, double q,
                                const ExpansionConfig& config, double omega);

}  // namespace stasis
