#include "stasis/expansion.hpp"

#include <cmath>
#include <stdexcept>

#include "stasis/quadrature.hpp"

namespace stasis {

double ExpansionConfig::delta_for(double rho) const {
  if (!(gamma > 0.0 && gamma < 1.0)) {
    throw std::domain_error("expansion config: gamma must lie in (0, 1)");
  }
  const double d = (gamma + 1.0) / rho;
  if (delta && std::abs(*delta - d) > 1e-12) {
    throw std::domain_error("expansion config: delta must equal (gamma + 1) / rho");
  }
  return d;
}

double PowerTerm::value(double omega, double gap) const {
  double v = coeff * std::pow(omega, omega_exp);
  if (gap_exp != 0.0) {
    v *= std::pow(gap, gap_exp);
  }
  return v;
}

ComplexValue LeadingTerm::value(double omega) const { return coeff * std::pow(omega, omega_exp); }

ComplexValue ExpansionResult::leading_sum() const {
  ComplexValue sum;
  for (const auto& term : leading) {
    sum += term.value(omega);
  }
  return sum;
}

double ExpansionResult::bound_total() const {
  double sum = 0.0;
  for (const auto& term : bound_terms) {
    sum += term.value(omega, gap);
  }
  return sum;
}

double ExpansionResult::certified_bound() const {
  double sum = 0.0;
  for (const auto& term : bound_terms) {
    if (term.certified) {
      sum += term.value(omega, gap);
    }
  }
  return sum;
}

bool ExpansionResult::all_certified() const {
  for (const auto& term : bound_terms) {
    if (!term.certified) {
      return false;
    }
  }
  return true;
}

ComplexValue leading_term(const SubstitutionFrame& frame, const PhaseModel& phase, double omega) {
  if (!(omega > 0.0) || !std::isfinite(omega)) {
    throw std::domain_error("leading_term: omega must be positive");
  }
  const ComplexValue oscillation = std::polar(1.0, omega * phase.psi(frame.endpoint()));
  return oscillation * frame.k_at_zero() * theta(frame.side(), frame.rho(), frame.mu()) *
         std::pow(omega, -frame.mu() / frame.rho());
}

double weighted_k_prime_integral(const SubstitutionFrame& frame, double exponent) {
  // In the offset variable the weight s^e becomes delta^e R^(e/rho) and
  // |k'(s)| ds becomes |dk/d delta| d delta.
  auto integrand = [&](double offset) -> double {
    const FramePoint point = frame.at_offset(offset);
    const double r_factor = offset > 0.0 ? std::pow(point.s / offset, exponent)
                                         : std::pow(point.ds_doffset, exponent);
    return r_factor * std::abs(point.dk_doffset);
  };
  const double scale = std::abs(frame.k_at_zero()) + std::abs(frame.at_offset(frame.offset_end()).k);
  const double abs_tol = 1e-14 * std::max(scale, 1e-300) * std::pow(frame.offset_end(), exponent + 1.0);
  const auto result = quad::with_endpoint_weight<double>(integrand, 0.0, frame.offset_end(), exponent,
                                                         quad::WeightedEnd::left, abs_tol, 1e-11);
  if (!(result.error <= std::max(1e-8 * std::abs(result.value), 10.0 * abs_tol))) {
    throw InternalError("remainder bound: weighted integral of |k'| did not converge", result.error);
  }
  return result.value;
}

double remainder_bound_r1(const SubstitutionFrame& frame, double omega, const ExpansionConfig& config) {
  if (!(omega > 0.0) || !std::isfinite(omega)) {
    throw std::domain_error("remainder_bound_r1: omega must be positive");
  }
  const double rho = frame.rho();
  const double mu = frame.mu();
  if (mu == 1.0 && rho >= 2.0) {
    const double delta = config.delta_for(rho);
    if (!(config.L_const > 0.0)) {
      throw std::domain_error("remainder_bound_r1: L_const must be positive");
    }
    return config.L_const * weighted_k_prime_integral(frame, -config.gamma) * std::pow(omega, -delta);
  }
  return gamma_pos(1.0 / rho) / rho * weighted_k_prime_integral(frame, mu - 1.0) *
         std::pow(omega, -1.0 / rho);
}

double remainder_bound_r2(const SubstitutionFrame& frame, const SingularAmplitude& amp,
                          const PhaseModel& phase, double omega) {
  if (!(omega > 0.0) || !std::isfinite(omega)) {
    throw std::domain_error("remainder_bound_r2: omega must be positive");
  }
  (void)phase;
  const double rho = frame.rho();
  const double mu = frame.mu();
  const double prefactor = (rho - mu) / rho;
  if (prefactor == 0.0) {
    return 0.0;
  }
  const double q = frame.q();
  const double ratio = std::abs(amp(q)) / std::abs(frame.phi_prime(q));
  return prefactor * gamma_pos(1.0 / rho) * ratio * std::pow(frame.s_end(), -rho) *
         std::pow(omega, -(1.0 + 1.0 / rho));
}

ExpansionResult expand_integral(const PhaseModel& phase, const SingularAmplitude& amp, double q,
                                const ExpansionConfig& config, double omega) {
  if (!(omega > 0.0) || !std::isfinite(omega)) {
    throw std::domain_error("expand_integral: omega must be positive");
  }
  ExpansionResult result;
  result.q_used = q;
  result.config = config;
  result.omega = omega;
  for (int side = 1; side <= 2; ++side) {
    const double rho = side == 1 ? phase.rho1 : phase.rho2;
    const double mu = side == 1 ? amp.mu1 : amp.mu2;
    if (mu == 1.0 && rho < 2.0) {
      throw std::domain_error("expand_integral: a regular endpoint (mu = 1) needs rho >= 2");
    }
    const SubstitutionFrame frame = build_frame(phase, amp, side, q);
    const std::string tag = side == 1 ? "(1)" : "(2)";
    const ComplexValue a = leading_term(frame, phase, omega);
    result.leading.push_back({a * std::pow(omega, mu / rho), -mu / rho, "A" + tag});

    PowerTerm r1;
    r1.origin = "R1" + tag;
    if (mu == 1.0) {
      r1.omega_exp = -config.delta_for(rho);
      r1.certified = false;
    } else {
      r1.omega_exp = -1.0 / rho;
    }
    r1.coeff = remainder_bound_r1(frame, omega, config) * std::pow(omega, -r1.omega_exp);
    result.bound_terms.push_back(r1);

    PowerTerm r2;
    r2.origin = "R2" + tag;
    r2.omega_exp = -(1.0 + 1.0 / rho);
    r2.coeff = remainder_bound_r2(frame, amp, phase, omega) * std::pow(omega, -r2.omega_exp);
    result.bound_terms.push_back(r2);
  }
  return result;
}

}  // namespace stasis
