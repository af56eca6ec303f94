#include "stasis/quadratic.hpp"

#include <algorithm>
#include <limits>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace stasis {

namespace {

constexpr double kPi = std::numbers::pi;

void check_delta(double mu, double delta) {
  if (!(mu > 0.0 && mu < 1.0)) {
    throw std::domain_error("quadratic: mu must lie in (0, 1)");
  }
  const double lo = 0.5 * (mu + 1.0);
  if (!(delta >= lo && delta < 1.0)) {
    std::ostringstream msg;
    msg << "quadratic: delta = " << delta << " outside [" << lo << ", 1)";
    throw std::domain_error(msg.str());
  }
}

struct ExponentPair {
  double gap;    // printed positive exponent of (p0 - p1)^-1
  double omega;  // printed positive exponent of omega^-1
};

std::vector<ExponentPair> side1_pairs(double mu, double gamma, double delta) {
  return {{2.0 - mu, 1.0},         {1.0 - mu, 1.0},   {4.0 - mu, 2.0},
          {1.0 + gamma - mu, delta}, {gamma - mu, delta}, {3.0 - mu, 1.5}};
}

std::vector<ExponentPair> side2_pairs(double mu, double delta) {
  return {{2.0 - mu, delta}, {1.0 - mu, delta}};
}

}  // namespace

void QuadraticPhase::validate() const {
  if (!std::isfinite(p0) || !std::isfinite(c) || !std::isfinite(p1) || !std::isfinite(p2)) {
    throw std::domain_error("quadratic phase: non-finite parameter");
  }
  if (!(p1 < p0 && p0 < p2)) {
    throw std::domain_error("quadratic phase: need p1 < p0 < p2");
  }
}

double CurveExponents::min_gap() const {
  return std::min(std::min(lead_mu_exp, lead_half_exp) + alpha, lead_half_exp + beta);
}

QuadraticCoefficients quadratic_coefficients(const SingularAmplitude& amp, const QuadraticPhase& qp,
                                             double omega) {
  if (!(omega > 0.0) || !std::isfinite(omega)) {
    throw std::domain_error("quadratic_coefficients: omega must be positive");
  }
  qp.validate();
  const double mu = amp.mu1;
  QuadraticCoefficients out;
  out.K_tilde = gamma_pos(mu) / std::pow(2.0, mu) * std::polar(1.0, kPi * mu / 2.0) *
                std::polar(1.0, omega * qp.psi(qp.p1)) * amp.u_tilde(qp.p1);
  out.H1_tilde = std::sqrt(kPi) / 2.0 * std::polar(1.0, -kPi / 4.0) * std::polar(1.0, omega * qp.c) *
                 amp.u_tilde(qp.p0);
  out.H2_tilde = out.H1_tilde;
  return out;
}

std::vector<PowerTerm> quadratic_remainder_terms(const SingularAmplitude& amp, double delta,
                                                 double L_const) {
  const double mu = amp.mu1;
  check_delta(mu, delta);
  if (!(L_const > 0.0)) {
    throw std::domain_error("quadratic: L_const must be positive");
  }
  const double gamma = 2.0 * delta - 1.0;
  const double w = amp.sobolev_norm_u;
  const double sup = amp.sup_norm_u;
  const double r11 = std::pow(2.0, 1.0 - mu) / mu * w;
  const double r21 = (1.0 - mu) / std::pow(2.0, mu - 2.0) * sup;
  const double r12 = L_const / (1.0 - gamma) * std::pow(2.0, gamma - mu) * w;
  const double r22 = std::sqrt(kPi) / std::pow(2.0, mu - 2.0) * sup;
  const double r_right = L_const / (1.0 - gamma) * std::pow(amp.p2 - amp.p1, 1.0 - gamma) * w;

  const auto p1 = side1_pairs(mu, gamma, delta);
  const auto p2 = side2_pairs(mu, delta);
  const double coeffs1[6] = {r11 * 2.0 * (2.0 - mu), r11, r21, r12 * 2.0 * (1.0 - mu), r12, r22};
  const char* origins1[6] = {"R1(1)", "R1(1)", "R2(1)", "R1(2)", "R1(2)", "R2(2)"};
  const bool certified1[6] = {true, true, true, false, false, true};
  std::vector<PowerTerm> terms;
  for (int k = 0; k < 6; ++k) {
    terms.push_back({coeffs1[k], -p1[k].omega, -p1[k].gap, std::string("I1:") + origins1[k], certified1[k]});
  }
  const double coeffs2[2] = {r_right * (1.0 - mu), r_right};
  for (int k = 0; k < 2; ++k) {
    terms.push_back({coeffs2[k], -p2[k].omega, -p2[k].gap, "I2:R1(1)", false});
  }
  return terms;
}

CurveExponents curve_exponents(double mu, double eps, double delta) {
  check_delta(mu, delta);
  const double upper = delta - 0.5;
  if (!(eps > 0.0 && eps < upper)) {
    std::ostringstream msg;
    msg << "curve_exponents: eps = " << eps << " outside the open interval (0, " << upper
        << ") = (0, delta - 1/2)";
    throw std::domain_error(msg.str());
  }
  const double gamma = 2.0 * delta - 1.0;
  CurveExponents out;
  out.eps = eps;
  out.delta = delta;
  out.lead_mu_exp = -mu + eps * mu;
  out.lead_half_exp = -0.5 + eps * (1.0 - mu);
  double worst1 = -std::numeric_limits<double>::infinity();
  for (const auto& pair : side1_pairs(mu, gamma, delta)) {
    const double rate = eps * pair.gap - pair.omega;
    out.side1_candidates.push_back(rate);
    worst1 = std::max(worst1, rate);
  }
  double worst2 = -std::numeric_limits<double>::infinity();
  for (const auto& pair : side2_pairs(mu, delta)) {
    const double rate = eps * pair.gap - pair.omega;
    out.side2_candidates.push_back(rate);
    worst2 = std::max(worst2, rate);
  }
  out.alpha = -worst1;
  out.beta = -worst2;
  return out;
}

ExpansionResult expand_quadratic(const SingularAmplitude& amp, const QuadraticPhase& qp, double omega,
                                 double delta, double L_const) {
  qp.validate();
  if (qp.p1 != amp.p1 || qp.p2 != amp.p2) {
    throw std::domain_error("expand_quadratic: phase and amplitude intervals differ");
  }
  if (amp.mu2 != 1.0) {
    throw std::domain_error("expand_quadratic: the right end must be regular (mu2 = 1)");
  }
  if (std::abs(amp.u_tilde(amp.p2)) > 1e-12 * std::max(amp.sup_norm_u, 1.0)) {
    throw std::domain_error("expand_quadratic: the amplitude must vanish at p2");
  }
  const double mu = amp.mu1;
  const auto coeffs = quadratic_coefficients(amp, qp, omega);
  const double gap = qp.p0 - qp.p1;
  ExpansionResult result;
  result.omega = omega;
  result.gap = gap;
  result.q_used = qp.p1 + 0.5 * gap;
  result.config.gamma = 2.0 * delta - 1.0;
  result.config.delta = delta;
  result.config.L_const = L_const;
  result.leading.push_back({coeffs.K_tilde * std::pow(gap, -mu), -mu, "K"});
  result.leading.push_back({coeffs.H1_tilde * std::pow(gap, mu - 1.0), -0.5, "H(1)"});
  result.leading.push_back({coeffs.H2_tilde * std::pow(gap, mu - 1.0), -0.5, "H(2)"});
  result.bound_terms = quadratic_remainder_terms(amp, delta, L_const);
  return result;
}

OracleValue quadratic_oracle(const SingularAmplitude& amp, const QuadraticPhase& qp, double omega, double tol) {
  qp.validate();
  if (qp.p1 != amp.p1 || qp.p2 != amp.p2) {
    throw std::domain_error("quadratic_oracle: phase and amplitude intervals differ");
  }
  const double p0 = qp.p0;
  RealMap psi = [p0](double p) { return -(p - p0) * (p - p0); };
  RealMap psi_prime = [p0](double p) { return -2.0 * (p - p0); };
  ComplexMap left_part = [&amp](double p) { return amp.regular_left(p); };
  ComplexMap right_part = [&amp](double p) { return amp.regular_right(p); };
  const OracleValue left =
      integrate_monotone_phase(left_part, psi, psi_prime, amp.p1, p0, amp.mu1 - 1.0, 0.0, omega, 0.5 * tol);
  const OracleValue right =
      integrate_monotone_phase(right_part, psi, psi_prime, p0, amp.p2, 0.0, amp.mu2 - 1.0, omega, 0.5 * tol);
  OracleValue out;
  out.value = std::polar(1.0, omega * qp.c) * (left.value + right.value);
  out.abs_error_estimate = left.abs_error_estimate + right.abs_error_estimate;
  out.panel_count = left.panel_count + right.panel_count;
  out.evaluations = left.evaluations + right.evaluations;
  out.method = OracleMethod::panels;
  return out;
}

QuadraticLeftPiece quadratic_left_piece(const SingularAmplitude& amp, const QuadraticPhase& qp) {
  qp.validate();
  QuadraticLeftPiece piece;
  const double p0 = qp.p0;
  const double c = qp.c;
  piece.phase.p1 = qp.p1;
  piece.phase.p2 = p0;
  piece.phase.rho1 = 1.0;
  piece.phase.rho2 = 2.0;
  piece.phase.psi = [p0, c](double p) { return -(p - p0) * (p - p0) + c; };
  piece.phase.psi_prime = [p0](double p) { return -2.0 * (p - p0); };
  piece.phase.psi_tilde = [](double) { return 2.0; };
  piece.phase.psi_tilde_prime = [](double) { return 0.0; };
  piece.amp = amp;
  piece.amp.p2 = p0;
  piece.amp.mu2 = 1.0;
  return piece;
}

}  // namespace stasis
