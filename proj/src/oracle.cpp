#include "stasis/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "stasis/quadrature.hpp"

namespace stasis {

namespace {

constexpr double kPi = std::numbers::pi;
// e^{-46} < 1e-20: beyond omega t^rho = 46 the ray integrand is negligible.
constexpr double kRayCutoff = 46.0;

struct Tally {
  long evaluations = 0;
  long panels = 0;
  double error = 0.0;
  quad::Accumulator<ComplexValue> sum;

  OracleValue snapshot(OracleMethod method) const {
    OracleValue v;
    v.value = sum.value();
    v.abs_error_estimate = error;
    v.panel_count = std::max(panels, 1L);
    v.method = method;
    v.evaluations = evaluations;
    return v;
  }
};

// Point x in [lo, hi] with psi(x) = level, psi monotone; safeguarded Newton.
double solve_level(const RealMap& psi, const RealMap& psi_prime, double level, double lo, double hi,
                   double direction) {
  const double tol = 1e-13 * (hi - lo) + 1e-300;
  double x = lo;
  const double f_lo = direction * (psi(lo) - level);
  if (f_lo >= 0.0) {
    return lo;
  }
  const double d0 = psi_prime(lo);
  x = d0 != 0.0 ? lo + (level - psi(lo)) / d0 : 0.5 * (lo + hi);
  for (int iter = 0; iter < 100; ++iter) {
    if (!(x > lo && x < hi)) {
      x = 0.5 * (lo + hi);
    }
    const double f = direction * (psi(x) - level);
    if (f == 0.0) {
      return x;
    }
    if (f < 0.0) {
      lo = x;
    } else {
      hi = x;
    }
    if (hi - lo <= tol) {
      break;
    }
    const double d = direction * psi_prime(x);
    double next = d > 0.0 ? x - f / d : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) {
      next = 0.5 * (lo + hi);
    }
    if (std::abs(next - x) <= tol) {
      return next;
    }
    x = next;
  }
  return 0.5 * (lo + hi);
}

// int_a^b w(p) h(p) e^{i omega psi(p)} dp with w = (p-a)^alpha (weight_left) or
// (b-p)^alpha, psi monotone. Panels end at psi-levels spaced pi/omega.
void single_weight_panels(const ComplexMap& h, const RealMap& psi, const RealMap& psi_prime, double a,
                          double b, double alpha, bool weight_left, double omega, double tol,
                          long budget, Tally& tally) {
  const double psi_a = psi(a);
  const double psi_b = psi(b);
  const double direction = psi_b >= psi_a ? 1.0 : -1.0;
  const double span = std::abs(psi_b - psi_a);
  const double raw = omega * span / kPi;
  if (raw > static_cast<double>(budget) / 15.0) {
    throw BudgetError("oracle: panel count exceeds the evaluation budget", tally.snapshot(OracleMethod::panels));
  }
  const long n = std::max(1L, static_cast<long>(std::ceil(raw)));
  std::vector<double> cuts(n + 1);
  cuts[0] = a;
  cuts[n] = b;
  for (long k = 1; k < n; ++k) {
    const double level = psi_a + direction * kPi * static_cast<double>(k) / omega;
    cuts[k] = solve_level(psi, psi_prime, level, cuts[k - 1], b, direction);
  }
  const double panel_tol = 0.5 * tol / static_cast<double>(n);
  auto oscillating = [&](double p) { return h(p) * std::polar(1.0, omega * psi(p)); };
  auto weighted = [&](double p) {
    const double d = weight_left ? p - a : b - p;
    return std::pow(d, alpha) * oscillating(p);
  };
  for (long k = 0; k < n; ++k) {
    const double lo = cuts[k];
    const double hi = cuts[k + 1];
    if (!(hi > lo)) {
      continue;
    }
    quad::Estimate<ComplexValue> piece;
    const bool singular_here = alpha != 0.0 && ((weight_left && k == 0) || (!weight_left && k == n - 1));
    if (singular_here) {
      // The weight is anchored at a (or b), which is this panel's own end.
      piece = quad::with_endpoint_weight<ComplexValue>(
          oscillating, lo, hi, alpha, weight_left ? quad::WeightedEnd::left : quad::WeightedEnd::right,
          panel_tol, 1e-14);
    } else if (alpha != 0.0) {
      piece = quad::adaptive<ComplexValue>(weighted, lo, hi, panel_tol, 1e-14);
    } else {
      piece = quad::adaptive<ComplexValue>(oscillating, lo, hi, panel_tol, 1e-14);
    }
    tally.sum.add(piece.value);
    tally.error += piece.error;
    tally.evaluations += piece.evaluations;
    ++tally.panels;
    if (tally.evaluations > budget) {
      throw BudgetError("oracle: evaluation budget exhausted", tally.snapshot(OracleMethod::panels));
    }
  }
}

}  // namespace

const char* to_string(OracleMethod method) {
  switch (method) {
    case OracleMethod::panels:
      return "panels";
    case OracleMethod::parts_identity:
      return "parts-identity";
    case OracleMethod::ray:
      return "ray";
  }
  return "unknown";
}

OracleValue integrate_monotone_phase(const ComplexMap& g, const RealMap& psi, const RealMap& psi_prime,
                                     double a, double b, double left_exp, double right_exp,
                                     double omega, double tol, long budget) {
  if (!(a < b)) {
    throw std::domain_error("oracle: need a < b");
  }
  if (!(omega >= 0.0) || !std::isfinite(omega)) {
    throw std::domain_error("oracle: omega must be finite and non-negative");
  }
  if (!(tol > 0.0)) {
    throw std::domain_error("oracle: tol must be positive");
  }
  if (!(left_exp > -1.0) || !(right_exp > -1.0)) {
    throw std::domain_error("oracle: endpoint exponents must exceed -1");
  }
  Tally tally;
  if (left_exp != 0.0 && right_exp != 0.0) {
    const double mid = 0.5 * (a + b);
    ComplexMap left_part = [&](double p) { return std::pow(b - p, right_exp) * g(p); };
    ComplexMap right_part = [&](double p) { return std::pow(p - a, left_exp) * g(p); };
    single_weight_panels(left_part, psi, psi_prime, a, mid, left_exp, true, omega, 0.5 * tol, budget, tally);
    // The right half has its weight anchored at b, which is the end of [mid, b].
    single_weight_panels(right_part, psi, psi_prime, mid, b, right_exp, false, omega, 0.5 * tol, budget,
                         tally);
  } else if (right_exp != 0.0) {
    single_weight_panels(g, psi, psi_prime, a, b, right_exp, false, omega, tol, budget, tally);
  } else {
    single_weight_panels(g, psi, psi_prime, a, b, left_exp, true, omega, tol, budget, tally);
  }
  return tally.snapshot(OracleMethod::panels);
}

OracleValue integrate_oscillatory(const PhaseModel& phase, const SingularAmplitude& amp, double a,
                                  double b, double omega, double tol, long budget) {
  if (!(tol >= 1e-12)) {
    throw std::domain_error("integrate_oscillatory: tol must be at least 1e-12");
  }
  if (!(a >= amp.p1 && b <= amp.p2 && a < b)) {
    throw std::domain_error("integrate_oscillatory: [a, b] must be a subinterval of [p1, p2]");
  }
  const bool left_end = a == amp.p1;
  const bool right_end = b == amp.p2;
  const double left_exp = left_end ? amp.mu1 - 1.0 : 0.0;
  const double right_exp = right_end ? amp.mu2 - 1.0 : 0.0;
  ComplexMap g = [&](double p) {
    ComplexValue v = amp.u_tilde(p);
    if (!left_end) {
      v *= std::pow(p - amp.p1, amp.mu1 - 1.0);
    }
    if (!right_end) {
      v *= std::pow(amp.p2 - p, amp.mu2 - 1.0);
    }
    return v;
  };
  return integrate_monotone_phase(g, phase.psi, phase.psi_prime, a, b, left_exp, right_exp, omega, tol,
                                  budget);
}

OracleValue integrate_oscillatory(const PhaseModel& phase, const SingularAmplitude& amp, double omega,
                                  double tol, long budget) {
  return integrate_oscillatory(phase, amp, amp.p1, amp.p2, omega, tol, budget);
}

ComplexValue phi_primitive(double s, double omega, double rho, double mu, int side, double tol) {
  if (!(s >= 0.0) || !std::isfinite(s)) {
    throw std::domain_error("phi_primitive: s must be finite and non-negative");
  }
  if (!(omega > 0.0) || !std::isfinite(omega)) {
    throw std::domain_error("phi_primitive: omega must be positive");
  }
  if (!(rho >= 1.0) || !(mu > 0.0 && mu <= 1.0)) {
    throw std::domain_error("phi_primitive: need rho >= 1 and mu in (0, 1]");
  }
  if (side != 1 && side != 2) {
    throw std::domain_error("phi_primitive: side must be 1 or 2");
  }
  if (!(tol > 0.0)) {
    throw std::domain_error("phi_primitive: tol must be positive");
  }
  const double sigma = side == 1 ? 1.0 : -1.0;
  const double angle = sigma * kPi / (2.0 * rho);
  const ComplexValue direction = std::polar(1.0, angle);
  const ComplexValue i_sigma_omega(0.0, sigma * omega);
  const double t_max = std::pow(kRayCutoff / omega, 1.0 / rho);

  // One principal logarithm serves both powers; integer orders use repeated products.
  const int integer_rho = rho == std::floor(rho) && rho <= 8.0 ? static_cast<int>(rho) : 0;
  auto integrand = [&](double t) -> ComplexValue {
    const ComplexValue z = s + t * direction;
    const ComplexValue log_z = std::log(z);
    ComplexValue z_rho;
    if (integer_rho > 0) {
      z_rho = z;
      for (int k = 1; k < integer_rho; ++k) {
        z_rho *= z;
      }
    } else {
      z_rho = std::exp(rho * log_z);
    }
    return std::exp((mu - 1.0) * log_z + i_sigma_omega * z_rho) * direction;
  };

  quad::Accumulator<ComplexValue> sum;
  if (s == 0.0) {
    // z^(mu-1) = t^(mu-1) e^{i angle (mu-1)}: absorb t^(mu-1) into a Jacobi weight.
    const double scale = gamma_pos(mu / rho) / rho * std::pow(omega, -mu / rho);
    const ComplexValue phase_factor = std::polar(1.0, angle * (mu - 1.0)) * direction;
    auto smooth = [&](double t) -> ComplexValue {
      return phase_factor * std::exp(i_sigma_omega * power_principal(t * direction, rho));
    };
    const auto est = quad::with_endpoint_weight<ComplexValue>(smooth, 0.0, t_max, mu - 1.0,
                                                             quad::WeightedEnd::left, 0.1 * tol * scale, 0.1 * tol);
    return -est.value;
  }

  // Decay length of the integrand near t = 0 and the substitution-free length omega^{-1/rho}.
  const double linear_rate = omega * rho * std::pow(s, rho - 1.0) * std::sin(kPi / (2.0 * rho));
  const double length = std::min({1.0 / linear_rate, std::pow(omega, -1.0 / rho), s});
  const double scale = std::pow(s, mu - 1.0) * length;
  const double abs_tol = 0.05 * tol * scale;
  double lo = 0.0;
  double hi = std::min(0.5 * length, t_max);
  while (lo < t_max) {
    if (lo > 0.0) {
      // |integrand| decreases along the ray, so this bounds the rest of it.
      const double tail = std::abs(integrand(lo)) * (t_max - lo);
      if (tail < 1e-3 * abs_tol) {
        break;
      }
    }
    const auto est = quad::adaptive<ComplexValue>(integrand, lo, hi, abs_tol, 0.0, 200);
    sum.add(est.value);
    lo = hi;
    hi = std::min(2.0 * hi, t_max);
  }
  return -sum.value();
}

namespace {

// int_0^{s_j} phi^(j)(s) k_j'(s) ds in the offset variable, panels at s = (k pi/omega)^(1/rho).
ComplexValue parts_integral(const SubstitutionFrame& frame, double omega, double tol, Tally& tally,
                            ComplexValue phi_zero) {
  const double rho = frame.rho();
  const double mu = frame.mu();
  const int side = frame.side();
  const double phi_tol = 1e-11;
  const double raw = omega * std::pow(frame.s_end(), rho) / kPi;
  const long n = std::max(1L, static_cast<long>(std::ceil(raw)));
  std::vector<double> cuts(n + 1);
  cuts[0] = 0.0;
  cuts[n] = frame.offset_end();
  for (long k = 1; k < n; ++k) {
    cuts[k] = frame.offset_of(std::pow(kPi * static_cast<double>(k) / omega, 1.0 / rho));
  }
  auto integrand = [&](double offset) -> ComplexValue {
    const FramePoint point = frame.at_offset(offset);
    return phi_primitive(point.s, omega, rho, mu, side, phi_tol) * point.dk_doffset;
  };
  const double panel_tol = 0.5 * tol / static_cast<double>(n);

  // First panel: phi(s) - phi(0) behaves like s^mu, so split off phi(0) and
  // carry offset^mu as a Jacobi weight.
  {
    const double h = cuts[1];
    const ComplexValue k_start = frame.k_at_zero();
    const ComplexValue k_end = frame.at_offset(h).k;
    auto smooth = [&](double offset) -> ComplexValue {
      const FramePoint point = frame.at_offset(offset);
      const ComplexValue diff = phi_primitive(point.s, omega, rho, mu, side, phi_tol) - phi_zero;
      return diff / std::pow(offset, mu) * point.dk_doffset;
    };
    const auto est = quad::with_endpoint_weight<ComplexValue>(smooth, 0.0, h, mu, quad::WeightedEnd::left,
                                                             panel_tol, 1e-13);
    tally.sum.add(phi_zero * (k_end - k_start));
    tally.sum.add(est.value);
    tally.error += est.error;
    tally.evaluations += est.evaluations;
    ++tally.panels;
  }
  for (long k = 1; k < n; ++k) {
    const auto est = quad::adaptive<ComplexValue>(integrand, cuts[k], cuts[k + 1], panel_tol, 1e-13);
    tally.sum.add(est.value);
    tally.error += est.error;
    tally.evaluations += est.evaluations;
    ++tally.panels;
  }
  return tally.sum.value();
}

}  // namespace

OracleValue integrate_by_parts_check(const SubstitutionFrame& frame, const PhaseModel& phase,
                                     double omega, double tol) {
  (void)phase;
  if (!(omega > 0.0) || !std::isfinite(omega)) {
    throw std::domain_error("integrate_by_parts_check: omega must be positive");
  }
  if (!(tol > 0.0)) {
    throw std::domain_error("integrate_by_parts_check: tol must be positive");
  }
  const double rho = frame.rho();
  const double mu = frame.mu();
  const int side = frame.side();
  const ComplexValue phi_zero = phi_primitive(0.0, omega, rho, mu, side, 1e-13);
  const ComplexValue phi_end = phi_primitive(frame.s_end(), omega, rho, mu, side, 1e-13);
  const ComplexValue k_end = frame.at_offset(frame.offset_end()).k;
  Tally tally;
  const ComplexValue integral = parts_integral(frame, omega, tol, tally, phi_zero);
  OracleValue result;
  result.value = phi_end * k_end - phi_zero * frame.k_at_zero() - integral;
  result.abs_error_estimate = tally.error;
  result.panel_count = std::max(tally.panels, 1L);
  result.method = OracleMethod::parts_identity;
  result.evaluations = tally.evaluations;
  return result;
}

ComplexValue side_contribution(const SubstitutionFrame& frame, const PhaseModel& phase, double omega,
                               ComplexValue j_value) {
  const ComplexValue e = std::polar(1.0, omega * phase.psi(frame.endpoint()));
  return frame.side() == 1 ? e * j_value : -e * j_value;
}

SideRemainders numeric_remainders(const SubstitutionFrame& frame, const PhaseModel& phase,
                                  const SingularAmplitude& amp, double omega, double tol) {
  if (!(omega > 0.0) || !std::isfinite(omega)) {
    throw std::domain_error("numeric_remainders: omega must be positive");
  }
  const double rho = frame.rho();
  const double mu = frame.mu();
  const int side = frame.side();
  const ComplexValue phi_zero = phi_primitive(0.0, omega, rho, mu, side, 1e-13);
  const ComplexValue phi_end = phi_primitive(frame.s_end(), omega, rho, mu, side, 1e-13);
  const ComplexValue k_end = frame.at_offset(frame.offset_end()).k;
  Tally tally;
  const ComplexValue integral = parts_integral(frame, omega, tol, tally, phi_zero);
  const ComplexValue e_j = std::polar(1.0, omega * phase.psi(frame.endpoint()));
  const double q = frame.q();
  const ComplexValue cut_term =
      ComplexValue(0.0, 1.0 / omega) * std::polar(1.0, omega * phase.psi(q)) * amp(q) / phase.psi_prime(q);
  SideRemainders out;
  if (side == 1) {
    out.r1 = -e_j * integral;
    out.r2 = phi_end * k_end * e_j + cut_term;
  } else {
    out.r1 = e_j * integral;
    out.r2 = -phi_end * k_end * e_j - cut_term;
  }
  out.abs_error_estimate = tally.error;
  return out;
}

}  // namespace stasis
