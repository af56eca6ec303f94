#include "stasis/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "stasis/quadrature.hpp"

namespace stasis {

namespace {

constexpr int kMeanNodes = 24;

bool finite_positive(double x) { return std::isfinite(x) && x > 0.0; }

}  // namespace

ComplexValue SingularAmplitude::operator()(double p) const {
  return std::pow(p - p1, mu1 - 1.0) * std::pow(p2 - p, mu2 - 1.0) * u_tilde(p);
}

ComplexValue SingularAmplitude::regular_left(double p) const {
  return std::pow(p2 - p, mu2 - 1.0) * u_tilde(p);
}

ComplexValue SingularAmplitude::regular_right(double p) const {
  return std::pow(p - p1, mu1 - 1.0) * u_tilde(p);
}

void SingularAmplitude::validate() const {
  if (!std::isfinite(p1) || !std::isfinite(p2) || !(p1 < p2)) {
    throw std::domain_error("amplitude: need finite p1 < p2");
  }
  if (!(mu1 > 0.0 && mu1 <= 1.0) || !(mu2 > 0.0 && mu2 <= 1.0)) {
    throw std::domain_error("amplitude: mu1, mu2 must lie in (0, 1]");
  }
  if (!u_tilde || !u_tilde_prime) {
    throw std::domain_error("amplitude: u_tilde and u_tilde_prime are required");
  }
  if (mu1 != 1.0 && std::abs(u_tilde(p1)) == 0.0) {
    throw std::domain_error("amplitude: u_tilde(p1) must not vanish when mu1 < 1");
  }
  if (mu2 != 1.0 && std::abs(u_tilde(p2)) == 0.0) {
    throw std::domain_error("amplitude: u_tilde(p2) must not vanish when mu2 < 1");
  }
  double grid_max = 0.0;
  for (int i = 0; i < 1024; ++i) {
    const double p = p1 + (p2 - p1) * i / 1023.0;
    grid_max = std::max(grid_max, std::abs(u_tilde(p)));
  }
  if (!(sup_norm_u >= grid_max * (1.0 - 1e-12))) {
    throw std::domain_error("amplitude: sup_norm_u is below the sampled maximum of |u_tilde|");
  }
  if (!(sobolev_norm_u >= sup_norm_u)) {
    throw std::domain_error("amplitude: sobolev_norm_u must be at least sup_norm_u");
  }
}

double PhaseModel::tilde_derivative(double p) const {
  if (psi_tilde_prime) {
    return psi_tilde_prime(p);
  }
  const double h = 1e-4 * (p2 - p1);
  if (p - 2.0 * h < p1) {
    return (-3.0 * psi_tilde(p) + 4.0 * psi_tilde(p + h) - psi_tilde(p + 2.0 * h)) / (2.0 * h);
  }
  if (p + 2.0 * h > p2) {
    return (3.0 * psi_tilde(p) - 4.0 * psi_tilde(p - h) + psi_tilde(p - 2.0 * h)) / (2.0 * h);
  }
  return (psi_tilde(p - 2.0 * h) - 8.0 * psi_tilde(p - h) + 8.0 * psi_tilde(p + h) -
          psi_tilde(p + 2.0 * h)) /
         (12.0 * h);
}

void PhaseModel::validate() const {
  if (!std::isfinite(p1) || !std::isfinite(p2) || !(p1 < p2)) {
    throw std::domain_error("phase: need finite p1 < p2");
  }
  if (!(rho1 >= 1.0) || !(rho2 >= 1.0) || !std::isfinite(rho1) || !std::isfinite(rho2)) {
    throw std::domain_error("phase: rho1, rho2 must be >= 1");
  }
  if (!psi || !psi_prime || !psi_tilde) {
    throw std::domain_error("phase: psi, psi_prime and psi_tilde are required");
  }
  for (int i = 0; i <= 64; ++i) {
    const double p = p1 + (p2 - p1) * i / 64.0;
    if (!finite_positive(psi_tilde(p))) {
      throw std::domain_error("phase: psi_tilde must be positive on [p1, p2]");
    }
    if (i == 0 || i == 64) {
      continue;
    }
    const double factored =
        std::pow(p - p1, rho1 - 1.0) * std::pow(p2 - p, rho2 - 1.0) * psi_tilde(p);
    const double direct = psi_prime(p);
    if (std::abs(direct - factored) > 1e-10 * std::max(std::abs(factored), 1e-300)) {
      throw std::domain_error("phase: psi_prime disagrees with the factored form");
    }
  }
}

SubstitutionFrame::SubstitutionFrame(const PhaseModel& phase, const SingularAmplitude& amp,
                                     int side, double q)
    : phase_(phase), amp_(amp), side_(side), q_(q) {
  if (side != 1 && side != 2) {
    throw std::domain_error("frame: side must be 1 or 2");
  }
  if (!(q > phase.p1 && q < phase.p2)) {
    throw std::domain_error("frame: cutting point q must lie strictly inside (p1, p2)");
  }
  if (phase.p1 != amp.p1 || phase.p2 != amp.p2) {
    throw std::domain_error("frame: phase and amplitude intervals differ");
  }
  phase.validate();
  amp.validate();
  if (side == 1) {
    pj_ = phase.p1;
    tau_ = 1.0;
    sigma_ = 1.0;
    rho_ = phase.rho1;
    mu_ = amp.mu1;
  } else {
    pj_ = phase.p2;
    tau_ = -1.0;
    sigma_ = -1.0;
    rho_ = phase.rho2;
    mu_ = amp.mu2;
  }
  offset_end_ = std::abs(q - pj_);
  const double w0 = regular_phase(pj_);
  slope0_ = std::pow(rho_ / w0, 1.0 / rho_);
  k0_ = sigma_ * std::pow(rho_ / w0, mu_ / rho_) * regular_amp(pj_);
  s_end_ = phi(q);
}

ComplexValue SubstitutionFrame::ray_direction() const {
  const double sign = side_ == 1 ? 1.0 : -1.0;
  return std::polar(1.0, sign * std::numbers::pi / (2.0 * rho_));
}

double SubstitutionFrame::regular_phase(double p) const {
  if (side_ == 1) {
    return std::pow(phase_.p2 - p, phase_.rho2 - 1.0) * phase_.psi_tilde(p);
  }
  return std::pow(p - phase_.p1, phase_.rho1 - 1.0) * phase_.psi_tilde(p);
}

double SubstitutionFrame::regular_phase_prime(double p) const {
  const double tilde = phase_.psi_tilde(p);
  const double tilde_prime = phase_.tilde_derivative(p);
  if (side_ == 1) {
    const double r = phase_.rho2;
    const double d = phase_.p2 - p;
    const double lead = r == 1.0 ? 0.0 : -(r - 1.0) * std::pow(d, r - 2.0) * tilde;
    return lead + std::pow(d, r - 1.0) * tilde_prime;
  }
  const double r = phase_.rho1;
  const double d = p - phase_.p1;
  const double lead = r == 1.0 ? 0.0 : (r - 1.0) * std::pow(d, r - 2.0) * tilde;
  return lead + std::pow(d, r - 1.0) * tilde_prime;
}

ComplexValue SubstitutionFrame::regular_amp(double p) const {
  return side_ == 1 ? amp_.regular_left(p) : amp_.regular_right(p);
}

ComplexValue SubstitutionFrame::regular_amp_prime(double p) const {
  const ComplexValue u = amp_.u_tilde(p);
  const ComplexValue du = amp_.u_tilde_prime(p);
  if (side_ == 1) {
    const double m = amp_.mu2;
    const double d = amp_.p2 - p;
    const ComplexValue lead = m == 1.0 ? ComplexValue{} : -(m - 1.0) * std::pow(d, m - 2.0) * u;
    return lead + std::pow(d, m - 1.0) * du;
  }
  const double m = amp_.mu1;
  const double d = p - amp_.p1;
  const ComplexValue lead = m == 1.0 ? ComplexValue{} : (m - 1.0) * std::pow(d, m - 2.0) * u;
  return lead + std::pow(d, m - 1.0) * du;
}

void SubstitutionFrame::mean(double offset, double& r, double& dr) const {
  const quad::Rule& rule = quad::gauss_jacobi(kMeanNodes, rho_ - 1.0);
  quad::Accumulator<double> value;
  quad::Accumulator<double> slope;
  for (int i = 0; i < kMeanNodes; ++i) {
    const double y = rule.nodes[i];
    const double p = pj_ + tau_ * offset * y;
    value.add(rule.weights[i] * regular_phase(p));
    slope.add(rule.weights[i] * y * regular_phase_prime(p));
  }
  r = value.value();
  dr = tau_ * slope.value();
}

double SubstitutionFrame::phi(double p) const {
  const double offset = tau_ * (p - pj_);
  if (offset < 0.0 || offset > offset_end_ * (1.0 + 1e-12)) {
    throw std::domain_error("frame: phi evaluated outside its side of the cut");
  }
  double r = 0.0;
  double dr = 0.0;
  mean(offset, r, dr);
  return offset * std::pow(r, 1.0 / rho_);
}

double SubstitutionFrame::phi_prime(double p) const {
  const double offset = tau_ * (p - pj_);
  double r = 0.0;
  double dr = 0.0;
  mean(offset, r, dr);
  return tau_ * regular_phase(p) / (rho_ * std::pow(r, (rho_ - 1.0) / rho_));
}

double SubstitutionFrame::offset_of(double s) const {
  if (s < 0.0 || s > s_end_ * (1.0 + 1e-12)) {
    throw std::domain_error("frame: s outside [0, s_end]");
  }
  if (s == 0.0) {
    return 0.0;
  }
  const double tol = 1e-14 * (phase_.p2 - phase_.p1);
  double lo = 0.0;
  double hi = offset_end_;
  double x = std::clamp(s * slope0_, 0.0, hi);
  for (int iter = 0; iter < 200; ++iter) {
    double r = 0.0;
    double dr = 0.0;
    mean(x, r, dr);
    const double f = x * std::pow(r, 1.0 / rho_) - s;
    if (f == 0.0) {
      return x;
    }
    if (f > 0.0) {
      hi = x;
    } else {
      lo = x;
    }
    const double slope = regular_phase(pj_ + tau_ * x) / (rho_ * std::pow(r, (rho_ - 1.0) / rho_));
    double next = x - f / slope;
    if (!(next > lo && next < hi)) {
      next = 0.5 * (lo + hi);
    }
    const double step = std::abs(next - x);
    x = next;
    if (step <= tol || hi - lo <= tol) {
      return x;
    }
  }
  throw InternalError("frame: inverse of phi did not converge", s);
}

double SubstitutionFrame::phi_inv(double s) const { return pj_ + tau_ * offset_of(s); }

FramePoint SubstitutionFrame::at_offset(double offset) const {
  double r = 0.0;
  double dr = 0.0;
  mean(offset, r, dr);
  FramePoint point;
  point.offset = offset;
  point.p = pj_ + tau_ * offset;
  point.s = offset * std::pow(r, 1.0 / rho_);
  const double w = regular_phase(point.p);
  const double dw = regular_phase_prime(point.p);
  const ComplexValue v = regular_amp(point.p);
  const ComplexValue dv = regular_amp_prime(point.p);
  point.ds_doffset = w / (rho_ * std::pow(r, (rho_ - 1.0) / rho_));
  const double a = (rho_ - mu_) / rho_;
  const double ra = std::pow(r, a);
  point.k = sigma_ * rho_ * ra * v / w;
  point.dk_doffset = sigma_ * rho_ *
                     (a * std::pow(r, a - 1.0) * dr * v / w + ra * tau_ * (dv * w - v * dw) / (w * w));
  point.k_prime = point.dk_doffset / point.ds_doffset;
  return point;
}

ComplexValue SubstitutionFrame::k(double s) const { return at_offset(offset_of(s)).k; }

ComplexValue SubstitutionFrame::k_prime(double s) const { return at_offset(offset_of(s)).k_prime; }

SubstitutionFrame build_frame(const PhaseModel& phase, const SingularAmplitude& amp, int side,
                              double q) {
  return SubstitutionFrame(phase, amp, side, q);
}

ComplexValue k_limit_at_zero(const PhaseModel& phase, const SingularAmplitude& amp, int side) {
  phase.validate();
  amp.validate();
  const double span = phase.p2 - phase.p1;
  if (side == 1) {
    const double d = std::pow(phase.rho1 / (std::pow(span, phase.rho2 - 1.0) * phase.psi_tilde(phase.p1)),
                              1.0 / phase.rho1);
    return std::pow(d, amp.mu1) * amp.regular_left(amp.p1);
  }
  if (side == 2) {
    const double d = std::pow(phase.rho2 / (std::pow(span, phase.rho1 - 1.0) * phase.psi_tilde(phase.p2)),
                              1.0 / phase.rho2);
    return -std::pow(d, amp.mu2) * amp.regular_right(amp.p2);
  }
  throw std::domain_error("k_limit_at_zero: side must be 1 or 2");
}

}  // namespace stasis
