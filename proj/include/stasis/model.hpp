#pragma once

#include <functional>
#include <stdexcept>
#include <string>

#include "stasis/specfun.hpp"

namespace stasis {

using RealMap = std::function<double(double)>;
using ComplexMap = std::function<ComplexValue(double)>;

/// Raised when an iterative solver fails on input that passed validation.
class InternalError : public std::runtime_error {
 public:
  InternalError(const std::string& what, double offending)
      : std::runtime_error(what), offending_(offending) {}
  double offending() const { return offending_; }

 private:
  double offending_;
};

/// U(p) = (p-p1)^(mu1-1) (p2-p)^(mu2-1) u_tilde(p) on [p1, p2].
struct SingularAmplitude {
  double p1 = 0.0;
  double p2 = 1.0;
  double mu1 = 1.0;
  double mu2 = 1.0;
  ComplexMap u_tilde;
  ComplexMap u_tilde_prime;
  double sup_norm_u = 0.0;      // ||u_tilde||_inf
  double sobolev_norm_u = 0.0;  // ||u_tilde||_{W^{1,inf}}

  /// U(p) for p in the open interval (endpoints with mu < 1 are singular).
  ComplexValue operator()(double p) const;
  /// Regular part at the left end, (p2-p)^(mu2-1) u_tilde(p).
  ComplexValue regular_left(double p) const;
  /// Regular part at the right end, (p-p1)^(mu1-1) u_tilde(p).
  ComplexValue regular_right(double p) const;
  /// Throws std::domain_error on violated invariants.
  void validate() const;
};

/// psi with psi'(p) = (p-p1)^(rho1-1) (p2-p)^(rho2-1) psi_tilde(p), psi_tilde > 0.
struct PhaseModel {
  double p1 = 0.0;
  double p2 = 1.0;
  double rho1 = 1.0;
  double rho2 = 1.0;
  RealMap psi;
  RealMap psi_prime;
  RealMap psi_tilde;
  RealMap psi_tilde_prime;  // optional; finite differences of psi_tilde when empty

  double tilde_derivative(double p) const;
  void validate() const;
};

/// Everything the frame knows at one offset delta = |p - p_j|.
struct FramePoint {
  double offset = 0.0;
  double p = 0.0;
  double s = 0.0;
  double ds_doffset = 0.0;
  ComplexValue k;
  ComplexValue dk_doffset;
  ComplexValue k_prime;  // dk/ds
};

/// One side j of the split integral: phi_j on I_j, its inverse on [0, s_j], and k_j.
///
/// The maps are evaluated through the integral mean
///   R(delta) = int_0^1 y^(rho-1) W(p_j +- delta y) dy,
/// where W is the regular part of psi' at p_j, so that s = delta R^(1/rho) and
/// k = +-rho R^((rho-mu)/rho) V / W carry no 0/0 at the endpoint.
class SubstitutionFrame {
 public:
  SubstitutionFrame(const PhaseModel& phase, const SingularAmplitude& amp, int side, double q);

  int side() const { return side_; }
  double q() const { return q_; }
  double s_end() const { return s_end_; }
  double rho() const { return rho_; }
  double mu() const { return mu_; }
  double endpoint() const { return pj_; }
  /// |q - p_j|, the offset range covered by the frame.
  double offset_end() const { return offset_end_; }
  ComplexValue k_at_zero() const { return k0_; }
  /// Direction e^{(-1)^{j+1} i pi / (2 rho)} of the rays Lambda^(j)(s).
  ComplexValue ray_direction() const;

  double phi(double p) const;
  double phi_inv(double s) const;
  /// d phi_j / dp.
  double phi_prime(double p) const;
  ComplexValue k(double s) const;
  ComplexValue k_prime(double s) const;

  /// Offset solving delta R(delta)^(1/rho) = s.
  double offset_of(double s) const;
  FramePoint at_offset(double offset) const;

 private:
  double regular_phase(double p) const;        // W
  double regular_phase_prime(double p) const;  // W'
  ComplexValue regular_amp(double p) const;    // V
  ComplexValue regular_amp_prime(double p) const;
  void mean(double offset, double& r, double& dr) const;

  PhaseModel phase_;
  SingularAmplitude amp_;
  int side_;
  double q_;
  double pj_;
  double tau_;    // +1 on side 1, -1 on side 2
  double sigma_;  // sign of (phi_j^{-1})'
  double rho_;
  double mu_;
  double offset_end_;
  double s_end_;
  double slope0_;  // |d_j| = (rho / W(p_j))^(1/rho)
  ComplexValue k0_;
};

SubstitutionFrame build_frame(const PhaseModel& phase, const SingularAmplitude& amp, int side, double q);

/// k_j(0) = (-1)^{j+1} |d_j|^{mu_j} V_j(p_j).
ComplexValue k_limit_at_zero(const PhaseModel& phase, const SingularAmplitude& amp, int side);

}  // namespace stasis
