#pragma once

#include <cmath>
#include <complex>

#include "stasis/catalog.hpp"
#include "stasis/model.hpp"

namespace fx {

using stasis::ComplexValue;

inline stasis::SingularAmplitude beta(double mu1, double mu2, double p1 = 0.0, double p2 = 1.0) {
  stasis::AmplitudeParams params;
  params.p1 = p1;
  params.p2 = p2;
  params.mu1 = mu1;
  params.mu2 = mu2;
  return stasis::make_amplitude("beta", params);
}

inline stasis::SingularAmplitude intro(double mu) {
  stasis::AmplitudeParams params;
  params.mu1 = mu;
  return stasis::make_amplitude("intro", params);
}

/// psi = -(p - p0)^2 + c restricted to [p1, p0]: rho1 = 1, rho2 = 2.
inline stasis::PhaseModel quadratic_left(double p1, double p0, double c = 0.0) {
  stasis::PhaseModel ph;
  ph.p1 = p1;
  ph.p2 = p0;
  ph.rho2 = 2.0;
  ph.psi = [p0, c](double p) { return -(p - p0) * (p - p0) + c; };
  ph.psi_prime = [p0](double p) { return -2.0 * (p - p0); };
  ph.psi_tilde = [](double) { return 2.0; };
  ph.psi_tilde_prime = [](double) { return 0.0; };
  return ph;
}

/// (p-p1)^(mu-1) u(p) on [p1, p0] with u(p) = 1 + p, regular at p0.
inline stasis::SingularAmplitude affine_left(double mu, double p1, double p0) {
  stasis::SingularAmplitude amp;
  amp.p1 = p1;
  amp.p2 = p0;
  amp.mu1 = mu;
  amp.mu2 = 1.0;
  amp.u_tilde = [](double p) { return ComplexValue(1.0 + p, 0.0); };
  amp.u_tilde_prime = [](double) { return ComplexValue(1.0, 0.0); };
  amp.sup_norm_u = 1.0 + std::max(std::abs(p1), std::abs(p0));
  amp.sobolev_norm_u = std::max(amp.sup_norm_u, 1.0);
  return amp;
}

inline double rel(ComplexValue a, ComplexValue b) { return std::abs(a - b) / std::abs(b); }

}  // namespace fx
