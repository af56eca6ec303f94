#include "stasis/specfun.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace stasis {

namespace {

// Lanczos coefficients for g = 7, n = 9.
constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczosCoeffs = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

double lanczos_gamma(double x) {
  // Valid for x >= 0.5.
  const double xm1 = x - 1.0;
  double series = kLanczosCoeffs[0];
  for (std::size_t i = 1; i < kLanczosCoeffs.size(); ++i) {
    series += kLanczosCoeffs[i] / (xm1 + static_cast<double>(i));
  }
  const double t = xm1 + kLanczosG + 0.5;
  // t^(x-1/2) e^{-t} split in two halves to delay overflow near x = 170.
  const double half_power = std::pow(t, 0.5 * (xm1 + 0.5));
  return std::sqrt(2.0 * std::numbers::pi) * half_power * (half_power * std::exp(-t)) * series;
}

}  // namespace

double gamma_pos(double x) {
  if (!std::isfinite(x) || x <= 0.0) {
    throw std::domain_error("gamma_pos: argument must be finite and positive, got " +
                            std::to_string(x));
  }
  if (x < 0.5) {
    // Reflection Γ(x)Γ(1-x) = π / sin(πx).
    return std::numbers::pi / (std::sin(std::numbers::pi * x) * lanczos_gamma(1.0 - x));
  }
  return lanczos_gamma(x);
}

ComplexValue theta(int side, double rho, double mu) {
  if (side != 1 && side != 2) {
    throw std::domain_error("theta: side must be 1 or 2");
  }
  if (!(rho >= 1.0) || !std::isfinite(rho)) {
    throw std::domain_error("theta: rho must be >= 1");
  }
  if (!(mu > 0.0 && mu <= 1.0)) {
    throw std::domain_error("theta: mu must lie in (0, 1]");
  }
  const double sign = side == 1 ? 1.0 : -1.0;
  const double modulus = gamma_pos(mu / rho) / rho;
  return sign * std::polar(modulus, sign * std::numbers::pi * mu / (2.0 * rho));
}

ComplexValue power_principal(ComplexValue z, double a) {
  if (z == ComplexValue{0.0, 0.0}) {
    if (a > 0.0) {
      return {0.0, 0.0};
    }
    throw std::domain_error("power_principal: zero base with non-positive exponent");
  }
  if (z.imag() == 0.0 && z.real() < 0.0) {
    throw std::domain_error("power_principal: base on the branch cut (negative real axis)");
  }
  const double log_modulus = std::log(std::abs(z));
  const double arg = std::arg(z);
  return std::polar(std::exp(a * log_modulus), a * arg);
}

}  // namespace stasis
