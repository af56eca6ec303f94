#pragma once

#include <complex>

namespace stasis {

using ComplexValue = std::complex<double>;

/// Γ(x) for real x > 0. Relative error below 1e-13 on [0.05, 50].
/// Throws std::domain_error for non-positive or non-finite x.
double gamma_pos(double x);

/// Endpoint constant of the one-term expansion at side j:
///   (-1)^{j+1}/ρ · Γ(μ/ρ) · exp((-1)^{j+1} iπμ/(2ρ)).
/// Requires side ∈ {1,2}, ρ ≥ 1 and μ ∈ (0,1].
ComplexValue theta(int side, double rho, double mu);

/// Principal branch z^a = exp(a (ln|z| + i arg z)), arg z ∈ (-π, π).
/// z = 0 returns 0 for a > 0; z = 0 with a ≤ 0 and z on the negative real
/// axis are domain errors.
ComplexValue power_principal(ComplexValue z, double a);

}  // namespace stasis
