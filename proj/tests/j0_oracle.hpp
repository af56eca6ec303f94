#pragma once

// Bessel J0 for the test suite only: long-double power series up to x = 20,
// Hankel asymptotic expansion beyond.

#include <cmath>

namespace ref {

inline double j0_series(double x) {
  const long double q = -0.25L * static_cast<long double>(x) * x;
  long double term = 1.0L;
  long double sum = 1.0L;
  for (int k = 1; k < 200; ++k) {
    term *= q / (static_cast<long double>(k) * k);
    sum += term;
    if (std::fabs(term) < 1e-22L * std::fabs(sum) && k > 5) {
      break;
    }
  }
  return static_cast<double>(sum);
}

inline double j0_asymptotic(double x) {
  // With b_k = 1^2 3^2 ... (2k-1)^2 / (k! 8^k): P = b_0 - b_2/x^2 + b_4/x^4 - ...,
  // Q = -b_1/x + b_3/x^3 - ...; stop at the smallest term.
  long double p = 0.0L;
  long double q = 0.0L;
  long double a = 1.0L;
  long double last = INFINITY;
  for (int k = 0; k < 60; ++k) {
    const long double term = a / std::pow(static_cast<long double>(x), k);
    if (std::fabs(term) > last) {
      break;
    }
    last = std::fabs(term);
    const int sign = ((k / 2) % 2 == 0) ? 1 : -1;
    const int parity = (k % 2 == 0) ? 1 : -1;
    if (k % 2 == 0) {
      p += sign * term;
    } else {
      q += parity * sign * term;
    }
    const long double odd = 2.0L * k + 1.0L;
    a *= odd * odd / ((k + 1.0L) * 8.0L);
  }
  const long double chi = static_cast<long double>(x) - 0.78539816339744830961566L;
  return static_cast<double>(std::sqrt(2.0L / (3.14159265358979323846264L * x)) * (p * std::cos(chi) - q * std::sin(chi)));
}

inline double j0(double x) {
  x = std::fabs(x);
  return x <= 20.0 ? j0_series(x) : j0_asymptotic(x);
}

}  // namespace ref
