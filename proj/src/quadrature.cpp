#include "stasis/quadrature.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <utility>


namespace stasis::quad {

namespace {

Rule make_gauss_legendre(int n) {
  Rule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    // Newton on P_n from the Chebyshev-like initial guess.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double derivative = 1.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      derivative = n * (x * p1 - p0) / (x * x - 1.0);
      const double step = p1 / derivative;
      x -= step;
      if (std::abs(step) < 1e-16) {
        break;
      }
    }
    // Map [-1,1] -> [0,1].
    rule.nodes[n - 1 - i] = 0.5 * (1.0 + x);
    rule.weights[n - 1 - i] = 1.0 / ((1.0 - x * x) * derivative * derivative);
  }
  return rule;
}

// Golub–Welsch for the Jacobi weight (1-y)^0 (1+y)^b on [-1,1], mapped to x^b on [0,1].
Rule make_gauss_jacobi(int n, double b) {
  if (!(b > -1.0)) {
    throw std::domain_error("gauss_jacobi: exponent must exceed -1");
  }
  const double a = 0.0;
  Eigen::VectorXd diag(n);
  Eigen::VectorXd sub(std::max(n - 1, 1));
  for (int k = 0; k < n; ++k) {
    const double s = 2.0 * k + a + b;
    if (k == 0) {
      diag(k) = (b - a) / (a + b + 2.0);
    } else {
      diag(k) = (b * b - a * a) / (s * (s + 2.0));
    }
    if (k >= 1) {
      const double kk = k;
      const double num = 4.0 * kk * (kk + a) * (kk + b) * (kk + a + b);
      const double den = s * s * (s + 1.0) * (s - 1.0);
      sub(k - 1) = std::sqrt(num / den);
    }
  }
  Rule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  if (n == 1) {
    rule.nodes[0] = 0.5 * (1.0 + diag(0));
    rule.weights[0] = 1.0 / (b + 1.0);
    return rule;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub.head(n - 1), Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("gauss_jacobi: eigenvalue solver failed");
  }
  // Zeroth moment of x^b on [0,1].
  const double moment = 1.0 / (b + 1.0);
  for (int i = 0; i < n; ++i) {
    const double v = solver.eigenvectors()(0, i);
    rule.nodes[i] = 0.5 * (1.0 + solver.eigenvalues()(i));
    rule.weights[i] = moment * v * v;
  }
  return rule;
}

}  // namespace

const Rule& gauss_legendre(int n) {
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<Rule>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[n];
  if (!slot) {
    if (n < 1) {
      throw std::domain_error("gauss_legendre: n must be positive");
    }
    slot = std::make_unique<Rule>(make_gauss_legendre(n));
  }
  return *slot;
}

const Rule& gauss_jacobi(int n, double alpha) {
  static std::mutex mutex;
  static std::map<std::pair<int, double>, std::unique_ptr<Rule>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[{n, alpha}];
  if (!slot) {
    if (n < 1) {
      throw std::domain_error("gauss_jacobi: n must be positive");
    }
    slot = std::make_unique<Rule>(make_gauss_jacobi(n, alpha));
  }
  return *slot;
}

}  // namespace stasis::quad
