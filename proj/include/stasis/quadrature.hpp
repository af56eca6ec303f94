#pragma once

// Quadrature building blocks shared by the expansion engine and the oracles:
// fixed Gauss rules on [0,1], a QUADPACK-style adaptive Gauss–Kronrod 7/15
// integrator and an integrator for one algebraic endpoint weight.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <queue>
#include <vector>

namespace stasis::quad {

/// Nodes and weights of a rule on [0, 1].
struct Rule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss–Legendre rule on [0,1]. Cached, thread-safe.
const Rule& gauss_legendre(int n);

/// n-point Gauss–Jacobi rule on [0,1] for the weight x^alpha, alpha > -1.
/// Cached by (n, alpha), thread-safe.
const Rule& gauss_jacobi(int n, double alpha);

template <class T>
struct Estimate {
  T value{};
  double error = 0.0;
  long evaluations = 0;
  double magnitude = 0.0;  // integral of |f|, sets the round-off floor
};

inline double magnitude(double x) { return std::abs(x); }
inline double magnitude(const std::complex<double>& z) { return std::abs(z); }

/// Compensated (Neumaier) sum.
template <class T>
class Accumulator {
 public:
  void add(const T& x) {
    const T t = sum_ + x;
    comp_ += compensation(sum_, x, t);
    sum_ = t;
  }
  T value() const { return sum_ + comp_; }

 private:
  static double compensation(double s, double x, double t) {
    return std::abs(s) >= std::abs(x) ? (s - t) + x : (x - t) + s;
  }
  static std::complex<double> compensation(const std::complex<double>& s,
                                           const std::complex<double>& x,
                                           const std::complex<double>& t) {
    return {compensation(s.real(), x.real(), t.real()),
            compensation(s.imag(), x.imag(), t.imag())};
  }

  T sum_{};
  T comp_{};
};

namespace detail {

inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

}  // namespace detail

/// One Gauss–Kronrod 7/15 panel with the QUADPACK error heuristic.
template <class T, class F>
Estimate<T> kronrod15(F&& f, double a, double b) {
  using detail::kGaussWeights;
  using detail::kKronrodNodes;
  using detail::kKronrodWeights;
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  std::array<T, 15> values;
  values[7] = f(center);
  for (int i = 0; i < 7; ++i) {
    const double dx = half * kKronrodNodes[i];
    values[i] = f(center - dx);
    values[14 - i] = f(center + dx);
  }
  T kronrod = kKronrodWeights[7] * values[7];
  T gauss = kGaussWeights[3] * values[7];
  double abs_sum = kKronrodWeights[7] * magnitude(values[7]);
  for (int i = 0; i < 7; ++i) {
    const T pair = values[i] + values[14 - i];
    kronrod += kKronrodWeights[i] * pair;
    abs_sum += kKronrodWeights[i] * (magnitude(values[i]) + magnitude(values[14 - i]));
    if (i % 2 == 1) {
      gauss += kGaussWeights[i / 2] * pair;
    }
  }
  const T mean = 0.5 * kronrod;
  double asc = kKronrodWeights[7] * magnitude(values[7] - mean);
  for (int i = 0; i < 7; ++i) {
    asc += kKronrodWeights[i] * (magnitude(values[i] - mean) + magnitude(values[14 - i] - mean));
  }
  const double scale = std::abs(half);
  double error = magnitude(kronrod - gauss) * scale;
  asc *= scale;
  abs_sum *= scale;
  if (asc != 0.0 && error != 0.0) {
    error = asc * std::min(1.0, std::pow(200.0 * error / asc, 1.5));
  }
  constexpr double eps = std::numeric_limits<double>::epsilon();
  error = std::max(error, 50.0 * eps * abs_sum);
  return {kronrod * half, error, 15, abs_sum};
}

/// Globally adaptive G7K15 on [a,b]; stops when the summed error estimate is
/// at most max(abs_tol, rel_tol·|I|), when it reaches the round-off floor of
/// the panel rule, or when max_intervals is reached. The caller inspects
/// `error` to decide whether the result is acceptable.
template <class T, class F>
Estimate<T> adaptive(F&& f, double a, double b, double abs_tol, double rel_tol,
                     int max_intervals = 4000) {
  struct Piece {
    double a, b;
    T value;
    double error;
    double magnitude;
    bool operator<(const Piece& other) const { return error < other.error; }
  };
  Estimate<T> result;
  if (a == b) {
    return result;
  }
  std::priority_queue<Piece> heap;
  auto first = kronrod15<T>(f, a, b);
  result.evaluations = first.evaluations;
  heap.push({a, b, first.value, first.error, first.magnitude});
  T total = first.value;
  double total_error = first.error;
  double total_magnitude = first.magnitude;
  int intervals = 1;
  constexpr double eps = std::numeric_limits<double>::epsilon();
  while (total_error > std::max({abs_tol, rel_tol * magnitude(total), 100.0 * eps * total_magnitude}) &&
         intervals < max_intervals) {
    Piece worst = heap.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > std::min(worst.a, worst.b) && mid < std::max(worst.a, worst.b))) {
      break;  // interval no longer divisible in floating point
    }
    heap.pop();
    auto left = kronrod15<T>(f, worst.a, mid);
    auto right = kronrod15<T>(f, mid, worst.b);
    result.evaluations += 30;
    total += left.value + right.value - worst.value;
    total_error += left.error + right.error - worst.error;
    total_magnitude += left.magnitude + right.magnitude - worst.magnitude;
    heap.push({worst.a, mid, left.value, left.error, left.magnitude});
    heap.push({mid, worst.b, right.value, right.error, right.magnitude});
    ++intervals;
  }
  // Re-sum from the pieces to shed the drift of the running updates.
  Accumulator<T> sum;
  double err = 0.0;
  while (!heap.empty()) {
    sum.add(heap.top().value);
    err += heap.top().error;
    heap.pop();
  }
  result.value = sum.value();
  result.error = err;
  result.magnitude = total_magnitude;
  return result;
}

/// Which end of [a,b] carries the algebraic weight.
enum class WeightedEnd { left, right };

/// ∫_a^b w(x) f(x) dx with w(x) = (x-a)^alpha (left) or (b-x)^alpha (right),
/// alpha > -1 and f smooth. A Gauss–Jacobi end piece absorbs the weight
/// exactly; it shrinks until the 20- and 32-point rules agree, and the rest of
/// the interval goes to the adaptive integrator.
template <class T, class F>
Estimate<T> with_endpoint_weight(F&& f, double a, double b, double alpha, WeightedEnd end,
                                 double abs_tol, double rel_tol) {
  Estimate<T> result;
  const double length = b - a;
  if (length <= 0.0) {
    return result;
  }
  const Rule& coarse = gauss_jacobi(20, alpha);
  const Rule& fine = gauss_jacobi(32, alpha);
  double piece_magnitude = 0.0;
  auto end_piece = [&](const Rule& rule, double h) {
    Accumulator<T> sum;
    double abs_sum = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      const double y = rule.nodes[i] * h;
      const double x = end == WeightedEnd::left ? a + y : b - y;
      const T fx = f(x);
      sum.add(rule.weights[i] * fx);
      abs_sum += rule.weights[i] * magnitude(fx);
    }
    const double factor = std::pow(h, alpha + 1.0);
    piece_magnitude = abs_sum * factor;
    return sum.value() * factor;
  };
  constexpr double eps = std::numeric_limits<double>::epsilon();
  double h = length;
  T piece{};
  double piece_error = 0.0;
  for (int attempt = 0; attempt < 30; ++attempt) {
    const T lo = end_piece(coarse, h);
    piece = end_piece(fine, h);
    result.evaluations += static_cast<long>(coarse.nodes.size() + fine.nodes.size());
    piece_error = magnitude(piece - lo);
    if (piece_error <= std::max({0.25 * abs_tol, 0.25 * rel_tol * magnitude(piece), 1e3 * eps * piece_magnitude})) {
      break;
    }
    h *= 0.25;
  }
  T rest{};
  if (h < length) {
    auto weighted = [&](double x) -> T {
      const double distance = end == WeightedEnd::left ? x - a : b - x;
      return std::pow(distance, alpha) * f(x);
    };
    const double lo = end == WeightedEnd::left ? a + h : a;
    const double hi = end == WeightedEnd::left ? b : b - h;
    auto tail = adaptive<T>(weighted, lo, hi, 0.5 * abs_tol, rel_tol);
    rest = tail.value;
    piece_error += tail.error;
    result.evaluations += tail.evaluations;
  }
  result.value = piece + rest;
  result.error = piece_error;
  result.magnitude = piece_magnitude;
  return result;
}

}  // namespace stasis::quad
