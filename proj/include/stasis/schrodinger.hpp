#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "stasis/model.hpp"
#include "stasis/quadratic.hpp"

namespace stasis {

/// Fourier transform of the initial datum, supported on [p1, p2], singular at p1
/// and vanishing at p2.
struct SchrodingerSetup {
  SingularAmplitude amp;
  double p1 = 0.0;
  double p2 = 1.0;
  double mu = 0.5;

  void validate() const;
};

SchrodingerSetup make_setup(const SingularAmplitude& amp);

struct DecayFit {
  double slope = 0.0;
  double intercept = 0.0;
  double max_residual = 0.0;
  std::size_t n_points = 0;
};

enum class DecayCase { mu_above_half, mu_half, mu_below_half };

const char* to_string(DecayCase c);

struct PredictedDecay {
  double leading_exp = 0.0;
  DecayCase decay_case = DecayCase::mu_above_half;
};

struct CurveCoefficients {
  ComplexValue H;
  ComplexValue K;
  double R_H = 0.0;
  double R_K = 0.0;
};

/// u(t, x) = (1/2pi) int U(p) e^{i(xp - tp^2)} dp.
ComplexValue evaluate_solution(const SchrodingerSetup& setup, double t, double x, double tol);

double stationary_point(double t, double x);

/// (t, x) on the curve x/(2t) - p1 = t^-eps.
std::pair<double, double> curve_point(const SchrodingerSetup& setup, double eps, double t);

/// T_p = (2(p - p1))^(-1/eps).
double threshold_time(double p, double p1, double eps);

bool region_contains(const SchrodingerSetup& setup, double eps, double t, double x);

PredictedDecay predicted_exponents(double mu, double eps);

CurveCoefficients curve_coefficients(const SchrodingerSetup& setup, double eps, double t);

/// Ordinary least squares of log10(magnitude) against log10(t).
DecayFit fit_decay(const std::vector<std::pair<double, double>>& samples);

/// n points log-spaced on [lo, hi], both ends included.
std::vector<double> log_grid(double lo, double hi, int n);

struct CurveRow {
  double t = 0.0;
  double x = 0.0;
  ComplexValue u;
  ComplexValue leading;
  double residual = 0.0;
  double H_abs = 0.0;
  double K_abs = 0.0;
};

struct CurveReport {
  double mu = 0.0;
  double eps = 0.0;
  double delta = 0.0;
  PredictedDecay predicted;
  CurveExponents exponents;
  DecayFit leading_fit;   // of |u|
  DecayFit residual_fit;  // of |u - leading term(s)|
  bool coefficients_bounded = true;
  bool pass = false;
  std::vector<CurveRow> rows;
};

/// delta used for the remainder exponents: (mu+1)/2, raised to the midpoint of
/// (eps + 1/2, 1) when eps is not below (mu+1)/2 - 1/2.
double curve_delta(double mu, double eps);

struct CurveOptions {
  double slope_tolerance = 0.05;
  double min_separation = 0.03;
  std::optional<double> delta;  // curve_delta(mu, eps) when absent
  int jobs = 1;
};

CurveReport verify_curve_expansion(const SchrodingerSetup& setup, double eps, const std::vector<double>& t_grid,
                                   double tol, const CurveOptions& options = {});

struct CriticalReport {
  double predicted = 0.0;  // -mu/2
  DecayFit fit;
  bool pass = false;
  std::vector<std::pair<double, double>> samples;
};

/// Decay along x = 2 p1 t, where the stationary point sits on the singularity.
CriticalReport critical_direction_scan(const SchrodingerSetup& setup, const std::vector<double>& t_grid,
                                       double tol, double slope_tolerance = 0.05, int jobs = 1);

struct RegionSample {
  double t = 0.0;
  double x = 0.0;
  int ray = 0;
  double scaled = 0.0;  // |u| t^-(predicted exponent)
};

struct RegionReport {
  double curve_constant = 0.0;
  double region_sup = 0.0;
  double ratio = 0.0;
  bool pass = false;
  std::vector<RegionSample> samples;
};

/// Samples the region on `rays` interior rays p0 = p1 + t^-eps + (k/rays)(p2 - p1 - t^-eps)*0.999
/// and compares against the same scaling on the boundary curve.
RegionReport region_scan(const SchrodingerSetup& setup, double eps, const std::vector<double>& t_grid, int rays,
                         double tol, double factor = 3.0, int jobs = 1);

}  // namespace stasis
