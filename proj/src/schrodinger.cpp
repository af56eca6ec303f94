#include "stasis/schrodinger.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "stasis/oracle.hpp"
#include "stasis/parallel.hpp"

namespace stasis {

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

void SchrodingerSetup::validate() const {
  amp.validate();
  if (amp.p1 != p1 || amp.p2 != p2) {
    throw std::domain_error("schrodinger: setup interval differs from the amplitude's");
  }
  if (mu != amp.mu1 || !(mu > 0.0 && mu < 1.0)) {
    throw std::domain_error("schrodinger: mu must equal amp.mu1 and lie in (0, 1)");
  }
  if (amp.mu2 != 1.0) {
    throw std::domain_error("schrodinger: the datum must be regular at p2 (mu2 = 1)");
  }
  if (std::abs(amp.u_tilde(p2)) > 1e-12 * amp.sup_norm_u) {
    throw std::domain_error("schrodinger: the datum must vanish at p2");
  }
}

SchrodingerSetup make_setup(const SingularAmplitude& amp) {
  SchrodingerSetup setup;
  setup.amp = amp;
  setup.p1 = amp.p1;
  setup.p2 = amp.p2;
  setup.mu = amp.mu1;
  setup.validate();
  return setup;
}

const char* to_string(DecayCase c) {
  switch (c) {
    case DecayCase::mu_above_half:
      return "mu>1/2";
    case DecayCase::mu_half:
      return "mu=1/2";
    case DecayCase::mu_below_half:
      return "mu<1/2";
  }
  return "unknown";
}

ComplexValue evaluate_solution(const SchrodingerSetup& setup, double t, double x, double tol) {
  if (!(t > 0.0) || !std::isfinite(t) || !std::isfinite(x)) {
    throw std::domain_error("evaluate_solution: need t > 0 and finite x");
  }
  if (!(tol >= 1e-10)) {
    throw std::domain_error("evaluate_solution: tol must be at least 1e-10");
  }
  const SingularAmplitude& amp = setup.amp;
  const double p0 = stationary_point(t, x);
  // Phase x p - t p^2 = t (-(p - p0)^2) + t p0^2; the constant goes outside.
  RealMap psi = [p0](double p) { return -(p - p0) * (p - p0); };
  RealMap psi_prime = [p0](double p) { return -2.0 * (p - p0); };
  const double left_exp = amp.mu1 - 1.0;
  const double right_exp = amp.mu2 - 1.0;
  const double integral_tol = 2.0 * kPi * tol;
  ComplexValue integral;
  if (p0 > amp.p1 + 1e-12 && p0 < amp.p2 - 1e-12) {
    ComplexMap left_part = [&amp](double p) { return amp.regular_left(p); };
    ComplexMap right_part = [&amp](double p) { return amp.regular_right(p); };
    integral = integrate_monotone_phase(left_part, psi, psi_prime, amp.p1, p0, left_exp, 0.0, t,
                                        0.5 * integral_tol)
                   .value +
               integrate_monotone_phase(right_part, psi, psi_prime, p0, amp.p2, 0.0, right_exp, t,
                                        0.5 * integral_tol)
                   .value;
  } else {
    ComplexMap smooth = [&amp](double p) { return amp.u_tilde(p); };
    integral =
        integrate_monotone_phase(smooth, psi, psi_prime, amp.p1, amp.p2, left_exp, right_exp, t, integral_tol)
            .value;
  }
  return std::polar(1.0 / (2.0 * kPi), t * p0 * p0) * integral;
}

double stationary_point(double t, double x) {
  if (!(t > 0.0)) {
    throw std::domain_error("stationary_point: t must be positive");
  }
  return x / (2.0 * t);
}

std::pair<double, double> curve_point(const SchrodingerSetup& setup, double eps, double t) {
  if (!(t > 1.0)) {
    throw std::domain_error("curve_point: t must exceed 1");
  }
  return {t, 2.0 * setup.p1 * t + 2.0 * std::pow(t, 1.0 - eps)};
}

double threshold_time(double p, double p1, double eps) {
  if (!(p > p1)) {
    throw std::domain_error("threshold_time: need p > p1");
  }
  if (!(eps > 0.0)) {
    throw std::domain_error("threshold_time: eps must be positive");
  }
  return std::pow(2.0 * (p - p1), -1.0 / eps);
}

bool region_contains(const SchrodingerSetup& setup, double eps, double t, double x) {
  if (!(t > 0.0)) {
    return false;
  }
  // A few ulps of slack so that computed curve points count as members.
  const double p0 = x / (2.0 * t);
  const double gap = std::pow(t, -eps);
  const double slack = 8.0 * std::numeric_limits<double>::epsilon() * (std::abs(p0) + std::abs(setup.p1) + gap);
  const bool beyond_curve = p0 - setup.p1 >= gap - slack;
  const bool inside_band = x < 2.0 * setup.p2 * t;
  const bool late = t > threshold_time(setup.p2, setup.p1, eps);
  return beyond_curve && inside_band && late;
}

PredictedDecay predicted_exponents(double mu, double eps) {
  if (!(mu > 0.0 && mu < 1.0) || !(eps > 0.0)) {
    throw std::domain_error("predicted_exponents: need mu in (0, 1) and eps > 0");
  }
  if (std::abs(mu - 0.5) < 1e-12) {
    return {-0.5 + eps / 2.0, DecayCase::mu_half};
  }
  if (mu > 0.5) {
    return {-0.5 + eps * (1.0 - mu), DecayCase::mu_above_half};
  }
  return {-mu + eps * mu, DecayCase::mu_below_half};
}

CurveCoefficients curve_coefficients(const SchrodingerSetup& setup, double eps, double t) {
  const double t_min = threshold_time(setup.p2, setup.p1, eps);
  if (!(t > t_min)) {
    std::ostringstream msg;
    msg << "curve_coefficients: t = " << t << " must exceed T_p2 = " << t_min;
    throw std::domain_error(msg.str());
  }
  const double mu = setup.mu;
  const double p0 = setup.p1 + std::pow(t, -eps);
  const double x = 2.0 * t * p0;
  const double psi_p1 = x * setup.p1 / t - setup.p1 * setup.p1;
  CurveCoefficients out;
  out.H = 1.0 / (2.0 * std::sqrt(kPi)) * std::polar(1.0, -kPi / 4.0) * std::polar(1.0, t * p0 * p0) *
          setup.amp.u_tilde(p0);
  out.K = gamma_pos(mu) / (std::pow(2.0, mu + 1.0) * kPi) * std::polar(1.0, kPi * mu / 2.0) *
          std::polar(1.0, t * psi_p1) * setup.amp.u_tilde(setup.p1);
  out.R_H = setup.amp.sup_norm_u / (2.0 * std::sqrt(kPi));
  out.R_K = gamma_pos(mu) * setup.amp.sup_norm_u / (std::pow(2.0, mu + 1.0) * kPi);
  return out;
}

DecayFit fit_decay(const std::vector<std::pair<double, double>>& samples) {
  if (samples.size() < 8) {
    throw std::domain_error("fit_decay: need at least 8 samples");
  }
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (!(samples[i].second > 0.0) || !std::isfinite(samples[i].second)) {
      throw std::domain_error("fit_decay: magnitudes must be positive and finite");
    }
    if (!(samples[i].first > 0.0) || (i > 0 && !(samples[i].first > samples[i - 1].first))) {
      throw std::domain_error("fit_decay: t must be positive and strictly increasing");
    }
  }
  if (samples.back().first < 100.0 * samples.front().first * (1.0 - 1e-12)) {
    throw std::domain_error("fit_decay: samples must span at least two decades in t");
  }
  const double n = static_cast<double>(samples.size());
  double mean_x = 0.0;
  double mean_y = 0.0;
  for (const auto& [t, m] : samples) {
    mean_x += std::log10(t);
    mean_y += std::log10(m);
  }
  mean_x /= n;
  mean_y /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  for (const auto& [t, m] : samples) {
    const double dx = std::log10(t) - mean_x;
    sxx += dx * dx;
    sxy += dx * (std::log10(m) - mean_y);
  }
  DecayFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = mean_y - fit.slope * mean_x;
  fit.n_points = samples.size();
  for (const auto& [t, m] : samples) {
    fit.max_residual =
        std::max(fit.max_residual, std::abs(std::log10(m) - (fit.intercept + fit.slope * std::log10(t))));
  }
  return fit;
}

std::vector<double> log_grid(double lo, double hi, int n) {
  if (!(lo > 0.0) || !(hi > lo) || n < 2) {
    throw std::domain_error("log_grid: need 0 < lo < hi and n >= 2");
  }
  std::vector<double> grid(n);
  const double a = std::log10(lo);
  const double b = std::log10(hi);
  for (int i = 0; i < n; ++i) {
    grid[i] = std::pow(10.0, a + (b - a) * i / (n - 1));
  }
  grid.front() = lo;
  grid.back() = hi;
  return grid;
}

double curve_delta(double mu, double eps) {
  if (!(eps > 0.0 && eps < 0.5)) {
    throw std::domain_error("curve_delta: eps must lie in (0, 1/2)");
  }
  const double delta = 0.5 * (mu + 1.0);
  if (eps < delta - 0.5) {
    return delta;
  }
  return 0.5 * ((eps + 0.5) + 1.0);
}

CurveReport verify_curve_expansion(const SchrodingerSetup& setup, double eps, const std::vector<double>& t_grid,
                                   double tol, const CurveOptions& options) {
  CurveReport report;
  report.mu = setup.mu;
  report.eps = eps;
  report.delta = options.delta ? *options.delta : curve_delta(setup.mu, eps);
  report.predicted = predicted_exponents(setup.mu, eps);
  report.exponents = curve_exponents(setup.mu, eps, report.delta);
  const double t_min = threshold_time(setup.p2, setup.p1, eps);
  for (double t : t_grid) {
    if (!(t > t_min) || !(t > 1.0)) {
      std::ostringstream msg;
      msg << "verify_curve_expansion: t = " << t << " must exceed max(1, T_p2) = " << std::max(1.0, t_min);
      throw std::domain_error(msg.str());
    }
  }
  report.rows = parallel_map(t_grid.size(), options.jobs, [&](std::size_t i) {
    const auto [tt, x] = curve_point(setup, eps, t_grid[i]);
    CurveRow row;
    row.t = tt;
    row.x = x;
    row.u = evaluate_solution(setup, tt, x, tol);
    return row;
  });
  std::vector<std::pair<double, double>> lead_samples;
  std::vector<std::pair<double, double>> residual_samples;
  for (CurveRow& row : report.rows) {
    const CurveCoefficients cc = curve_coefficients(setup, eps, row.t);
    const double rate = std::pow(row.t, report.predicted.leading_exp);
    switch (report.predicted.decay_case) {
      case DecayCase::mu_above_half:
        row.leading = cc.H * rate;
        break;
      case DecayCase::mu_half:
        row.leading = (cc.K + cc.H) * rate;
        break;
      case DecayCase::mu_below_half:
        row.leading = cc.K * rate;
        break;
    }
    row.residual = std::abs(row.u - row.leading);
    row.H_abs = std::abs(cc.H);
    row.K_abs = std::abs(cc.K);
    if (row.H_abs > cc.R_H * (1.0 + 1e-12) || row.K_abs > cc.R_K * (1.0 + 1e-12)) {
      report.coefficients_bounded = false;
    }
    lead_samples.emplace_back(row.t, std::abs(row.u));
    residual_samples.emplace_back(row.t, row.residual);
  }
  report.leading_fit = fit_decay(lead_samples);
  report.residual_fit = fit_decay(residual_samples);
  const bool slope_ok =
      std::abs(report.leading_fit.slope - report.predicted.leading_exp) <= options.slope_tolerance;
  const bool faster = report.residual_fit.slope <= report.leading_fit.slope - options.min_separation;
  report.pass = slope_ok && faster && report.coefficients_bounded;
  return report;
}

CriticalReport critical_direction_scan(const SchrodingerSetup& setup, const std::vector<double>& t_grid,
                                       double tol, double slope_tolerance, int jobs) {
  CriticalReport report;
  report.predicted = -setup.mu / 2.0;
  report.samples = parallel_map(t_grid.size(), jobs, [&](std::size_t i) {
    const double t = t_grid[i];
    return std::make_pair(t, std::abs(evaluate_solution(setup, t, 2.0 * setup.p1 * t, tol)));
  });
  report.fit = fit_decay(report.samples);
  report.pass = std::abs(report.fit.slope - report.predicted) <= slope_tolerance;
  return report;
}

RegionReport region_scan(const SchrodingerSetup& setup, double eps, const std::vector<double>& t_grid, int rays,
                         double tol, double factor, int jobs) {
  if (rays < 1) {
    throw std::domain_error("region_scan: need at least one ray");
  }
  const double exponent = predicted_exponents(setup.mu, eps).leading_exp;
  RegionReport report;
  for (double t : t_grid) {
    const double gap = std::pow(t, -eps);
    for (int k = 0; k <= rays; ++k) {
      const double p0 = setup.p1 + gap + (static_cast<double>(k) / rays) * (setup.p2 - setup.p1 - gap) * 0.999;
      const double x = k == 0 ? curve_point(setup, eps, t).second : 2.0 * t * p0;
      if (!region_contains(setup, eps, t, x)) {
        std::ostringstream msg;
        msg << "region_scan: sample (t, x) = (" << t << ", " << x << ") lies outside the region";
        throw std::domain_error(msg.str());
      }
      RegionSample sample;
      sample.t = t;
      sample.x = x;
      sample.ray = k;
      report.samples.push_back(sample);
    }
  }
  const auto values = parallel_map(report.samples.size(), jobs, [&](std::size_t i) {
    const RegionSample& sample = report.samples[i];
    return std::abs(evaluate_solution(setup, sample.t, sample.x, tol)) * std::pow(sample.t, -exponent);
  });
  for (std::size_t i = 0; i < values.size(); ++i) {
    RegionSample& sample = report.samples[i];
    sample.scaled = values[i];
    if (sample.ray == 0) {
      report.curve_constant = std::max(report.curve_constant, sample.scaled);
    }
    report.region_sup = std::max(report.region_sup, sample.scaled);
  }
  report.ratio = report.region_sup / report.curve_constant;
  report.pass = report.region_sup <= factor * report.curve_constant;
  return report;
}

}  // namespace stasis
