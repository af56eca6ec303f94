#include "stasis/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

#include "stasis/catalog.hpp"
#include "stasis/expansion.hpp"
#include "stasis/oracle.hpp"
#include "stasis/parallel.hpp"
#include "stasis/quadratic.hpp"
#include "stasis/schrodinger.hpp"

namespace stasis {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) {
    return "";
  }
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_real(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(t, &used);
  } catch (const std::exception&) {
    throw ConfigError(key, "'" + t + "' is not a number");
  }
  if (used != t.size() || !std::isfinite(value)) {
    throw ConfigError(key, "'" + t + "' is not a finite number");
  }
  return value;
}

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys = {
      "experiment.kind", "experiment.output", "amplitude.name",  "amplitude.p1",      "amplitude.p2",
      "amplitude.mu1",   "amplitude.mu2",     "phase.name",      "phase.p0",          "phase.c",
      "grid.omega",      "grid.omega_min",    "grid.omega_max",  "grid.omega_count",  "grid.q",
      "grid.t_min",      "grid.t_max",        "grid.t_count",    "grid.eps",          "grid.delta",
      "grid.rays",       "expansion.gamma",   "expansion.delta", "expansion.L",       "tolerance.oracle",
      "tolerance.slope", "tolerance.separation", "tolerance.region_factor"};
  return keys;
}

std::string csv_bool(bool b) { return b ? "true" : "false"; }

class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header) : columns_(header.size()) { add_line(header); }

  void add_row(const std::vector<std::string>& cells) {
    if (cells.size() != columns_) {
      throw std::logic_error("csv row width mismatch");
    }
    add_line(cells);
  }
  std::string str() const { return text_.str(); }

 private:
  void add_line(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      text_ << (i ? "," : "") << cells[i];
    }
    text_ << "\n";
  }
  std::size_t columns_;
  std::ostringstream text_;
};

struct KindOutput {
  std::string table;
  std::string summary;
  bool pass = true;
  std::string plot_title;
  std::string plot_x_label;
  std::vector<PlotSeries> plot;
};

SingularAmplitude amplitude_from(const ExperimentConfig& cfg) {
  AmplitudeParams params;
  params.p1 = cfg.get_double("amplitude.p1", 0.0);
  params.p2 = cfg.get_double("amplitude.p2", 1.0);
  params.mu1 = cfg.get_double("amplitude.mu1", 0.5);
  params.mu2 = cfg.get_double("amplitude.mu2", 0.5);
  const std::string& name = cfg.get_string("amplitude.name");
  const auto names = amplitude_names();
  if (std::find(names.begin(), names.end(), name) == names.end()) {
    throw ConfigError("amplitude.name", "unknown amplitude '" + name + "' (see `stasis catalog`)");
  }
  SingularAmplitude amp;
  try {
    amp = make_amplitude(name, params);
    amp.validate();
  } catch (const std::domain_error& e) {
    throw ConfigError("amplitude", e.what());
  }
  return amp;
}

bool is_quadratic(const ExperimentConfig& cfg) { return cfg.get_string("phase.name") == "quadratic"; }

QuadraticPhase quadratic_from(const ExperimentConfig& cfg, const SingularAmplitude& amp) {
  QuadraticPhase qp;
  qp.p0 = cfg.get_double("phase.p0");
  qp.c = cfg.get_double("phase.c", 0.0);
  qp.p1 = amp.p1;
  qp.p2 = amp.p2;
  try {
    qp.validate();
  } catch (const std::domain_error& e) {
    throw ConfigError("phase.p0", e.what());
  }
  return qp;
}

PhaseModel phase_from(const ExperimentConfig& cfg, const SingularAmplitude& amp) {
  const std::string& name = cfg.get_string("phase.name");
  const auto names = phase_names();
  if (std::find(names.begin(), names.end(), name) == names.end()) {
    throw ConfigError("phase.name", "unknown phase '" + name + "' (see `stasis catalog`)");
  }
  try {
    PhaseModel phase = make_phase(name, amp.p1, amp.p2);
    phase.validate();
    return phase;
  } catch (const std::domain_error& e) {
    throw ConfigError("phase.name", e.what());
  }
}

ExpansionConfig expansion_from(const ExperimentConfig& cfg) {
  ExpansionConfig config;
  config.gamma = cfg.get_double("expansion.gamma", config.gamma);
  config.delta = cfg.get_optional_double("expansion.delta");
  config.L_const = cfg.get_double("expansion.L", config.L_const);
  if (!(config.L_const > 0.0)) {
    throw ConfigError("expansion.L", "must be positive");
  }
  return config;
}

std::vector<double> omega_grid(const ExperimentConfig& cfg) {
  if (cfg.has("grid.omega")) {
    const auto grid = cfg.get_sorted_list("grid.omega");
    for (double w : grid) {
      if (!(w > 0.0)) {
        throw ConfigError("grid.omega", "frequencies must be positive");
      }
    }
    return grid;
  }
  const double lo = cfg.get_double("grid.omega_min");
  const double hi = cfg.get_double("grid.omega_max");
  const int n = cfg.get_int("grid.omega_count", 25);
  if (!(lo > 0.0 && hi > lo)) {
    throw ConfigError("grid.omega_max", "need 0 < omega_min < omega_max");
  }
  if (n < 2) {
    throw ConfigError("grid.omega_count", "need at least 2 points");
  }
  return log_grid(lo, hi, n);
}

std::vector<double> t_grid_from(const ExperimentConfig& cfg, double lo_default, double hi_default, int n_default) {
  const double lo = cfg.get_double("grid.t_min", lo_default);
  const double hi = cfg.get_double("grid.t_max", hi_default);
  const int n = cfg.get_int("grid.t_count", n_default);
  if (!(lo > 1.0 && hi > lo)) {
    throw ConfigError("grid.t_max", "need 1 < t_min < t_max");
  }
  if (n < 8) {
    throw ConfigError("grid.t_count", "need at least 8 points for a decay fit");
  }
  return log_grid(lo, hi, n);
}

SchrodingerSetup setup_from(const SingularAmplitude& amp) {
  try {
    return make_setup(amp);
  } catch (const std::domain_error& e) {
    throw ConfigError("amplitude", e.what());
  }
}

double oracle_tol(const ExperimentConfig& cfg, double fallback) {
  const double tol = cfg.get_double("tolerance.oracle", fallback);
  if (!(tol > 0.0)) {
    throw ConfigError("tolerance.oracle", "must be positive");
  }
  return tol;
}

/// The eps list, each checked against the open interval (0, delta - 1/2).
std::vector<double> eps_list(const ExperimentConfig& cfg, double mu, std::optional<double> delta) {
  const auto list = cfg.get_sorted_list("grid.eps");
  for (double eps : list) {
    try {
      const double d = delta ? *delta : curve_delta(mu, eps);
      curve_exponents(mu, eps, d);
    } catch (const std::domain_error& e) {
      throw ConfigError("grid.eps", e.what());
    }
  }
  return list;
}

std::optional<double> delta_from(const ExperimentConfig& cfg, double mu) {
  const auto delta = cfg.get_optional_double("grid.delta");
  if (delta && !(*delta >= 0.5 * (mu + 1.0) && *delta < 1.0)) {
    std::ostringstream msg;
    msg << "delta = " << *delta << " outside [" << 0.5 * (mu + 1.0) << ", 1)";
    throw ConfigError("grid.delta", msg.str());
  }
  return delta;
}

KindOutput run_expand(const ExperimentConfig& cfg) {
  const SingularAmplitude amp = amplitude_from(cfg);
  const auto omegas = cfg.get_sorted_list("grid.omega");
  if (omegas.size() != 1 || !(omegas.front() > 0.0)) {
    throw ConfigError("grid.omega", "expand needs exactly one positive frequency");
  }
  const double omega = omegas.front();
  const double tol = oracle_tol(cfg, 1e-11);
  ExpansionResult result;
  ComplexValue oracle;
  if (is_quadratic(cfg)) {
    const QuadraticPhase qp = quadratic_from(cfg, amp);
    const double delta = delta_from(cfg, amp.mu1).value_or(0.5 * (amp.mu1 + 1.0));
    result = expand_quadratic(amp, qp, omega, delta, cfg.get_double("expansion.L", 1.0));
    oracle = quadratic_oracle(amp, qp, omega, tol).value;
  } else {
    const PhaseModel phase = phase_from(cfg, amp);
    double q = 0.5 * (amp.p1 + amp.p2);
    if (cfg.has("grid.q")) {
      const auto qs = cfg.get_sorted_list("grid.q");
      if (qs.size() != 1) {
        throw ConfigError("grid.q", "expand needs exactly one cutting point");
      }
      q = qs.front();
    }
    result = expand_integral(phase, amp, q, expansion_from(cfg), omega);
    oracle = integrate_oscillatory(phase, amp, omega, tol).value;
  }
  KindOutput out;
  CsvTable table({"term", "role", "re", "im", "abs", "omega_exp", "gap_exp", "certified"});
  for (const auto& term : result.leading) {
    const ComplexValue v = term.value(omega);
    table.add_row({term.origin, "leading", format_real(v.real()), format_real(v.imag()), format_real(std::abs(v)),
                   format_real(term.omega_exp), "0", "true"});
  }
  for (const auto& term : result.bound_terms) {
    const double v = term.value(omega, result.gap);
    table.add_row({term.origin, "bound", format_real(v), "0", format_real(v), format_real(term.omega_exp),
                   format_real(term.gap_exp), csv_bool(term.certified)});
  }
  const ComplexValue lead = result.leading_sum();
  const double residual = std::abs(oracle - lead);
  out.pass = residual <= result.bound_total();
  CsvTable summary({"omega", "q", "oracle_re", "oracle_im", "lead_re", "lead_im", "residual_abs", "bound_total",
                    "certified_bound", "all_certified", "pass"});
  summary.add_row({format_real(omega), format_real(result.q_used), format_real(oracle.real()),
                   format_real(oracle.imag()), format_real(lead.real()), format_real(lead.imag()),
                   format_real(residual), format_real(result.bound_total()), format_real(result.certified_bound()),
                   csv_bool(result.all_certified()), csv_bool(out.pass)});
  out.table = table.str();
  out.summary = summary.str();
  return out;
}

struct SweepRow {
  double omega = 0.0;
  double q = 0.0;
  ComplexValue oracle;
  ComplexValue lead;
  double residual = 0.0;
  double bound = 0.0;
  bool certified = true;
};

KindOutput run_sweep(const ExperimentConfig& cfg, const RunOptions& options) {
  const SingularAmplitude amp = amplitude_from(cfg);
  const auto omegas = omega_grid(cfg);
  const double tol = oracle_tol(cfg, 1e-11);
  std::vector<std::vector<SweepRow>> per_omega;
  if (is_quadratic(cfg)) {
    if (cfg.has("grid.q")) {
      throw ConfigError("grid.q", "the quadratic phase fixes the cutting point at the midpoint of [p1, p0]");
    }
    const QuadraticPhase qp = quadratic_from(cfg, amp);
    const double delta = delta_from(cfg, amp.mu1).value_or(0.5 * (amp.mu1 + 1.0));
    const double L = cfg.get_double("expansion.L", 1.0);
    per_omega = parallel_map(omegas.size(), options.jobs, [&](std::size_t i) {
      const double omega = omegas[i];
      const ExpansionResult res = expand_quadratic(amp, qp, omega, delta, L);
      SweepRow row;
      row.omega = omega;
      row.q = res.q_used;
      row.oracle = quadratic_oracle(amp, qp, omega, tol).value;
      row.lead = res.leading_sum();
      row.residual = std::abs(row.oracle - row.lead);
      row.bound = res.bound_total();
      row.certified = res.all_certified();
      return std::vector<SweepRow>{row};
    });
  } else {
    const PhaseModel phase = phase_from(cfg, amp);
    const ExpansionConfig config = expansion_from(cfg);
    const auto qs = cfg.get_sorted_list("grid.q");
    for (double q : qs) {
      if (!(q > amp.p1 && q < amp.p2)) {
        throw ConfigError("grid.q", "cutting points must lie inside (p1, p2)");
      }
    }
    per_omega = parallel_map(omegas.size(), options.jobs, [&](std::size_t i) {
      const double omega = omegas[i];
      const ComplexValue oracle = integrate_oscillatory(phase, amp, omega, tol).value;
      std::vector<SweepRow> rows;
      for (double q : qs) {
        const ExpansionResult res = expand_integral(phase, amp, q, config, omega);
        SweepRow row;
        row.omega = omega;
        row.q = q;
        row.oracle = oracle;
        row.lead = res.leading_sum();
        row.residual = std::abs(oracle - row.lead);
        row.bound = res.bound_total();
        row.certified = res.all_certified();
        rows.push_back(row);
      }
      return rows;
    });
  }
  KindOutput out;
  CsvTable table({"omega", "q", "oracle_re", "oracle_im", "lead_re", "lead_im", "residual_abs", "bound_total", "pass"});
  std::size_t violations = 0;
  std::size_t count = 0;
  double worst_ratio = 0.0;
  bool certified = true;
  std::map<double, PlotSeries> residual_by_q;
  PlotSeries bound_series{"bound_total", {}};
  for (const auto& rows : per_omega) {
    for (const SweepRow& row : rows) {
      const bool ok = row.residual <= row.bound;
      violations += ok ? 0 : 1;
      ++count;
      certified = certified && row.certified;
      worst_ratio = std::max(worst_ratio, row.residual / row.bound);
      table.add_row({format_real(row.omega), format_real(row.q), format_real(row.oracle.real()),
                     format_real(row.oracle.imag()), format_real(row.lead.real()), format_real(row.lead.imag()),
                     format_real(row.residual), format_real(row.bound), csv_bool(ok)});
      auto& series = residual_by_q[row.q];
      series.name = "residual q=" + format_real(row.q);
      series.points.emplace_back(row.omega, row.residual);
      if (&row == &rows.front()) {
        bound_series.points.emplace_back(row.omega, row.bound);
      }
    }
  }
  out.pass = violations == 0;
  CsvTable summary({"rows", "violations", "max_residual_over_bound", "all_certified", "pass"});
  summary.add_row({std::to_string(count), std::to_string(violations), format_real(worst_ratio),
                   csv_bool(certified), csv_bool(out.pass)});
  out.table = table.str();
  out.summary = summary.str();
  out.plot_title = "remainder against bound";
  out.plot_x_label = "omega";
  for (auto& [q, series] : residual_by_q) {
    out.plot.push_back(series);
  }
  out.plot.push_back(bound_series);
  return out;
}

KindOutput run_curve(const ExperimentConfig& cfg, const RunOptions& options) {
  const SchrodingerSetup setup = setup_from(amplitude_from(cfg));
  const auto delta = delta_from(cfg, setup.mu);
  const auto eps_values = eps_list(cfg, setup.mu, delta);
  const auto t_grid = t_grid_from(cfg, 1e2, 1e6, 24);
  const double tol = oracle_tol(cfg, 1e-10);
  CurveOptions curve_options;
  curve_options.slope_tolerance = cfg.get_double("tolerance.slope", 0.05);
  curve_options.min_separation = cfg.get_double("tolerance.separation", 0.03);
  curve_options.delta = delta;
  curve_options.jobs = options.jobs;
  KindOutput out;
  CsvTable table({"eps", "t", "x", "u_re", "u_im", "u_abs", "lead_re", "lead_im", "residual_abs", "H_abs", "K_abs"});
  CsvTable summary({"mu", "eps", "delta", "case", "predicted_slope", "leading_slope", "residual_slope", "alpha",
                    "beta", "coefficients_bounded", "pass"});
  for (double eps : eps_values) {
    const CurveReport report = verify_curve_expansion(setup, eps, t_grid, tol, curve_options);
    PlotSeries u_series{"|u| eps=" + format_real(eps), {}};
    PlotSeries r_series{"residual eps=" + format_real(eps), {}};
    for (const CurveRow& row : report.rows) {
      table.add_row({format_real(eps), format_real(row.t), format_real(row.x), format_real(row.u.real()),
                     format_real(row.u.imag()), format_real(std::abs(row.u)), format_real(row.leading.real()),
                     format_real(row.leading.imag()), format_real(row.residual), format_real(row.H_abs),
                     format_real(row.K_abs)});
      u_series.points.emplace_back(row.t, std::abs(row.u));
      r_series.points.emplace_back(row.t, row.residual);
    }
    summary.add_row({format_real(report.mu), format_real(eps), format_real(report.delta),
                     to_string(report.predicted.decay_case), format_real(report.predicted.leading_exp),
                     format_real(report.leading_fit.slope), format_real(report.residual_fit.slope),
                     format_real(report.exponents.alpha), format_real(report.exponents.beta),
                     csv_bool(report.coefficients_bounded), csv_bool(report.pass)});
    out.pass = out.pass && report.pass;
    out.plot.push_back(std::move(u_series));
    out.plot.push_back(std::move(r_series));
  }
  out.table = table.str();
  out.summary = summary.str();
  out.plot_title = "decay along the boundary curve";
  out.plot_x_label = "t";
  return out;
}

KindOutput run_region(const ExperimentConfig& cfg, const RunOptions& options) {
  const SchrodingerSetup setup = setup_from(amplitude_from(cfg));
  const auto eps_values = eps_list(cfg, setup.mu, delta_from(cfg, setup.mu));
  if (eps_values.size() != 1) {
    throw ConfigError("grid.eps", "schrodinger-region needs exactly one eps");
  }
  const double eps = eps_values.front();
  const auto t_grid = t_grid_from(cfg, 1e2, 1e6, 20);
  const int rays = cfg.get_int("grid.rays", 10);
  if (rays < 1) {
    throw ConfigError("grid.rays", "need at least one ray");
  }
  const double factor = cfg.get_double("tolerance.region_factor", 3.0);
  const RegionReport report =
      region_scan(setup, eps, t_grid, rays, oracle_tol(cfg, 1e-10), factor, options.jobs);
  KindOutput out;
  CsvTable table({"t", "x", "ray", "p0", "scaled_abs"});
  std::vector<PlotSeries> series(static_cast<std::size_t>(rays) + 1);
  for (const RegionSample& s : report.samples) {
    table.add_row({format_real(s.t), format_real(s.x), std::to_string(s.ray), format_real(stationary_point(s.t, s.x)),
                   format_real(s.scaled)});
    auto& line = series[static_cast<std::size_t>(s.ray)];
    line.name = s.ray == 0 ? "curve" : "ray " + std::to_string(s.ray);
    line.points.emplace_back(s.t, s.scaled);
  }
  out.pass = report.pass;
  CsvTable summary({"mu", "eps", "predicted_slope", "curve_constant", "region_sup", "ratio", "factor", "pass"});
  summary.add_row({format_real(setup.mu), format_real(eps),
                   format_real(predicted_exponents(setup.mu, eps).leading_exp), format_real(report.curve_constant),
                   format_real(report.region_sup), format_real(report.ratio), format_real(factor),
                   csv_bool(report.pass)});
  out.table = table.str();
  out.summary = summary.str();
  out.plot_title = "scaled |u| over the region";
  out.plot_x_label = "t";
  out.plot = std::move(series);
  return out;
}

KindOutput run_critical(const ExperimentConfig& cfg, const RunOptions& options) {
  const SchrodingerSetup setup = setup_from(amplitude_from(cfg));
  const auto t_grid = t_grid_from(cfg, 1e2, 1e6, 24);
  const double slope_tol = cfg.get_double("tolerance.slope", 0.05);
  const CriticalReport report = critical_direction_scan(setup, t_grid, oracle_tol(cfg, 1e-10), slope_tol, options.jobs);
  KindOutput out;
  CsvTable table({"t", "x", "u_abs"});
  PlotSeries series{"|u|", {}};
  for (const auto& [t, mag] : report.samples) {
    table.add_row({format_real(t), format_real(2.0 * setup.p1 * t), format_real(mag)});
    series.points.emplace_back(t, mag);
  }
  out.pass = report.pass;
  CsvTable summary({"mu", "predicted_slope", "slope", "intercept", "max_residual", "pass"});
  summary.add_row({format_real(setup.mu), format_real(report.predicted), format_real(report.fit.slope),
                   format_real(report.fit.intercept), format_real(report.fit.max_residual), csv_bool(report.pass)});
  out.table = table.str();
  out.summary = summary.str();
  out.plot_title = "decay along x = 2 p1 t";
  out.plot_x_label = "t";
  out.plot.push_back(std::move(series));
  return out;
}

// Reported, never judged: the curve constant is expected to grow as eps
// approaches delta - 1/2.
KindOutput run_blowup(const ExperimentConfig& cfg, const RunOptions& options) {
  const SchrodingerSetup setup = setup_from(amplitude_from(cfg));
  const double delta = delta_from(cfg, setup.mu).value_or(0.5 * (setup.mu + 1.0));
  const auto eps_values = eps_list(cfg, setup.mu, delta);
  const auto t_grid = t_grid_from(cfg, 1e2, 1e4, 9);
  const double tol = oracle_tol(cfg, 1e-10);
  struct BlowupRow {
    CurveExponents exponents;
    double constant = 0.0;
  };
  const auto rows = parallel_map(eps_values.size(), options.jobs, [&](std::size_t i) {
    const double eps = eps_values[i];
    BlowupRow row;
    row.exponents = curve_exponents(setup.mu, eps, delta);
    const double exponent = predicted_exponents(setup.mu, eps).leading_exp;
    for (double t : t_grid) {
      const auto [tt, x] = curve_point(setup, eps, t);
      row.constant = std::max(row.constant, std::abs(evaluate_solution(setup, tt, x, tol)) * std::pow(tt, -exponent));
    }
    return row;
  });
  KindOutput out;
  CsvTable table({"eps", "delta", "lead_mu_exp", "lead_half_exp", "alpha", "beta", "min_gap", "curve_constant"});
  PlotSeries gap_series{"min_gap", {}};
  bool monotone = true;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const CurveExponents& e = rows[i].exponents;
    table.add_row({format_real(e.eps), format_real(e.delta), format_real(e.lead_mu_exp), format_real(e.lead_half_exp),
                   format_real(e.alpha), format_real(e.beta), format_real(e.min_gap()), format_real(rows[i].constant)});
    gap_series.points.emplace_back(e.eps, e.min_gap());
    if (i > 0 && !(e.min_gap() < rows[i - 1].exponents.min_gap())) {
      monotone = false;
    }
  }
  CsvTable summary({"mu", "delta", "eps_limit", "min_gap_decreasing"});
  summary.add_row({format_real(setup.mu), format_real(delta), format_real(delta - 0.5), csv_bool(monotone)});
  out.table = table.str();
  out.summary = summary.str();
  out.plot_title = "gap between leading and remainder rates";
  out.plot_x_label = "eps";
  out.plot.push_back(std::move(gap_series));
  return out;
}

}  // namespace

ExperimentConfig ExperimentConfig::parse(const std::string& text) {
  ExperimentConfig cfg;
  std::istringstream in(text);
  std::string line;
  std::string section;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto comment = line.find_first_of("#;");
    if (comment != std::string::npos) {
      line.erase(comment);
    }
    line = trim(line);
    if (line.empty()) {
      continue;
    }
    if (line.front() == '[') {
      if (line.back() != ']') {
        throw ConfigError("line " + std::to_string(line_no), "unterminated section header");
      }
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(line_no), "expected 'key = value'");
    }
    const std::string name = trim(line.substr(0, eq));
    const std::string key = section.empty() ? name : section + "." + name;
    if (!known_keys().count(key)) {
      throw ConfigError(key, "unknown key");
    }
    if (cfg.values_.count(key)) {
      throw ConfigError(key, "given twice");
    }
    cfg.values_[key] = trim(line.substr(eq + 1));
  }
  return cfg;
}

ExperimentConfig ExperimentConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot read config '" + path.string() + "'");
  }
  std::ostringstream text;
  text << in.rdbuf();
  return parse(text.str());
}

const std::string& ExperimentConfig::get_string(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) {
    throw ConfigError(key, "missing");
  }
  return it->second;
}

std::string ExperimentConfig::get_string(const std::string& key, const std::string& fallback) const {
  return has(key) ? get_string(key) : fallback;
}

double ExperimentConfig::get_double(const std::string& key) const { return parse_real(key, get_string(key)); }

double ExperimentConfig::get_double(const std::string& key, double fallback) const {
  return has(key) ? get_double(key) : fallback;
}

std::optional<double> ExperimentConfig::get_optional_double(const std::string& key) const {
  if (!has(key)) {
    return std::nullopt;
  }
  return get_double(key);
}

int ExperimentConfig::get_int(const std::string& key, int fallback) const {
  if (!has(key)) {
    return fallback;
  }
  const double v = get_double(key);
  if (v != std::floor(v) || std::abs(v) > 1e9) {
    throw ConfigError(key, "expected an integer");
  }
  return static_cast<int>(v);
}

std::vector<double> ExperimentConfig::get_sorted_list(const std::string& key) const {
  const std::string& text = get_string(key);
  std::vector<double> out;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    out.push_back(parse_real(key, item));
  }
  if (out.empty()) {
    throw ConfigError(key, "empty list");
  }
  for (std::size_t i = 1; i < out.size(); ++i) {
    if (!(out[i] > out[i - 1])) {
      throw ConfigError(key, "list must be strictly increasing");
    }
  }
  return out;
}

std::vector<std::string> ExperimentConfig::keys() const {
  std::vector<std::string> out;
  for (const auto& [key, value] : values_) {
    out.push_back(key);
  }
  return out;
}

std::string format_real(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw std::runtime_error("cannot write '" + tmp.string() + "'");
    }
    out << content;
    out.flush();
    if (!out) {
      throw std::runtime_error("write failed for '" + tmp.string() + "'");
    }
  }
  std::filesystem::rename(tmp, path);
}

std::string render_loglog_svg(const std::string& title, const std::string& x_label,
                              const std::vector<PlotSeries>& series) {
  constexpr double width = 720.0;
  constexpr double height = 460.0;
  constexpr double left = 70.0;
  constexpr double right = 180.0;
  constexpr double top = 40.0;
  constexpr double bottom = 50.0;
  double x_lo = INFINITY, x_hi = -INFINITY, y_lo = INFINITY, y_hi = -INFINITY;
  for (const auto& s : series) {
    for (const auto& [x, y] : s.points) {
      if (x > 0.0 && y > 0.0) {
        x_lo = std::min(x_lo, std::log10(x));
        x_hi = std::max(x_hi, std::log10(x));
        y_lo = std::min(y_lo, std::log10(y));
        y_hi = std::max(y_hi, std::log10(y));
      }
    }
  }
  if (!std::isfinite(x_lo)) {
    x_lo = 0.0, x_hi = 1.0, y_lo = 0.0, y_hi = 1.0;
  }
  x_lo = std::floor(x_lo), x_hi = std::max(std::ceil(x_hi), x_lo + 1.0);
  y_lo = std::floor(y_lo), y_hi = std::max(std::ceil(y_hi), y_lo + 1.0);
  const double plot_w = width - left - right;
  const double plot_h = height - top - bottom;
  auto px = [&](double lx) { return left + (lx - x_lo) / (x_hi - x_lo) * plot_w; };
  auto py = [&](double ly) { return top + (y_hi - ly) / (y_hi - y_lo) * plot_h; };
  auto escape = [](const std::string& s) {
    std::string out;
    for (char c : s) {
      if (c == '&') out += "&amp;";
      else if (c == '<') out += "&lt;";
      else if (c == '>') out += "&gt;";
      else out += c;
    }
    return out;
  };
  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
                                 "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};
  char buf[256];
  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<text x=\"" << left << "\" y=\"24\" font-size=\"15\">" << escape(title) << "</text>\n";
  const int x_step = std::max(1, static_cast<int>((x_hi - x_lo) / 8.0));
  for (int d = static_cast<int>(x_lo); d <= static_cast<int>(x_hi); d += x_step) {
    std::snprintf(buf, sizeof buf,
                  "<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" stroke=\"#ddd\"/>"
                  "<text x=\"%.2f\" y=\"%.2f\" text-anchor=\"middle\">1e%d</text>\n",
                  px(d), top, px(d), top + plot_h, px(d), top + plot_h + 18.0, d);
    svg << buf;
  }
  const int y_step = std::max(1, static_cast<int>((y_hi - y_lo) / 8.0));
  for (int d = static_cast<int>(y_lo); d <= static_cast<int>(y_hi); d += y_step) {
    std::snprintf(buf, sizeof buf,
                  "<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" stroke=\"#ddd\"/>"
                  "<text x=\"%.2f\" y=\"%.2f\" text-anchor=\"end\">1e%d</text>\n",
                  left, py(d), left + plot_w, py(d), left - 6.0, py(d) + 4.0, d);
    svg << buf;
  }
  std::snprintf(buf, sizeof buf, "<rect x=\"%.2f\" y=\"%.2f\" width=\"%.2f\" height=\"%.2f\" fill=\"none\" stroke=\"black\"/>\n",
                left, top, plot_w, plot_h);
  svg << buf;
  svg << "<text x=\"" << left + plot_w / 2 << "\" y=\"" << height - 10 << "\" text-anchor=\"middle\">"
      << escape(x_label) << "</text>\n";
  for (std::size_t i = 0; i < series.size(); ++i) {
    const char* color = colors[i % 10];
    svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    bool first = true;
    for (const auto& [x, y] : series[i].points) {
      if (x > 0.0 && y > 0.0) {
        std::snprintf(buf, sizeof buf, "%s%.2f,%.2f", first ? "" : " ", px(std::log10(x)), py(std::log10(y)));
        svg << buf;
        first = false;
      }
    }
    svg << "\"/>\n";
    const double ly = top + 14.0 + 16.0 * static_cast<double>(i);
    std::snprintf(buf, sizeof buf,
                  "<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" stroke=\"%s\" stroke-width=\"2\"/>",
                  left + plot_w + 10.0, ly - 4.0, left + plot_w + 30.0, ly - 4.0, color);
    svg << buf << "<text x=\"" << left + plot_w + 36.0 << "\" y=\"" << ly << "\">" << escape(series[i].name)
        << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

RunOutcome run_experiment(const ExperimentConfig& config, const std::string& stem, const RunOptions& options) {
  const std::string kind = config.get_string("experiment.kind");
  static const std::map<std::string, std::function<KindOutput(const ExperimentConfig&, const RunOptions&)>> kinds = {
      {"expand", [](const ExperimentConfig& c, const RunOptions&) { return run_expand(c); }},
      {"sweep-omega", run_sweep},
      {"schrodinger-curve", run_curve},
      {"schrodinger-region", run_region},
      {"critical-direction", run_critical},
      {"blowup-scan", run_blowup},
  };
  const auto it = kinds.find(kind);
  if (it == kinds.end()) {
    throw ConfigError("experiment.kind", "unknown kind '" + kind + "'");
  }
  if (options.jobs < 1) {
    throw std::invalid_argument("--jobs must be at least 1");
  }
  const KindOutput result = it->second(config, options);
  const std::string name = config.get_string("experiment.output", stem);
  std::filesystem::create_directories(options.out_dir);
  RunOutcome outcome;
  outcome.all_pass = result.pass;
  outcome.csv_path = options.out_dir / (name + ".csv");
  outcome.summary_path = options.out_dir / (name + "_summary.csv");
  write_file_atomic(outcome.csv_path, result.table);
  write_file_atomic(outcome.summary_path, result.summary);
  if (options.plot && !result.plot.empty()) {
    outcome.svg_path = options.out_dir / (name + ".svg");
    write_file_atomic(outcome.svg_path, render_loglog_svg(result.plot_title, result.plot_x_label, result.plot));
  }
  return outcome;
}

int run_config_file(const std::filesystem::path& config_path, const RunOptions& options, std::ostream& out,
                    std::ostream& err) {
  try {
    const ExperimentConfig config = ExperimentConfig::load(config_path);
    const RunOutcome outcome = run_experiment(config, config_path.stem().string(), options);
    out << "wrote " << outcome.csv_path.string() << "\n";
    out << "wrote " << outcome.summary_path.string() << "\n";
    if (!outcome.svg_path.empty()) {
      out << "wrote " << outcome.svg_path.string() << "\n";
    }
    out << (outcome.all_pass ? "PASS" : "FAIL") << "\n";
    return outcome.all_pass ? 0 : 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace stasis
