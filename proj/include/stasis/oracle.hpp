#pragma once

#include <stdexcept>
#include <string>

#include "stasis/model.hpp"

namespace stasis {

enum class OracleMethod { panels, parts_identity, ray };

const char* to_string(OracleMethod method);

struct OracleValue {
  ComplexValue value;
  double abs_error_estimate = 0.0;
  long panel_count = 0;
  OracleMethod method = OracleMethod::panels;
  long evaluations = 0;
};

/// Thrown when the evaluation budget runs out; carries what was computed so far.
class BudgetError : public std::runtime_error {
 public:
  BudgetError(const std::string& what, OracleValue partial)
      : std::runtime_error(what), partial_(partial) {}
  const OracleValue& partial() const { return partial_; }

 private:
  OracleValue partial_;
};

inline constexpr long kDefaultOracleBudget = 10'000'000;

/// int_{p1}^{p2} U(p) e^{i omega psi(p)} dp.
OracleValue integrate_oscillatory(const PhaseModel& phase, const SingularAmplitude& amp, double omega,
                                  double tol, long budget = kDefaultOracleBudget);

/// Same integral restricted to [a, b] within [p1, p2].
OracleValue integrate_oscillatory(const PhaseModel& phase, const SingularAmplitude& amp, double a,
                                  double b, double omega, double tol,
                                  long budget = kDefaultOracleBudget);

/// Lower-level entry: int_a^b (p-a)^left_exp (b-p)^right_exp g(p) e^{i omega psi(p)} dp
/// for psi strictly monotone on [a, b] and g smooth.
OracleValue integrate_monotone_phase(const ComplexMap& g, const RealMap& psi, const RealMap& psi_prime,
                                     double a, double b, double left_exp, double right_exp,
                                     double omega, double tol, long budget = kDefaultOracleBudget);

/// phi^(j)(s, omega) = -int over Lambda^(j)(s) of z^(mu-1) e^{(-1)^{j+1} i omega z^rho} dz,
/// Lambda^(j)(s) = { s + t e^{(-1)^{j+1} i pi/(2 rho)} : t >= 0 }.
ComplexValue phi_primitive(double s, double omega, double rho, double mu, int side, double tol);

/// Integration-by-parts reconstruction of J_j = int_0^{s_j} k_j(s) s^(mu-1) e^{+-i omega s^rho} ds.
OracleValue integrate_by_parts_check(const SubstitutionFrame& frame, const PhaseModel& phase,
                                     double omega, double tol);

/// The p-space contribution of side j given J_j: e^{i omega psi(p_j)} J_j on side 1,
/// -e^{i omega psi(p_j)} J_j on side 2.
ComplexValue side_contribution(const SubstitutionFrame& frame, const PhaseModel& phase, double omega,
                               ComplexValue j_value);

/// Numerically evaluated remainders R_1^(j), R_2^(j) of one side.
struct SideRemainders {
  ComplexValue r1;
  ComplexValue r2;
  double abs_error_estimate = 0.0;
};

SideRemainders numeric_remainders(const SubstitutionFrame& frame, const PhaseModel& phase,
                                  const SingularAmplitude& amp, double omega, double tol);

}  // namespace stasis
