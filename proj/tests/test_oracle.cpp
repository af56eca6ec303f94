#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "fixtures.hpp"
#include "j0_oracle.hpp"
#include "reference_values.hpp"
#include "stasis/catalog.hpp"
#include "stasis/expansion.hpp"
#include "stasis/oracle.hpp"
#include "stasis/quadratic.hpp"

using stasis::ComplexValue;

namespace {

constexpr double kPi = std::numbers::pi;

stasis::SingularAmplitude fresnel(double mu) {
  stasis::AmplitudeParams params;
  params.mu1 = mu;
  return stasis::make_amplitude("fresnel", params);
}

void check_value_shape(const stasis::OracleValue& v) {
  CHECK(v.abs_error_estimate >= 0.0);
  CHECK(std::isfinite(v.abs_error_estimate));
  CHECK(v.panel_count >= 1);
}

}  // namespace

TEST_CASE("zero frequency reduces to a beta integral") {
  const auto v = stasis::integrate_oscillatory(stasis::make_phase("cubic", 0.0, 1.0), fresnel(0.5), 0.0, 1e-12);
  CHECK(std::abs(v.value - 2.0) <= 1e-12);
  check_value_shape(v);
}

TEST_CASE("the J0 test oracle reproduces the high-precision value") {
  CHECK(std::abs(ref::j0(5.0) - ref::kJ0At5) < 1e-15);
}

TEST_CASE("beta-bessel integral against the closed form") {
  const auto phase = stasis::make_phase("linear", 0.0, 1.0);
  const auto amp = fx::beta(0.5, 0.5);
  const auto v = stasis::integrate_oscillatory(phase, amp, 10.0, 1e-12);
  const ComplexValue expected = kPi * std::polar(1.0, 5.0) * ref::j0(5.0);
  CHECK(std::abs(v.value - expected) <= 1e-11);
  for (const auto& [omega, value] : ref::kBesselIntegral) {
    CAPTURE(omega);
    const auto w = stasis::integrate_oscillatory(phase, amp, omega, 1e-12);
    CHECK(std::abs(w.value - value) <= 1e-10);
    check_value_shape(w);
  }
}

TEST_CASE("incomplete Fresnel integral") {
  const auto v = stasis::integrate_oscillatory(stasis::make_phase("linear", 0.0, 1.0), fresnel(0.5), 25.0, 1e-12);
  CHECK(std::abs(v.value - ref::kFresnel25) <= 1e-11);
}

TEST_CASE("two-sided singular amplitude on a curved phase") {
  const auto phase = stasis::make_phase("quadratic-lift", 0.0, 1.0);
  for (const auto& c : ref::kQuadLift) {
    CAPTURE(c.omega);
    const auto v = stasis::integrate_oscillatory(phase, fx::beta(c.mu1, c.mu2), c.omega, 1e-12);
    CHECK(std::abs(v.value - c.value) <= 1e-10);
  }
}

TEST_CASE("oracle preconditions and budget") {
  const auto phase = stasis::make_phase("linear", 0.0, 1.0);
  const auto amp = fx::beta(0.5, 0.5);
  CHECK_THROWS_AS(stasis::integrate_oscillatory(phase, amp, 10.0, 1e-13), std::domain_error);
  CHECK_THROWS_AS(stasis::integrate_oscillatory(phase, amp, -1.0, 1e-10), std::domain_error);
  // Rejected before any work: the panel count alone exceeds the budget.
  try {
    stasis::integrate_oscillatory(phase, amp, 1e5, 1e-12, 200);
    FAIL("expected a budget error");
  } catch (const stasis::BudgetError& e) {
    CHECK(e.partial().evaluations == 0);
  }
  // Exhausted mid-run: partial diagnostics carry the work done so far.
  try {
    stasis::integrate_oscillatory(phase, amp, 10.0, 1e-12, 60);
    FAIL("expected a budget error");
  } catch (const stasis::BudgetError& e) {
    CHECK(e.partial().evaluations > 60);
    CHECK(e.partial().panel_count >= 1);
    CHECK(e.partial().evaluations <= 60 + 2000);
  }
}

TEST_CASE("primitive at zero: modulus and side relation") {
  // phi^(j)(0) = (-1)^j theta(j) omega^(-mu/rho); the acceptance run checks the unsigned form.
  for (int side : {1, 2}) {
    for (double rho : {1.0, 2.0, 3.0}) {
      for (double mu : {0.25, 0.5, 0.75, 1.0}) {
        for (double omega : {1.0, 10.0, 100.0}) {
          CAPTURE(side);
          CAPTURE(rho);
          CAPTURE(mu);
          CAPTURE(omega);
          const ComplexValue closed = stasis::theta(side, rho, mu) * std::pow(omega, -mu / rho);
          const ComplexValue v = stasis::phi_primitive(0.0, omega, rho, mu, side, 1e-13);
          CHECK(std::abs(std::abs(v) - std::abs(closed)) <= 1e-8 * std::abs(closed));
          CHECK(std::abs(v - (side == 1 ? -1.0 : 1.0) * closed) <= 1e-8 * std::abs(closed));
        }
      }
    }
  }
  const ComplexValue v = stasis::phi_primitive(0.0, 4.0, 2.0, 1.0, 1, 1e-13);
  CHECK(std::abs(std::abs(v) - std::sqrt(kPi) / 4.0) < 1e-12);
}

TEST_CASE("primitive away from zero obeys the ray majorant") {
  const ComplexValue v = stasis::phi_primitive(0.5, 10.0, 1.0, 0.5, 1, 1e-12);
  CHECK(std::isfinite(v.real()));
  CHECK(std::abs(v) <= std::pow(0.5, -0.5) / 10.0);
  const ComplexValue tight = stasis::phi_primitive(0.5, 10.0, 1.0, 0.5, 1, 5e-13);
  CHECK(std::abs(v - tight) <= 1e-11);
}

TEST_CASE("primitive differentiates back to the integrand") {
  for (int side : {1, 2}) {
    for (double rho : {1.0, 2.0, 2.5}) {
      for (double s : {0.05, 0.3, 0.9}) {
        const double mu = 0.6;
        const double omega = 40.0;
        const double h = 1e-5 * s;
        const ComplexValue fd = (stasis::phi_primitive(s + h, omega, rho, mu, side, 1e-14) -
                                 stasis::phi_primitive(s - h, omega, rho, mu, side, 1e-14)) /
                                (2.0 * h);
        const double sign = side == 1 ? 1.0 : -1.0;
        const ComplexValue integrand = std::pow(s, mu - 1.0) * std::polar(1.0, sign * omega * std::pow(s, rho));
        CAPTURE(side);
        CAPTURE(rho);
        CAPTURE(s);
        CHECK(std::abs(fd - integrand) <= 1e-6 * std::abs(integrand));
      }
    }
  }
}

TEST_CASE("ray integrand is dominated by the decay majorant") {
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> us(0.01, 2.0), ut(0.0, 3.0), uw(0.5, 500.0), ur(1.0, 4.0),
      um(0.05, 1.0);
  for (int i = 0; i < 100; ++i) {
    const double s = us(rng), t = ut(rng), omega = uw(rng), rho = ur(rng), mu = um(rng);
    for (int side : {1, 2}) {
      const double sign = side == 1 ? 1.0 : -1.0;
      const ComplexValue z = s + t * std::polar(1.0, sign * kPi / (2.0 * rho));
      const ComplexValue zr = stasis::power_principal(z, rho);
      const double modulus = std::abs(stasis::power_principal(z, mu - 1.0)) *
                             std::exp(-sign * omega * zr.imag());
      CHECK(modulus <= std::pow(s, mu - 1.0) * std::exp(-omega * std::pow(t, rho)) * (1.0 + 1e-12));
    }
  }
}

TEST_CASE("by-parts reconstruction with constant k keeps only boundary terms") {
  const auto phase = stasis::make_phase("linear", 0.0, 1.0);
  const auto amp = fresnel(0.4);
  const auto frame = stasis::build_frame(phase, amp, 1, 0.5);
  const double omega = 60.0;
  const auto bp = stasis::integrate_by_parts_check(frame, phase, omega, 1e-12);
  const ComplexValue boundary = stasis::phi_primitive(0.5, omega, 1.0, 0.4, 1, 1e-13) -
                                stasis::phi_primitive(0.0, omega, 1.0, 0.4, 1, 1e-13);
  CHECK(std::abs(bp.value - boundary) <= 1e-12);
  CHECK(bp.method == stasis::OracleMethod::parts_identity);
}

TEST_CASE("by-parts oracle agrees with the panel oracle side by side") {
  SUBCASE("beta-bessel, left side, omega 100") {
    const auto phase = stasis::make_phase("linear", 0.0, 1.0);
    const auto amp = fx::beta(0.5, 0.5);
    const auto frame = stasis::build_frame(phase, amp, 1, 0.5);
    const auto bp = stasis::integrate_by_parts_check(frame, phase, 100.0, 1e-11);
    const auto panels = stasis::integrate_oscillatory(phase, amp, 0.0, 0.5, 100.0, 1e-12);
    CHECK(std::abs(stasis::side_contribution(frame, phase, 100.0, bp.value) - panels.value) <= 1e-9);
  }
  SUBCASE("quadratic piece of the intro datum, stationary side, omega 1000") {
    stasis::QuadraticPhase qp;
    qp.p0 = 0.5;
    const auto piece = stasis::quadratic_left_piece(fx::intro(0.75), qp);
    const auto frame = stasis::build_frame(piece.phase, piece.amp, 2, 0.25);
    const auto bp = stasis::integrate_by_parts_check(frame, piece.phase, 1000.0, 1e-11);
    const auto panels = stasis::integrate_oscillatory(piece.phase, piece.amp, 0.25, 0.5, 1000.0, 1e-12);
    CHECK(std::abs(stasis::side_contribution(frame, piece.phase, 1000.0, bp.value) - panels.value) <= 1e-9);
  }
}

TEST_CASE("two-sided reconstruction does not depend on the cutting point") {
  const auto phase = stasis::make_phase("square", 0.0, 1.0);
  const auto amp = fx::beta(0.7, 0.4);
  const double omega = 250.0;
  const ComplexValue reference = stasis::integrate_oscillatory(phase, amp, omega, 1e-12).value;
  for (double q : {0.3, 0.5, 0.7}) {
    ComplexValue total;
    for (int side : {1, 2}) {
      const auto frame = stasis::build_frame(phase, amp, side, q);
      total += stasis::side_contribution(frame, phase, omega,
                                         stasis::integrate_by_parts_check(frame, phase, omega, 1e-11).value);
    }
    CAPTURE(q);
    CHECK(std::abs(total - reference) <= std::max(1e-9, 1e-8 * std::abs(reference)));
  }
}

TEST_CASE("numeric remainders close the expansion identity") {
  const auto phase = stasis::make_phase("quadratic-lift", 0.0, 1.0);
  const auto amp = fx::beta(0.3, 0.6);
  const double omega = 80.0;
  const double q = 0.5;
  // Each side also carries -/+ (i/omega) e^{i omega psi(q)} U(q)/psi'(q); the two cancel in the sum.
  const ComplexValue cut =
      ComplexValue(0.0, 1.0 / omega) * std::polar(1.0, omega * phase.psi(q)) * amp(q) / phase.psi_prime(q);
  ComplexValue expansion_sum;
  for (int side : {1, 2}) {
    const auto frame = stasis::build_frame(phase, amp, side, 0.5);
    const auto rem = stasis::numeric_remainders(frame, phase, amp, omega, 1e-11);
    const double a = side == 1 ? 0.0 : 0.5;
    const double b = side == 1 ? 0.5 : 1.0;
    const ComplexValue piece = stasis::integrate_oscillatory(phase, amp, a, b, omega, 1e-12).value;
    const ComplexValue lead = stasis::leading_term(frame, phase, omega);
    CAPTURE(side);
    CHECK(std::abs(lead + rem.r1 + rem.r2 + (side == 1 ? -cut : cut) - piece) <= 1e-9);
    expansion_sum += lead + rem.r1 + rem.r2;
  }
  const ComplexValue whole = stasis::integrate_oscillatory(phase, amp, omega, 1e-12).value;
  CHECK(std::abs(expansion_sum - whole) <= 1e-9);
}
