#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "fixtures.hpp"
#include "j0_oracle.hpp"
#include "stasis/catalog.hpp"
#include "stasis/expansion.hpp"
#include "stasis/oracle.hpp"

using stasis::ComplexValue;

namespace {

constexpr double kPi = std::numbers::pi;

ComplexValue bessel_exact(double omega) { return kPi * std::polar(1.0, omega / 2.0) * ref::j0(omega / 2.0); }

stasis::SingularAmplitude scaled(stasis::SingularAmplitude amp, double factor) {
  auto u = amp.u_tilde;
  auto du = amp.u_tilde_prime;
  amp.u_tilde = [u, factor](double p) { return factor * u(p); };
  amp.u_tilde_prime = [du, factor](double p) { return factor * du(p); };
  amp.sup_norm_u *= factor;
  amp.sobolev_norm_u *= factor;
  return amp;
}

stasis::PhaseModel shifted(stasis::PhaseModel phase, double c) {
  auto psi = phase.psi;
  phase.psi = [psi, c](double p) { return psi(p) + c; };
  return phase;
}

}  // namespace

TEST_CASE("leading term for an inverse square-root endpoint on the linear phase") {
  stasis::AmplitudeParams params;
  params.mu1 = 0.5;
  const auto amp = stasis::make_amplitude("fresnel", params);
  const auto phase = stasis::make_phase("linear", 0.0, 1.0);
  const auto frame = stasis::build_frame(phase, amp, 1, 0.5);
  const ComplexValue a = stasis::leading_term(frame, phase, 4.0);
  CHECK(fx::rel(a, std::sqrt(kPi / 4.0) * std::polar(1.0, kPi / 4.0)) < 1e-14);
}

TEST_CASE("leading term on the quadratic phase, left end") {
  const double mu = 0.75, p0 = 0.4, c = 0.1, omega = 37.0;
  const auto phase = fx::quadratic_left(0.0, p0, c);
  const auto amp = fx::affine_left(mu, 0.0, p0);
  const auto frame = stasis::build_frame(phase, amp, 1, 0.2);
  const ComplexValue expected = stasis::gamma_pos(mu) / std::pow(2.0, mu) * std::polar(1.0, kPi * mu / 2.0) *
                                std::polar(1.0, omega * phase.psi(0.0)) * amp.u_tilde(0.0) *
                                std::pow(p0, -mu) * std::pow(omega, -mu);
  CHECK(fx::rel(stasis::leading_term(frame, phase, omega), expected) < 1e-13);
}

TEST_CASE("leading term vanishes with a zero amplitude and rejects non-positive omega") {
  stasis::SingularAmplitude amp = fx::beta(1.0, 1.0);
  amp.u_tilde = [](double) { return ComplexValue(0.0, 0.0); };
  amp.sup_norm_u = 0.0;
  amp.sobolev_norm_u = 0.0;
  const auto phase = stasis::make_phase("square", 0.0, 1.0);
  const auto frame = stasis::build_frame(phase, amp, 1, 0.5);
  CHECK(std::abs(stasis::leading_term(frame, phase, 10.0)) == 0.0);
  CHECK_THROWS_AS(stasis::leading_term(frame, phase, 0.0), std::domain_error);
  CHECK_THROWS_AS(stasis::leading_term(frame, phase, -1.0), std::domain_error);
}

TEST_CASE("leading terms scale exactly as a power of omega and ignore q") {
  const auto phase = stasis::make_phase("quadratic-lift", 0.0, 1.0);
  const auto amp = fx::beta(0.3, 0.6);
  for (int side : {1, 2}) {
    const auto f3 = stasis::build_frame(phase, amp, side, 0.3);
    const auto f7 = stasis::build_frame(phase, amp, side, 0.7);
    const double rate = side == 1 ? 0.3 : 0.6;
    for (double omega : {1.0, 17.0, 400.0}) {
      const ComplexValue a1 = stasis::leading_term(f3, phase, omega);
      const ComplexValue a10 = stasis::leading_term(f3, phase, 10.0 * omega);
      CHECK(std::abs(std::abs(a10) / std::abs(a1) / std::pow(10.0, -rate) - 1.0) < 1e-12);
      CHECK(fx::rel(stasis::leading_term(f7, phase, omega), a1) < 1e-12);
    }
  }
}

TEST_CASE("remainder bounds vanish in the degenerate cases") {
  stasis::AmplitudeParams params;
  params.mu1 = 0.4;
  const auto amp = stasis::make_amplitude("fresnel", params);
  const auto phase = stasis::make_phase("linear", 0.0, 1.0);
  const auto left = stasis::build_frame(phase, amp, 1, 0.5);
  CHECK(stasis::remainder_bound_r1(left, 50.0, {}) <= 1e-15);
  const auto right = stasis::build_frame(phase, amp, 2, 0.5);
  CHECK(stasis::remainder_bound_r2(right, amp, phase, 50.0) == 0.0);
}

TEST_CASE("remainder bounds on the quadratic phase stay below the hand estimates") {
  for (double mu : {0.25, 0.5, 0.75}) {
    for (double p0 : {0.1, 0.4, 0.9}) {
      CAPTURE(mu);
      CAPTURE(p0);
      const auto phase = fx::quadratic_left(0.0, p0);
      const auto amp = fx::affine_left(mu, 0.0, p0);
      const double q = 0.5 * p0;
      const double w = amp.sobolev_norm_u;
      const double sup = amp.sup_norm_u;
      const double omega = 100.0;
      const auto f1 = stasis::build_frame(phase, amp, 1, q);
      const auto f2 = stasis::build_frame(phase, amp, 2, q);
      const double r1 = stasis::remainder_bound_r1(f1, omega, {});
      const double r1_hand = std::pow(2.0, 1.0 - mu) / mu * w *
                             (2.0 * (2.0 - mu) * std::pow(p0, mu - 2.0) + std::pow(p0, mu - 1.0)) / omega;
      CHECK(r1 <= r1_hand);
      const double r21 = stasis::remainder_bound_r2(f1, amp, phase, omega);
      CHECK(r21 <= (1.0 - mu) / std::pow(2.0, mu - 2.0) * sup * std::pow(p0, mu - 4.0) / (omega * omega));
      const double r22 = stasis::remainder_bound_r2(f2, amp, phase, omega);
      CHECK(r22 <= std::sqrt(kPi) / std::pow(2.0, mu - 2.0) * sup * std::pow(p0, mu - 3.0) * std::pow(omega, -1.5));
    }
  }
}

TEST_CASE("remainder bounds follow their omega rates") {
  const auto phase = stasis::make_phase("square", 0.0, 1.0);
  const auto amp = fx::beta(0.7, 0.4);
  const auto frame = stasis::build_frame(phase, amp, 1, 0.5);
  const double c1 = stasis::remainder_bound_r1(frame, 3.0, {}) * std::pow(3.0, 0.5);
  const double c2 = stasis::remainder_bound_r1(frame, 3000.0, {}) * std::pow(3000.0, 0.5);
  CHECK(c2 == doctest::Approx(c1).epsilon(1e-13));
  const double d1 = stasis::remainder_bound_r2(frame, amp, phase, 3.0) * std::pow(3.0, 1.5);
  const double d2 = stasis::remainder_bound_r2(frame, amp, phase, 3000.0) * std::pow(3000.0, 1.5);
  CHECK(d2 == doctest::Approx(d1).epsilon(1e-13));
}

TEST_CASE("beta-bessel expansion: leading terms and a valid bound") {
  const auto phase = stasis::make_phase("linear", 0.0, 1.0);
  const auto amp = fx::beta(0.5, 0.5);
  for (double omega : {5.0, 100.0, 2000.0}) {
    CAPTURE(omega);
    const auto res = stasis::expand_integral(phase, amp, 0.5, {}, omega);
    REQUIRE(res.leading.size() == 2);
    REQUIRE(res.bound_terms.size() == 4);
    const double m = std::sqrt(kPi / omega);
    CHECK(fx::rel(res.leading[0].value(omega), m * std::polar(1.0, kPi / 4.0)) < 1e-13);
    CHECK(fx::rel(res.leading[1].value(omega), m * std::polar(1.0, omega - kPi / 4.0)) < 1e-12);
    CHECK(std::abs(bessel_exact(omega) - res.leading_sum()) <= res.bound_total());
    CHECK(res.all_certified());
    CHECK(res.bound_total() == doctest::Approx(res.certified_bound()));
  }
}

TEST_CASE("R1 bound dominates the numerically extracted R1 on the beta-bessel case") {
  const auto phase = stasis::make_phase("linear", 0.0, 1.0);
  const auto amp = fx::beta(0.5, 0.5);
  const auto frame = stasis::build_frame(phase, amp, 1, 0.5);
  const double bound = stasis::remainder_bound_r1(frame, 100.0, {});
  const auto observed = stasis::numeric_remainders(frame, phase, amp, 100.0, 1e-11);
  CHECK(bound > 0.0);
  CHECK(std::isfinite(bound));
  CHECK(std::abs(observed.r1) <= bound);
}

TEST_CASE("bound terms decay faster than the leading terms") {
  for (const char* name : {"linear", "quadratic-lift", "square", "cubic"}) {
    const auto phase = stasis::make_phase(name, 0.0, 1.0);
    const auto amp = fx::beta(0.3, 0.7);
    const auto res = stasis::expand_integral(phase, amp, 0.5, {}, 10.0);
    CAPTURE(name);
    for (std::size_t i = 0; i < res.bound_terms.size(); ++i) {
      const int side = static_cast<int>(i / 2);
      const double rho = side == 0 ? phase.rho1 : phase.rho2;
      CHECK(res.bound_terms[i].omega_exp <= -1.0 / rho + 1e-15);
      CHECK(res.bound_terms[i].omega_exp < res.leading[static_cast<std::size_t>(side)].omega_exp);
    }
  }
}

TEST_CASE("linearity in the amplitude and a constant phase shift") {
  const auto phase = stasis::make_phase("quadratic-lift", 0.0, 1.0);
  const auto amp = fx::beta(0.5, 0.4);
  const double omega = 30.0;
  const auto base = stasis::expand_integral(phase, amp, 0.5, {}, omega);
  const auto triple = stasis::expand_integral(phase, scaled(amp, 3.0), 0.5, {}, omega);
  for (std::size_t i = 0; i < 2; ++i) {
    CHECK(fx::rel(triple.leading[i].value(omega), 3.0 * base.leading[i].value(omega)) < 1e-14);
  }
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(triple.bound_terms[i].value(omega) == doctest::Approx(3.0 * base.bound_terms[i].value(omega)).epsilon(1e-12));
  }
  const auto shift = stasis::expand_integral(shifted(phase, 0.7), amp, 0.5, {}, omega);
  for (std::size_t i = 0; i < 2; ++i) {
    CHECK(fx::rel(shift.leading[i].value(omega), std::polar(1.0, omega * 0.7) * base.leading[i].value(omega)) < 1e-13);
  }
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(shift.bound_terms[i].value(omega) == doctest::Approx(base.bound_terms[i].value(omega)).epsilon(1e-12));
  }
}

TEST_CASE("regular stationary ends use the refined estimate") {
  const auto phase = stasis::make_phase("square", 0.0, 1.0);
  const auto amp = fx::beta(1.0, 0.5);
  stasis::ExpansionConfig config;
  const auto res = stasis::expand_integral(phase, amp, 0.5, config, 40.0);
  CHECK_FALSE(res.all_certified());
  CHECK(res.bound_terms[0].omega_exp == doctest::Approx(-0.75));
  CHECK_FALSE(res.bound_terms[0].certified);
  CHECK(res.bound_terms[2].certified);
  CHECK(config.delta_for(2.0) == doctest::Approx(0.75));
  config.delta = 0.8;
  CHECK_THROWS_AS(config.delta_for(2.0), std::domain_error);
  config.delta.reset();
  config.L_const = 2.0;
  const auto doubled = stasis::expand_integral(phase, amp, 0.5, config, 40.0);
  CHECK(doubled.bound_terms[0].value(40.0) == doctest::Approx(2.0 * res.bound_terms[0].value(40.0)).epsilon(1e-12));
}

TEST_CASE("a regular non-stationary end is outside the supported branches") {
  const auto phase = stasis::make_phase("linear", 0.0, 1.0);
  stasis::AmplitudeParams params;
  params.mu1 = 0.5;
  CHECK_THROWS_AS(stasis::expand_integral(phase, stasis::make_amplitude("fresnel", params), 0.5, {}, 10.0),
                  std::domain_error);
}
