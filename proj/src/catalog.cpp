#include "stasis/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

namespace stasis {

namespace {

struct AmplitudeEntry {
  std::string formula;
  std::function<SingularAmplitude(const AmplitudeParams&)> make;
};

struct PhaseEntry {
  std::string formula;
  std::function<PhaseModel(double, double)> make;
};

SingularAmplitude constant_tilde(const AmplitudeParams& params, double mu1, double mu2) {
  SingularAmplitude amp;
  amp.p1 = params.p1;
  amp.p2 = params.p2;
  amp.mu1 = mu1;
  amp.mu2 = mu2;
  amp.u_tilde = [](double) { return ComplexValue(1.0, 0.0); };
  amp.u_tilde_prime = [](double) { return ComplexValue(0.0, 0.0); };
  amp.sup_norm_u = 1.0;
  amp.sobolev_norm_u = 1.0;
  return amp;
}

const std::map<std::string, AmplitudeEntry>& amplitude_table() {
  static const std::map<std::string, AmplitudeEntry> table = {
      {"beta",
       {"(p-p1)^(mu1-1) (p2-p)^(mu2-1)",
        [](const AmplitudeParams& a) { return constant_tilde(a, a.mu1, a.mu2); }}},
      {"beta-bessel",
       {"(p-p1)^(-1/2) (p2-p)^(-1/2)", [](const AmplitudeParams& a) { return constant_tilde(a, 0.5, 0.5); }}},
      {"beta-exp",
       {"(p-p1)^(mu1-1) (p2-p)^(mu2-1) e^(ip)",
        [](const AmplitudeParams& a) {
          SingularAmplitude amp = constant_tilde(a, a.mu1, a.mu2);
          amp.u_tilde = [](double p) { return std::polar(1.0, p); };
          amp.u_tilde_prime = [](double p) { return ComplexValue(0.0, 1.0) * std::polar(1.0, p); };
          return amp;
        }}},
      {"fresnel", {"(p-p1)^(mu1-1)", [](const AmplitudeParams& a) { return constant_tilde(a, a.mu1, 1.0); }}},
      {"intro",
       {"(p-p1)^(mu1-1) (p2-p)/(p2-p1), supported on [p1,p2]",
        [](const AmplitudeParams& a) {
          SingularAmplitude amp = constant_tilde(a, a.mu1, 1.0);
          const double p2 = a.p2;
          const double width = a.p2 - a.p1;
          amp.u_tilde = [p2, width](double p) { return ComplexValue((p2 - p) / width, 0.0); };
          amp.u_tilde_prime = [width](double) { return ComplexValue(-1.0 / width, 0.0); };
          amp.sobolev_norm_u = std::max(1.0, 1.0 / width);
          return amp;
        }}},
  };
  return table;
}

const std::map<std::string, PhaseEntry>& phase_table() {
  static const std::map<std::string, PhaseEntry> table = {
      {"cubic",
       {"(p-p1)^3, rho1=3",
        [](double p1, double p2) {
          PhaseModel ph;
          ph.p1 = p1;
          ph.p2 = p2;
          ph.rho1 = 3.0;
          ph.psi = [p1](double p) { return (p - p1) * (p - p1) * (p - p1); };
          ph.psi_prime = [p1](double p) { return 3.0 * (p - p1) * (p - p1); };
          ph.psi_tilde = [](double) { return 3.0; };
          ph.psi_tilde_prime = [](double) { return 0.0; };
          return ph;
        }}},
      {"hump",
       {"-(p2-p)^2, rho2=2",
        [](double p1, double p2) {
          PhaseModel ph;
          ph.p1 = p1;
          ph.p2 = p2;
          ph.rho2 = 2.0;
          ph.psi = [p2](double p) { return -(p2 - p) * (p2 - p); };
          ph.psi_prime = [p2](double p) { return 2.0 * (p2 - p); };
          ph.psi_tilde = [](double) { return 2.0; };
          ph.psi_tilde_prime = [](double) { return 0.0; };
          return ph;
        }}},
      {"linear",
       {"p",
        [](double p1, double p2) {
          PhaseModel ph;
          ph.p1 = p1;
          ph.p2 = p2;
          ph.psi = [](double p) { return p; };
          ph.psi_prime = [](double) { return 1.0; };
          ph.psi_tilde = [](double) { return 1.0; };
          ph.psi_tilde_prime = [](double) { return 0.0; };
          return ph;
        }}},
      {"quadratic-lift",
       {"p + p^2 (needs p1 > -1/2)",
        [](double p1, double p2) {
          if (!(p1 > -0.5)) {
            throw std::domain_error("phase quadratic-lift: needs p1 > -1/2");
          }
          PhaseModel ph;
          ph.p1 = p1;
          ph.p2 = p2;
          ph.psi = [](double p) { return p + p * p; };
          ph.psi_prime = [](double p) { return 1.0 + 2.0 * p; };
          ph.psi_tilde = [](double p) { return 1.0 + 2.0 * p; };
          ph.psi_tilde_prime = [](double) { return 2.0; };
          return ph;
        }}},
      {"square",
       {"(p-p1)^2, rho1=2",
        [](double p1, double p2) {
          PhaseModel ph;
          ph.p1 = p1;
          ph.p2 = p2;
          ph.rho1 = 2.0;
          ph.psi = [p1](double p) { return (p - p1) * (p - p1); };
          ph.psi_prime = [p1](double p) { return 2.0 * (p - p1); };
          ph.psi_tilde = [](double) { return 2.0; };
          ph.psi_tilde_prime = [](double) { return 0.0; };
          return ph;
        }}},
  };
  return table;
}

}  // namespace

SingularAmplitude make_amplitude(const std::string& name, const AmplitudeParams& params) {
  const auto& table = amplitude_table();
  const auto it = table.find(name);
  if (it == table.end()) {
    throw std::domain_error("unknown amplitude '" + name + "'");
  }
  if (!(params.p1 < params.p2)) {
    throw std::domain_error("amplitude: need p1 < p2");
  }
  return it->second.make(params);
}

PhaseModel make_phase(const std::string& name, double p1, double p2) {
  const auto& table = phase_table();
  const auto it = table.find(name);
  if (it == table.end()) {
    throw std::domain_error("unknown phase '" + name + "'");
  }
  if (!(p1 < p2)) {
    throw std::domain_error("phase: need p1 < p2");
  }
  return it->second.make(p1, p2);
}

std::vector<std::string> amplitude_names() {
  std::vector<std::string> names;
  for (const auto& [name, entry] : amplitude_table()) {
    names.push_back(name);
  }
  return names;
}

std::vector<std::string> phase_names() {
  std::vector<std::string> names;
  for (const auto& [name, entry] : phase_table()) {
    names.push_back(name);
  }
  return names;
}

std::string catalog_list() {
  std::ostringstream out;
  out << "amplitudes:\n";
  for (const auto& [name, entry] : amplitude_table()) {
    out << "  " << name << std::string(16 - std::min<std::size_t>(name.size(), 15), ' ') << "U(p) = "
        << entry.formula << "\n";
  }
  out << "phases:\n";
  for (const auto& [name, entry] : phase_table()) {
    out << "  " << name << std::string(16 - std::min<std::size_t>(name.size(), 15), ' ') << "psi(p) = "
        << entry.formula << "\n";
  }
  out << "  quadratic       psi(p) = -(p-p0)^2 + c (keys p0, c)\n";
  return out.str();
}

}  // namespace stasis
