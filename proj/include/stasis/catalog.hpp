#pragma once

#include <string>
#include <vector>

#include "stasis/model.hpp"

namespace stasis {

struct AmplitudeParams {
  double p1 = 0.0;
  double p2 = 1.0;
  double mu1 = 0.5;
  double mu2 = 0.5;
};

/// Built-in amplitudes with analytically known norms. Entries that fix an
/// exponent (beta-bessel, fresnel, intro) override the corresponding mu.
SingularAmplitude make_amplitude(const std::string& name, const AmplitudeParams& params);

/// Built-in phases on [p1, p2].
PhaseModel make_phase(const std::string& name, double p1, double p2);

std::vector<std::string> amplitude_names();
std::vector<std::string> phase_names();

/// Sorted, human-readable listing of both catalogs.
std::string catalog_list();

}  // namespace stasis
