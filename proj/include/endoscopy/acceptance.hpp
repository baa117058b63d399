#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "endoscopy/quad_ext.hpp"

namespace endo {

// A pseudo-random regular norm-one element of E^1, drawn through the
// Hilbert-90 parametrization from exact level-3 digit representatives.
ExtElem sample_regular(const ExtPtr& E, std::mt19937_64& rng);

struct CriterionResult {
  int index = 0;
  std::string name;
  bool pass = false;
  std::string detail;  // short diagnostic, filled on failure
};

// The bundled verification suite: thirteen exact identity checks covering
// the orbital, transfer, germ, and spectral layers.  `quick` lowers the
// sample counts; `seed` drives the sampled checks deterministically.
std::vector<CriterionResult> run_acceptance(bool quick = false,
                                            std::uint64_t seed = 0);

}  // namespace endo
