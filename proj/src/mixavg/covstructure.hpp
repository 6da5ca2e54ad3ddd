#pragma once

#include <array>
#include <string>

namespace mixavg {

// The 14 eigen-decomposition covariance families. Codes read
// volume/shape/orientation, E = equal across components, V = variable,
// I = identity (axis-aligned spherical/diagonal).
enum class CovStructure {
  EII, VII, EEI, VEI, EVI, VVI, EEE, EEV, VEV, VVV,
  // Recognized but not fittable here (their M-steps need an MM scheme).
  EVE, VVE, VEE, EVV,
};

inline constexpr std::array<CovStructure, 14> kAllStructures = {
    CovStructure::EII, CovStructure::VII, CovStructure::EEI, CovStructure::VEI,
    CovStructure::EVI, CovStructure::VVI, CovStructure::EEE, CovStructure::EEV,
    CovStructure::VEV, CovStructure::VVV, CovStructure::EVE, CovStructure::VVE,
    CovStructure::VEE, CovStructure::EVV};

inline constexpr std::array<CovStructure, 10> kFittableStructures = {
    CovStructure::EII, CovStructure::VII, CovStructure::EEI, CovStructure::VEI,
    CovStructure::EVI, CovStructure::VVI, CovStructure::EEE, CovStructure::EEV,
    CovStructure::VEV, CovStructure::VVV};

bool is_fittable(CovStructure s);

const std::string& structure_name(CovStructure s);

// Throws InvalidInput for anything but the 14 three-letter codes.
CovStructure structure_from_name(const std::string& name);

// Covariance part of the free-parameter count.
// Note: the EVV entry follows its published table value Gp(p+1)-(G-1),
// which breaks the family pattern (Gp(p+1)/2-(G-1) would); EVV is not
// fittable here so the count is never used in a BIC.
long cov_param_count(CovStructure s, int G, int p);

// Total free parameters: (G-1) mixing + Gp means + covariance part.
long free_param_count(CovStructure s, int G, int p);

}  // namespace mixavg
