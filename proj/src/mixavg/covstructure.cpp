#include "covstructure.hpp"

#include <algorithm>

#include "errors.hpp"

namespace mixavg {

namespace {
const std::array<std::string, 14> kNames = {
    "EII", "VII", "EEI", "VEI", "EVI", "VVI", "EEE",
    "EEV", "VEV", "VVV", "EVE", "VVE", "VEE", "EVV"};
}

bool is_fittable(CovStructure s) {
  switch (s) {
    case CovStructure::EVE:
    case CovStructure::VVE:
    case CovStructure::VEE:
    case CovStructure::EVV:
      return false;
    default:
      return true;
  }
}

const std::string& structure_name(CovStructure s) {
  return kNames[static_cast<std::size_t>(s)];
}

CovStructure structure_from_name(const std::string& name) {
  auto it = std::find(kNames.begin(), kNames.end(), name);
  if (it == kNames.end())
    throw InvalidInput("unknown covariance structure '" + name + "'");
  return static_cast<CovStructure>(it - kNames.begin());
}

long cov_param_count(CovStructure s, int G, int p) {
  const long g = G, q = p;
  switch (s) {
    case CovStructure::EII: return 1;
    case CovStructure::VII: return g;
    case CovStructure::EEI: return q;
    case CovStructure::VEI: return q + g - 1;
    case CovStructure::EVI: return g * q - g + 1;
    case CovStructure::VVI: return g * q;
    case CovStructure::EEE: return q * (q + 1) / 2;
    case CovStructure::EEV: return g * q * (q + 1) / 2 - (g - 1) * q;
    case CovStructure::VEV: return g * q * (q + 1) / 2 - (g - 1) * (q - 1);
    case CovStructure::VVV: return g * q * (q + 1) / 2;
    case CovStructure::EVE: return q * (q + 1) / 2 + (g - 1) * (q - 1);
    case CovStructure::VVE: return q * (q + 1) / 2 + (g - 1) * q;
    case CovStructure::VEE: return q * (q + 1) / 2 + (g - 1);
    case CovStructure::EVV: return g * q * (q + 1) - (g - 1);  // as published
  }
  throw InvalidInput("bad structure enum");
}

long free_param_count(CovStructure s, int G, int p) {
  if (G < 1 || p < 1)
    throw InvalidInput("free_param_count needs G >= 1 and p >= 1");
  return (G - 1) + static_cast<long>(G) * p + cov_param_count(s, G, p);
}

}  // namespace mixavg
