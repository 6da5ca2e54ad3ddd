#pragma once

#include <vector>

#include "sweep.hpp"

namespace mixavg {

enum class ReferencePolicy { CaseI, CaseII };

struct WindowMember {
  FitResult fit;
  double weight = 0.0;
};

struct WindowSet {
  std::vector<WindowMember> members;  // ascending BIC
  double c = 20.0;
  std::size_t reference_case_I = 0;   // minimum-BIC member
  std::size_t reference_case_II = 0;  // fewest-components member
};

// Posterior model probabilities from BIC values, shifted by the minimum
// before exponentiation so only BIC differences matter.
std::vector<double> bma_weights(const std::vector<double>& bics);

// Models within 2 log c of the best BIC, with their normalized weights.
WindowSet occam_window(const SweepResult& s, double c = 20.0);

struct ReferenceSelection {
  std::size_t reference = 0;            // index into the working subset
  std::vector<std::size_t> subset;      // member indices kept for averaging
  std::vector<double> weights;          // renormalized over the subset
};

// Case I: best-BIC reference, members with fewer components dropped.
// Case II: fewest-components reference, everything kept.
ReferenceSelection select_reference(const WindowSet& w, ReferencePolicy policy);

}  // namespace mixavg
