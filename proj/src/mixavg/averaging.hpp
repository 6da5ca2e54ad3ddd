#pragma once

#include <vector>

#include "merge.hpp"
#include "occam.hpp"

namespace mixavg {

// Column alignment of one model's components onto a reference model's.
// permutation[g] is the 0-based source component shown at reference slot g.
struct ComponentMatching {
  std::vector<int> permutation;
};

// Bijection minimizing the total squared distance between reference means
// and permuted candidate means (assignment solved by subset DP).
ComponentMatching match_components(const MixtureParams& ref, const MixtureParams& other);

ComponentMatching match_means(const std::vector<Eigen::VectorXd>& ref_means,
                              const std::vector<Eigen::VectorXd>& other_means);

struct AapResult {
  SoftAssignment z;         // n x G_ref averaged memberships
  ReferenceSelection sel;   // which members were used and with what weights
  std::vector<MergeMap> merges;  // per subset member; empty map when unmerged
};

// Weighted average of a-posteriori probabilities across the window,
// merging and aligning members to the reference model first.
AapResult average_posteriors(const WindowSet& window, ReferencePolicy policy,
                             const Dataset& data);

struct MaResult {
  MixtureParams params;  // averaged mixture, unconstrained structure label
  SoftAssignment z;
  std::vector<std::size_t> subset;  // window member indices that were averaged
  std::vector<double> weights;
};

// Direct parameter averaging over window members sharing the best model's
// component count.
MaResult average_models(const WindowSet& window, const Dataset& data);

}  // namespace mixavg
