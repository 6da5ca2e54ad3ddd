#pragma once

#include <functional>
#include <vector>

#include "ari.hpp"
#include "gpcm.hpp"

namespace mixavg {

// Surjective assignment of G source components onto H merged clusters.
struct MergeMap {
  std::vector<int> assignment;  // length G, entries in 1..H
  int G = 0;
  int H = 0;
};

// A mixture regrouped into H clusters; the density is unchanged.
struct MergedModel {
  std::vector<std::vector<int>> groups;  // H groups of 1-based source indices
  Eigen::VectorXd pi_star;               // H merged proportions
  MixtureParams source;
};

MergedModel make_merged(const MixtureParams& source, const MergeMap& m);

// Merged mixture density at x (equals the source mixture density).
double merged_density(const MergedModel& m, const Eigen::VectorXd& x);

Partition apply_merge_to_partition(const Partition& p, const MergeMap& m);

SoftAssignment apply_merge_to_z(const SoftAssignment& z, const MergeMap& m);

// Number of candidates the search walks: C(G,H) * H^(G-H).
// Anchors get targets bijectively in index order, the rest go anywhere.
std::uint64_t candidate_count(int G, int H);

// Streams every candidate map in a fixed order (anchor combination
// lexicographic, then remainder assignment as a base-H counter).
// Returning false from the visitor stops the enumeration.
void enumerate_candidates(int G, int H, const std::function<bool(const MergeMap&)>& visit);

struct MergeSearchResult {
  MergeMap map;
  double ari = -2.0;
};

// Picks the merge of the candidate partition maximizing ARI against the
// reference partition; ties go to the earliest enumerated candidate.
MergeSearchResult best_merge(const Partition& candidate, const Partition& reference);

// Exhaustive maximum over all surjections G -> H; test oracle, G <= 8.
double brute_force_merge_oracle(const Partition& candidate, const Partition& reference);

}  // namespace mixavg
