#pragma once

#include <map>
#include <string>
#include <vector>

#include "gpcm.hpp"

namespace mixavg {

struct SweepOptions {
  std::vector<CovStructure> structures;  // empty = all 10 fittable
  int g_min = 1;
  int g_max = 9;
  int restarts = 20;
  std::uint64_t base_seed = 0;
  double tol = 1e-8;
  int max_iter = 1000;
  int threads = 0;  // 0 = hardware concurrency
};

struct SweepResult {
  std::vector<FitResult> entries;  // best converged restart per cell, ascending BIC
  SweepOptions grid;
  std::map<std::string, std::string> failures;  // "STRUCT,G" -> diagnostic
};

// Deterministic per-cell restart seed, independent of execution order.
std::uint64_t cell_seed(std::uint64_t base_seed, CovStructure s, int G, int restart);

SweepResult run_sweep(const Dataset& data, const SweepOptions& opts);

// Minimum-BIC entry; ties broken by fewer components, then structure name.
const FitResult& best_model(const SweepResult& s);

}  // namespace mixavg
