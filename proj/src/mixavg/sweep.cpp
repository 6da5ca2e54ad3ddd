#include "sweep.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

#include "errors.hpp"

namespace mixavg {

std::uint64_t cell_seed(std::uint64_t base_seed, CovStructure s, int G, int restart) {
  // FNV-1a over (structure name, G, restart), xored with the base seed.
  std::uint64_t h = 1469598103934665603ULL;
  const auto mix = [&h](std::uint64_t v) {
    for (int b = 0; b < 8; ++b) {
      h ^= (v >> (8 * b)) & 0xff;
      h *= 1099511628211ULL;
    }
  };
  for (char c : structure_name(s)) {
    h ^= static_cast<std::uint64_t>(static_cast<unsigned char>(c));
    h *= 1099511628211ULL;
  }
  mix(static_cast<std::uint64_t>(G));
  mix(static_cast<std::uint64_t>(restart));
  return base_seed ^ h;
}

SweepResult run_sweep(const Dataset& data, const SweepOptions& opts) {
  SweepOptions grid = opts;
  if (grid.structures.empty())
    grid.structures.assign(kFittableStructures.begin(), kFittableStructures.end());
  for (CovStructure s : grid.structures)
    if (!is_fittable(s))
      throw InvalidInput("structure " + structure_name(s) +
                         " cannot be fitted (no closed-form M-step)");
  if (grid.g_min < 1 || grid.g_max < grid.g_min)
    throw InvalidInput("invalid component range");
  if (grid.restarts < 1)
    throw InvalidInput("restarts must be >= 1");

  struct Cell {
    CovStructure structure;
    int G;
  };
  std::vector<Cell> cells;
  for (CovStructure s : grid.structures)
    for (int G = grid.g_min; G <= grid.g_max; ++G)
      if (G < data.n())
        cells.push_back({s, G});

  const EmOptions em_opts{grid.tol, grid.max_iter};
  std::vector<FitResult> best(cells.size());
  std::vector<char> ok(cells.size(), 0);  // vector<bool> bit-packing is not thread-safe

  const auto run_cell = [&](std::size_t idx) {
    const Cell& c = cells[idx];
    for (int r = 0; r < grid.restarts; ++r) {
      const std::uint64_t seed = cell_seed(grid.base_seed, c.structure, c.G, r);
      FitResult fit = em_fit(data, c.structure, c.G, em_opts, seed);
      if (!fit.converged)
        continue;
      if (!ok[idx] || fit.bic < best[idx].bic) {
        best[idx] = std::move(fit);
        ok[idx] = 1;
      }
    }
  };

  unsigned n_threads = grid.threads > 0 ? static_cast<unsigned>(grid.threads)
                                        : std::max(1u, std::thread::hardware_concurrency());
  n_threads = std::min<unsigned>(n_threads, static_cast<unsigned>(cells.size()));
  if (n_threads <= 1) {
    for (std::size_t i = 0; i < cells.size(); ++i)
      run_cell(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < n_threads; ++t)
      pool.emplace_back([&] {
        for (std::size_t i = next.fetch_add(1); i < cells.size(); i = next.fetch_add(1))
          run_cell(i);
      });
    for (auto& th : pool)
      th.join();
  }

  SweepResult result;
  result.grid = grid;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const std::string key =
        structure_name(cells[i].structure) + "," + std::to_string(cells[i].G);
    if (ok[i])
      result.entries.push_back(std::move(best[i]));
    else
      result.failures[key] = "no converged restart";
  }
  std::stable_sort(result.entries.begin(), result.entries.end(),
                   [](const FitResult& a, const FitResult& b) { return a.bic < b.bic; });
  return result;
}

const FitResult& best_model(const SweepResult& s) {
  if (s.entries.empty())
    throw InvalidInput("sweep produced no converged model");
  const FitResult* best = &s.entries.front();
  for (const auto& e : s.entries) {
    if (e.bic < best->bic ||
        (e.bic == best->bic &&
         (e.params.G < best->params.G ||
          (e.params.G == best->params.G &&
           structure_name(e.params.structure) < structure_name(best->params.structure)))))
      best = &e;
  }
  return *best;
}

}  // namespace mixavg
