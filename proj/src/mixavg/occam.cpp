#include "occam.hpp"

#include <algorithm>
#include <cmath>

#include "errors.hpp"

namespace mixavg {

std::vector<double> bma_weights(const std::vector<double>& bics) {
  if (bics.empty())
    throw InvalidInput("bma_weights needs at least one BIC value");
  const double min_bic = *std::min_element(bics.begin(), bics.end());
  std::vector<double> w(bics.size());
  double total = 0.0;
  for (std::size_t i = 0; i < bics.size(); ++i) {
    if (!std::isfinite(bics[i]))
      throw InvalidInput("non-finite BIC value");
    w[i] = std::exp(-0.5 * (bics[i] - min_bic));
    total += w[i];
  }
  for (double& x : w)
    x /= total;
  return w;
}

WindowSet occam_window(const SweepResult& s, double c) {
  if (s.entries.empty())
    throw InvalidInput("sweep has no converged entries");
  if (!(c > 1.0))
    throw InvalidInput("window constant c must exceed 1");

  const double best_bic = best_model(s).bic;
  const double cutoff = 2.0 * std::log(c);

  WindowSet w;
  w.c = c;
  for (const auto& e : s.entries)
    if (e.bic - best_bic <= cutoff)
      w.members.push_back({e, 0.0});
  std::stable_sort(w.members.begin(), w.members.end(),
                   [](const WindowMember& a, const WindowMember& b) {
                     return a.fit.bic < b.fit.bic;
                   });

  std::vector<double> bics;
  bics.reserve(w.members.size());
  for (const auto& m : w.members)
    bics.push_back(m.fit.bic);
  const auto weights = bma_weights(bics);
  for (std::size_t i = 0; i < w.members.size(); ++i)
    w.members[i].weight = weights[i];

  w.reference_case_I = 0;  // members are BIC-sorted
  w.reference_case_II = 0;
  for (std::size_t i = 1; i < w.members.size(); ++i) {
    const auto& cur = w.members[i].fit;
    const auto& ref = w.members[w.reference_case_II].fit;
    // Fewest components; ties already resolved by BIC order, then name.
    if (cur.params.G < ref.params.G ||
        (cur.params.G == ref.params.G && cur.bic == ref.bic &&
         structure_name(cur.params.structure) < structure_name(ref.params.structure)))
      w.reference_case_II = i;
  }
  return w;
}

ReferenceSelection select_reference(const WindowSet& w, ReferencePolicy policy) {
  if (w.members.empty())
    throw InvalidInput("empty Occam window");
  ReferenceSelection sel;
  if (policy == ReferencePolicy::CaseII) {
    for (std::size_t i = 0; i < w.members.size(); ++i) {
      sel.subset.push_back(i);
      sel.weights.push_back(w.members[i].weight);
    }
    sel.reference = w.reference_case_II;
    return sel;
  }
  // Case I: keep members with at least as many components as the best model.
  const int g_ref = w.members[w.reference_case_I].fit.params.G;
  double total = 0.0;
  for (std::size_t i = 0; i < w.members.size(); ++i) {
    if (w.members[i].fit.params.G < g_ref)
      continue;
    if (i == w.reference_case_I)
      sel.reference = sel.subset.size();
    sel.subset.push_back(i);
    sel.weights.push_back(w.members[i].weight);
    total += w.members[i].weight;
  }
  for (double& x : sel.weights)
    x /= total;
  return sel;
}

}  // namespace mixavg
