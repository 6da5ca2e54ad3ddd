#include <cmath>
#include <limits>

#include "errors.hpp"
#include "gpcm.hpp"

namespace mixavg {

namespace {

// Aitken-accelerated stopping rule on the log-likelihood sequence.
bool aitken_converged(const std::vector<double>& ll, double tol) {
  const std::size_t t = ll.size();
  if (t < 2)
    return false;
  const double d1 = ll[t - 1] - ll[t - 2];
  if (std::abs(d1) < tol)
    return true;
  if (t < 3)
    return false;
  const double d0 = ll[t - 2] - ll[t - 3];
  if (std::abs(d0) < std::numeric_limits<double>::min())
    return false;
  const double a = d1 / d0;
  if (a >= 1.0)
    return false;
  const double l_inf = ll[t - 2] + d1 / (1.0 - a);
  return std::abs(l_inf - ll[t - 1]) < tol;
}

}  // namespace

FitResult em_fit(const Dataset& data, CovStructure structure, int G,
                 const EmOptions& opts, std::uint64_t seed) {
  if (!is_fittable(structure))
    throw InvalidInput("structure " + structure_name(structure) +
                       " is recognized but not fittable");
  if (G < 1 || data.n() <= G)
    throw InvalidInput("em_fit needs 1 <= G < n");

  FitResult result;
  result.seed = seed;
  result.rho = free_param_count(structure, G, static_cast<int>(data.p()));
  result.loglik = -std::numeric_limits<double>::infinity();
  result.bic = std::numeric_limits<double>::infinity();

  try {
    const Partition init = kmeans_partition(data, G, seed);
    MixtureParams params = m_step(one_hot(init, G), data, structure);

    std::vector<double> ll_hist;
    double ll = -std::numeric_limits<double>::infinity();
    if (opts.max_iter == 0) {
      e_step(params, data, &ll);
      result.params = std::move(params);
      result.loglik = ll;
      result.bic = bic(ll, result.rho, data.n());
      return result;  // converged stays false: no iterations were allowed
    }
    for (int iter = 1; iter <= opts.max_iter; ++iter) {
      const SoftAssignment z = e_step(params, data, &ll);
      ll_hist.push_back(ll);
      result.n_iter = iter;
      if (aitken_converged(ll_hist, opts.tol)) {
        result.converged = true;
        break;
      }
      params = m_step(z, data, structure);
    }
    if (!result.converged)
      e_step(params, data, &ll);  // report the likelihood of the returned params
    result.params = std::move(params);
    result.loglik = ll;
    result.bic = bic(ll, result.rho, data.n());
  } catch (const DegenerateFit&) {
    result.converged = false;
  }
  return result;
}

}  // namespace mixavg
