#include "averaging.hpp"

#include <cmath>
#include <limits>

#include "errors.hpp"

namespace mixavg {

namespace {

// Per-component eigendecomposition so an averaged (unconstrained) mixture
// still satisfies the sigma/decomposition consistency contract.
void decompose_unconstrained(MixtureParams& params) {
  auto& d = params.decomp;
  d.lambda.resize(static_cast<std::size_t>(params.G));
  d.shape.resize(static_cast<std::size_t>(params.G));
  d.orientation.resize(static_cast<std::size_t>(params.G));
  for (int g = 0; g < params.G; ++g) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(params.sigma[static_cast<std::size_t>(g)]);
    if (es.info() != Eigen::Success)
      throw DegenerateFit("eigendecomposition of averaged covariance failed");
    const Eigen::VectorXd evals = es.eigenvalues().reverse();
    if ((evals.array() <= 0.0).any())
      throw DegenerateFit("averaged covariance is not positive definite");
    const double lam = std::exp(evals.array().log().mean());
    d.lambda[static_cast<std::size_t>(g)] = lam;
    d.shape[static_cast<std::size_t>(g)] = evals / lam;
    d.orientation[static_cast<std::size_t>(g)] = es.eigenvectors().rowwise().reverse();
  }
}

}  // namespace

ComponentMatching match_means(const std::vector<Eigen::VectorXd>& ref_means,
                              const std::vector<Eigen::VectorXd>& other_means) {
  const std::size_t G = ref_means.size();
  if (other_means.size() != G)
    throw InvalidInput("component counts differ in match_means");
  Eigen::MatrixXd cost(G, G);
  for (std::size_t i = 0; i < G; ++i)
    for (std::size_t j = 0; j < G; ++j)
      cost(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          (ref_means[i] - other_means[j]).squaredNorm();

  // Held-Karp style assignment: best[mask] = min cost of matching reference
  // components 0..popcount(mask)-1 to the candidate components in mask.
  const std::size_t full = (std::size_t{1} << G) - 1;
  std::vector<double> best(full + 1, std::numeric_limits<double>::infinity());
  std::vector<int> choice(full + 1, -1);
  best[0] = 0.0;
  for (std::size_t mask = 0; mask < full; ++mask) {
    if (!std::isfinite(best[mask]))
      continue;
    const int i = __builtin_popcountll(mask);  // next reference component
    for (std::size_t j = 0; j < G; ++j) {
      if (mask & (std::size_t{1} << j))
        continue;
      const std::size_t next = mask | (std::size_t{1} << j);
      const double c = best[mask] + cost(i, static_cast<Eigen::Index>(j));
      if (c < best[next]) {
        best[next] = c;
        choice[next] = static_cast<int>(j);
      }
    }
  }
  ComponentMatching m;
  m.permutation.assign(G, -1);
  std::size_t mask = full;
  for (int i = static_cast<int>(G) - 1; i >= 0; --i) {
    const int j = choice[mask];
    m.permutation[static_cast<std::size_t>(i)] = j;
    mask &= ~(std::size_t{1} << j);
  }
  return m;
}

ComponentMatching match_components(const MixtureParams& ref, const MixtureParams& other) {
  if (ref.G != other.G || ref.p != other.p)
    throw InvalidInput("match_components needs equal G and p");
  return match_means(ref.mu, other.mu);
}

AapResult average_posteriors(const WindowSet& window, ReferencePolicy policy,
                             const Dataset& data) {
  AapResult out;
  out.sel = select_reference(window, policy);
  const auto& sel = out.sel;
  const FitResult& ref_fit = window.members[sel.subset[sel.reference]].fit;
  const int g_ref = ref_fit.params.G;

  const SoftAssignment ref_z = e_step(ref_fit.params, data);
  const Partition ref_part = harden(ref_z);

  out.z.z = Eigen::MatrixXd::Zero(data.n(), g_ref);
  out.merges.resize(sel.subset.size());
  for (std::size_t k = 0; k < sel.subset.size(); ++k) {
    const double w = sel.weights[k];
    const FitResult& fit = window.members[sel.subset[k]].fit;
    if (sel.subset[k] == sel.subset[sel.reference]) {
      out.z.z += w * ref_z.z;
      continue;
    }
    const SoftAssignment z_m = e_step(fit.params, data);
    if (fit.params.G == g_ref) {
      const ComponentMatching match = match_components(ref_fit.params, fit.params);
      for (int g = 0; g < g_ref; ++g)
        out.z.z.col(g) += w * z_m.z.col(match.permutation[static_cast<std::size_t>(g)]);
      continue;
    }
    if (fit.params.G < g_ref)
      throw InvalidInput("working subset contains a model smaller than the reference");

    // Merge down to the reference size, then align merged groups to
    // reference components through their proportion-weighted group means.
    const MergeSearchResult ms = best_merge(harden(z_m), ref_part);
    out.merges[k] = ms.map;
    const SoftAssignment z_merged = apply_merge_to_z(z_m, ms.map);
    const MergedModel merged = make_merged(fit.params, ms.map);
    std::vector<Eigen::VectorXd> group_means(static_cast<std::size_t>(g_ref));
    for (int j = 0; j < g_ref; ++j) {
      Eigen::VectorXd acc = Eigen::VectorXd::Zero(data.p());
      double mass = 0.0;
      for (int g1 : merged.groups[static_cast<std::size_t>(j)]) {
        acc += fit.params.pi[g1 - 1] * fit.params.mu[static_cast<std::size_t>(g1 - 1)];
        mass += fit.params.pi[g1 - 1];
      }
      group_means[static_cast<std::size_t>(j)] = acc / mass;
    }
    const ComponentMatching match = match_means(ref_fit.params.mu, group_means);
    for (int g = 0; g < g_ref; ++g)
      out.z.z.col(g) += w * z_merged.z.col(match.permutation[static_cast<std::size_t>(g)]);
  }
  return out;
}

MaResult average_models(const WindowSet& window, const Dataset& data) {
  if (window.members.empty())
    throw InvalidInput("empty Occam window");
  MaResult out;
  const FitResult& best = window.members[0].fit;
  const int G = best.params.G;

  double total = 0.0;
  for (std::size_t i = 0; i < window.members.size(); ++i)
    if (window.members[i].fit.params.G == G) {
      out.subset.push_back(i);
      out.weights.push_back(window.members[i].weight);
      total += window.members[i].weight;
    }
  for (double& w : out.weights)
    w /= total;

  MixtureParams avg;
  avg.structure = CovStructure::VVV;  // averaging across structures is unconstrained
  avg.G = G;
  avg.p = best.params.p;
  avg.pi = Eigen::VectorXd::Zero(G);
  avg.mu.assign(static_cast<std::size_t>(G), Eigen::VectorXd::Zero(avg.p));
  avg.sigma.assign(static_cast<std::size_t>(G), Eigen::MatrixXd::Zero(avg.p, avg.p));
  for (std::size_t k = 0; k < out.subset.size(); ++k) {
    const double w = out.weights[k];
    const MixtureParams& m = window.members[out.subset[k]].fit.params;
    const ComponentMatching match = match_components(best.params, m);
    for (int g = 0; g < G; ++g) {
      const std::size_t src = static_cast<std::size_t>(match.permutation[static_cast<std::size_t>(g)]);
      avg.pi[g] += w * m.pi[static_cast<Eigen::Index>(src)];
      avg.mu[static_cast<std::size_t>(g)] += w * m.mu[src];
      avg.sigma[static_cast<std::size_t>(g)] += w * m.sigma[src];
    }
  }
  avg.pi /= avg.pi.sum();
  for (auto& sig : avg.sigma)
    sig = 0.5 * (sig + sig.transpose()).eval();
  decompose_unconstrained(avg);

  out.z = e_step(avg, data);
  out.params = std::move(avg);
  return out;
}

}  // namespace mixavg
