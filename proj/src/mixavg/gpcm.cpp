#include "gpcm.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "errors.hpp"

namespace mixavg {

namespace {

// Cached Cholesky of one component for vectorized density evaluation.
struct CompChol {
  Eigen::MatrixXd L;
  double logdet = 0.0;
};

CompChol factor(const Eigen::MatrixXd& sigma) {
  Eigen::LLT<Eigen::MatrixXd> llt(sigma);
  if (llt.info() != Eigen::Success)
    throw DegenerateFit("covariance matrix is not positive definite");
  CompChol c;
  c.L = llt.matrixL();
  c.logdet = 2.0 * c.L.diagonal().array().log().sum();
  return c;
}

}  // namespace

double log_component_density(const Eigen::VectorXd& x, const Eigen::VectorXd& mu,
                             const Eigen::MatrixXd& sigma) {
  if (x.size() != mu.size() || sigma.rows() != x.size() || sigma.cols() != x.size())
    throw InvalidInput("dimension mismatch in component density");
  const CompChol c = factor(sigma);
  const Eigen::VectorXd w = c.L.triangularView<Eigen::Lower>().solve(x - mu);
  const double p = static_cast<double>(x.size());
  return -0.5 * (p * std::log(2.0 * std::numbers::pi) + c.logdet + w.squaredNorm());
}

double component_density(const Eigen::VectorXd& x, const Eigen::VectorXd& mu,
                         const Eigen::MatrixXd& sigma) {
  return std::exp(log_component_density(x, mu, sigma));
}

SoftAssignment e_step(const MixtureParams& params, const Dataset& data, double* loglik_out) {
  const Eigen::Index n = data.n();
  if (data.p() != params.p)
    throw InvalidInput("data dimension does not match mixture parameters");
  const int G = params.G;
  const double p = static_cast<double>(params.p);

  Eigen::MatrixXd logdens(n, G);  // log pi_g + log phi_g(x_i)
  for (int g = 0; g < G; ++g) {
    const CompChol c = factor(params.sigma[static_cast<std::size_t>(g)]);
    Eigen::MatrixXd centered =
        data.values.rowwise() - params.mu[static_cast<std::size_t>(g)].transpose();
    c.L.triangularView<Eigen::Lower>().solveInPlace(centered.transpose());
    // centered now holds whitened residuals row-wise
    logdens.col(g) =
        -0.5 * (centered.array().square().rowwise().sum() + p * std::log(2.0 * std::numbers::pi) +
                c.logdet) +
        std::log(params.pi[g]);
  }

  SoftAssignment out;
  out.z.resize(n, G);
  double loglik = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double m = logdens.row(i).maxCoeff();
    const Eigen::ArrayXd ex = (logdens.row(i).array() - m).exp();
    const double s = ex.sum();
    out.z.row(i) = (ex / s).transpose();
    loglik += m + std::log(s);
  }
  if (loglik_out)
    *loglik_out = loglik;
  return out;
}

double bic(double loglik, long rho, Eigen::Index n) {
  return -2.0 * loglik + static_cast<double>(rho) * std::log(static_cast<double>(n));
}

Partition harden(const SoftAssignment& z) {
  Partition part;
  part.assignments.resize(static_cast<std::size_t>(z.z.rows()));
  part.k = static_cast<int>(z.z.cols());
  for (Eigen::Index i = 0; i < z.z.rows(); ++i) {
    Eigen::Index best = 0;
    z.z.row(i).maxCoeff(&best);  // first occurrence wins ties
    part.assignments[static_cast<std::size_t>(i)] = static_cast<int>(best) + 1;
  }
  return part;
}

SoftAssignment one_hot(const Partition& part, int G) {
  SoftAssignment z;
  z.z = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(part.size()), G);
  for (std::size_t i = 0; i < part.size(); ++i) {
    const int a = part.assignments[i];
    if (a < 1 || a > G)
      throw InvalidInput("partition label outside 1..G");
    z.z(static_cast<Eigen::Index>(i), a - 1) = 1.0;
  }
  return z;
}

Partition kmeans_partition(const Dataset& data, int k, std::uint64_t seed, int lloyd_iters) {
  const Eigen::Index n = data.n();
  if (k < 1 || n < k)
    throw InvalidInput("kmeans needs 1 <= k <= n");
  std::mt19937_64 rng(seed);

  // Farthest-point seeding.
  std::vector<Eigen::Index> centers_idx;
  centers_idx.push_back(static_cast<Eigen::Index>(rng() % static_cast<std::uint64_t>(n)));
  Eigen::VectorXd nearest =
      (data.values.rowwise() - data.values.row(centers_idx[0])).rowwise().squaredNorm();
  while (static_cast<int>(centers_idx.size()) < k) {
    Eigen::Index far = 0;
    nearest.maxCoeff(&far);
    centers_idx.push_back(far);
    const Eigen::VectorXd d =
        (data.values.rowwise() - data.values.row(far)).rowwise().squaredNorm();
    nearest = nearest.cwiseMin(d);
  }
  Eigen::MatrixXd centers(k, data.p());
  for (int g = 0; g < k; ++g)
    centers.row(g) = data.values.row(centers_idx[static_cast<std::size_t>(g)]);

  std::vector<int> assign(static_cast<std::size_t>(n), 1);
  for (int it = 0; it < lloyd_iters; ++it) {
    for (Eigen::Index i = 0; i < n; ++i) {
      Eigen::Index best = 0;
      (centers.rowwise() - data.values.row(i)).rowwise().squaredNorm().minCoeff(&best);
      assign[static_cast<std::size_t>(i)] = static_cast<int>(best) + 1;
    }
    Eigen::MatrixXd sums = Eigen::MatrixXd::Zero(k, data.p());
    Eigen::VectorXd counts = Eigen::VectorXd::Zero(k);
    for (Eigen::Index i = 0; i < n; ++i) {
      sums.row(assign[static_cast<std::size_t>(i)] - 1) += data.values.row(i);
      counts[assign[static_cast<std::size_t>(i)] - 1] += 1.0;
    }
    for (int g = 0; g < k; ++g) {
      if (counts[g] > 0.0) {
        centers.row(g) = sums.row(g) / counts[g];
      } else {
        // Reseat an empty cluster at the point farthest from its center.
        Eigen::Index far = 0;
        Eigen::VectorXd d(n);
        for (Eigen::Index i = 0; i < n; ++i)
          d[i] = (data.values.row(i) - centers.row(assign[static_cast<std::size_t>(i)] - 1))
                     .squaredNorm();
        d.maxCoeff(&far);
        centers.row(g) = data.values.row(far);
      }
    }
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    Eigen::Index best = 0;
    (centers.rowwise() - data.values.row(i)).rowwise().squaredNorm().minCoeff(&best);
    assign[static_cast<std::size_t>(i)] = static_cast<int>(best) + 1;
  }
  return Partition{std::move(assign), k};
}

}  // namespace mixavg
