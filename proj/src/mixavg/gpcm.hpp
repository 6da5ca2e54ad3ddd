#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "covstructure.hpp"
#include "dataset.hpp"

namespace mixavg {

// Per-structure factorization Sigma_g = lambda_g D_g A_g D_g'.
// Shared factors are stored once (size 1 vectors); |A| = 1 throughout.
struct CovDecomposition {
  std::vector<double> lambda;                // 1 or G volumes
  std::vector<Eigen::VectorXd> shape;        // 1 or G unit-determinant diagonals
  std::vector<Eigen::MatrixXd> orientation;  // 1 or G orthogonal matrices
};

struct MixtureParams {
  CovStructure structure = CovStructure::VVV;
  int G = 0;
  int p = 0;
  Eigen::VectorXd pi;                  // G, positive, sums to 1
  std::vector<Eigen::VectorXd> mu;     // G vectors of length p
  std::vector<Eigen::MatrixXd> sigma;  // G SPD matrices p x p
  CovDecomposition decomp;
};

// n x G membership probabilities, rows on the simplex.
struct SoftAssignment {
  Eigen::MatrixXd z;
};

struct FitResult {
  MixtureParams params;
  double loglik = 0.0;
  long rho = 0;
  double bic = 0.0;
  int n_iter = 0;
  bool converged = false;
  std::uint64_t seed = 0;
};

// Gaussian density phi(x | mu, sigma); throws DegenerateFit if sigma is not SPD.
double log_component_density(const Eigen::VectorXd& x, const Eigen::VectorXd& mu,
                             const Eigen::MatrixXd& sigma);
double component_density(const Eigen::VectorXd& x, const Eigen::VectorXd& mu,
                         const Eigen::MatrixXd& sigma);

// Posterior memberships via log-sum-exp; also reports the observed log-likelihood.
SoftAssignment e_step(const MixtureParams& params, const Dataset& data,
                      double* loglik_out = nullptr);

// Weighted-likelihood M-step under the structure's covariance constraint.
MixtureParams m_step(const SoftAssignment& z, const Dataset& data, CovStructure structure);

double bic(double loglik, long rho, Eigen::Index n);

struct EmOptions {
  double tol = 1e-8;
  int max_iter = 1000;
};

// One EM run from a k-means style initialization drawn from `seed`.
// Degenerate restarts come back with converged=false, not as exceptions.
FitResult em_fit(const Dataset& data, CovStructure structure, int G,
                 const EmOptions& opts, std::uint64_t seed);

// MAP hardening, ties to the lowest component index.
Partition harden(const SoftAssignment& z);

// Hard k-means partition used to initialize EM: farthest-point seeding
// from the given rng seed, then a fixed number of Lloyd iterations.
Partition kmeans_partition(const Dataset& data, int k, std::uint64_t seed,
                           int lloyd_iters = 10);

SoftAssignment one_hot(const Partition& part, int G);

}  // namespace mixavg
