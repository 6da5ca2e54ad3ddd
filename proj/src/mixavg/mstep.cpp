#include <cmath>
#include <vector>

#include "errors.hpp"
#include "gpcm.hpp"

namespace mixavg {

namespace {

constexpr int kInnerMaxIter = 200;    // VEI/VEV volume-shape alternation
constexpr double kInnerTol = 1e-10;   // relative objective change

double geo_mean(const Eigen::VectorXd& v) {
  // (prod v)^(1/p) through logs; zero or negative entries poison the fit.
  if ((v.array() <= 0.0).any())
    throw DegenerateFit("non-positive eigenvalue in covariance estimate");
  return std::exp(v.array().log().mean());
}

// Descending eigen-decomposition of a symmetric matrix.
void eig_desc(const Eigen::MatrixXd& m, Eigen::VectorXd& evals, Eigen::MatrixXd& evecs) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
  if (es.info() != Eigen::Success)
    throw DegenerateFit("eigendecomposition failed");
  evals = es.eigenvalues().reverse();
  evecs = es.eigenvectors().rowwise().reverse();
}

struct Scatter {
  Eigen::VectorXd ng;                  // component masses
  std::vector<Eigen::MatrixXd> W;      // weighted scatter per component
  Eigen::MatrixXd Wsum;
  double n = 0;
  int G = 0, p = 0;
};

// Fills sigma and decomposition for one structure given the scatters.
void fit_structure(MixtureParams& params, const Scatter& s) {
  const int G = s.G, p = s.p;
  auto& d = params.decomp;
  const auto set_all_sigma_from_shared = [&](double lambda, const Eigen::VectorXd& shape,
                                             const Eigen::MatrixXd& orient) {
    d.lambda = {lambda};
    d.shape = {shape};
    d.orientation = {orient};
    const Eigen::MatrixXd sig =
        lambda * orient * shape.asDiagonal() * orient.transpose();
    for (int g = 0; g < G; ++g)
      params.sigma[static_cast<std::size_t>(g)] = 0.5 * (sig + sig.transpose());
  };
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(p);
  const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(p, p);

  switch (params.structure) {
    case CovStructure::EII: {
      set_all_sigma_from_shared(s.Wsum.trace() / (s.n * p), ones, eye);
      break;
    }
    case CovStructure::VII: {
      d.shape = {ones};
      d.orientation = {eye};
      d.lambda.resize(static_cast<std::size_t>(G));
      for (int g = 0; g < G; ++g) {
        const double lam = s.W[static_cast<std::size_t>(g)].trace() / (s.ng[g] * p);
        d.lambda[static_cast<std::size_t>(g)] = lam;
        params.sigma[static_cast<std::size_t>(g)] = lam * eye;
      }
      break;
    }
    case CovStructure::EEI: {
      const Eigen::VectorXd diag = s.Wsum.diagonal() / s.n;
      const double lam = geo_mean(diag);
      set_all_sigma_from_shared(lam, diag / lam, eye);
      break;
    }
    case CovStructure::VEI: {
      // Alternate volumes lambda_g against the shared shape A.
      Eigen::VectorXd A = s.Wsum.diagonal() / s.n;
      A /= geo_mean(A);
      Eigen::VectorXd lam(G);
      double prev_obj = std::numeric_limits<double>::infinity();
      for (int it = 0; it < kInnerMaxIter; ++it) {
        double obj = 0.0;
        for (int g = 0; g < G; ++g) {
          const Eigen::VectorXd wd = s.W[static_cast<std::size_t>(g)].diagonal();
          lam[g] = (wd.array() / A.array()).sum() / (s.ng[g] * p);
          if (!(lam[g] > 0.0))
            throw DegenerateFit("VEI volume collapsed");
          obj += (wd.array() / A.array()).sum() / lam[g] + s.ng[g] * p * std::log(lam[g]);
        }
        Eigen::VectorXd B = Eigen::VectorXd::Zero(p);
        for (int g = 0; g < G; ++g)
          B += s.W[static_cast<std::size_t>(g)].diagonal() / lam[g];
        A = B / geo_mean(B);
        if (std::abs(prev_obj - obj) <= kInnerTol * std::abs(obj))
          break;
        prev_obj = obj;
      }
      d.lambda.assign(lam.data(), lam.data() + G);
      d.shape = {A};
      d.orientation = {eye};
      for (int g = 0; g < G; ++g)
        params.sigma[static_cast<std::size_t>(g)] =
            (lam[g] * A.array()).matrix().asDiagonal();
      break;
    }
    case CovStructure::EVI: {
      d.orientation = {eye};
      d.shape.resize(static_cast<std::size_t>(G));
      double lam = 0.0;
      std::vector<double> cg(static_cast<std::size_t>(G));
      for (int g = 0; g < G; ++g) {
        const Eigen::VectorXd diag = s.W[static_cast<std::size_t>(g)].diagonal();
        cg[static_cast<std::size_t>(g)] = geo_mean(diag);
        d.shape[static_cast<std::size_t>(g)] = diag / cg[static_cast<std::size_t>(g)];
        lam += cg[static_cast<std::size_t>(g)];
      }
      lam /= s.n;
      d.lambda = {lam};
      for (int g = 0; g < G; ++g)
        params.sigma[static_cast<std::size_t>(g)] =
            (lam * d.shape[static_cast<std::size_t>(g)].array()).matrix().asDiagonal();
      break;
    }
    case CovStructure::VVI: {
      d.orientation = {eye};
      d.shape.resize(static_cast<std::size_t>(G));
      d.lambda.resize(static_cast<std::size_t>(G));
      for (int g = 0; g < G; ++g) {
        const Eigen::VectorXd diag = s.W[static_cast<std::size_t>(g)].diagonal() / s.ng[g];
        const double lam = geo_mean(diag);
        d.lambda[static_cast<std::size_t>(g)] = lam;
        d.shape[static_cast<std::size_t>(g)] = diag / lam;
        params.sigma[static_cast<std::size_t>(g)] = diag.asDiagonal();
      }
      break;
    }
    case CovStructure::EEE: {
      const Eigen::MatrixXd sig = s.Wsum / s.n;
      Eigen::VectorXd evals;
      Eigen::MatrixXd evecs;
      eig_desc(sig, evals, evecs);
      const double lam = geo_mean(evals);
      set_all_sigma_from_shared(lam, evals / lam, evecs);
      break;
    }
    case CovStructure::EEV: {
      d.orientation.resize(static_cast<std::size_t>(G));
      Eigen::VectorXd S = Eigen::VectorXd::Zero(p);
      std::vector<Eigen::VectorXd> omega(static_cast<std::size_t>(G));
      for (int g = 0; g < G; ++g) {
        Eigen::VectorXd evals;
        Eigen::MatrixXd evecs;
        eig_desc(s.W[static_cast<std::size_t>(g)], evals, evecs);
        omega[static_cast<std::size_t>(g)] = evals;
        d.orientation[static_cast<std::size_t>(g)] = evecs;
        S += evals;
      }
      const double c = geo_mean(S);
      const double lam = c / s.n;
      d.lambda = {lam};
      d.shape = {S / c};
      for (int g = 0; g < G; ++g) {
        const auto& Dg = d.orientation[static_cast<std::size_t>(g)];
        const Eigen::MatrixXd sig =
            lam * Dg * d.shape[0].asDiagonal() * Dg.transpose();
        params.sigma[static_cast<std::size_t>(g)] = 0.5 * (sig + sig.transpose());
      }
      break;
    }
    case CovStructure::VEV: {
      d.orientation.resize(static_cast<std::size_t>(G));
      std::vector<Eigen::VectorXd> omega(static_cast<std::size_t>(G));
      Eigen::VectorXd S = Eigen::VectorXd::Zero(p);
      for (int g = 0; g < G; ++g) {
        Eigen::VectorXd evals;
        Eigen::MatrixXd evecs;
        eig_desc(s.W[static_cast<std::size_t>(g)], evals, evecs);
        omega[static_cast<std::size_t>(g)] = evals;
        d.orientation[static_cast<std::size_t>(g)] = evecs;
        S += evals;
      }
      Eigen::VectorXd A = S / geo_mean(S);
      Eigen::VectorXd lam(G);
      double prev_obj = std::numeric_limits<double>::infinity();
      for (int it = 0; it < kInnerMaxIter; ++it) {
        double obj = 0.0;
        for (int g = 0; g < G; ++g) {
          const auto& om = omega[static_cast<std::size_t>(g)];
          lam[g] = (om.array() / A.array()).sum() / (s.ng[g] * p);
          if (!(lam[g] > 0.0))
            throw DegenerateFit("VEV volume collapsed");
          obj += (om.array() / A.array()).sum() / lam[g] + s.ng[g] * p * std::log(lam[g]);
        }
        Eigen::VectorXd B = Eigen::VectorXd::Zero(p);
        for (int g = 0; g < G; ++g)
          B += omega[static_cast<std::size_t>(g)] / lam[g];
        A = B / geo_mean(B);
        if (std::abs(prev_obj - obj) <= kInnerTol * std::abs(obj))
          break;
        prev_obj = obj;
      }
      d.lambda.assign(lam.data(), lam.data() + G);
      d.shape = {A};
      for (int g = 0; g < G; ++g) {
        const auto& Dg = d.orientation[static_cast<std::size_t>(g)];
        const Eigen::MatrixXd sig = lam[g] * Dg * A.asDiagonal() * Dg.transpose();
        params.sigma[static_cast<std::size_t>(g)] = 0.5 * (sig + sig.transpose());
      }
      break;
    }
    case CovStructure::VVV: {
      d.lambda.resize(static_cast<std::size_t>(G));
      d.shape.resize(static_cast<std::size_t>(G));
      d.orientation.resize(static_cast<std::size_t>(G));
      for (int g = 0; g < G; ++g) {
        const Eigen::MatrixXd sig = s.W[static_cast<std::size_t>(g)] / s.ng[g];
        Eigen::VectorXd evals;
        Eigen::MatrixXd evecs;
        eig_desc(sig, evals, evecs);
        const double lam = geo_mean(evals);
        d.lambda[static_cast<std::size_t>(g)] = lam;
        d.shape[static_cast<std::size_t>(g)] = evals / lam;
        d.orientation[static_cast<std::size_t>(g)] = evecs;
        params.sigma[static_cast<std::size_t>(g)] = 0.5 * (sig + sig.transpose());
      }
      break;
    }
    default:
      throw InvalidInput("structure " + structure_name(params.structure) +
                         " has no closed-form M-step and cannot be fitted");
  }
}

// Smallest covariance eigenvalue tolerated, relative to the average
// per-dimension variance of the data. Components collapsing onto a few
// (near-)duplicate points drive the likelihood to a spurious spike; they
// are numerically singular and treated as degenerate fits.
constexpr double kSingularRelTol = 1e-8;

bool all_spd(const MixtureParams& params, double eig_floor) {
  for (const auto& sig : params.sigma) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sig, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success || es.eigenvalues().minCoeff() <= eig_floor)
      return false;
  }
  return true;
}

}  // namespace

MixtureParams m_step(const SoftAssignment& z, const Dataset& data, CovStructure structure) {
  if (!is_fittable(structure))
    throw InvalidInput("structure " + structure_name(structure) +
                       " is recognized but not fittable");
  const Eigen::Index n = data.n();
  if (z.z.rows() != n)
    throw InvalidInput("soft assignment row count does not match data");
  const int G = static_cast<int>(z.z.cols());
  const int p = static_cast<int>(data.p());

  Scatter s;
  s.G = G;
  s.p = p;
  s.n = static_cast<double>(n);
  s.ng = z.z.colwise().sum();
  const double eps_mass = 1e-8 * s.n;
  for (int g = 0; g < G; ++g)
    if (s.ng[g] < eps_mass)
      throw DegenerateFit("component " + std::to_string(g + 1) + " mass " +
                          std::to_string(s.ng[g]) + " below threshold");

  MixtureParams params;
  params.structure = structure;
  params.G = G;
  params.p = p;
  params.pi = s.ng / s.n;
  params.mu.resize(static_cast<std::size_t>(G));
  params.sigma.assign(static_cast<std::size_t>(G), Eigen::MatrixXd(p, p));
  s.W.assign(static_cast<std::size_t>(G), Eigen::MatrixXd(p, p));
  s.Wsum = Eigen::MatrixXd::Zero(p, p);
  for (int g = 0; g < G; ++g) {
    params.mu[static_cast<std::size_t>(g)] =
        (data.values.transpose() * z.z.col(g)) / s.ng[g];
    const Eigen::MatrixXd centered =
        data.values.rowwise() - params.mu[static_cast<std::size_t>(g)].transpose();
    s.W[static_cast<std::size_t>(g)] =
        centered.transpose() * z.z.col(g).asDiagonal() * centered;
    s.Wsum += s.W[static_cast<std::size_t>(g)];
  }

  double data_scale = 0.0;
  for (int j = 0; j < p; ++j) {
    const double mean = data.values.col(j).mean();
    data_scale += (data.values.col(j).array() - mean).square().sum() / s.n;
  }
  data_scale /= p;
  const double eig_floor = kSingularRelTol * data_scale;

  try {
    fit_structure(params, s);
    if (all_spd(params, eig_floor))
      return params;
  } catch (const DegenerateFit&) {
    // fall through to the single ridge retry
  }

  // One ridge pass on the scatters, then the fit either stands or fails.
  for (int g = 0; g < G; ++g) {
    auto& W = s.W[static_cast<std::size_t>(g)];
    W.diagonal().array() += 1e-8 * (W.trace() / p) + 1e-12 * s.ng[g];
  }
  s.Wsum = Eigen::MatrixXd::Zero(p, p);
  for (int g = 0; g < G; ++g)
    s.Wsum += s.W[static_cast<std::size_t>(g)];
  fit_structure(params, s);
  if (!all_spd(params, eig_floor))
    throw DegenerateFit("covariance estimate singular after regularization");
  return params;
}

}  // namespace mixavg
