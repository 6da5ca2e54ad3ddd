#include "simgen.hpp"

#include <cmath>
#include <numbers>

#include "errors.hpp"

namespace mixavg {

double PortableRng::uniform() {
  return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
}

double PortableRng::normal() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  double u1 = uniform();
  while (u1 <= 0.0)
    u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(theta);
  have_spare_ = true;
  return r * std::cos(theta);
}

namespace {

Eigen::MatrixXd cov_cholesky(const Eigen::MatrixXd& cov) {
  Eigen::LLT<Eigen::MatrixXd> llt(cov);
  if (llt.info() != Eigen::Success)
    throw InvalidInput("cluster covariance is not positive definite");
  return llt.matrixL();
}

double triangle_area(const TriangleSpec& t) {
  const Eigen::Vector2d u = t.vertices[1] - t.vertices[0];
  const Eigen::Vector2d v = t.vertices[2] - t.vertices[0];
  return 0.5 * std::abs(u.x() * v.y() - u.y() * v.x());
}

}  // namespace

bool point_in_triangle(const Eigen::Vector2d& x, const TriangleSpec& tri) {
  const Eigen::Vector2d v0 = tri.vertices[1] - tri.vertices[0];
  const Eigen::Vector2d v1 = tri.vertices[2] - tri.vertices[0];
  const Eigen::Vector2d w = x - tri.vertices[0];
  const double det = v0.x() * v1.y() - v0.y() * v1.x();
  const double a = (w.x() * v1.y() - w.y() * v1.x()) / det;
  const double b = (v0.x() * w.y() - v0.y() * w.x()) / det;
  return a >= 0.0 && b >= 0.0 && a + b <= 1.0;
}

Eigen::Vector2d sample_triangle(const TriangleSpec& tri, PortableRng& rng,
                                std::int64_t* n_draws) {
  if (triangle_area(tri) <= 0.0)
    throw InvalidInput("degenerate triangle");
  double xmin = tri.vertices[0].x(), xmax = xmin;
  double ymin = tri.vertices[0].y(), ymax = ymin;
  for (const auto& v : tri.vertices) {
    xmin = std::min(xmin, v.x());
    xmax = std::max(xmax, v.x());
    ymin = std::min(ymin, v.y());
    ymax = std::max(ymax, v.y());
  }
  for (;;) {
    if (n_draws)
      ++*n_draws;
    const Eigen::Vector2d x(xmin + (xmax - xmin) * rng.uniform(),
                            ymin + (ymax - ymin) * rng.uniform());
    if (point_in_triangle(x, tri))
      return x;
  }
}

Dataset gen_gaussian_clusters(const std::vector<GaussianClusterSpec>& spec,
                              std::uint64_t seed) {
  if (spec.empty())
    throw InvalidInput("no clusters requested");
  Eigen::Index total = 0;
  const Eigen::Index p = spec.front().mean.size();
  for (const auto& c : spec) {
    if (c.size < 1)
      throw InvalidInput("cluster size must be positive");
    if (c.mean.size() != p || c.cov.rows() != p || c.cov.cols() != p)
      throw InvalidInput("inconsistent cluster dimensions");
    total += c.size;
  }

  PortableRng rng(seed);
  Dataset d;
  d.values.resize(total, p);
  d.labels.emplace();
  d.labels->reserve(static_cast<std::size_t>(total));
  for (Eigen::Index j = 0; j < p; ++j)
    d.feature_names.push_back("x" + std::to_string(j + 1));

  Eigen::Index row = 0;
  for (std::size_t c = 0; c < spec.size(); ++c) {
    const Eigen::MatrixXd L = cov_cholesky(spec[c].cov);
    for (int i = 0; i < spec[c].size; ++i, ++row) {
      Eigen::VectorXd u(p);
      for (Eigen::Index j = 0; j < p; ++j)
        u[j] = rng.normal();
      d.values.row(row) = (spec[c].mean + L * u).transpose();
      d.labels->push_back(std::to_string(c + 1));
    }
  }
  return d;
}

Scenario3Spec default_scenario3_spec() {
  Scenario3Spec s;
  // Two axis-aligned right triangles flanking two round Gaussian blobs.
  s.triangles[0].size = 100;
  s.triangles[0].vertices = {Eigen::Vector2d(-7.0, -3.0), Eigen::Vector2d(-3.0, -3.0),
                             Eigen::Vector2d(-7.0, 3.0)};
  s.triangles[1].size = 100;
  s.triangles[1].vertices = {Eigen::Vector2d(7.0, -3.0), Eigen::Vector2d(3.0, -3.0),
                             Eigen::Vector2d(7.0, 3.0)};
  s.gaussians[0].size = 150;
  s.gaussians[0].mean = Eigen::Vector2d(0.0, 2.5);
  s.gaussians[0].cov = 0.35 * Eigen::Matrix2d::Identity();
  s.gaussians[1].size = 150;
  s.gaussians[1].mean = Eigen::Vector2d(0.0, -2.5);
  s.gaussians[1].cov = 0.35 * Eigen::Matrix2d::Identity();
  return s;
}

Dataset gen_scenario3(const Scenario3Spec& spec, std::uint64_t seed) {
  PortableRng rng(seed);
  const Eigen::Index total = spec.triangles[0].size + spec.triangles[1].size +
                             spec.gaussians[0].size + spec.gaussians[1].size;
  Dataset d;
  d.values.resize(total, 2);
  d.feature_names = {"x1", "x2"};
  d.labels.emplace();
  d.labels->reserve(static_cast<std::size_t>(total));

  Eigen::Index row = 0;
  int label = 1;
  for (const auto& tri : spec.triangles) {
    if (tri.size < 1)
      throw InvalidInput("triangle sample size must be positive");
    for (int i = 0; i < tri.size; ++i, ++row) {
      d.values.row(row) = sample_triangle(tri, rng).transpose();
      d.labels->push_back(std::to_string(label));
    }
    ++label;
  }
  for (const auto& gauss : spec.gaussians) {
    if (gauss.size < 1)
      throw InvalidInput("gaussian sample size must be positive");
    const Eigen::MatrixXd L = cov_cholesky(gauss.cov);
    for (int i = 0; i < gauss.size; ++i, ++row) {
      Eigen::Vector2d u(rng.normal(), rng.normal());
      d.values.row(row) = (gauss.mean + L * u).transpose();
      d.labels->push_back(std::to_string(label));
    }
    ++label;
  }
  return d;
}

Dataset gen_scenario3(std::uint64_t seed) {
  return gen_scenario3(default_scenario3_spec(), seed);
}

}  // namespace mixavg
