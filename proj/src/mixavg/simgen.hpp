#pragma once

#include <Eigen/Dense>
#include <array>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "dataset.hpp"

namespace mixavg {

struct GaussianClusterSpec {
  int size = 0;
  Eigen::VectorXd mean;
  Eigen::MatrixXd cov;
};

struct TriangleSpec {
  int size = 0;
  std::array<Eigen::Vector2d, 3> vertices;
};

// Portable seeded draws: the mt19937_64 output sequence is specified by
// the standard, and uniforms/normals are derived by hand (53-bit scaling,
// Box-Muller) so streams match across platforms.
class PortableRng {
public:
  explicit PortableRng(std::uint64_t seed) : eng_(seed) {}
  double uniform();  // [0, 1)
  double normal();   // standard normal

private:
  std::mt19937_64 eng_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

Dataset gen_gaussian_clusters(const std::vector<GaussianClusterSpec>& spec, std::uint64_t seed);

// Samples a point uniformly in the triangle by rejection from its
// bounding box; returns the number of proposals consumed via n_draws.
Eigen::Vector2d sample_triangle(const TriangleSpec& tri, PortableRng& rng,
                                std::int64_t* n_draws = nullptr);

bool point_in_triangle(const Eigen::Vector2d& x, const TriangleSpec& tri);

struct Scenario3Spec {
  std::array<TriangleSpec, 2> triangles;
  std::array<GaussianClusterSpec, 2> gaussians;
};

// Two uniform triangles (100 points each) flanking two Gaussian blobs
// (150 points each); the default geometry is fixed and recorded by the
// caller in the metadata sidecar.
Scenario3Spec default_scenario3_spec();

Dataset gen_scenario3(std::uint64_t seed);
Dataset gen_scenario3(const Scenario3Spec& spec, std::uint64_t seed);

}  // namespace mixavg
