#include <doctest.h>

#include <random>

#include "mixavg/ari.hpp"
#include "mixavg/errors.hpp"

using namespace mixavg;

namespace {

Partition make_partition(std::vector<int> a) {
  Partition p;
  p.k = *std::max_element(a.begin(), a.end());
  p.assignments = std::move(a);
  return p;
}

// Independent pair-counting evaluation of the adjusted Rand index,
// straight from its definition over all pairs of observations.
double ari_by_pairs(const Partition& p1, const Partition& p2) {
  const std::size_t n = p1.size();
  double n11 = 0, n10 = 0, n01 = 0, n00 = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const bool same1 = p1.assignments[i] == p1.assignments[j];
      const bool same2 = p2.assignments[i] == p2.assignments[j];
      (same1 ? (same2 ? n11 : n10) : (same2 ? n01 : n00)) += 1.0;
    }
  const double total = n11 + n10 + n01 + n00;
  const double expected = (n11 + n10) * (n11 + n01) / total;
  const double maximum = 0.5 * ((n11 + n10) + (n11 + n01));
  if (maximum == expected)
    return n10 + n01 == 0 ? 1.0 : 0.0;
  return (n11 - expected) / (maximum - expected);
}

Partition random_partition(std::size_t n, int k, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> pick(1, k);
  Partition p;
  p.assignments.resize(n);
  p.k = 0;
  for (auto& a : p.assignments) {
    a = pick(rng);
    p.k = std::max(p.k, a);
  }
  return p;
}

}  // namespace

TEST_CASE("contingency table") {
  const Partition a = make_partition({1, 1, 2, 2, 3});
  const Partition b = make_partition({1, 2, 2, 2, 1});
  const ContingencyTable t = contingency(a, b);
  REQUIRE(t.counts.size() == 3);
  REQUIRE(t.counts[0].size() == 2);
  CHECK(t.counts[0][0] == 1);
  CHECK(t.counts[0][1] == 1);
  CHECK(t.counts[1][0] == 0);
  CHECK(t.counts[1][1] == 2);
  CHECK(t.counts[2][0] == 1);
  CHECK(t.counts[2][1] == 0);
  CHECK(t.row_sums == std::vector<std::int64_t>{2, 2, 1});
  CHECK(t.col_sums == std::vector<std::int64_t>{2, 3});
  CHECK(t.total == 5);

  const Partition shorter = make_partition({1, 2});
  CHECK_THROWS_AS(contingency(a, shorter), InvalidInput);
}

TEST_CASE("known index values") {
  const Partition a = make_partition({1, 1, 2, 2});

  CHECK(adjusted_rand_index(a, a) == 1.0);
  CHECK(rand_index(a, a) == 1.0);

  // Crossed partition: the classic minimal example with ARI exactly -1/2.
  const Partition crossed = make_partition({1, 2, 1, 2});
  CHECK(adjusted_rand_index(a, crossed) == doctest::Approx(-0.5).epsilon(1e-12));
  CHECK(rand_index(a, crossed) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));

  // One pair moved: Rand counts pairs directly.
  const Partition moved = make_partition({1, 1, 1, 2});
  CHECK(rand_index(a, moved) == doctest::Approx(3.0 / 6.0).epsilon(1e-12));
}

TEST_CASE("degenerate denominators") {
  const Partition ones = make_partition({1, 1, 1});
  const Partition singletons = make_partition({1, 2, 3});
  CHECK(adjusted_rand_index(ones, ones) == 1.0);
  CHECK(adjusted_rand_index(singletons, singletons) == 1.0);
  CHECK(adjusted_rand_index(ones, singletons) == 0.0);
  CHECK(adjusted_rand_index(singletons, ones) == 0.0);
}

TEST_CASE("agrees with direct pair counting on random partitions") {
  std::mt19937_64 rng(42);
  std::uniform_int_distribution<int> pick_k(1, 6);
  std::uniform_int_distribution<std::size_t> pick_n(2, 60);
  for (int trial = 0; trial < 500; ++trial) {
    const Partition a = random_partition(pick_n(rng), pick_k(rng), rng);
    const Partition b = random_partition(a.size(), pick_k(rng), rng);
    CHECK(adjusted_rand_index(a, b) == doctest::Approx(ari_by_pairs(a, b)).epsilon(1e-12));
  }
}

TEST_CASE("symmetry and label-permutation invariance") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const Partition a = random_partition(40, 4, rng);
    const Partition b = random_partition(40, 3, rng);
    CHECK(adjusted_rand_index(a, b) == adjusted_rand_index(b, a));

    Partition relabeled = a;
    const std::vector<int> perm = {3, 1, 4, 2};
    for (auto& v : relabeled.assignments)
      v = perm[static_cast<std::size_t>(v - 1)];
    relabeled.k = 4;
    CHECK(adjusted_rand_index(relabeled, b) ==
          doctest::Approx(adjusted_rand_index(a, b)).epsilon(1e-14));
    CHECK(adjusted_rand_index(relabeled, a) == 1.0);
  }
}

TEST_CASE("near zero on average for independent partitions") {
  std::mt19937_64 rng(123);
  double sum = 0.0;
  const int trials = 2000;
  for (int trial = 0; trial < trials; ++trial) {
    const Partition a = random_partition(100, 3, rng);
    const Partition b = random_partition(100, 4, rng);
    sum += adjusted_rand_index(a, b);
  }
  CHECK(std::abs(sum / trials) < 0.05);
}
