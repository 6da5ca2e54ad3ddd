#include "ari.hpp"

#include <algorithm>

#include "errors.hpp"

namespace mixavg {

namespace {

std::int64_t choose2(std::int64_t x) { return x * (x - 1) / 2; }

struct PairCounts {
  std::int64_t index = 0;  // sum over cells of C(n_ij, 2)
  std::int64_t a = 0;      // sum over rows of C(a_i, 2)
  std::int64_t b = 0;      // sum over cols of C(b_j, 2)
  std::int64_t total_pairs = 0;
};

PairCounts pair_counts(const ContingencyTable& t) {
  PairCounts c;
  for (const auto& row : t.counts)
    for (std::int64_t n_ij : row)
      c.index += choose2(n_ij);
  for (std::int64_t a_i : t.row_sums)
    c.a += choose2(a_i);
  for (std::int64_t b_j : t.col_sums)
    c.b += choose2(b_j);
  c.total_pairs = choose2(t.total);
  return c;
}

// Partitions are equivalent when the table is a (partial) permutation:
// every nonzero cell alone in its row and column.
bool equivalent_partitions(const ContingencyTable& t) {
  for (std::size_t i = 0; i < t.counts.size(); ++i)
    for (std::size_t j = 0; j < t.counts[i].size(); ++j)
      if (t.counts[i][j] != 0 && (t.counts[i][j] != t.row_sums[i] ||
                                  t.counts[i][j] != t.col_sums[j]))
        return false;
  return true;
}

}  // namespace

ContingencyTable contingency(const Partition& p1, const Partition& p2) {
  if (p1.size() != p2.size())
    throw InvalidInput("partitions have different lengths");
  ContingencyTable t;
  t.counts.assign(static_cast<std::size_t>(p1.k),
                  std::vector<std::int64_t>(static_cast<std::size_t>(p2.k), 0));
  t.row_sums.assign(static_cast<std::size_t>(p1.k), 0);
  t.col_sums.assign(static_cast<std::size_t>(p2.k), 0);
  for (std::size_t i = 0; i < p1.size(); ++i) {
    const std::size_t r = static_cast<std::size_t>(p1.assignments[i] - 1);
    const std::size_t c = static_cast<std::size_t>(p2.assignments[i] - 1);
    ++t.counts[r][c];
    ++t.row_sums[r];
    ++t.col_sums[c];
    ++t.total;
  }
  return t;
}

double rand_index(const Partition& p1, const Partition& p2) {
  if (p1.size() < 2)
    throw InvalidInput("rand index needs at least 2 observations");
  const PairCounts c = pair_counts(contingency(p1, p2));
  const std::int64_t agreements = c.total_pairs + 2 * c.index - c.a - c.b;
  return static_cast<double>(agreements) / static_cast<double>(c.total_pairs);
}

double adjusted_rand_index(const ContingencyTable& t) {
  if (t.total < 2)
    throw InvalidInput("adjusted rand index needs at least 2 observations");
  const PairCounts c = pair_counts(t);
  // Exact integers throughout; the products need 128 bits for large n.
  using i128 = __int128;
  // Both sides scaled by 2*C(n,2) so (a+b)/2 stays integral.
  const i128 num = 2 * (i128(c.total_pairs) * c.index - i128(c.a) * c.b);
  const i128 den = i128(c.total_pairs) * (c.a + c.b) - 2 * i128(c.a) * c.b;
  if (den == 0)
    return equivalent_partitions(t) ? 1.0 : 0.0;
  return static_cast<double>(num) / static_cast<double>(den);
}

double adjusted_rand_index(const Partition& p1, const Partition& p2) {
  return adjusted_rand_index(contingency(p1, p2));
}

}  // namespace mixavg
