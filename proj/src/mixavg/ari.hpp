#pragma once

#include <cstdint>
#include <vector>

#include "dataset.hpp"

namespace mixavg {

struct ContingencyTable {
  std::vector<std::vector<std::int64_t>> counts;  // r x c
  std::vector<std::int64_t> row_sums;
  std::vector<std::int64_t> col_sums;
  std::int64_t total = 0;
};

ContingencyTable contingency(const Partition& p1, const Partition& p2);

double rand_index(const Partition& p1, const Partition& p2);

// Hubert-Arabie chance-corrected Rand index. When the denominator
// degenerates (both partitions all-singletons or all-one-cluster),
// returns 1 for equal partitions and 0 otherwise.
double adjusted_rand_index(const Partition& p1, const Partition& p2);

double adjusted_rand_index(const ContingencyTable& t);

}  // namespace mixavg
