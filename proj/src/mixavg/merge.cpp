#include "merge.hpp"

#include <cmath>
#include <numeric>

#include "errors.hpp"

namespace mixavg {

namespace {

void check_map(const MergeMap& m) {
  if (m.G < 1 || m.H < 1 || m.H > m.G ||
      m.assignment.size() != static_cast<std::size_t>(m.G))
    throw InvalidInput("malformed merge map");
  std::vector<bool> hit(static_cast<std::size_t>(m.H), false);
  for (int a : m.assignment) {
    if (a < 1 || a > m.H)
      throw InvalidInput("merge target outside 1..H");
    hit[static_cast<std::size_t>(a - 1)] = true;
  }
  for (bool h : hit)
    if (!h)
      throw InvalidInput("merge map is not surjective");
}

// ARI between the reference and a merged candidate, computed by summing
// rows of the precomputed candidate-vs-reference contingency table.
double merged_ari(const ContingencyTable& base, const std::vector<int>& assignment, int H) {
  ContingencyTable t;
  const std::size_t cols = base.col_sums.size();
  t.counts.assign(static_cast<std::size_t>(H), std::vector<std::int64_t>(cols, 0));
  t.row_sums.assign(static_cast<std::size_t>(H), 0);
  t.col_sums = base.col_sums;
  t.total = base.total;
  for (std::size_t g = 0; g < assignment.size(); ++g) {
    const std::size_t j = static_cast<std::size_t>(assignment[g] - 1);
    for (std::size_t c = 0; c < cols; ++c)
      t.counts[j][c] += base.counts[g][c];
    t.row_sums[j] += base.row_sums[g];
  }
  return adjusted_rand_index(t);
}

}  // namespace

MergedModel make_merged(const MixtureParams& source, const MergeMap& m) {
  check_map(m);
  if (m.G != source.G)
    throw InvalidInput("merge map size does not match mixture");
  MergedModel out;
  out.source = source;
  out.groups.assign(static_cast<std::size_t>(m.H), {});
  out.pi_star = Eigen::VectorXd::Zero(m.H);
  for (int g = 0; g < m.G; ++g) {
    const int j = m.assignment[static_cast<std::size_t>(g)];
    out.groups[static_cast<std::size_t>(j - 1)].push_back(g + 1);
    out.pi_star[j - 1] += source.pi[g];
  }
  return out;
}

double merged_density(const MergedModel& m, const Eigen::VectorXd& x) {
  double total = 0.0;
  for (std::size_t j = 0; j < m.groups.size(); ++j)
    for (int g1 : m.groups[j]) {
      const std::size_t g = static_cast<std::size_t>(g1 - 1);
      total += m.source.pi[static_cast<Eigen::Index>(g)] *
               component_density(x, m.source.mu[g], m.source.sigma[g]);
    }
  return total;
}

Partition apply_merge_to_partition(const Partition& p, const MergeMap& m) {
  check_map(m);
  if (p.k != m.G)
    throw InvalidInput("partition has " + std::to_string(p.k) +
                       " clusters, merge map expects " + std::to_string(m.G));
  Partition out;
  out.k = m.H;
  out.assignments.reserve(p.size());
  for (int a : p.assignments)
    out.assignments.push_back(m.assignment[static_cast<std::size_t>(a - 1)]);
  return out;
}

SoftAssignment apply_merge_to_z(const SoftAssignment& z, const MergeMap& m) {
  check_map(m);
  if (z.z.cols() != m.G)
    throw InvalidInput("soft assignment has wrong column count for merge map");
  SoftAssignment out;
  out.z = Eigen::MatrixXd::Zero(z.z.rows(), m.H);
  for (int g = 0; g < m.G; ++g)
    out.z.col(m.assignment[static_cast<std::size_t>(g)] - 1) += z.z.col(g);
  return out;
}

std::uint64_t candidate_count(int G, int H) {
  if (H < 1 || H > G)
    throw InvalidInput("candidate_count needs 1 <= H <= G");
  std::uint64_t comb = 1;
  for (int i = 1; i <= H; ++i)
    comb = comb * static_cast<std::uint64_t>(G - H + i) / static_cast<std::uint64_t>(i);
  std::uint64_t rest = 1;
  for (int i = 0; i < G - H; ++i)
    rest *= static_cast<std::uint64_t>(H);
  return comb * rest;
}

void enumerate_candidates(int G, int H, const std::function<bool(const MergeMap&)>& visit) {
  if (H < 1 || H > G)
    throw InvalidInput("enumerate_candidates needs 1 <= H <= G");
  if (candidate_count(G, H) > 100000000ULL)
    throw InvalidInput("merge search for G=" + std::to_string(G) + ", H=" +
                       std::to_string(H) +
                       " exceeds the candidate budget; narrow the window");

  // Current anchor combination, 0-based ascending component indices.
  std::vector<int> anchors(static_cast<std::size_t>(H));
  std::iota(anchors.begin(), anchors.end(), 0);
  MergeMap m;
  m.G = G;
  m.H = H;
  m.assignment.resize(static_cast<std::size_t>(G));

  for (;;) {
    std::vector<int> rest;
    {
      std::vector<bool> is_anchor(static_cast<std::size_t>(G), false);
      for (std::size_t t = 0; t < anchors.size(); ++t) {
        is_anchor[static_cast<std::size_t>(anchors[t])] = true;
        m.assignment[static_cast<std::size_t>(anchors[t])] = static_cast<int>(t) + 1;
      }
      for (int g = 0; g < G; ++g)
        if (!is_anchor[static_cast<std::size_t>(g)])
          rest.push_back(g);
    }

    // Base-H odometer over the non-anchor components, last digit fastest.
    std::vector<int> digits(rest.size(), 0);
    for (;;) {
      for (std::size_t r = 0; r < rest.size(); ++r)
        m.assignment[static_cast<std::size_t>(rest[r])] = digits[r] + 1;
      if (!visit(m))
        return;
      std::size_t d = rest.size();
      while (d > 0) {
        if (++digits[d - 1] < H)
          break;
        digits[d - 1] = 0;
        --d;
      }
      if (d == 0)
        break;
      if (rest.empty())
        break;
    }

    // Next anchor combination in lexicographic order.
    int i = H - 1;
    while (i >= 0 && anchors[static_cast<std::size_t>(i)] == G - H + i)
      --i;
    if (i < 0)
      return;
    ++anchors[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < H; ++j)
      anchors[static_cast<std::size_t>(j)] = anchors[static_cast<std::size_t>(j - 1)] + 1;
  }
}

MergeSearchResult best_merge(const Partition& candidate, const Partition& reference) {
  if (candidate.size() != reference.size())
    throw InvalidInput("partitions have different lengths");
  if (reference.k > candidate.k)
    throw InvalidInput("reference has more clusters than the candidate");
  const ContingencyTable base = contingency(candidate, reference);
  MergeSearchResult result;
  enumerate_candidates(candidate.k, reference.k, [&](const MergeMap& m) {
    const double ari = merged_ari(base, m.assignment, m.H);
    if (ari > result.ari) {
      result.ari = ari;
      result.map = m;
    }
    return true;
  });
  return result;
}

double brute_force_merge_oracle(const Partition& candidate, const Partition& reference) {
  const int G = candidate.k, H = reference.k;
  if (G > 8)
    throw InvalidInput("merge oracle refuses G > 8");
  if (H > G || candidate.size() != reference.size())
    throw InvalidInput("bad oracle inputs");
  const ContingencyTable base = contingency(candidate, reference);
  double best = -2.0;
  std::vector<int> assign(static_cast<std::size_t>(G), 1);
  for (;;) {
    std::vector<bool> hit(static_cast<std::size_t>(H), false);
    for (int a : assign)
      hit[static_cast<std::size_t>(a - 1)] = true;
    bool surjective = true;
    for (bool h : hit)
      surjective = surjective && h;
    if (surjective)
      best = std::max(best, merged_ari(base, assign, H));
    std::size_t d = assign.size();
    while (d > 0) {
      if (++assign[d - 1] <= H)
        break;
      assign[d - 1] = 1;
      --d;
    }
    if (d == 0)
      break;
  }
  return best;
}

}  // namespace mixavg
