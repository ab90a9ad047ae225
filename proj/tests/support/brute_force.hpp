#pragma once

// Exhaustive oracles over all labeled graphs on K <= 7 vertices. Used only by
// tests; deliberately shares no code with the library.

#include <cstdint>
#include <map>
#include <numeric>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace brute {

inline std::vector<std::pair<int, int>> pairs_of(int K) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < K; ++i)
    for (int j = i + 1; j < K; ++j) e.emplace_back(i, j);
  return e;
}

// component sizes of the graph whose edge set is the bitmask `mask`
inline std::vector<int> component_sizes(int K, std::uint32_t mask,
                                        const std::vector<std::pair<int, int>>& edges) {
  std::vector<int> label(K);
  std::iota(label.begin(), label.end(), 0);
  // relabel until stable; fine for K <= 7
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t b = 0; b < edges.size(); ++b) {
      if (!(mask >> b & 1u)) continue;
      auto [i, j] = edges[b];
      const int m = std::min(label[i], label[j]);
      if (label[i] != m || label[j] != m) {
        label[i] = label[j] = m;
        changed = true;
      }
    }
  }
  std::map<int, int> size;
  for (int v = 0; v < K; ++v) ++size[label[v]];
  std::vector<int> out;
  for (auto [l, s] : size) out.push_back(s);
  return out;
}

// counts[m] = number of connected labeled graphs on K vertices with m edges
inline std::vector<std::uint64_t> connected_counts(int K) {
  const auto edges = pairs_of(K);
  std::vector<std::uint64_t> counts(edges.size() + 1, 0);
  for (std::uint32_t mask = 0; mask < (1u << edges.size()); ++mask) {
    if (component_sizes(K, mask, edges).size() == 1) ++counts[__builtin_popcount(mask)];
  }
  return counts;
}

// P(G(K, p) connected) summed graph by graph
inline mpq_class connected_probability(int K, const mpq_class& p) {
  const auto edges = pairs_of(K);
  const auto counts = connected_counts(K);
  mpq_class total = 0;
  const mpq_class q = 1 - p;
  for (std::size_t m = 0; m < counts.size(); ++m) {
    mpq_class term = counts[m];
    for (std::size_t i = 0; i < m; ++i) term *= p;
    for (std::size_t i = m; i < edges.size(); ++i) term *= q;
    total += term;
  }
  return total;
}

// law of the sorted component-size multiset, by enumeration
inline std::map<std::vector<int>, mpq_class> cluster_law(int n, const mpq_class& p) {
  const auto edges = pairs_of(n);
  std::vector<mpq_class> pw(edges.size() + 1), qw(edges.size() + 1);
  pw[0] = qw[0] = 1;
  for (std::size_t i = 1; i <= edges.size(); ++i) {
    pw[i] = pw[i - 1] * p;
    qw[i] = qw[i - 1] * (1 - p);
  }
  std::map<std::vector<int>, mpq_class> law;
  for (std::uint32_t mask = 0; mask < (1u << edges.size()); ++mask) {
    auto sizes = component_sizes(n, mask, edges);
    std::sort(sizes.begin(), sizes.end());
    const int m = __builtin_popcount(mask);
    law[sizes] += pw[m] * qw[edges.size() - m];
  }
  return law;
}

}  // namespace brute
