#pragma once

#include <cstdint>
#include <functional>
#include <mutex>
#include <vector>

#include "erldp/cluster_counts.hpp"
#include "erldp/numeric.hpp"

namespace erldp {

inline constexpr int kDefaultExactCap = 64;
inline constexpr int kDefaultLawCap = 40;
inline constexpr int kDefaultHighPrecisionCap = 2000;

/// Memoized exact probability that G(K, p) is connected, for rational p.
///
///   P(1) = 1,  P(K) = 1 - sum_{j=1}^{K-1} C(K-1, j-1) P(j) (1-p)^{j(K-j)}
///
/// Table growth is guarded by a mutex; values already computed are never
/// modified, so references returned by probability() stay valid.
class ConnectivityOracle {
 public:
  explicit ConnectivityOracle(Rational p, int cap = kDefaultExactCap);

  const Rational& p() const noexcept { return p_; }
  int cap() const noexcept { return cap_; }

  /// Throws TooLarge when K > cap.
  Rational probability(int K);
  /// Extends the table to K without returning anything.
  void warm(int K);

  /// (1-p)^e, cached.
  Rational complement_power(std::uint64_t e);

 private:
  void extend_locked(int K);

  Rational p_;
  Rational q_;
  int cap_;
  std::vector<Rational> table_;  // table_[K-1] = P(K)
  std::vector<Rational> qpow_;   // qpow_[e] = q^e
  std::mutex mutex_;
};

Rational connected_probability_exact(int K, const Rational& p, int cap = kDefaultExactCap);

/// Number of connected labeled graphs on K vertices with exactly m edges.
/// Rows are built once and shared; see connected_count().
class ConnectedCountTable {
 public:
  explicit ConnectedCountTable(int cap = kDefaultExactCap);

  /// Throws TooLarge when K > cap, ParameterOutOfRange for K < 1 or m < 0.
  BigInt count(int K, std::int64_t m);
  /// Whole row m = 0 .. K(K-1)/2.
  const std::vector<BigInt>& row(int K);

 private:
  void extend_locked(int K);

  int cap_;
  std::vector<std::vector<BigInt>> rows_;  // rows_[K-1]
  std::mutex mutex_;
};

BigInt connected_count(int K, std::int64_t m, int cap = kDefaultExactCap);

/// Calls `visit` once for every l with sum_k k l_k = n (integer partitions
/// of n in multiplicity form), in reverse lexicographic order of the
/// partition written with parts in decreasing order.
void for_each_partition(int n, const std::function<void(const ClusterCounts&)>& visit);
std::vector<ClusterCounts> partition_enumerate(int n);

/// Exact probability of the component profile l under G(n, p):
///   n! prod_k P_{k,p}^{l_k} (1-p)^{(n-k) k l_k / 2} / (l_k! (k!)^{l_k})
Rational law_probability(const ClusterCounts& l, ConnectivityOracle& oracle);

struct LawEntry {
  ClusterCounts counts;
  Rational probability;
};

struct ExactLaw {
  int n = 0;
  Rational p;
  std::vector<LawEntry> entries;

  Rational total() const;
  /// Probability of l, or zero when l is not in the support.
  Rational at(const ClusterCounts& l) const;
};

ExactLaw cluster_law_exact(int n, const Rational& p, int cap = kDefaultLawCap);

/// Probability that every component of G(n, p) has fewer than m vertices:
///   Q(0) = 1,
///   Q(n) = sum_{j=1}^{min(m-1, n)} C(n-1, j-1) P_{j,p} (1-p)^{j(n-j)} Q(n-j)
Rational prob_all_components_below(int n, int m, const Rational& p,
                                   int cap = kDefaultExactCap);
Rational prob_all_components_below(int n, int m, ConnectivityOracle& oracle);

// ---------------------------------------------------------------------------
// High-precision floating variants.
//
// The connectivity recurrence subtracts numbers close to one, so the result
// loses roughly -log2 P bits. The working precision is therefore raised to
// `bits` plus the worst spanning-tree lower bound over the table, which
// keeps at least `bits` correct bits in every P(j).
// ---------------------------------------------------------------------------

class HighPrecisionConnectivity {
 public:
  HighPrecisionConnectivity(double p, int K_max, unsigned bits = kDefaultPrecisionBits,
                            int cap = kDefaultHighPrecisionCap);
  HighPrecisionConnectivity(const Rational& p, int K_max,
                            unsigned bits = kDefaultPrecisionBits,
                            int cap = kDefaultHighPrecisionCap);

  unsigned requested_bits() const noexcept { return bits_; }
  unsigned working_bits() const noexcept { return working_bits_; }
  int K_max() const noexcept { return static_cast<int>(log_table_.size()); }

  /// log P(K, p) as a double; the table is fully built on construction.
  double log_probability(int K) const;
  /// Decimal string of P(K, p) with `digits` significant digits.
  std::string probability_string(int K, int digits = 30) const;

 private:
  void build(const HighFloat& p);

  unsigned bits_;
  unsigned working_bits_ = 0;
  std::vector<double> log_table_;
  std::vector<std::string> value_table_;
  double p_double_ = 0.0;
};

/// Convenience: log P(K, p) through the high-precision recurrence.
double log_connected_probability_hp(int K, double p, unsigned bits = kDefaultPrecisionBits);

/// log of the spanning-tree lower bound p^{K-1} K^{K-2} (1-p)^{(K-1)(K-2)/2}.
double log_spanning_tree_term(std::int64_t K, double p);

/// log P(every component < m) for G(n, p) in high precision.
double log_prob_all_components_below_hp(int n, int m, double p,
                                        unsigned bits = kDefaultPrecisionBits);

}  // namespace erldp
