#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace erldp {

/// Component-size profile l = (l_1, ..., l_n) of a graph on n vertices:
/// l_k is the number of connected components with exactly k vertices.
/// A valid profile has total mass sum_k k l_k == n.
class ClusterCounts {
 public:
  ClusterCounts() = default;

  /// All-zero profile on n vertices (not yet valid; fill with add()).
  explicit ClusterCounts(std::int64_t n);

  /// Dense counts, element i is l_{i+1}. The vertex count is the mass.
  static ClusterCounts from_dense(std::vector<std::int64_t> counts);
  /// Sparse (size, multiplicity) pairs on n vertices.
  static ClusterCounts from_pairs(
      std::int64_t n, std::span<const std::pair<std::int64_t, std::int64_t>> pairs);
  static ClusterCounts from_pairs(
      std::int64_t n, std::initializer_list<std::pair<std::int64_t, std::int64_t>> pairs);

  std::int64_t n() const noexcept { return static_cast<std::int64_t>(counts_.size()); }

  std::int64_t count(std::int64_t k) const noexcept {
    return (k >= 1 && k <= n()) ? counts_[static_cast<std::size_t>(k - 1)] : 0;
  }
  void set(std::int64_t k, std::int64_t value);
  void add(std::int64_t k, std::int64_t delta = 1);

  std::int64_t mass() const noexcept;
  std::int64_t components() const noexcept;
  std::int64_t largest() const noexcept;
  bool valid() const noexcept;

  /// Nonzero (k, l_k) pairs in increasing k.
  std::vector<std::pair<std::int64_t, std::int64_t>> sparse() const;

  std::span<const std::int64_t> dense() const noexcept { return counts_; }

  std::string str() const;

  friend bool operator==(const ClusterCounts&, const ClusterCounts&) = default;
  friend auto operator<=>(const ClusterCounts&, const ClusterCounts&) = default;

 private:
  std::vector<std::int64_t> counts_;
};

}  // namespace erldp
