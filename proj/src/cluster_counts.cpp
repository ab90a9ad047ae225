#include "erldp/cluster_counts.hpp"

#include <sstream>

#include "erldp/errors.hpp"

namespace erldp {

ClusterCounts::ClusterCounts(std::int64_t n) {
  if (n < 0) throw ParameterOutOfRange("negative vertex count");
  counts_.assign(static_cast<std::size_t>(n), 0);
}

ClusterCounts ClusterCounts::from_dense(std::vector<std::int64_t> counts) {
  std::int64_t mass = 0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (counts[i] < 0) throw ParameterOutOfRange("negative component count");
    mass += static_cast<std::int64_t>(i + 1) * counts[i];
  }
  ClusterCounts c(mass);
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (counts[i] != 0) c.counts_[i] = counts[i];
  }
  return c;
}

ClusterCounts ClusterCounts::from_pairs(
    std::int64_t n, std::span<const std::pair<std::int64_t, std::int64_t>> pairs) {
  ClusterCounts c(n);
  for (const auto& [k, lk] : pairs) c.add(k, lk);
  return c;
}

ClusterCounts ClusterCounts::from_pairs(
    std::int64_t n, std::initializer_list<std::pair<std::int64_t, std::int64_t>> pairs) {
  return from_pairs(n, std::span<const std::pair<std::int64_t, std::int64_t>>(
                           pairs.begin(), pairs.size()));
}

void ClusterCounts::set(std::int64_t k, std::int64_t value) {
  if (k < 1 || k > n()) throw ParameterOutOfRange("component size out of range");
  if (value < 0) throw ParameterOutOfRange("negative component count");
  counts_[static_cast<std::size_t>(k - 1)] = value;
}

void ClusterCounts::add(std::int64_t k, std::int64_t delta) {
  set(k, count(k) + delta);
}

std::int64_t ClusterCounts::mass() const noexcept {
  std::int64_t m = 0;
  for (std::size_t i = 0; i < counts_.size(); ++i) {
    m += static_cast<std::int64_t>(i + 1) * counts_[i];
  }
  return m;
}

std::int64_t ClusterCounts::components() const noexcept {
  std::int64_t c = 0;
  for (auto v : counts_) c += v;
  return c;
}

std::int64_t ClusterCounts::largest() const noexcept {
  for (std::size_t i = counts_.size(); i > 0; --i) {
    if (counts_[i - 1] > 0) return static_cast<std::int64_t>(i);
  }
  return 0;
}

bool ClusterCounts::valid() const noexcept { return mass() == n(); }

std::vector<std::pair<std::int64_t, std::int64_t>> ClusterCounts::sparse() const {
  std::vector<std::pair<std::int64_t, std::int64_t>> out;
  for (std::size_t i = 0; i < counts_.size(); ++i) {
    if (counts_[i] != 0) out.emplace_back(static_cast<std::int64_t>(i + 1), counts_[i]);
  }
  return out;
}

std::string ClusterCounts::str() const {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (const auto& [k, lk] : sparse()) {
    if (!first) os << ", ";
    os << k << ':' << lk;
    first = false;
  }
  os << '}';
  return os.str();
}

}  // namespace erldp
