#include "erldp/exact_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "erldp/errors.hpp"

namespace erldp {

namespace {

void check_probability(const Rational& p, bool open) {
  if (open ? (sgn(p) <= 0 || cmp(p, 1) >= 0) : (sgn(p) < 0 || cmp(p, 1) > 0)) {
    throw ParameterOutOfRange("edge probability " + to_string(p) +
                              (open ? " outside (0,1)" : " outside [0,1]"));
  }
}

void check_cap(int K, int cap, const char* what) {
  if (K > cap) {
    std::ostringstream os;
    os << what << ": size " << K << " exceeds exact-arithmetic cap " << cap;
    throw TooLarge(os.str());
  }
}

std::uint64_t edges_of(std::int64_t K) {
  return static_cast<std::uint64_t>(K) * static_cast<std::uint64_t>(K - 1) / 2;
}

}  // namespace

// ---------------------------------------------------------------------------
// ConnectivityOracle

ConnectivityOracle::ConnectivityOracle(Rational p, int cap)
    : p_(std::move(p)), cap_(cap) {
  p_.canonicalize();
  check_probability(p_, false);
  q_ = 1 - p_;
  qpow_.push_back(Rational(1));
}

Rational ConnectivityOracle::complement_power(std::uint64_t e) {
  // only called with mutex_ held or from single-threaded helpers
  while (qpow_.size() <= e) qpow_.push_back(qpow_.back() * q_);
  return qpow_[e];
}

void ConnectivityOracle::extend_locked(int K) {
  while (static_cast<int>(table_.size()) < K) {
    const int k = static_cast<int>(table_.size()) + 1;
    if (k == 1) {
      table_.push_back(Rational(1));
      continue;
    }
    Rational disconnected(0);
    BigInt choose(1);  // C(k-1, j-1)
    for (int j = 1; j < k; ++j) {
      const auto e = static_cast<std::uint64_t>(j) * static_cast<std::uint64_t>(k - j);
      disconnected += Rational(choose) * table_[j - 1] * complement_power(e);
      choose = choose * (k - j) / j;
    }
    Rational value = 1 - disconnected;
    value.canonicalize();
    table_.push_back(std::move(value));
  }
}

void ConnectivityOracle::warm(int K) {
  if (K < 1) throw ParameterOutOfRange("component size must be >= 1");
  check_cap(K, cap_, "connected_probability_exact");
  std::lock_guard lock(mutex_);
  extend_locked(K);
}

Rational ConnectivityOracle::probability(int K) {
  warm(K);
  std::lock_guard lock(mutex_);
  return table_[static_cast<std::size_t>(K - 1)];
}

Rational connected_probability_exact(int K, const Rational& p, int cap) {
  if (K < 1) throw ParameterOutOfRange("component size must be >= 1");
  check_cap(K, cap, "connected_probability_exact");
  ConnectivityOracle oracle(p, cap);
  return oracle.probability(K);
}

// ---------------------------------------------------------------------------
// ConnectedCountTable

ConnectedCountTable::ConnectedCountTable(int cap) : cap_(cap) {}

void ConnectedCountTable::extend_locked(int K) {
  while (static_cast<int>(rows_.size()) < K) {
    const int k = static_cast<int>(rows_.size()) + 1;
    const std::uint64_t total_edges = edges_of(k);
    std::vector<BigInt> row(total_edges + 1);
    for (std::uint64_t m = 0; m <= total_edges; ++m) row[m] = binomial(total_edges, m);
    // Remove graphs where vertex 1 sits in a component of j < k vertices
    // carrying e edges; the other k - j vertices are arbitrary.
    BigInt choose(1);  // C(k-1, j-1)
    for (int j = 1; j < k; ++j) {
      const std::uint64_t rest_edges = edges_of(k - j);
      const auto& comp = rows_[static_cast<std::size_t>(j - 1)];
      for (std::uint64_t e = static_cast<std::uint64_t>(j - 1); e < comp.size(); ++e) {
        if (comp[e] == 0) continue;
        const BigInt weight = choose * comp[e];
        for (std::uint64_t r = 0; r <= rest_edges && e + r <= total_edges; ++r) {
          row[e + r] -= weight * binomial(rest_edges, r);
        }
      }
      choose = choose * (k - j) / j;
    }
    rows_.push_back(std::move(row));
  }
}

const std::vector<BigInt>& ConnectedCountTable::row(int K) {
  if (K < 1) throw ParameterOutOfRange("vertex count must be >= 1");
  check_cap(K, cap_, "connected_count");
  std::lock_guard lock(mutex_);
  extend_locked(K);
  return rows_[static_cast<std::size_t>(K - 1)];
}

BigInt ConnectedCountTable::count(int K, std::int64_t m) {
  if (m < 0) throw ParameterOutOfRange("edge count must be >= 0");
  const auto& r = row(K);
  if (static_cast<std::uint64_t>(m) >= r.size()) {
    throw ParameterOutOfRange("edge count exceeds K(K-1)/2");
  }
  return r[static_cast<std::size_t>(m)];
}

BigInt connected_count(int K, std::int64_t m, int cap) {
  ConnectedCountTable table(cap);
  return table.count(K, m);
}

// ---------------------------------------------------------------------------
// Partitions and the cluster-size law

void for_each_partition(int n, const std::function<void(const ClusterCounts&)>& visit) {
  if (n < 1) throw ParameterOutOfRange("partition_enumerate requires n >= 1");
  // Parts in non-increasing order; next() is the classic "decrement the
  // rightmost part > 1 and redistribute" step.
  std::vector<int> parts{n};
  ClusterCounts counts(n);
  for (;;) {
    for (int k = 1; k <= n; ++k) counts.set(k, 0);
    for (int part : parts) counts.add(part);
    visit(counts);

    int ones = 0;
    while (!parts.empty() && parts.back() == 1) {
      parts.pop_back();
      ++ones;
    }
    if (parts.empty()) break;
    int part = parts.back() - 1;
    parts.back() = part;
    int remaining = ones + 1;
    while (remaining > part) {
      parts.push_back(part);
      remaining -= part;
    }
    if (remaining > 0) parts.push_back(remaining);
  }
}

std::vector<ClusterCounts> partition_enumerate(int n) {
  std::vector<ClusterCounts> out;
  for_each_partition(n, [&](const ClusterCounts& c) { out.push_back(c); });
  return out;
}

Rational law_probability(const ClusterCounts& l, ConnectivityOracle& oracle) {
  if (!l.valid()) throw ParameterOutOfRange("cluster counts do not sum to n");
  const std::int64_t n = l.n();
  Rational value(factorial(static_cast<std::uint64_t>(n)));
  std::uint64_t twice_exponent = 0;
  for (const auto& [k, lk] : l.sparse()) {
    value *= pow(oracle.probability(static_cast<int>(k)), static_cast<std::uint64_t>(lk));
    value /= Rational(factorial(static_cast<std::uint64_t>(lk)));
    value /= Rational(pow(Rational(factorial(static_cast<std::uint64_t>(k))),
                          static_cast<std::uint64_t>(lk)));
    twice_exponent += static_cast<std::uint64_t>((n - k) * k * lk);
  }
  // (n-k) k l_k can be odd for a single k; the total over k is even because
  // it counts ordered pairs of vertices in different components.
  value *= pow(1 - oracle.p(), twice_exponent / 2);
  value.canonicalize();
  return value;
}

Rational ExactLaw::total() const {
  Rational s(0);
  for (const auto& e : entries) s += e.probability;
  s.canonicalize();
  return s;
}

Rational ExactLaw::at(const ClusterCounts& l) const {
  for (const auto& e : entries) {
    if (e.counts == l) return e.probability;
  }
  return Rational(0);
}

ExactLaw cluster_law_exact(int n, const Rational& p, int cap) {
  if (n < 1) throw ParameterOutOfRange("cluster_law_exact requires n >= 1");
  check_cap(n, cap, "cluster_law_exact");
  Rational pc = p;
  pc.canonicalize();
  check_probability(pc, true);
  ConnectivityOracle oracle(pc, std::max(cap, n));
  oracle.warm(n);
  ExactLaw law;
  law.n = n;
  law.p = pc;
  for_each_partition(n, [&](const ClusterCounts& l) {
    law.entries.push_back({l, law_probability(l, oracle)});
  });
  return law;
}

Rational prob_all_components_below(int n, int m, ConnectivityOracle& oracle) {
  if (n < 0) throw ParameterOutOfRange("n must be >= 0");
  if (m < 1) throw ParameterOutOfRange("m must be >= 1");
  check_cap(n, oracle.cap(), "prob_all_components_below");
  std::vector<Rational> Q(static_cast<std::size_t>(n) + 1);
  Q[0] = 1;
  const int largest = std::min(m - 1, n);
  if (largest >= 1) oracle.warm(largest);
  for (int size = 1; size <= n; ++size) {
    Rational s(0);
    BigInt choose(1);  // C(size-1, j-1)
    for (int j = 1; j <= std::min(m - 1, size); ++j) {
      const auto e = static_cast<std::uint64_t>(j) * static_cast<std::uint64_t>(size - j);
      s += Rational(choose) * oracle.probability(j) * oracle.complement_power(e) *
           Q[static_cast<std::size_t>(size - j)];
      choose = choose * (size - j) / j;
    }
    s.canonicalize();
    Q[static_cast<std::size_t>(size)] = std::move(s);
  }
  return Q[static_cast<std::size_t>(n)];
}

Rational prob_all_components_below(int n, int m, const Rational& p, int cap) {
  ConnectivityOracle oracle(p, cap);
  return prob_all_components_below(n, m, oracle);
}

// ---------------------------------------------------------------------------
// High precision

double log_spanning_tree_term(std::int64_t K, double p) {
  const double k = static_cast<double>(K);
  if (K == 1) return 0.0;
  return (k - 1.0) * std::log(p) + (k - 2.0) * std::log(k) +
         0.5 * (k - 1.0) * (k - 2.0) * std::log1p(-p);
}

namespace {

unsigned working_precision(double p, int K_max, unsigned bits) {
  double worst = 0.0;
  for (int k = 2; k <= K_max; ++k) worst = std::min(worst, log_spanning_tree_term(k, p));
  // The subtraction loses about -log2 P bits; rounding errors in P(j) are
  // further multiplied by C(K-1, j-1) <= 2^K.
  const double lost_bits = -worst / std::log(2.0);
  return bits + static_cast<unsigned>(std::ceil(lost_bits)) + static_cast<unsigned>(K_max) + 64;
}

std::string hp_string(const HighFloat& x, int digits) {
  return x.str(digits, std::ios_base::scientific);
}

}  // namespace

HighPrecisionConnectivity::HighPrecisionConnectivity(double p, int K_max, unsigned bits, int cap)
    : bits_(bits), p_double_(p) {
  if (!(p > 0.0 && p < 1.0)) throw ParameterOutOfRange("edge probability outside (0,1)");
  if (K_max < 1) throw ParameterOutOfRange("K_max must be >= 1");
  check_cap(K_max, cap, "high-precision connectivity");
  working_bits_ = working_precision(p, K_max, bits);
  ScopedPrecision guard(working_bits_);
  log_table_.resize(static_cast<std::size_t>(K_max));
  value_table_.resize(static_cast<std::size_t>(K_max));
  build(HighFloat(p));
}

HighPrecisionConnectivity::HighPrecisionConnectivity(const Rational& p, int K_max, unsigned bits,
                                                     int cap)
    : bits_(bits), p_double_(p.get_d()) {
  check_probability(p, true);
  if (K_max < 1) throw ParameterOutOfRange("K_max must be >= 1");
  check_cap(K_max, cap, "high-precision connectivity");
  working_bits_ = working_precision(p_double_, K_max, bits);
  ScopedPrecision guard(working_bits_);
  log_table_.resize(static_cast<std::size_t>(K_max));
  value_table_.resize(static_cast<std::size_t>(K_max));
  build(to_hp(p));
}

void HighPrecisionConnectivity::build(const HighFloat& p) {
  const int K_max = static_cast<int>(log_table_.size());
  const HighFloat q = 1 - p;
  const HighFloat log_q = boost::multiprecision::log(q);
  std::vector<HighFloat> P(static_cast<std::size_t>(K_max) + 1);
  P[1] = 1;
  for (int k = 2; k <= K_max; ++k) {
    HighFloat disconnected = 0;
    HighFloat choose = 1;  // C(k-1, j-1)
    for (int j = 1; j < k; ++j) {
      const double e = static_cast<double>(j) * static_cast<double>(k - j);
      disconnected += choose * P[static_cast<std::size_t>(j)] * boost::multiprecision::exp(e * log_q);
      choose = choose * (k - j) / j;
    }
    P[static_cast<std::size_t>(k)] = 1 - disconnected;
  }
  for (int k = 1; k <= K_max; ++k) {
    const HighFloat& v = P[static_cast<std::size_t>(k)];
    if (v <= 0) throw NoConvergence("precision exhausted in connectivity recurrence");
    log_table_[static_cast<std::size_t>(k - 1)] = static_cast<double>(boost::multiprecision::log(v));
    value_table_[static_cast<std::size_t>(k - 1)] = hp_string(v, 40);
  }
}

double HighPrecisionConnectivity::log_probability(int K) const {
  if (K < 1 || K > K_max()) throw ParameterOutOfRange("K outside the prepared table");
  return log_table_[static_cast<std::size_t>(K - 1)];
}

std::string HighPrecisionConnectivity::probability_string(int K, int digits) const {
  if (K < 1 || K > K_max()) throw ParameterOutOfRange("K outside the prepared table");
  const std::string& s = value_table_[static_cast<std::size_t>(K - 1)];
  if (digits >= 40) return s;
  ScopedPrecision guard(bits_);
  return hp_string(HighFloat(s), digits);
}

double log_connected_probability_hp(int K, double p, unsigned bits) {
  HighPrecisionConnectivity hp(p, K, bits);
  return hp.log_probability(K);
}

double log_prob_all_components_below_hp(int n, int m, double p, unsigned bits) {
  if (n < 0) throw ParameterOutOfRange("n must be >= 0");
  if (m < 1) throw ParameterOutOfRange("m must be >= 1");
  if (n == 0) return 0.0;
  const int largest = std::min(m - 1, n);
  if (largest < 1) return -std::numeric_limits<double>::infinity();
  HighPrecisionConnectivity conn(p, largest, bits);
  // Q is a sum of positive terms, so no extra cancellation headroom is needed.
  ScopedPrecision guard(bits);
  std::vector<HighFloat> logP(static_cast<std::size_t>(largest) + 1);
  for (int j = 1; j <= largest; ++j) logP[static_cast<std::size_t>(j)] = conn.log_probability(j);
  const HighFloat log_q = boost::multiprecision::log1p(HighFloat(-p));
  std::vector<HighFloat> Q(static_cast<std::size_t>(n) + 1);
  Q[0] = 1;
  for (int size = 1; size <= n; ++size) {
    HighFloat s = 0;
    HighFloat choose = 1;
    for (int j = 1; j <= std::min(largest, size); ++j) {
      const double e = static_cast<double>(j) * static_cast<double>(size - j);
      s += choose * boost::multiprecision::exp(logP[static_cast<std::size_t>(j)] + e * log_q) *
           Q[static_cast<std::size_t>(size - j)];
      choose = choose * (size - j) / j;
    }
    Q[static_cast<std::size_t>(size)] = s;
  }
  return static_cast<double>(boost::multiprecision::log(Q[static_cast<std::size_t>(n)]));
}

}  // namespace erldp
