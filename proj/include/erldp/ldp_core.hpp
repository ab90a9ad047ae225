#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "erldp/cluster_counts.hpp"
#include "erldp/numeric.hpp"
#include "erldp/regime.hpp"

namespace erldp {

/// Finite point measure on (0, inf), stored as sorted (position, multiplicity)
/// pairs. `infinite_mass` marks the extended input whose first moment is
/// infinite; the rate function is +inf there.
class MesoMeasure {
 public:
  MesoMeasure() = default;

  /// Throws ParameterOutOfRange for non-positive or non-finite atoms.
  static MesoMeasure from_atoms(const std::vector<double>& atoms);
  static MesoMeasure from_weighted(std::vector<std::pair<double, std::int64_t>> atoms);
  static MesoMeasure infinite();

  const std::vector<std::pair<double, std::int64_t>>& atoms() const noexcept { return atoms_; }
  bool empty() const noexcept { return atoms_.empty() && !infinite_mass_; }
  bool infinite_mass() const noexcept { return infinite_mass_; }
  std::int64_t size() const noexcept;

  /// sum of u^p over atoms with multiplicity; +inf for the extended input.
  double moment(int p) const;
  /// Moment over atoms in [lo, hi].
  double moment(int p, double lo, double hi) const;

  /// Atoms in [lo, hi].
  MesoMeasure restricted(double lo, double hi) const;

  /// Canonical two-sided sequence: first = atoms < 1 in decreasing order
  /// (indices -1, -2, ...), second = atoms >= 1 increasing (0, 1, ...).
  /// At most `limit` entries per side.
  std::pair<std::vector<double>, std::vector<double>> canonical(std::size_t limit = 1100) const;

  friend bool operator==(const MesoMeasure&, const MesoMeasure&) = default;

 private:
  std::vector<std::pair<double, std::int64_t>> atoms_;
  bool infinite_mass_ = false;
};

/// Atom k/(n b_n)^{2/3} with multiplicity l_k; with `at_least` > 0 only
/// atoms >= at_least are kept.
MesoMeasure meso_measure(const ClusterCounts& l, const Regime& r, double at_least = 0.0);

/// I(mu) = -(1/24) int x^3 + (1/6)(int x - theta)^3 1{int x >= theta} + theta^3/6.
double rate_function(const MesoMeasure& mu, double theta);

/// min of d over the three alignments (u, v), (u, shift v), (shift u, v).
double vague_distance(const MesoMeasure& mu, const MesoMeasure& nu);
/// One aligned distance, exposed for tests.
double aligned_distance(const std::vector<double>& u_neg, const std::vector<double>& u_pos,
                        const std::vector<double>& v_neg, const std::vector<double>& v_pos);

bool ball_membership(const MesoMeasure& mu, const MesoMeasure& center, double delta);
bool compact_membership(const MesoMeasure& mu, double M);

/// -(1/6)(int_eps^C x - theta)^3 - theta^3/6 + (1/24) int_eps^C x^3.
double meso_limit_formula(const MesoMeasure& mu, double theta, double eps, double C);

enum class DecomposeMode { Rational, Float };

/// Integer band limits: micro k < alpha_k, meso alpha_k <= k <= beta_k,
/// macro k > beta_k.
struct Bands {
  std::int64_t alpha_k;
  std::int64_t beta_k;
};

Bands bands_of(const Regime& r);

struct DecompositionReport {
  DecomposeMode mode = DecomposeMode::Float;
  std::int64_t n = 0;
  Bands bands{};
  std::int64_t N = 0;        // n - sum_{k >= alpha} k l_k
  std::int64_t S_alpha = 0;  // sum_{k >= alpha} k l_k
  std::int64_t S_beta = 0;   // sum_{k > beta} k l_k
  double log_F_Mi = 0.0;
  double log_F_Me = 0.0;
  double log_F_Ma = 0.0;
  std::optional<double> log_P_exact;
  std::optional<std::string> P_exact;  // "num/den" in rational mode
  double log_P = 0.0;                  // log P(L^n = l) from the product formula
  double log_regrouped = 0.0;          // log of the regrouped product
  double regroup_identity_residual = 0.0;
  bool regroup_exact = false;          // rational equality held
  double claim_residual = 0.0;         // log F_Mi - log P_{N,p}(L^N = l_hat)
  std::optional<double> claim_residual_reduced;  // same with p' = n p / N
};

/// Exact mode: requires n within the law cap and a rational p.
DecompositionReport decompose(const ClusterCounts& l, const Rational& p, Bands bands,
                              int cap = 40);
/// Mode chosen by the caller; Rational needs n <= cap and uses the exact
/// binary value of the regime's p.
DecompositionReport decompose(const ClusterCounts& l, const Regime& r,
                              DecomposeMode mode = DecomposeMode::Float, unsigned bits = 256,
                              int cap = 40);

std::string to_string(DecomposeMode m);

}  // namespace erldp
