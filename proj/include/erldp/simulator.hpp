#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "erldp/cluster_counts.hpp"
#include "erldp/ldp_core.hpp"
#include "erldp/regime.hpp"

namespace erldp {

struct SimConfig {
  Regime regime;
  std::int64_t trials = 1;
  std::uint64_t master_seed = 0;
  int parallelism = 1;
  /// Overrides the regime's edge probability (oracle cross-checks use
  /// probabilities that are not of the p_n(theta) form).
  std::optional<double> p;

  double edge_p() const;
  /// Throws ParameterOutOfRange for trials < 1, parallelism < 1 or p outside [0, 1].
  void validate() const;
};

/// splitmix64 finalizer; seeds trial t with mix(master + (t + 1) * golden).
std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t trial_seed(std::uint64_t master_seed, std::uint64_t trial);

using Rng = std::mt19937_64;

struct Sample {
  ClusterCounts counts;
  std::int64_t edges = 0;
};

/// One G(n, p) realization: edges by geometric skipping over the
/// lexicographic pair stream, components by union-find.
Sample sample_er_stats(std::int64_t n, double p, Rng& rng);
ClusterCounts sample_er(std::int64_t n, double p, std::uint64_t seed);

using Event = std::function<bool(const ClusterCounts&)>;

/// Parses "true", "connected", "below:<m>" (every component < m) and
/// "alpha" (every component < alpha_n of the regime).
Event parse_event(const std::string& spec, const Regime& r);

struct EventEstimate {
  double p_hat = 0.0;
  std::int64_t trials = 0;
  std::int64_t hits = 0;
  double ci_lo = 0.0;
  double ci_hi = 0.0;
  std::optional<double> rate_estimate;  // -log(p_hat) / b_n^2 when hits > 0

  /// sqrt(p_hat (1 - p_hat) / trials)
  double std_error() const;
};

/// 95% Wilson score interval.
std::pair<double, double> wilson_interval(std::int64_t hits, std::int64_t trials, double z = 1.96);

/// Independent trials, trial t drawn from trial_seed(master_seed, t).
/// The result does not depend on cfg.parallelism.
EventEstimate estimate_event(const SimConfig& cfg, const Event& event);

struct StatEstimate {
  double mean = 0.0;
  double variance = 0.0;  // unbiased sample variance
  std::int64_t trials = 0;

  double std_error() const;
};

/// Mean of f over trials, reduced in trial order so the sums are
/// bit-identical for any worker count.
StatEstimate estimate_statistic(const SimConfig& cfg,
                                const std::function<double(const Sample&)>& f);

struct SweepRow {
  Regime regime;
  EventEstimate estimate;
  double rate_target;  // theta^3/6 for theta >= 0, else 0 (same sign as rate_estimate)
  bool zero_hits;
};

/// Estimates P(E_{alpha_n}) per regime.
std::vector<SweepRow> rare_event_rate_sweep(const std::vector<Regime>& regimes,
                                            std::int64_t trials, std::uint64_t seed,
                                            int parallelism = 1);
void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows);

/// Per-trial mesoscopic measure restricted to atoms >= epsilon.
std::vector<MesoMeasure> empirical_meso_measure(const SimConfig& cfg, std::int64_t trials);

}  // namespace erldp
