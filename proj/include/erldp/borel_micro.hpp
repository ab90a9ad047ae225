#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "erldp/cluster_counts.hpp"
#include "erldp/regime.hpp"

namespace erldp {

struct BorelParams {
  double omega;
  std::int64_t N;
  double a;   // log(omega) - omega/2
  double xi;  // -(1 - omega + log(omega)), >= 0

  /// Throws ParameterOutOfRange for omega <= 0 or N < 1.
  static BorelParams from(double omega, std::int64_t N);
};

/// lambda_k(omega) = k^{k-2} e^{-omega k} omega^k / k!
double borel_weight(std::int64_t k, double omega);
double log_borel_weight(std::int64_t k, double omega);

/// xi(omega) = -(1 - omega + log omega)
double borel_xi(double omega);

struct BorelSumOptions {
  double tol = 1e-12;
  std::int64_t max_terms = 20'000'000;
  std::int64_t critical_terms = 200'000;  // explicit terms before the omega = 1 tail
};

/// sum_k k lambda_k(omega), omega in (0, 1]. Should equal omega.
double borel_mean_sum(double omega, const BorelSumOptions& opts = {});
/// sum_k lambda_k(omega), omega in (0, 1]. Should equal omega (1 - omega/2).
double borel_mass_sum(double omega, const BorelSumOptions& opts = {});

/// delta = nu - 1 - log(nu), the Lagrange tilt with e^{-(1+delta)} = nu e^{-nu}.
double delta_of_nu(double nu);

/// (lambda_k(1) e^{-k xi(omega)}, lambda_k(omega)).
std::pair<double, double> tilt_identity_check(std::int64_t k, double omega);
/// Same pair in the log domain.
std::pair<double, double> tilt_identity_check_log(std::int64_t k, double omega);

struct RecoverySequence {
  ClusterCounts counts;               // integer profile on N vertices
  std::int64_t N = 0;
  std::int64_t q = 0;                 // mass missing after flooring
  std::int64_t start = 0;             // first index of the unit spread
  std::int64_t r = 0;                 // last index of the unit spread, start - 1 if skipped
  std::int64_t s = 0;                 // residual index
  std::int64_t m = 0;                 // first k with real l_k < 1
  std::vector<double> real_profile;   // real_profile[k-1] = l_k before flooring
  double omega = 1.0;
  double alpha_n = 0.0;
};

/// Integer, mass-exact profile on N vertices built from the Borel-tilted
/// real profile (N/omega) lambda_k(1) [e^{-k xi} when theta <= 0].
/// The unit spread starts at floor(n^{2/3}); if that would place mass at or
/// above alpha_n it restarts at floor(alpha_n / 2).
/// Throws InfeasibleRepair if no placement keeps the profile below alpha_n
/// or the l_1 repair would go negative.
RecoverySequence recovery_sequence(const Regime& r, std::int64_t N);

/// J_n(l) = sum_k l_k log(A_k / l_k), A_k = (N/omega) lambda_k(1) e^{1 + k a}.
/// `l` is dense, l[k-1] = l_k; zero entries contribute nothing.
/// Evaluated at `bits` of precision.
double J_n(const std::vector<double>& l, const BorelParams& bp, unsigned bits = 256);
double J_n(const ClusterCounts& l, const BorelParams& bp, unsigned bits = 256);

struct RateCheck {
  double value;     // F(l^delta) / b_n^2
  double target;    // -theta^3/6 when theta >= 0, else 0
  double J;         // J_n(l^delta)
  double F;         // J plus the Stirling terms of the lower bound
  double J_scaled;  // J / b_n^2
};

/// Lower-bound functional of the recovery sequence on the b_n^2 scale:
///   F(l) = J_n(l) + log(2 pi N)/2 - sum_{l_k > 1} (log(2 pi l_k) + 1/(12 l_k + 1)) / 2
/// (the Stirling remainders taken at their lower end).
RateCheck recovery_rate_check(const Regime& r, std::int64_t N, unsigned bits = 256);

/// Admissible M range
///   [-(1 - 1/omega)(n/b_n^2)^{1/3}, N / (omega (n b_n)^{2/3})].
std::pair<double, double> level_set_interval(const Regime& r, std::int64_t N);

/// F_n(M) = (N/omega)(1/2 - sum_{k>=3} x^k/(k(k-1))) + M eps^2 b_n^2,
/// x = M (b_n^2/n)^{1/3}. Throws DomainError outside the admissible range.
double level_set_objective(double M, const Regime& r, std::int64_t N);
/// (F_n(M) - N/(2 omega)) / b_n^2 without forming the large cancelling terms.
double level_set_excess(double M, const Regime& r, std::int64_t N);

/// argmax of F_n over [lo, hi] intersected with the admissible range.
double level_set_argmax(const Regime& r, std::int64_t N, double lo = 0.0, double hi = 5.0);

}  // namespace erldp
