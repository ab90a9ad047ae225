#pragma once

#include <cstdint>
#include <string>

#include "erldp/regime.hpp"

namespace erldp {

/// x(y) = artanh(y) / y = sum_k y^{2k} / (2k+1), for y in [0, 1).
double x_of_y(double y);
/// x(y) - 1 without cancellation near y = 0.
double x_minus_one_of_y(double y);

/// Inverse of x_of_y on [1, inf). Bisection with Newton polish to 1e-13.
/// Throws DomainError for x < 1 and NoConvergence if `budget` is exhausted.
double y_of_x(double x, int budget = 200);

/// a(x) = x(x+1)(1-y) + log(1-x+xy) - log(1-x+xy^2)/2, y = y_of_x(x).
/// Throws DomainError when x <= 1 or a log argument is not positive.
double a_of_x(double x);

/// log of the asymptotic count of connected graphs on K vertices with K + k
/// edges:
///   binom(K(K-1)/2, K+k) (2 e^{-x} y^{1-x} / sqrt(1-y^2))^K e^{a(x)},
/// x = (K+k)/K. Requires k >= 1 and K + k <= K(K-1)/2.
double bcm_log_connected_count(std::int64_t K, std::int64_t k);
/// Same with k real (log-gamma continuation of the binomial), k > 0.
double bcm_log_connected_count_real(std::int64_t K, double k);

/// Size K of a would-be mesoscopic component together with the regime.
struct MesoScale {
  std::int64_t K;
  Regime regime;
  double p;    // edge probability of the regime
  double a_n;  // log(K-1) - log n - log 2 + theta t - theta^2 t^2, t = (b_n^2/n)^{1/3}
  double c_n;  // exp(a_n), close to K/(2n)

  MesoScale(std::int64_t K, const Regime& r);
};

/// D_n(x) = log(C(K, x) (p/(1-p))^{xK}) with the continuous excess k = K(x-1).
/// Requires x >= 1 + 1/K unless `allow_interior` (then any x > 1 is taken).
double D_n(double x, const MesoScale& s, bool allow_interior = false);

/// D_n with the x-independent constant log binom(K(K-1)/2) stripped; same
/// argmax, fewer cancelling digits.
double D_n_shape(double x, const MesoScale& s);

enum class HatMode { Closed, ExactDifference };

/// Scaled increment of D_n around x = 1 along x = x(c_n y):
///   Closed:          c_n^2 (-y^2/3 - (y^2/3) log y + y^2/2)
///   ExactDifference: (D_n(x(c_n y)) - D_n(1)) / K
/// D_n(1) uses the x -> 1 limit of a(x), which is finite.
double hat_D_n(double y, const MesoScale& s, HatMode mode = HatMode::Closed);

struct ArgmaxOptions {
  double M = 20.0;       // scan ceiling
  int budget = 200;      // golden-section iterations
  double lower = 0.0;    // 0 means the default clamp 1 + 1/K
  double tol_scale = 1e-3;  // tolerance is tol_scale * c_n^2
};

struct ArgmaxResult {
  double x;
  double value;
  int iterations;
  double scaled;  // (x - 1) / c_n^2
};

/// argmax of D_n over [1 + 1/K, M] by golden section.
ArgmaxResult argmax_x(const MesoScale& s, const ArgmaxOptions& opts = {});

enum class RegimeCase { BelowN25, Meso };

std::string to_string(RegimeCase c);

struct ExpansionResult {
  double base_log;          // log(p^{K-1} K^{K-2} (1-p)^{(K-1)(K-2)/2})
  double correction;        // C_n
  double total_log;         // base_log + correction
  RegimeCase regime_case;
  double correction_bound;  // K (K/n)^{1/2} recorded in the BelowN25 case, else 0
};

/// Asymptotic log P(G(K, p) connected). Below n^{2/5} the correction is 0;
/// above it C_n = K (K/2n)^2 / 6. Evaluated at `bits` of precision.
/// Throws DomainError if K >= n, ParameterOutOfRange if K < 2.
ExpansionResult log_connected_prob_asymptotic(std::int64_t K, const Regime& r,
                                              unsigned bits = 256);

}  // namespace erldp
