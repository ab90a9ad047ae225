#pragma once

#include <cstdint>
#include <string>

namespace erldp {

/// Scaling parameters of the near-critical window.
///
/// The edge probability is (1 + theta * (b_n^2/n)^{1/3}) / n, with the
/// second-order freedom in the window fixed to zero. Immutable after
/// construction; safe to share across threads.
class Regime {
 public:
  static constexpr double kDefaultEpsilon = 0.1;

  /// Throws ParameterOutOfRange when n < 1, b_n <= 0, epsilon <= 0, or the
  /// derived edge probability falls outside (0, 1). With `asymptotic` set,
  /// also requires alpha_n >= 1 and beta_n >= alpha_n.
  Regime(std::int64_t n, double b_n, double theta,
         double epsilon = kDefaultEpsilon, bool asymptotic = false);

  /// b_n = n^gamma with gamma in (0, 1/2).
  static Regime from_gamma(std::int64_t n, double gamma, double theta,
                           double epsilon = kDefaultEpsilon,
                           bool asymptotic = false);

  std::int64_t n() const noexcept { return n_; }
  double b_n() const noexcept { return b_n_; }
  double theta() const noexcept { return theta_; }
  double epsilon() const noexcept { return epsilon_; }
  bool asymptotic() const noexcept { return asymptotic_; }

  /// (b_n^2 / n)^{1/3}, the width of the shift away from criticality.
  double window() const noexcept;
  /// n * p = 1 + theta * window().
  double omega() const noexcept;
  /// (n b_n)^{2/3}, the mesoscopic size unit.
  double meso_scale() const noexcept;

  Regime with_theta(double theta) const;
  Regime with_epsilon(double epsilon) const;

 private:
  std::int64_t n_;
  double b_n_;
  double theta_;
  double epsilon_;
  bool asymptotic_;
};

struct Thresholds {
  double alpha_n;       // epsilon * (n b_n)^{2/3}
  std::int64_t beta_n;  // ceil(n^{17/24} b_n^{2/3})
};

struct HypothesisReport {
  bool satisfies_lower;  // b_n >= n^{3/10}
  bool satisfies_upper;  // b_n <= n^{1/2}
  double margin_lower;   // b_n / n^{3/10}
  double margin_upper;   // b_n / n^{1/2}

  bool satisfied() const noexcept { return satisfies_lower && satisfies_upper; }
};

double edge_probability(const Regime& r);
Thresholds thresholds(const Regime& r);

/// Advisory only: desk-scale runs routinely violate the hypothesis.
HypothesisReport check_hypothesis(const Regime& r);

std::string describe(const HypothesisReport& h);

}  // namespace erldp
