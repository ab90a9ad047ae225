#include "erldp/regime.hpp"

#include <cmath>
#include <sstream>

#include "erldp/errors.hpp"

namespace erldp {

namespace {

double raw_edge_probability(std::int64_t n, double b_n, double theta) {
  const double nd = static_cast<double>(n);
  return (1.0 + theta * std::cbrt(b_n * b_n / nd)) / nd;
}

}  // namespace

Regime::Regime(std::int64_t n, double b_n, double theta, double epsilon,
               bool asymptotic)
    : n_(n), b_n_(b_n), theta_(theta), epsilon_(epsilon), asymptotic_(asymptotic) {
  if (n < 1) throw ParameterOutOfRange("n must be >= 1");
  if (!(b_n > 0.0) || !std::isfinite(b_n)) throw ParameterOutOfRange("b_n must be positive");
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw ParameterOutOfRange("epsilon must be positive");
  }
  if (!std::isfinite(theta)) throw ParameterOutOfRange("theta must be finite");
  const double p = raw_edge_probability(n, b_n, theta);
  if (!(p > 0.0 && p < 1.0)) {
    std::ostringstream os;
    os << "edge probability " << p << " outside (0,1)";
    throw ParameterOutOfRange(os.str());
  }
  if (asymptotic) {
    const Thresholds t = thresholds(*this);
    if (t.alpha_n < 1.0) throw ParameterOutOfRange("alpha_n < 1 in asymptotic regime");
    if (static_cast<double>(t.beta_n) < t.alpha_n) {
      throw ParameterOutOfRange("beta_n < alpha_n in asymptotic regime");
    }
  }
}

Regime Regime::from_gamma(std::int64_t n, double gamma, double theta,
                          double epsilon, bool asymptotic) {
  if (!(gamma > 0.0 && gamma < 0.5)) throw ParameterOutOfRange("gamma must lie in (0, 1/2)");
  if (n < 1) throw ParameterOutOfRange("n must be >= 1");
  return Regime(n, std::pow(static_cast<double>(n), gamma), theta, epsilon, asymptotic);
}

double Regime::window() const noexcept {
  return std::cbrt(b_n_ * b_n_ / static_cast<double>(n_));
}

double Regime::omega() const noexcept { return 1.0 + theta_ * window(); }

double Regime::meso_scale() const noexcept {
  return std::pow(static_cast<double>(n_) * b_n_, 2.0 / 3.0);
}

Regime Regime::with_theta(double theta) const {
  return Regime(n_, b_n_, theta, epsilon_, asymptotic_);
}

Regime Regime::with_epsilon(double epsilon) const {
  return Regime(n_, b_n_, theta_, epsilon, asymptotic_);
}

double edge_probability(const Regime& r) {
  const double p = raw_edge_probability(r.n(), r.b_n(), r.theta());
  if (!(p > 0.0 && p < 1.0)) throw ParameterOutOfRange("edge probability outside (0,1)");
  return p;
}

Thresholds thresholds(const Regime& r) {
  const double nd = static_cast<double>(r.n());
  const double b23 = std::pow(r.b_n(), 2.0 / 3.0);
  Thresholds t;
  t.alpha_n = r.epsilon() * r.meso_scale();
  t.beta_n = static_cast<std::int64_t>(std::ceil(std::pow(nd, 17.0 / 24.0) * b23));
  return t;
}

HypothesisReport check_hypothesis(const Regime& r) {
  const double nd = static_cast<double>(r.n());
  HypothesisReport h;
  h.margin_lower = r.b_n() / std::pow(nd, 0.3);
  h.margin_upper = r.b_n() / std::sqrt(nd);
  h.satisfies_lower = h.margin_lower >= 1.0;
  h.satisfies_upper = h.margin_upper <= 1.0;
  return h;
}

std::string describe(const HypothesisReport& h) {
  std::ostringstream os;
  os << "b_n/n^0.3=" << h.margin_lower << (h.satisfies_lower ? " (ok)" : " (violated)")
     << ", b_n/n^0.5=" << h.margin_upper << (h.satisfies_upper ? " (ok)" : " (violated)");
  return os.str();
}

}  // namespace erldp
