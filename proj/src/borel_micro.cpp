#include "erldp/borel_micro.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/constants/constants.hpp>

#include "erldp/argmax.hpp"
#include "erldp/errors.hpp"
#include "erldp/numeric.hpp"

namespace erldp {

namespace {

const double kHalfLog2Pi = 0.5 * std::log(2.0 * std::numbers::pi);

// lgamma(k+1) - [(k + 1/2) log k - k + log(2 pi)/2]
double stirling_remainder(std::int64_t k) {
  const double kd = static_cast<double>(k);
  if (k < 10) return std::lgamma(kd + 1.0) - ((kd + 0.5) * std::log(kd) - kd + kHalfLog2Pi);
  const double inv = 1.0 / kd, inv2 = inv * inv;
  return inv * (1.0 / 12.0 - inv2 * (1.0 / 360.0 - inv2 * (1.0 / 1260.0 - inv2 / 1680.0)));
}

// log(k^{k-1-shift} e^{-omega k} omega^k / k!) for shift in {0, 1}, in the
// Stirling form -(3/2 + shift) log k - k xi - log(2 pi)/2 - remainder(k)
double log_term(std::int64_t k, double omega, int shift) {
  const double kd = static_cast<double>(k);
  return -(1.5 + shift) * std::log(kd) - kd * borel_xi(omega) - kHalfLog2Pi - stirling_remainder(k);
}

// sum over k of k^{k-1-shift} e^{-omega k} omega^k / k!
double borel_series(double omega, int shift, const BorelSumOptions& opts) {
  if (!(omega > 0.0 && omega <= 1.0)) throw DomainError("Borel sums require omega in (0, 1]");
  if (omega == 1.0) {
    const std::int64_t K = opts.critical_terms;
    double sum = 0.0, c = 0.0;  // Kahan
    for (std::int64_t k = 1; k <= K; ++k) {
      const double y = std::exp(log_term(k, 1.0, shift)) - c;
      const double t = sum + y;
      c = (t - sum) - y;
      sum = t;
    }
    // Euler-Maclaurin tail with f(t) = t^{-s}(1 - 1/(12t) + 1/(288t^2)) / sqrt(2 pi)
    const double s = 1.5 + shift;
    const double Kd = static_cast<double>(K);
    const double norm = 1.0 / std::sqrt(2.0 * std::numbers::pi);
    const double integral =
        norm * (std::pow(Kd, 1.0 - s) / (s - 1.0) - std::pow(Kd, -s) / (12.0 * s) +
                std::pow(Kd, -s - 1.0) / (288.0 * (s + 1.0)));
    const double fK = norm * std::pow(Kd, -s) * (1.0 - 1.0 / (12.0 * Kd) + 1.0 / (288.0 * Kd * Kd));
    const double dfK = -s * norm * std::pow(Kd, -s - 1.0);
    const double tail = integral - 0.5 * fK - dfK / 12.0;
    return sum + tail;
  }
  // Consecutive terms shrink at least by rho = omega e^{1 - omega} < 1
  const double rho = omega * std::exp(1.0 - omega);
  double sum = 0.0, c = 0.0;
  for (std::int64_t k = 1; k <= opts.max_terms; ++k) {
    const double term = std::exp(log_term(k, omega, shift));
    const double y = term - c;
    const double t = sum + y;
    c = (t - sum) - y;
    sum = t;
    if (term * rho / (1.0 - rho) < 0.1 * opts.tol) return sum;
  }
  throw NoConvergence("Borel sum: tail bound not certified within the term budget");
}

double series_tail3(double x) {
  // sum_{k>=3} x^k / (k(k-1)) = (1-x) log(1-x) + x - x^2/2
  if (std::fabs(x) < 0.25) {
    double sum = 0.0, term = x * x * x;
    for (int k = 3; k < 60; ++k) {
      const double add = term / (k * (k - 1.0));
      sum += add;
      if (std::fabs(add) < 1e-18 * std::fabs(sum)) break;
      term *= x;
    }
    return sum;
  }
  if (x == 1.0) return 0.5;
  return (1.0 - x) * std::log1p(-x) + x - 0.5 * x * x;
}

}  // namespace

BorelParams BorelParams::from(double omega, std::int64_t N) {
  if (!(omega > 0.0)) throw ParameterOutOfRange("omega must be positive");
  if (N < 1) throw ParameterOutOfRange("N must be >= 1");
  return {omega, N, std::log(omega) - omega / 2.0, borel_xi(omega)};
}

double borel_xi(double omega) {
  if (!(omega > 0.0)) throw DomainError("xi requires omega > 0");
  // log(omega) - (omega - 1) loses digits near 1, log1p keeps them
  return (omega - 1.0) - std::log1p(omega - 1.0);
}

double log_borel_weight(std::int64_t k, double omega) {
  if (k < 1) throw ParameterOutOfRange("k must be >= 1");
  if (!(omega > 0.0)) throw DomainError("omega must be positive");
  if (k <= 20) {
    const double kd = static_cast<double>(k);
    return (kd - 2.0) * std::log(kd) - omega * kd + kd * std::log(omega) - std::lgamma(kd + 1.0);
  }
  return log_term(k, omega, 1);
}

double borel_weight(std::int64_t k, double omega) {
  if (k <= 20) {
    // exact product form for small k
    if (k < 1) throw ParameterOutOfRange("k must be >= 1");
    if (!(omega > 0.0)) throw DomainError("omega must be positive");
    double v = std::exp(-omega * static_cast<double>(k));
    for (std::int64_t i = 1; i <= k; ++i) v *= omega / static_cast<double>(i);
    for (std::int64_t i = 0; i < k - 2; ++i) v *= static_cast<double>(k);
    return v;  // k = 1: k^{-1} = 1
  }
  return std::exp(log_borel_weight(k, omega));
}

double borel_mean_sum(double omega, const BorelSumOptions& opts) {
  return borel_series(omega, 0, opts);
}

double borel_mass_sum(double omega, const BorelSumOptions& opts) {
  return borel_series(omega, 1, opts);
}

double delta_of_nu(double nu) {
  if (!(nu > 0.0 && nu <= 1.0)) throw DomainError("delta_of_nu requires nu in (0, 1]");
  return borel_xi(nu);
}

std::pair<double, double> tilt_identity_check_log(std::int64_t k, double omega) {
  if (k < 1) throw ParameterOutOfRange("k must be >= 1");
  // Left: Stirling-form weight at omega = 1 tilted by xi. Right: the direct
  // formula in extended precision, an independent evaluation path.
  const double left = log_term(k, 1.0, 1) - static_cast<double>(k) * borel_xi(omega);
  const long double kd = static_cast<long double>(k);
  const long double w = static_cast<long double>(omega);
  const long double right =
      (kd - 2.0L) * std::log(kd) - w * kd + kd * std::log(w) - std::lgamma(kd + 1.0L);
  return {left, static_cast<double>(right)};
}

std::pair<double, double> tilt_identity_check(std::int64_t k, double omega) {
  const auto [l, r] = tilt_identity_check_log(k, omega);
  return {std::exp(l), std::exp(r)};
}

// ---------------------------------------------------------------------------
// Recovery sequence

namespace {

struct Spread {
  std::int64_t start, r, s;
};

Spread plan_spread(std::int64_t q, std::int64_t start) {
  Spread sp{start, start - 1, q};
  if (start >= 1 && q >= start) {
    std::int64_t acc = 0, j = start;
    while (acc + j <= q) {
      acc += j;
      ++j;
    }
    sp.r = j - 1;
    sp.s = q - acc;
  }
  return sp;
}

bool spread_fits(const Spread& sp, double alpha) {
  if (sp.r >= sp.start && static_cast<double>(sp.r) >= alpha) return false;
  if (sp.s >= 1 && static_cast<double>(sp.s) >= alpha) return false;
  return true;
}

}  // namespace

RecoverySequence recovery_sequence(const Regime& reg, std::int64_t N) {
  if (N < 1 || N > reg.n()) throw ParameterOutOfRange("recovery_sequence requires 1 <= N <= n");
  const double omega = reg.omega();
  const bool tilt = reg.theta() <= 0.0;
  const double xi = borel_xi(omega);
  const double alpha = thresholds(reg).alpha_n;
  const double Nd = static_cast<double>(N);

  RecoverySequence out;
  out.N = N;
  out.omega = omega;
  out.alpha_n = alpha;

  auto profile = [&](std::int64_t k) {
    double lg = log_borel_weight(k, 1.0);
    if (tilt) lg -= static_cast<double>(k) * xi;
    return Nd / omega * std::exp(lg);
  };

  // Real profile past alpha_n and m, until the mass terms are negligible.
  const std::int64_t hard_cap = std::int64_t{1} << 20;
  std::int64_t m = 0;
  for (std::int64_t k = 1; k <= hard_cap; ++k) {
    const double lk = profile(k);
    out.real_profile.push_back(lk);
    if (m == 0 && lk < 1.0) m = k;
    if (m != 0 && static_cast<double>(k) >= alpha && static_cast<double>(k) * lk < 1e-13 * Nd) break;
  }
  if (m == 0) m = static_cast<std::int64_t>(out.real_profile.size()) + 1;
  out.m = m;

  ClusterCounts counts(N);
  std::int64_t floored_mass = 0;
  for (std::int64_t k = 1; k < m; ++k) {
    const auto fl = static_cast<std::int64_t>(std::floor(out.real_profile[static_cast<std::size_t>(k - 1)]));
    if (fl > 0 && static_cast<double>(k) >= alpha) {
      throw InfeasibleRepair("recovery_sequence: floored profile reaches alpha_n");
    }
    counts.set(k, fl);
    floored_mass += k * fl;
  }
  // The untilted profile carries mass N/omega, the tilted one N; either way
  // the deficit of the floors is N minus their mass.
  const std::int64_t q = N - floored_mass;
  out.q = q;

  const auto n23 = static_cast<std::int64_t>(std::floor(std::cbrt(static_cast<double>(reg.n()) *
                                                                   static_cast<double>(reg.n()))));
  Spread sp = plan_spread(q, n23);
  if (!spread_fits(sp, alpha)) {
    sp = plan_spread(q, static_cast<std::int64_t>(std::floor(alpha / 2.0)));
    if (!spread_fits(sp, alpha)) {
      throw InfeasibleRepair("recovery_sequence: no spread keeps mass below alpha_n");
    }
  }
  out.start = sp.start;
  out.r = sp.r;
  out.s = sp.s;
  for (std::int64_t k = sp.start; k <= sp.r; ++k) counts.add(k, 1);
  if (sp.s >= 1) counts.add(sp.s, 1);

  std::int64_t upper_mass = 0;
  for (const auto& [k, lk] : counts.sparse()) {
    if (k >= 2) upper_mass += k * lk;
  }
  const std::int64_t l1 = N - upper_mass;
  if (l1 < 0) throw InfeasibleRepair("recovery_sequence: l_1 repair would be negative");
  counts.set(1, l1);
  out.counts = std::move(counts);
  return out;
}

// ---------------------------------------------------------------------------
// J_n

namespace {

HighFloat log_A(std::int64_t k, const BorelParams& bp, const HighFloat& logN_over_omega,
                const HighFloat& a) {
  const HighFloat kh(static_cast<double>(k));
  const HighFloat log_lambda = (kh - 2) * log(kh) - kh - lgamma(kh + 1);
  (void)bp;
  return logN_over_omega + log_lambda + 1 + kh * a;
}

template <class Visit>
double J_sum(const BorelParams& bp, unsigned bits, Visit&& visit) {
  ScopedPrecision guard(bits);
  const HighFloat omega(bp.omega);
  const HighFloat logNo = log(HighFloat(static_cast<double>(bp.N))) - log(omega);
  const HighFloat a = log(omega) - omega / 2;
  HighFloat sum = 0;
  visit([&](std::int64_t k, const HighFloat& lk) {
    if (lk == 0) return;
    sum += lk * (log_A(k, bp, logNo, a) - log(lk));
  });
  return static_cast<double>(sum);
}

}  // namespace

double J_n(const std::vector<double>& l, const BorelParams& bp, unsigned bits) {
  return J_sum(bp, bits, [&](auto&& add) {
    for (std::size_t i = 0; i < l.size(); ++i) {
      if (l[i] < 0.0) throw DomainError("J_n requires nonnegative entries");
      if (l[i] > 0.0) add(static_cast<std::int64_t>(i + 1), HighFloat(l[i]));
    }
  });
}

double J_n(const ClusterCounts& l, const BorelParams& bp, unsigned bits) {
  return J_sum(bp, bits, [&](auto&& add) {
    for (const auto& [k, lk] : l.sparse()) add(k, HighFloat(static_cast<double>(lk)));
  });
}

RateCheck recovery_rate_check(const Regime& r, std::int64_t N, unsigned bits) {
  const RecoverySequence seq = recovery_sequence(r, N);
  const BorelParams bp = BorelParams::from(r.omega(), N);
  RateCheck out;
  out.J = J_n(seq.counts, bp, bits);
  double stirling;
  {
    ScopedPrecision guard(bits);
    const HighFloat two_pi = 2 * boost::math::constants::pi<HighFloat>();
    HighFloat acc = log(two_pi * static_cast<double>(N)) / 2;
    for (const auto& [k, lk] : seq.counts.sparse()) {
      if (lk <= 1) continue;
      const HighFloat L(static_cast<double>(lk));
      acc -= (log(two_pi * L) + 1 / (12 * L + 1)) / 2;
    }
    stirling = static_cast<double>(acc);
  }
  const double b2 = r.b_n() * r.b_n();
  out.F = out.J + stirling;
  out.value = out.F / b2;
  out.J_scaled = out.J / b2;
  const double th = r.theta();
  out.target = th >= 0.0 ? -th * th * th / 6.0 : 0.0;
  return out;
}

// ---------------------------------------------------------------------------
// Level sets

std::pair<double, double> level_set_interval(const Regime& r, std::int64_t N) {
  const double omega = r.omega();
  const double lo = -(1.0 - 1.0 / omega) / r.window();
  const double hi = static_cast<double>(N) / (omega * r.meso_scale());
  return {lo, hi};
}

double level_set_excess(double M, const Regime& r, std::int64_t N) {
  const auto [lo, hi] = level_set_interval(r, N);
  if (!(M >= lo && M <= hi)) throw DomainError("level set M outside the admissible interval");
  const double x = M * r.window();
  if (x > 1.0) throw DomainError("level set M gives M (b_n^2/n)^{1/3} > 1");
  const double b2 = r.b_n() * r.b_n();
  const double eps = r.epsilon();
  return -static_cast<double>(N) / r.omega() * series_tail3(x) / b2 + M * eps * eps;
}

double level_set_objective(double M, const Regime& r, std::int64_t N) {
  const double b2 = r.b_n() * r.b_n();
  return static_cast<double>(N) / (2.0 * r.omega()) + level_set_excess(M, r, N) * b2;
}

double level_set_argmax(const Regime& r, std::int64_t N, double lo, double hi) {
  const auto [ilo, ihi] = level_set_interval(r, N);
  const double a = std::max(lo, ilo);
  const double b = std::min({hi, ihi, 1.0 / r.window()});
  if (!(b >= a)) throw DomainError("level_set_argmax: empty interval");
  auto f = [&](double M) { return level_set_excess(M, r, N); };
  return golden_section_max(f, a, b, 1e-9, 400).x;
}

}  // namespace erldp
