#include "erldp/connectivity_asymptotics.hpp"

#include <cmath>
#include <limits>

#include "erldp/argmax.hpp"
#include "erldp/errors.hpp"
#include "erldp/exact_oracle.hpp"
#include "erldp/numeric.hpp"

namespace erldp {

namespace {

constexpr double kSeriesCutoff = 1e-3;
constexpr double kYMax = 1.0 - 1e-15;

double x_minus_one_series(double y) {
  const double y2 = y * y;
  double term = y2, sum = 0.0;
  for (int k = 1; k < 40; ++k) {
    const double add = term / (2.0 * k + 1.0);
    sum += add;
    if (add < 1e-18 * sum) break;
    term *= y2;
  }
  return sum;
}

// dx/dy = (1/(1-y^2) - x) / y, with its series 2y/3 + 4y^3/5 + ... near 0
double dx_dy(double y) {
  if (y < kSeriesCutoff) return 2.0 * y / 3.0 + 4.0 * y * y * y / 5.0;
  return (1.0 / (1.0 - y * y) - x_of_y(y)) / y;
}

// a(x) from (x - 1, y); the log arguments are rewritten as
//   1 - x + x y   = y - (x-1)(1-y)
//   1 - x + x y^2 = y^2 - (x-1)(1-y^2)
double a_from(double xm1, double y) {
  const double x = 1.0 + xm1;
  const double u = y - xm1 * (1.0 - y);
  const double v = y * y - xm1 * (1.0 - y * y);
  if (!(u > 0.0) || !(v > 0.0)) {
    throw DomainError("a(x): log argument not positive at x = " + std::to_string(x));
  }
  return x * (x + 1.0) * (1.0 - y) + std::log(u) - 0.5 * std::log(v);
}

// x -> 1 limit of a(x): the two logs cancel to -log(2/3)/2
const double kA1 = 2.0 + 0.5 * std::log(1.5);

// log of (2 e^{-x} y^{1-x} / sqrt(1-y^2))
double log_shape_factor(double xm1, double y) {
  const double x = 1.0 + xm1;
  double s = std::log(2.0) - x - 0.5 * std::log1p(-y * y);
  if (xm1 != 0.0) s -= xm1 * std::log(y);
  return s;
}

double log_pair_binomial_shape(std::int64_t K, double m) {
  // log binom(N, m) minus the constant lgamma(N+1)
  const double N = static_cast<double>(K) * static_cast<double>(K - 1) / 2.0;
  return -std::lgamma(m + 1.0) - std::lgamma(N - m + 1.0);
}

double pair_count(std::int64_t K) {
  return static_cast<double>(K) * static_cast<double>(K - 1) / 2.0;
}

// D_n(x) without lgamma(N+1), as a function of (x - 1)
double D_shape_xm1(double xm1, const MesoScale& s) {
  const double Kd = static_cast<double>(s.K);
  const double m = (1.0 + xm1) * Kd;
  if (m > pair_count(s.K)) throw DomainError("D_n: x K exceeds K(K-1)/2");
  double a, shape;
  if (xm1 == 0.0) {
    a = kA1;
    shape = log_shape_factor(0.0, 0.0);
  } else {
    const double y = y_of_x(1.0 + xm1);
    a = a_from(xm1, y);
    shape = log_shape_factor(xm1, y);
  }
  return log_pair_binomial_shape(s.K, m) + Kd * shape + a + m * std::log(s.p / (1.0 - s.p));
}

}  // namespace

double x_minus_one_of_y(double y) {
  if (!(y >= 0.0 && y < 1.0)) throw DomainError("x(y) requires y in [0, 1)");
  if (y < 0.1) return x_minus_one_series(y);
  return std::atanh(y) / y - 1.0;
}

double x_of_y(double y) {
  if (!(y >= 0.0 && y < 1.0)) throw DomainError("x(y) requires y in [0, 1)");
  if (y < kSeriesCutoff) return 1.0 + x_minus_one_series(y);
  return std::atanh(y) / y;
}

double y_of_x(double x, int budget) {
  if (!(x >= 1.0)) throw DomainError("y_of_x requires x >= 1");
  if (x == 1.0) return 0.0;
  const double xm1 = x - 1.0;
  double lo = 0.0, hi = kYMax;
  if (x_minus_one_of_y(hi) < xm1) return hi;  // x beyond what doubles resolve
  double y = std::min(std::sqrt(3.0 * xm1), 0.5 * (lo + hi));
  for (int it = 0; it < budget; ++it) {
    const double f = x_minus_one_of_y(y) - xm1;
    if (f > 0.0) hi = y; else lo = y;
    if (f == 0.0 || hi - lo < 1e-13) return y;
    // Newton step, fall back to bisection when it leaves the bracket
    double next = y - f / dx_dy(y);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::fabs(next - y) < 1e-15) return next;
    y = next;
  }
  throw NoConvergence("y_of_x: iteration budget exhausted");
}

double a_of_x(double x) {
  if (!(x > 1.0)) throw DomainError("a(x) requires x > 1");
  return a_from(x - 1.0, y_of_x(x));
}

double bcm_log_connected_count_real(std::int64_t K, double k) {
  if (K < 2) throw ParameterOutOfRange("K must be >= 2");
  if (!(k > 0.0)) throw ParameterOutOfRange("excess k must be positive");
  const double Kd = static_cast<double>(K);
  const double N = pair_count(K);
  if (k + Kd > N) throw DomainError("K + k exceeds K(K-1)/2");
  const double xm1 = k / Kd;
  const double y = y_of_x(1.0 + xm1);
  return std::lgamma(N + 1.0) + log_pair_binomial_shape(K, Kd + k) +
         Kd * log_shape_factor(xm1, y) + a_from(xm1, y);
}

double bcm_log_connected_count(std::int64_t K, std::int64_t k) {
  if (k < 1) throw ParameterOutOfRange("excess k must be >= 1");
  return bcm_log_connected_count_real(K, static_cast<double>(k));
}

MesoScale::MesoScale(std::int64_t K_, const Regime& r) : K(K_), regime(r) {
  if (K < 2) throw ParameterOutOfRange("K must be >= 2");
  if (K >= r.n()) throw DomainError("K must be below n");
  p = edge_probability(r);
  const double t = r.window();
  a_n = std::log(static_cast<double>(K - 1)) - std::log(static_cast<double>(r.n())) -
        std::log(2.0) + r.theta() * t - r.theta() * r.theta() * t * t;
  c_n = std::exp(a_n);
}

double D_n_shape(double x, const MesoScale& s) {
  if (!(x >= 1.0)) throw DomainError("D_n requires x >= 1");
  return D_shape_xm1(x - 1.0, s);
}

double D_n(double x, const MesoScale& s, bool allow_interior) {
  const double lower = 1.0 + 1.0 / static_cast<double>(s.K);
  if (!(x >= 1.0) || (!allow_interior && x < lower)) {
    throw DomainError("D_n requires x >= 1 + 1/K");
  }
  return std::lgamma(pair_count(s.K) + 1.0) + D_shape_xm1(x - 1.0, s);
}

double hat_D_n(double y, const MesoScale& s, HatMode mode) {
  if (!(y >= 0.0)) throw DomainError("hat_D_n requires y >= 0");
  const double cy = s.c_n * y;
  if (!(cy < 1.0)) throw DomainError("hat_D_n requires c_n y < 1");
  if (mode == HatMode::Closed) {
    if (y == 0.0) return 0.0;
    const double y2 = y * y;
    return s.c_n * s.c_n * (-y2 / 3.0 - (y2 / 3.0) * std::log(y) + y2 / 2.0);
  }
  const double xm1 = x_minus_one_of_y(cy);
  return (D_shape_xm1(xm1, s) - D_shape_xm1(0.0, s)) / static_cast<double>(s.K);
}

ArgmaxResult argmax_x(const MesoScale& s, const ArgmaxOptions& opts) {
  const double lo = opts.lower > 0.0 ? opts.lower : 1.0 + 1.0 / static_cast<double>(s.K);
  const double hi = std::min(opts.M, pair_count(s.K) / static_cast<double>(s.K));
  if (!(hi > lo)) throw DomainError("argmax_x: empty search interval");
  const double tol = opts.tol_scale * s.c_n * s.c_n;
  // D_n is evaluated through x - 1 so that the bracket near 1 keeps its digits
  auto f = [&](double xm1) { return D_shape_xm1(xm1, s); };
  const GoldenResult g = golden_section_max(f, lo - 1.0, hi - 1.0, tol, opts.budget);
  ArgmaxResult r;
  r.x = 1.0 + g.x;
  r.value = g.value + std::lgamma(pair_count(s.K) + 1.0);
  r.iterations = g.iterations;
  r.scaled = g.x / (s.c_n * s.c_n);
  return r;
}

std::string to_string(RegimeCase c) {
  return c == RegimeCase::BelowN25 ? "below_n25" : "meso";
}

ExpansionResult log_connected_prob_asymptotic(std::int64_t K, const Regime& r, unsigned bits) {
  if (K < 2) throw ParameterOutOfRange("K must be >= 2");
  if (K >= r.n()) throw DomainError("K must be below n");
  const double pd = edge_probability(r);
  ScopedPrecision guard(bits);
  const HighFloat p(pd);
  const HighFloat Kh(static_cast<double>(K));
  const HighFloat base = (Kh - 1) * log(p) + (Kh - 2) * log(Kh) +
                         (Kh - 1) * (Kh - 2) / 2 * log1p(-p);
  ExpansionResult out{};
  out.base_log = static_cast<double>(base);
  const double nd = static_cast<double>(r.n());
  if (static_cast<double>(K) <= std::pow(nd, 0.4)) {
    out.regime_case = RegimeCase::BelowN25;
    out.correction = 0.0;
    out.correction_bound = static_cast<double>(K) * std::sqrt(static_cast<double>(K) / nd);
    out.total_log = out.base_log;
    return out;
  }
  out.regime_case = RegimeCase::Meso;
  const HighFloat ratio = Kh / (2 * HighFloat(nd));
  const HighFloat corr = Kh * ratio * ratio / 6;
  out.correction = static_cast<double>(corr);
  out.total_log = static_cast<double>(base + corr);
  out.correction_bound = 0.0;
  return out;
}

}  // namespace erldp
