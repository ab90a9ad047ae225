#include "erldp/ldp_core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <memory>

#include "erldp/connectivity_asymptotics.hpp"
#include "erldp/errors.hpp"
#include "erldp/exact_oracle.hpp"

namespace erldp {

// ---------------------------------------------------------------------------
// MesoMeasure

MesoMeasure MesoMeasure::from_weighted(std::vector<std::pair<double, std::int64_t>> atoms) {
  std::map<double, std::int64_t> merged;
  for (const auto& [u, mult] : atoms) {
    if (!(u > 0.0) || !std::isfinite(u)) throw ParameterOutOfRange("atoms must be positive and finite");
    if (mult < 0) throw ParameterOutOfRange("negative atom multiplicity");
    if (mult > 0) merged[u] += mult;
  }
  MesoMeasure m;
  m.atoms_.assign(merged.begin(), merged.end());
  return m;
}

MesoMeasure MesoMeasure::from_atoms(const std::vector<double>& atoms) {
  std::vector<std::pair<double, std::int64_t>> w;
  w.reserve(atoms.size());
  for (double u : atoms) w.emplace_back(u, 1);
  return from_weighted(std::move(w));
}

MesoMeasure MesoMeasure::infinite() {
  MesoMeasure m;
  m.infinite_mass_ = true;
  return m;
}

std::int64_t MesoMeasure::size() const noexcept {
  std::int64_t s = 0;
  for (const auto& a : atoms_) s += a.second;
  return s;
}

double MesoMeasure::moment(int p) const {
  return moment(p, 0.0, std::numeric_limits<double>::infinity());
}

double MesoMeasure::moment(int p, double lo, double hi) const {
  if (infinite_mass_) return std::numeric_limits<double>::infinity();
  double s = 0.0;
  for (const auto& [u, mult] : atoms_) {
    if (u >= lo && u <= hi) s += static_cast<double>(mult) * std::pow(u, p);
  }
  return s;
}

MesoMeasure MesoMeasure::restricted(double lo, double hi) const {
  MesoMeasure m;
  m.infinite_mass_ = infinite_mass_;
  for (const auto& a : atoms_) {
    if (a.first >= lo && a.first <= hi) m.atoms_.push_back(a);
  }
  return m;
}

std::pair<std::vector<double>, std::vector<double>> MesoMeasure::canonical(std::size_t limit) const {
  std::vector<double> neg, pos;
  for (auto it = atoms_.rbegin(); it != atoms_.rend() && neg.size() < limit; ++it) {
    if (it->first >= 1.0) continue;
    for (std::int64_t j = 0; j < it->second && neg.size() < limit; ++j) neg.push_back(it->first);
  }
  for (const auto& [u, mult] : atoms_) {
    if (u < 1.0) continue;
    for (std::int64_t j = 0; j < mult && pos.size() < limit; ++j) pos.push_back(u);
    if (pos.size() >= limit) break;
  }
  return {neg, pos};
}

MesoMeasure meso_measure(const ClusterCounts& l, const Regime& r, double at_least) {
  const double scale = r.meso_scale();
  std::vector<std::pair<double, std::int64_t>> atoms;
  for (const auto& [k, lk] : l.sparse()) {
    const double u = static_cast<double>(k) / scale;
    if (u >= at_least) atoms.emplace_back(u, lk);
  }
  return MesoMeasure::from_weighted(std::move(atoms));
}

// ---------------------------------------------------------------------------
// Rate function and metric

double rate_function(const MesoMeasure& mu, double theta) {
  if (mu.infinite_mass()) return std::numeric_limits<double>::infinity();
  const double m1 = mu.moment(1), m3 = mu.moment(3);
  // common denominator 24 keeps simple inputs exact
  const double excess = m1 >= theta ? 4.0 * (m1 - theta) * (m1 - theta) * (m1 - theta) : 0.0;
  return (-m3 + excess + 4.0 * theta * theta * theta) / 24.0;
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double at(const std::vector<double>& side, std::size_t i, double pad) {
  return i < side.size() ? side[i] : pad;
}

double exp_neg(double u) { return u == kInf ? 0.0 : std::exp(-u); }

}  // namespace

double aligned_distance(const std::vector<double>& u_neg, const std::vector<double>& u_pos,
                        const std::vector<double>& v_neg, const std::vector<double>& v_pos) {
  double d = 0.0;
  const std::size_t nn = std::max(u_neg.size(), v_neg.size());
  for (std::size_t j = 0; j < nn; ++j) {
    const double a = at(u_neg, j, 0.0), b = at(v_neg, j, 0.0);
    if (a == b) continue;
    d += std::ldexp(std::fabs(a - b), -static_cast<int>(j + 1));  // index -(j+1)
  }
  const std::size_t np = std::max(u_pos.size(), v_pos.size());
  for (std::size_t j = 0; j < np; ++j) {
    const double a = at(u_pos, j, kInf), b = at(v_pos, j, kInf);
    if (a == b) continue;
    d += std::ldexp(std::fabs(exp_neg(a) - exp_neg(b)), -static_cast<int>(j));
  }
  return d;
}

namespace {

// (w_i) = (u_{i+1}): u_0 moves to index -1, u_1 to index 0
std::pair<std::vector<double>, std::vector<double>> shifted(const std::vector<double>& neg,
                                                            const std::vector<double>& pos) {
  std::vector<double> sneg, spos;
  sneg.reserve(neg.size() + 1);
  sneg.push_back(pos.empty() ? kInf : pos.front());
  sneg.insert(sneg.end(), neg.begin(), neg.end());
  if (pos.size() > 1) spos.assign(pos.begin() + 1, pos.end());
  return {sneg, spos};
}

double aligned_distance_inf(const std::vector<double>& u_neg, const std::vector<double>& u_pos,
                            const std::vector<double>& v_neg, const std::vector<double>& v_pos) {
  // an infinite padding entry on the negative side makes the series infinite
  const std::size_t nn = std::max(u_neg.size(), v_neg.size());
  for (std::size_t j = 0; j < nn; ++j) {
    const double a = at(u_neg, j, 0.0), b = at(v_neg, j, 0.0);
    if (a != b && (a == kInf || b == kInf)) return kInf;
  }
  return aligned_distance(u_neg, u_pos, v_neg, v_pos);
}

}  // namespace

double vague_distance(const MesoMeasure& mu, const MesoMeasure& nu) {
  auto [un, up] = mu.canonical();
  auto [vn, vp] = nu.canonical();
  auto [sun, sup] = shifted(un, up);
  auto [svn, svp] = shifted(vn, vp);
  // |a - b| and |e^{-a} - e^{-b}| are exactly symmetric in floating point,
  // so dm(mu, nu) and dm(nu, mu) agree bit for bit
  const double d0 = aligned_distance_inf(un, up, vn, vp);
  const double d1 = aligned_distance_inf(un, up, svn, svp);
  const double d2 = aligned_distance_inf(sun, sup, vn, vp);
  return std::min({d0, d1, d2});
}

bool ball_membership(const MesoMeasure& mu, const MesoMeasure& center, double delta) {
  if (!(delta > 0.0)) throw ParameterOutOfRange("ball radius must be positive");
  return vague_distance(mu, center) < delta;
}

bool compact_membership(const MesoMeasure& mu, double M) {
  if (!(M >= 0.0)) throw ParameterOutOfRange("M must be >= 0");
  return mu.moment(1) <= M;
}

double meso_limit_formula(const MesoMeasure& mu, double theta, double eps, double C) {
  if (!(eps < C)) throw ParameterOutOfRange("meso_limit_formula requires eps < C");
  const double m1 = mu.moment(1, eps, C), m3 = mu.moment(3, eps, C);
  const double d = m1 - theta;
  return (-4.0 * d * d * d - 4.0 * theta * theta * theta + m3) / 24.0;
}

// ---------------------------------------------------------------------------
// Decomposition

std::string to_string(DecomposeMode m) { return m == DecomposeMode::Rational ? "rational" : "float"; }

Bands bands_of(const Regime& r) {
  const Thresholds t = thresholds(r);
  return {static_cast<std::int64_t>(std::ceil(t.alpha_n)), t.beta_n};
}

namespace {

enum class Band { Micro, Meso, Macro };

Band band_of(std::int64_t k, const Bands& b) {
  if (k < b.alpha_k) return Band::Micro;
  if (k <= b.beta_k) return Band::Meso;
  return Band::Macro;
}

struct Masses {
  std::int64_t micro = 0, alpha = 0, beta = 0;
};

Masses masses_of(const ClusterCounts& l, const Bands& b) {
  Masses m;
  for (const auto& [k, lk] : l.sparse()) {
    switch (band_of(k, b)) {
      case Band::Micro: m.micro += k * lk; break;
      case Band::Meso: m.alpha += k * lk; break;
      case Band::Macro:
        m.alpha += k * lk;
        m.beta += k * lk;
        break;
    }
  }
  return m;
}

void check_bands(const Bands& b) {
  if (b.alpha_k < 1) throw ParameterOutOfRange("alpha band limit must be >= 1");
  if (b.beta_k < b.alpha_k - 1) throw ParameterOutOfRange("beta band limit below alpha");
}

// Rational coefficient times (1-p)^{h/2}
struct QTerm {
  Rational c{1};
  std::int64_t h = 0;

  QTerm& operator*=(const QTerm& o) {
    c *= o.c;
    h += o.h;
    return *this;
  }
};

QTerm z_term(std::int64_t n, std::int64_t k, std::int64_t lk, ConnectivityOracle& oracle) {
  QTerm t;
  t.c = pow(oracle.probability(static_cast<int>(k)), static_cast<std::uint64_t>(lk));
  t.c /= Rational(factorial(static_cast<std::uint64_t>(lk)));
  t.c /= pow(Rational(factorial(static_cast<std::uint64_t>(k))), static_cast<std::uint64_t>(lk));
  t.h = (n - k) * k * lk;
  return t;
}

Rational to_rational(QTerm t, const Rational& q) {
  if (t.h % 2 != 0) throw DomainError("odd total exponent of (1-p)");
  if (t.h >= 0) return t.c * pow(q, static_cast<std::uint64_t>(t.h / 2));
  return t.c / pow(q, static_cast<std::uint64_t>(-t.h / 2));
}

HighFloat log_of(const QTerm& t, const HighFloat& log_q) {
  if (sgn(t.c) <= 0) return -std::numeric_limits<HighFloat>::infinity();
  return log_hp(t.c) + HighFloat(static_cast<double>(t.h)) / 2 * log_q;
}

HighFloat log_ratio(const Rational& a, const Rational& b) {
  if (a == b) return 0;
  return log_hp(a) - log_hp(b);
}

}  // namespace

DecompositionReport decompose(const ClusterCounts& l, const Rational& p_in, Bands bands, int cap) {
  if (!l.valid()) throw ParameterOutOfRange("cluster counts do not sum to n");
  check_bands(bands);
  const std::int64_t n = l.n();
  if (n > cap) throw TooLarge("decompose: n exceeds exact-arithmetic cap");
  Rational p = p_in;
  p.canonicalize();
  if (sgn(p) <= 0 || cmp(p, 1) >= 0) throw ParameterOutOfRange("edge probability outside (0,1)");
  const Rational q = 1 - p;

  ConnectivityOracle oracle(p, std::max<int>(cap, static_cast<int>(n)));
  if (n >= 1) oracle.warm(static_cast<int>(n));
  const Masses ms = masses_of(l, bands);

  DecompositionReport rep;
  rep.mode = DecomposeMode::Rational;
  rep.n = n;
  rep.bands = bands;
  rep.S_alpha = ms.alpha;
  rep.S_beta = ms.beta;
  rep.N = n - ms.alpha;

  // exact law and its regrouped form
  const Rational P = law_probability(l, oracle);
  QTerm regrouped;
  regrouped.c = Rational(factorial(static_cast<std::uint64_t>(n)));
  QTerm micro;
  for (const auto& [k, lk] : l.sparse()) {
    if (band_of(k, bands) == Band::Micro) {
      micro *= z_term(n, k, lk, oracle);
    } else {
      QTerm one = z_term(n, k, 1, oracle);
      QTerm pw;
      pw.c = pow(one.c, static_cast<std::uint64_t>(lk));
      pw.h = one.h * lk;
      regrouped *= pw;
      // z_k(1)^{l_k} carries no 1/l_k!, which the regrouping puts back
      regrouped.c /= Rational(factorial(static_cast<std::uint64_t>(lk)));
    }
  }
  regrouped *= micro;
  const Rational R = to_rational(regrouped, q);

  ScopedPrecision guard(kDefaultPrecisionBits);
  const HighFloat log_q = log_hp(q);
  rep.P_exact = to_string(P);
  rep.log_P_exact = static_cast<double>(log_hp(P));
  rep.log_P = *rep.log_P_exact;
  rep.log_regrouped = static_cast<double>(log_hp(R));
  rep.regroup_exact = (P == R);
  rep.regroup_identity_residual = static_cast<double>(log_ratio(P, R));

  // F_Mi = N! (1-p)^{-S_mi S_alpha / 2} prod_{micro} z_k(l_k)
  QTerm fmi = micro;
  fmi.c *= Rational(factorial(static_cast<std::uint64_t>(rep.N)));
  fmi.h -= ms.micro * ms.alpha;
  rep.log_F_Mi = static_cast<double>(log_of(fmi, log_q));

  ClusterCounts lhat(rep.N);
  for (const auto& [k, lk] : l.sparse()) {
    if (band_of(k, bands) == Band::Micro) lhat.set(k, lk);
  }
  const Rational P_hat = law_probability(lhat, oracle);
  rep.claim_residual = static_cast<double>(log_ratio(to_rational(fmi, q), P_hat));

  if (rep.N >= 1) {
    Rational p_red = p * n / rep.N;
    p_red.canonicalize();
    if (cmp(p_red, 1) < 0) {
      ConnectivityOracle red(p_red, std::max<int>(cap, static_cast<int>(rep.N)));
      const Rational P_red = law_probability(lhat, red);
      rep.claim_residual_reduced = static_cast<double>(log_of(fmi, log_q) - log_hp(P_red));
    }
  }

  // F_Me and F_Ma as displayed; logs because of the e^{-k l_k} factors
  const HighFloat nb = HighFloat(static_cast<double>(n - ms.beta));
  HighFloat log_me = 0;
  if (rep.N > 0 && ms.alpha > 0) {
    log_me += HighFloat(static_cast<double>(rep.N)) * (log(nb) - log(HighFloat(static_cast<double>(rep.N))));
  }
  HighFloat log_ma = 0;
  const HighFloat half_micro_logq = HighFloat(static_cast<double>(ms.micro)) / 2 * log_q;
  for (const auto& [k, lk] : l.sparse()) {
    const Band b = band_of(k, bands);
    if (b == Band::Micro) continue;
    const HighFloat kl = HighFloat(static_cast<double>(k * lk));
    const HighFloat lz1 = log_of(z_term(n, k, 1, oracle), log_q) * static_cast<double>(lk);
    if (b == Band::Meso) {
      log_me += kl * (log(nb) - 1 + half_micro_logq) + lz1;
    } else {
      log_ma += kl * log(HighFloat(static_cast<double>(n))) + lz1 + kl * half_micro_logq;
    }
  }
  rep.log_F_Me = static_cast<double>(log_me);
  rep.log_F_Ma = static_cast<double>(log_ma);
  return rep;
}

namespace {

// log P(G(k, p) connected) for float mode: the high-precision recurrence
// while its working precision stays moderate, the expansion beyond.
class LogConnectivity {
 public:
  static constexpr double kMaxLostBits = 1024.0;

  LogConnectivity(double p, std::int64_t n, std::int64_t k_max, unsigned bits)
      : p_(p), n_(n), bits_(bits) {
    int hp_max = 1;
    for (std::int64_t k = 2; k <= std::min<std::int64_t>(k_max, kDefaultHighPrecisionCap); ++k) {
      if (-log_spanning_tree_term(k, p) / std::log(2.0) + static_cast<double>(k) > kMaxLostBits) break;
      hp_max = static_cast<int>(k);
    }
    if (hp_max >= 2) table_ = std::make_unique<HighPrecisionConnectivity>(p, hp_max, bits);
  }

  double operator()(std::int64_t k) const {
    if (k == 1) return 0.0;
    if (table_ && k <= table_->K_max()) return table_->log_probability(static_cast<int>(k));
    if (k < n_) {
      // the expansion only needs p and n through the regime; rebuild one
      // with b_n chosen to reproduce p exactly at theta = 1
      const double nd = static_cast<double>(n_);
      const double shift = nd * p_ - 1.0;
      if (shift > 0.0) {
        const double b = std::sqrt(shift * shift * shift * nd);
        return log_connected_prob_asymptotic(k, Regime(n_, b, 1.0), bits_).total_log;
      }
    }
    return log_spanning_tree_term(k, p_);
  }

 private:
  double p_;
  std::int64_t n_;
  unsigned bits_;
  std::unique_ptr<HighPrecisionConnectivity> table_;
};

struct FloatCtx {
  std::int64_t n;
  HighFloat log_q;
  const LogConnectivity* logP;

  HighFloat log_z(std::int64_t k, std::int64_t lk, std::int64_t size) const {
    const HighFloat K(static_cast<double>(k)), L(static_cast<double>(lk));
    return L * HighFloat((*logP)(k)) + HighFloat(static_cast<double>(size - k)) * K * L / 2 * log_q -
           lgamma(L + 1) - L * lgamma(K + 1);
  }
};

}  // namespace

DecompositionReport decompose(const ClusterCounts& l, const Regime& r, DecomposeMode mode,
                              unsigned bits, int cap) {
  if (!l.valid()) throw ParameterOutOfRange("cluster counts do not sum to n");
  if (l.n() != r.n()) throw ParameterOutOfRange("cluster counts and regime disagree on n");
  const Bands bands = bands_of(r);
  const double pd = edge_probability(r);
  if (mode == DecomposeMode::Rational) {
    Rational p;
    mpq_set_d(p.get_mpq_t(), pd);
    return decompose(l, p, bands, cap);
  }

  const std::int64_t n = l.n();
  const Masses ms = masses_of(l, bands);
  DecompositionReport rep;
  rep.mode = DecomposeMode::Float;
  rep.n = n;
  rep.bands = bands;
  rep.S_alpha = ms.alpha;
  rep.S_beta = ms.beta;
  rep.N = n - ms.alpha;

  const LogConnectivity logP(pd, n, l.largest(), bits);
  ScopedPrecision guard(bits);
  const HighFloat log_q = log1p(-HighFloat(pd));
  const FloatCtx ctx{n, log_q, &logP};

  HighFloat log_P = lgamma(HighFloat(static_cast<double>(n)) + 1);
  HighFloat regrouped = log_P;
  HighFloat micro = 0, micro_hat = 0;
  for (const auto& [k, lk] : l.sparse()) {
    const HighFloat z = ctx.log_z(k, lk, n);
    log_P += z;
    if (band_of(k, bands) == Band::Micro) {
      micro += z;
      micro_hat += ctx.log_z(k, lk, rep.N);
    } else {
      regrouped += ctx.log_z(k, 1, n) * static_cast<double>(lk) -
                   lgamma(HighFloat(static_cast<double>(lk)) + 1);
    }
  }
  regrouped += micro;
  rep.log_P = static_cast<double>(log_P);
  rep.log_regrouped = static_cast<double>(regrouped);
  rep.regroup_identity_residual = static_cast<double>(log_P - regrouped);

  const HighFloat Nh(static_cast<double>(rep.N));
  const HighFloat log_fmi = lgamma(Nh + 1) -
                            HighFloat(static_cast<double>(ms.micro)) * static_cast<double>(ms.alpha) / 2 * log_q +
                            micro;
  rep.log_F_Mi = static_cast<double>(log_fmi);
  rep.claim_residual = static_cast<double>(log_fmi - (lgamma(Nh + 1) + micro_hat));

  const HighFloat nb(static_cast<double>(n - ms.beta));
  HighFloat log_me = 0, log_ma = 0;
  if (rep.N > 0 && ms.alpha > 0) log_me += Nh * (log(nb) - log(Nh));
  const HighFloat half_micro_logq = HighFloat(static_cast<double>(ms.micro)) / 2 * log_q;
  for (const auto& [k, lk] : l.sparse()) {
    const Band b = band_of(k, bands);
    if (b == Band::Micro) continue;
    const HighFloat kl(static_cast<double>(k * lk));
    const HighFloat lz1 = ctx.log_z(k, 1, n) * static_cast<double>(lk);
    if (b == Band::Meso) {
      log_me += kl * (log(nb) - 1 + half_micro_logq) + lz1;
    } else {
      log_ma += kl * log(HighFloat(static_cast<double>(n))) + lz1 + kl * half_micro_logq;
    }
  }
  rep.log_F_Me = static_cast<double>(log_me);
  rep.log_F_Ma = static_cast<double>(log_ma);
  return rep;
}

}  // namespace erldp
