// Acceptance suite: one PASS/FAIL line per check, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "../support/brute_force.hpp"
#include "erldp/borel_micro.hpp"
#include "erldp/connectivity_asymptotics.hpp"
#include "erldp/exact_oracle.hpp"
#include "erldp/ldp_core.hpp"
#include "erldp/simulator.hpp"

using namespace erldp;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

Outcome law_normalization() {
  const auto t0 = Clock::now();
  int bad = 0, laws = 0;
  for (int n = 1; n <= 10; ++n) {
    for (const Rational p : {Rational(1, 4), Rational(1, 3), Rational(1, 2)}) {
      ++laws;
      if (cluster_law_exact(n, p).total() != 1) ++bad;
    }
  }
  const double t = seconds_since(t0);
  std::ostringstream os;
  os << laws << " laws, " << bad << " not summing to 1, " << t << " s";
  return {bad == 0 && t < 30.0, os.str()};
}

Outcome brute_force_equivalence() {
  const auto t0 = Clock::now();
  int bad = 0, checked = 0;
  ConnectedCountTable table;
  for (int K = 1; K <= 6; ++K) {
    const auto brute = brute::connected_counts(K);
    for (std::size_t m = 0; m < brute.size(); ++m) {
      ++checked;
      if (table.count(K, static_cast<std::int64_t>(m)) != BigInt(std::to_string(brute[m]))) ++bad;
    }
  }
  for (int K = 1; K <= 5; ++K) {
    ++checked;
    if (connected_probability_exact(K, Rational(1, 2)) != brute::connected_probability(K, Rational(1, 2))) ++bad;
  }
  const double t = seconds_since(t0);
  std::ostringstream os;
  os << checked << " values, " << bad << " mismatches, " << t << " s";
  return {bad == 0 && t < 60.0, os.str()};
}

Outcome cayley() {
  int bad = 0;
  for (int K = 2; K <= 9; ++K) {
    BigInt expect = 1;
    for (int i = 0; i < K - 2; ++i) expect *= K;
    if (connected_count(K, K - 1) != expect) ++bad;
  }
  return {bad == 0, std::to_string(bad) + " mismatches for K = 2..9"};
}

Outcome exact_vs_asymptotic() {
  const auto t0 = Clock::now();
  std::ostringstream os;
  std::vector<double> errs;
  for (int K : {64, 128, 256, 512}) {
    // b_n = n^{0.4} puts K = (n b_n)^{2/3} at n = K^{15/14}
    const auto n = static_cast<std::int64_t>(std::lround(std::pow(K, 15.0 / 14.0)));
    const Regime r = Regime::from_gamma(n, 0.4, 1.0);
    const auto e = log_connected_prob_asymptotic(K, r, 256);
    const double exact = log_connected_probability_hp(K, edge_probability(r), 256);
    errs.push_back(std::fabs(e.total_log - exact));
    os << "K=" << K << " n=" << n << " err=" << errs.back() << "; ";
  }
  bool monotone = true;
  for (std::size_t i = 1; i < errs.size(); ++i) monotone = monotone && errs[i] <= errs[i - 1];
  const bool bound = errs.back() <= 10.0 * std::log(512.0);
  const double t = seconds_since(t0);
  os << "nonincreasing=" << (monotone ? "yes" : "no") << " final<=10logK=" << (bound ? "yes" : "no") << ", " << t
     << " s";
  return {monotone && bound && t < 300.0, os.str()};
}

Outcome argmax_expansion() {
  // theta = 0 and b_n = 1000 keep c_n = exp(a_n) free of the window terms
  const MesoScale s1(10'000, Regime(1'000'000, 1000.0, 0.0));
  const MesoScale s2(10'000, Regime(2'000'000, 1000.0, 0.0));
  const auto a1 = argmax_x(s1), a2 = argmax_x(s2);
  const double ratio = (a1.x - 1.0) / (a2.x - 1.0);
  const bool close = std::fabs(a1.scaled - 1.0) <= 0.15;
  const bool quarter = ratio >= 3.0 && ratio <= 5.0;
  std::ostringstream os;
  os << "(x-1)/c^2=" << a1.scaled << " (x=" << a1.x << ", c^2=" << s1.c_n * s1.c_n << ", clamp 1+1/K=" << 1.0 + 1e-4
     << "), n->2n ratio=" << ratio;
  return {close && quarter, os.str()};
}

Outcome borel_identities() {
  double worst_sum = 0.0, crit = 0.0, worst_tilt = 0.0;
  for (double w : {0.3, 0.5, 0.7, 0.9}) {
    worst_sum = std::max(worst_sum, std::fabs(borel_mean_sum(w) - w));
    worst_sum = std::max(worst_sum, std::fabs(borel_mass_sum(w) - w * (1 - w / 2)));
  }
  crit = std::max(std::fabs(borel_mean_sum(1.0) - 1.0), std::fabs(borel_mass_sum(1.0) - 0.5));
  std::vector<std::int64_t> ks;
  for (std::int64_t k = 1; k <= 100; ++k) ks.push_back(k);
  for (double e = 2.05; e <= 5.0 + 1e-9; e += 0.05) ks.push_back(std::llround(std::pow(10.0, e)));
  for (double w : {0.3, 0.5, 0.7, 0.9, 1.0}) {
    for (auto k : ks) {
      const auto [l, r] = tilt_identity_check_log(k, w);
      worst_tilt = std::max(worst_tilt, std::fabs(l - r) / std::max(std::fabs(r), 1e-300));
    }
  }
  std::ostringstream os;
  os << "sums err " << worst_sum << " (omega<1), " << crit << " (omega=1); tilt rel err " << worst_tilt << " over "
     << ks.size() << " k";
  return {worst_sum <= 1e-10 && crit <= 1e-5 && worst_tilt <= 1e-12, os.str()};
}

Outcome recovery_validity() {
  int bad = 0, runs = 0;
  std::string first_failure;
  for (std::int64_t n : {10'000, 100'000}) {
    for (double g : {0.35, 0.4}) {
      for (double th : {-1.0, 0.0, 0.5, 1.0}) {
        ++runs;
        const Regime r = Regime::from_gamma(n, g, th);
        try {
          const auto s = recovery_sequence(r, n);
          bool ok = s.counts.mass() == n;
          for (auto v : s.counts.dense()) ok = ok && v >= 0;
          ok = ok && static_cast<double>(s.counts.largest()) <= thresholds(r).alpha_n;
          if (!ok) {
            ++bad;
            if (first_failure.empty()) first_failure = "invalid profile at n=" + std::to_string(n);
          }
        } catch (const std::exception& e) {
          ++bad;
          if (first_failure.empty()) first_failure = e.what();
        }
      }
    }
  }
  std::string detail = std::to_string(runs) + " configurations, " + std::to_string(bad) + " invalid";
  if (!first_failure.empty()) detail += " (" + first_failure + ")";
  return {bad == 0, detail};
}

Outcome rate_trend() {
  bool pass = true;
  std::ostringstream os;
  for (double th : {-0.5, 1.0}) {
    std::vector<double> gaps;
    double target = 0.0;
    os << "theta=" << th << ":";
    for (std::int64_t n : {10'000, 100'000, 1'000'000}) {
      const auto rc = recovery_rate_check(Regime::from_gamma(n, 0.35, th), n);
      target = rc.target;
      gaps.push_back(std::fabs(rc.value - rc.target));
      os << " " << rc.value;
    }
    for (std::size_t i = 1; i < gaps.size(); ++i) pass = pass && gaps[i] < gaps[i - 1];
    if (th > 0) pass = pass && gaps.back() < 0.5 * std::fabs(target);
    os << " (target " << target << "); ";
  }
  return {pass, os.str()};
}

Outcome regrouping_identity() {
  int bad = 0, checked = 0;
  for (int n = 1; n <= 8; ++n) {
    for (const Bands b : {Bands{2, 4}, Bands{3, 5}}) {
      for (const auto& l : partition_enumerate(n)) {
        ++checked;
        const auto rep = decompose(l, Rational(1, 3), b);
        if (!rep.regroup_exact || rep.regroup_identity_residual != 0.0) ++bad;
      }
    }
  }
  return {bad == 0, std::to_string(checked) + " profiles, " + std::to_string(bad) + " nonzero residuals"};
}

Outcome rare_event_agreement() {
  const std::int64_t trials = 100'000;
  SimConfig below{Regime(50, 1.0, 0.0), trials, 20240501, 4, 1.0 / 50.0};
  const auto eb = estimate_event(below, parse_event("below:10", below.regime));
  const double pb = prob_all_components_below(50, 10, Rational(1, 50)).get_d();
  const double zb = std::fabs(eb.p_hat - pb) / std::sqrt(pb * (1 - pb) / trials);

  SimConfig conn{Regime(12, 1.0, 0.0), trials, 20240502, 4, 0.3};
  const auto ec = estimate_event(conn, parse_event("connected", conn.regime));
  const double pc = connected_probability_exact(12, Rational(3, 10)).get_d();
  const double zc = std::fabs(ec.p_hat - pc) / std::sqrt(pc * (1 - pc) / trials);
  std::ostringstream os;
  os << "below:10 p_hat=" << eb.p_hat << " exact=" << pb << " z=" << zb << "; connected p_hat=" << ec.p_hat
     << " exact=" << pc << " z=" << zc;
  return {zb <= 3.0 && zc <= 4.0, os.str()};
}

Outcome rate_spot_values() {
  const double a = rate_function(MesoMeasure{}, 1.0);
  const double b = rate_function(MesoMeasure::from_atoms({1.0}), 1.0);
  const double c = rate_function(MesoMeasure{}, -1.0);
  std::ostringstream os;
  os.precision(17);
  os << a << ", " << b << ", " << c;
  return {a == 1.0 / 6.0 && b == 1.0 / 8.0 && c == 0.0, os.str()};
}

Outcome metric_sanity() {
  std::mt19937_64 rng(12345);
  std::uniform_int_distribution<int> count(0, 12);
  std::uniform_real_distribution<double> u(0.01, 5.0);
  double worst_asym = 0.0;
  int zero_mismatch = 0, equal_pairs = 0;
  for (int t = 0; t < 1000; ++t) {
    std::vector<double> x, y;
    for (int i = count(rng); i > 0; --i) x.push_back(u(rng));
    if (t % 10 == 0) {
      // equal multiset in a different order
      y.assign(x.rbegin(), x.rend());
      ++equal_pairs;
    } else {
      for (int i = count(rng); i > 0; --i) y.push_back(u(rng));
    }
    const auto mx = MesoMeasure::from_atoms(x), my = MesoMeasure::from_atoms(y);
    const double d1 = vague_distance(mx, my), d2 = vague_distance(my, mx);
    worst_asym = std::max(worst_asym, std::fabs(d1 - d2));
    if ((d1 == 0.0) != (mx == my)) ++zero_mismatch;
  }
  std::ostringstream os;
  os << "max |d(a,b)-d(b,a)|=" << worst_asym << ", zero/equality mismatches=" << zero_mismatch << " (" << equal_pairs
     << " equal pairs)";
  return {worst_asym <= 1e-14 && zero_mismatch == 0, os.str()};
}

Outcome simulator_statistics() {
  const auto edges = [](const Sample& s) { return static_cast<double>(s.edges); };
  const auto isolated = [](const Sample& s) { return static_cast<double>(s.counts.count(1)); };

  SimConfig ce{Regime(1000, 1.0, 0.0), 10'000, 777, 1, 1e-3};
  const auto se = estimate_statistic(ce, edges);
  const double pairs = 1000.0 * 999.0 / 2.0;
  const double me = pairs * 1e-3;
  const double ze = std::fabs(se.mean - me) / std::sqrt(pairs * 1e-3 * (1 - 1e-3) / ce.trials);

  SimConfig ci{Regime(1000, 1.0, 0.0), 10'000, 778, 1, 2e-3};
  const auto si = estimate_statistic(ci, isolated);
  const double mi = 1000.0 * std::pow(1 - 2e-3, 999);
  const double zi = std::fabs(si.mean - mi) / si.std_error();

  bool identical = true;
  for (int w : {4, 8}) {
    SimConfig c1 = ce, c2 = ci;
    c1.parallelism = w;
    c2.parallelism = w;
    const auto a = estimate_statistic(c1, edges), b = estimate_statistic(c2, isolated);
    identical = identical && a.mean == se.mean && a.variance == se.variance && b.mean == si.mean &&
                b.variance == si.variance;
    SimConfig c3{Regime(50, 1.0, 0.0), 20'000, 99, w, 0.02};
    SimConfig c4 = c3;
    c4.parallelism = 1;
    const auto h1 = estimate_event(c3, parse_event("below:10", c3.regime));
    const auto h2 = estimate_event(c4, parse_event("below:10", c4.regime));
    identical = identical && h1.hits == h2.hits && h1.p_hat == h2.p_hat;
  }
  std::ostringstream os;
  os << "edges mean " << se.mean << " vs " << me << " (z=" << ze << "), isolated mean " << si.mean << " vs " << mi
     << " (z=" << zi << "), workers {1,4,8} bit-identical=" << (identical ? "yes" : "no");
  return {ze <= 4.0 && zi <= 4.0 && identical, os.str()};
}

}  // namespace

int main() {
  std::setvbuf(stdout, nullptr, _IONBF, 0);
  const std::vector<std::pair<std::string, std::function<Outcome()>>> checks{
      {"exact law normalization", law_normalization},
      {"brute-force equivalence", brute_force_equivalence},
      {"Cayley identity", cayley},
      {"exact vs asymptotic connectivity", exact_vs_asymptotic},
      {"argmax expansion", argmax_expansion},
      {"Borel identities", borel_identities},
      {"recovery sequence validity", recovery_validity},
      {"rate trend", rate_trend},
      {"regrouping identity", regrouping_identity},
      {"rare-event oracle agreement", rare_event_agreement},
      {"rate-function spot values", rate_spot_values},
      {"metric sanity", metric_sanity},
      {"simulator statistics", simulator_statistics},
  };
  int failed = 0;
  for (std::size_t i = 0; i < checks.size(); ++i) {
    Outcome o;
    try {
      o = checks[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += o.pass ? 0 : 1;
    std::printf("%s %2zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, checks[i].first.c_str(), o.detail.c_str());
  }
  std::printf("%d of %zu checks failed\n", failed, checks.size());
  return failed == 0 ? 0 : 1;
}
