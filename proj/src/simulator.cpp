#include "erldp/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <thread>

#include "erldp/errors.hpp"

namespace erldp {

double SimConfig::edge_p() const { return p ? *p : edge_probability(regime); }

void SimConfig::validate() const {
  if (trials < 1) throw ParameterOutOfRange("trials must be >= 1");
  if (parallelism < 1) throw ParameterOutOfRange("parallelism must be >= 1");
  const double q = edge_p();
  if (!(q >= 0.0 && q <= 1.0)) throw ParameterOutOfRange("edge probability outside [0,1]");
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t trial_seed(std::uint64_t master_seed, std::uint64_t trial) {
  return splitmix64(master_seed + (trial + 1) * 0x9e3779b97f4a7c15ULL);
}

namespace {

// path halving + union by size; size_ doubles as the component-size table
class DisjointSet {
 public:
  explicit DisjointSet(std::int64_t n) : parent_(static_cast<std::size_t>(n)), size_(parent_.size(), 1) {
    for (std::size_t i = 0; i < parent_.size(); ++i) parent_[i] = static_cast<std::int64_t>(i);
  }

  std::int64_t find(std::int64_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  void unite(std::int64_t a, std::int64_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
  }

  ClusterCounts counts() {
    ClusterCounts c(static_cast<std::int64_t>(parent_.size()));
    for (std::size_t i = 0; i < parent_.size(); ++i) {
      if (parent_[i] == static_cast<std::int64_t>(i)) c.add(size_[i]);
    }
    return c;
  }

 private:
  std::vector<std::int64_t> parent_;
  std::vector<std::int64_t> size_;
};

// uniform on (0, 1], 53 bits; avoids the implementation-defined
// std::uniform_real_distribution so streams are portable
double unit_open_closed(Rng& rng) {
  return static_cast<double>((rng() >> 11) + 1) * 0x1.0p-53;
}

// Runs body(t) for every trial on `workers` threads, each owning a
// contiguous block of trial indices.
template <class Body>
void run_trials(std::int64_t trials, int workers, Body&& body) {
  const std::int64_t w = std::min<std::int64_t>(workers, trials);
  if (w <= 1) {
    for (std::int64_t t = 0; t < trials; ++t) body(t);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(w));
  for (std::int64_t k = 0; k < w; ++k) {
    pool.emplace_back([&, k] {
      const std::int64_t lo = trials * k / w, hi = trials * (k + 1) / w;
      try {
        for (std::int64_t t = lo; t < hi; ++t) body(t);
      } catch (...) {
        errors[static_cast<std::size_t>(k)] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace

Sample sample_er_stats(std::int64_t n, double p, Rng& rng) {
  if (n < 1) throw ParameterOutOfRange("n must be >= 1");
  if (!(p >= 0.0 && p <= 1.0)) throw ParameterOutOfRange("edge probability outside [0,1]");
  DisjointSet ds(n);
  Sample s;
  if (p > 0.0 && n > 1) {
    const double log_q = std::log1p(-p);  // -inf at p = 1: every gap is 0
    const double total = static_cast<double>(n) * static_cast<double>(n - 1) / 2.0;
    std::int64_t i = 0, j = 1;  // next candidate pair
    for (;;) {
      const double g = std::floor(std::log(unit_open_closed(rng)) / log_q);
      if (g >= total) break;
      auto skip = static_cast<std::int64_t>(g);
      while (skip > 0 && i < n - 1) {
        const std::int64_t row_left = n - j;
        if (skip < row_left) {
          j += skip;
          skip = 0;
        } else {
          skip -= row_left;
          ++i;
          j = i + 1;
        }
      }
      if (i >= n - 1) break;
      ds.unite(i, j);
      ++s.edges;
      if (++j == n) {
        ++i;
        j = i + 1;
      }
      if (i >= n - 1) break;
    }
  }
  s.counts = ds.counts();
#ifndef NDEBUG
  if (s.counts.mass() != n) throw std::logic_error("sample_er: mass not conserved");
#endif
  return s;
}

ClusterCounts sample_er(std::int64_t n, double p, std::uint64_t seed) {
  Rng rng(seed);
  return sample_er_stats(n, p, rng).counts;
}

Event parse_event(const std::string& spec, const Regime& r) {
  if (spec == "true") return [](const ClusterCounts&) { return true; };
  if (spec == "connected") {
    return [](const ClusterCounts& c) { return c.components() == 1; };
  }
  if (spec == "alpha") {
    const double alpha = thresholds(r).alpha_n;
    return [alpha](const ClusterCounts& c) { return static_cast<double>(c.largest()) < alpha; };
  }
  if (spec.rfind("below:", 0) == 0) {
    std::int64_t m = 0;
    try {
      std::size_t pos = 0;
      m = std::stoll(spec.substr(6), &pos);
      if (pos != spec.size() - 6) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw ParameterOutOfRange("bad event spec '" + spec + "'");
    }
    if (m < 1) throw ParameterOutOfRange("below:m needs m >= 1");
    return [m](const ClusterCounts& c) { return c.largest() < m; };
  }
  throw ParameterOutOfRange("unknown event '" + spec + "' (true, connected, below:m, alpha)");
}

double EventEstimate::std_error() const {
  return trials > 0 ? std::sqrt(p_hat * (1.0 - p_hat) / static_cast<double>(trials)) : 0.0;
}

std::pair<double, double> wilson_interval(std::int64_t hits, std::int64_t trials, double z) {
  if (trials <= 0) return {0.0, 1.0};
  const double nt = static_cast<double>(trials);
  const double ph = static_cast<double>(hits) / nt;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / nt;
  const double centre = (ph + z2 / (2.0 * nt)) / denom;
  const double half = z * std::sqrt(ph * (1.0 - ph) / nt + z2 / (4.0 * nt * nt)) / denom;
  return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

EventEstimate estimate_event(const SimConfig& cfg, const Event& event) {
  cfg.validate();
  const double p = cfg.edge_p();
  const std::int64_t n = cfg.regime.n();
  std::vector<unsigned char> hit(static_cast<std::size_t>(cfg.trials), 0);
  run_trials(cfg.trials, cfg.parallelism, [&](std::int64_t t) {
    Rng rng(trial_seed(cfg.master_seed, static_cast<std::uint64_t>(t)));
    hit[static_cast<std::size_t>(t)] = event(sample_er_stats(n, p, rng).counts) ? 1 : 0;
  });
  EventEstimate e;
  e.trials = cfg.trials;
  for (unsigned char h : hit) e.hits += h;
  e.p_hat = static_cast<double>(e.hits) / static_cast<double>(e.trials);
  std::tie(e.ci_lo, e.ci_hi) = wilson_interval(e.hits, e.trials);
  if (e.hits > 0) {
    const double b = cfg.regime.b_n();
    e.rate_estimate = -std::log(e.p_hat) / (b * b);
  }
  return e;
}

double StatEstimate::std_error() const {
  return trials > 0 ? std::sqrt(variance / static_cast<double>(trials)) : 0.0;
}

StatEstimate estimate_statistic(const SimConfig& cfg,
                                const std::function<double(const Sample&)>& f) {
  cfg.validate();
  const double p = cfg.edge_p();
  const std::int64_t n = cfg.regime.n();
  std::vector<double> values(static_cast<std::size_t>(cfg.trials));
  run_trials(cfg.trials, cfg.parallelism, [&](std::int64_t t) {
    Rng rng(trial_seed(cfg.master_seed, static_cast<std::uint64_t>(t)));
    values[static_cast<std::size_t>(t)] = f(sample_er_stats(n, p, rng));
  });
  StatEstimate s;
  s.trials = cfg.trials;
  double sum = 0.0;
  for (double v : values) sum += v;
  s.mean = sum / static_cast<double>(s.trials);
  double ss = 0.0;
  for (double v : values) ss += (v - s.mean) * (v - s.mean);
  s.variance = s.trials > 1 ? ss / static_cast<double>(s.trials - 1) : 0.0;
  return s;
}

std::vector<SweepRow> rare_event_rate_sweep(const std::vector<Regime>& regimes,
                                            std::int64_t trials, std::uint64_t seed,
                                            int parallelism) {
  std::vector<SweepRow> rows;
  rows.reserve(regimes.size());
  for (const auto& r : regimes) {
    SimConfig cfg{r, trials, seed, parallelism, std::nullopt};
    const double th = r.theta();
    SweepRow row{r, estimate_event(cfg, parse_event("alpha", r)),
                 th >= 0.0 ? th * th * th / 6.0 : 0.0, false};
    row.zero_hits = row.estimate.hits == 0;
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
  const auto flags = os.flags();
  const auto prec = os.precision();
  os << std::setprecision(17);
  os << "n,b_n,theta,trials,hits,p_hat,ci_lo,ci_hi,rate_estimate,rate_target,flag\n";
  for (const auto& row : rows) {
    const auto& e = row.estimate;
    os << row.regime.n() << ',' << row.regime.b_n() << ',' << row.regime.theta() << ','
       << e.trials << ',' << e.hits << ',' << e.p_hat << ',' << e.ci_lo << ',' << e.ci_hi << ',';
    if (e.rate_estimate) os << *e.rate_estimate;
    os << ',' << row.rate_target << ',' << (row.zero_hits ? "ZeroHits" : "") << '\n';
  }
  os.flags(flags);
  os.precision(prec);
}

std::vector<MesoMeasure> empirical_meso_measure(const SimConfig& cfg, std::int64_t trials) {
  SimConfig c = cfg;
  c.trials = trials;
  c.validate();
  const double p = c.edge_p();
  const std::int64_t n = c.regime.n();
  std::vector<MesoMeasure> out(static_cast<std::size_t>(trials));
  run_trials(trials, c.parallelism, [&](std::int64_t t) {
    Rng rng(trial_seed(c.master_seed, static_cast<std::uint64_t>(t)));
    out[static_cast<std::size_t>(t)] =
        meso_measure(sample_er_stats(n, p, rng).counts, c.regime, c.regime.epsilon());
  });
  return out;
}

}  // namespace erldp
