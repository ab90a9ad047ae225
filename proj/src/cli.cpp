#include "erldp/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>

#include "erldp/errors.hpp"
#include "erldp/json_io.hpp"

namespace erldp::cli {

namespace {

struct Output {
  json doc;
  json rows;  // CSV rows; null means the single row `doc`
};

struct Globals {
  std::string format = "json";
  std::string out_path;
  unsigned bits = kDefaultPrecisionBits;
  std::uint64_t seed = 1;
};

struct RegimeOpts {
  std::int64_t n = 0;
  double b_n = 0.0;
  double gamma = 0.0;
  double theta = 0.0;
  double epsilon = Regime::kDefaultEpsilon;
  CLI::Option* b_opt = nullptr;
  CLI::Option* gamma_opt = nullptr;

  void add(CLI::App* app) {
    app->add_option("--n", n, "vertex count n")->required();
    b_opt = app->add_option("--b_n,--b-n", b_n, "speed scale b_n, given directly");
    gamma_opt = app->add_option("--gamma", gamma, "speed scale as b_n = n^gamma, gamma in (0, 1/2)");
    b_opt->excludes(gamma_opt);
    app->add_option("--theta", theta, "window offset theta (dimensionless)");
    app->add_option("--epsilon", epsilon, "mesoscopic cutoff epsilon (alpha_n = epsilon (n b_n)^{2/3})");
  }

  Regime make() const {
    if (b_opt->count() > 0) return Regime(n, b_n, theta, epsilon);
    if (gamma_opt->count() > 0) return Regime::from_gamma(n, gamma, theta, epsilon);
    throw ParameterOutOfRange("one of --b_n or --gamma is required");
  }
};

double parse_decimal(const std::string& text) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(text, &pos);
    if (pos == text.size()) return v;
  } catch (const std::exception&) {
  }
  // "a/b" is accepted wherever a decimal is
  // mpq get_d truncates; a quotient of two exactly representable integers
  // is correctly rounded
  const Rational q = parse_rational(text);
  const BigInt& a = q.get_num();
  const BigInt& b = q.get_den();
  if (mpz_sizeinbase(a.get_mpz_t(), 2) <= 53 && mpz_sizeinbase(b.get_mpz_t(), 2) <= 53) return a.get_d() / b.get_d();
  return q.get_d();
}

ClusterCounts parse_counts(const std::string& text) {
  std::vector<std::pair<std::int64_t, std::int64_t>> pairs;
  std::int64_t n = 0;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.find_first_not_of(" \t") == std::string::npos) continue;
    const auto colon = item.find(':');
    try {
      const std::int64_t k = std::stoll(item.substr(0, colon));
      const std::int64_t lk = colon == std::string::npos ? 1 : std::stoll(item.substr(colon + 1));
      if (k < 1 || lk < 0) throw std::invalid_argument("range");
      pairs.emplace_back(k, lk);
      n += k * lk;
    } catch (const std::exception&) {
      throw ParameterOutOfRange("bad cluster count '" + item + "' (expected k:l_k)");
    }
  }
  if (n < 1) throw ParameterOutOfRange("empty cluster counts");
  return ClusterCounts::from_pairs(n, pairs);
}

std::string csv_cell(const json& v) {
  std::string s;
  if (v.is_null()) return s;
  if (v.is_string()) {
    s = v.get<std::string>();
  } else {
    s = v.dump();
  }
  if (s.find_first_of(",\"\n") != std::string::npos) {
    std::string q = "\"";
    for (char c : s) {
      if (c == '"') q += '"';
      q += c;
    }
    return q + "\"";
  }
  return s;
}

void write_csv(std::ostream& os, const json& rows) {
  std::vector<std::string> keys;
  std::set<std::string> seen;
  for (const auto& row : rows) {
    for (const auto& [k, v] : row.items()) {
      if (seen.insert(k).second) keys.push_back(k);
    }
  }
  for (std::size_t i = 0; i < keys.size(); ++i) os << (i ? "," : "") << keys[i];
  os << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < keys.size(); ++i) {
      os << (i ? "," : "");
      if (row.contains(keys[i])) os << csv_cell(row.at(keys[i]));
    }
    os << '\n';
  }
}

void emit(const Output& o, const Globals& g, std::ostream& out) {
  std::ofstream file;
  std::ostream* os = &out;
  if (!g.out_path.empty()) {
    file.open(g.out_path);
    if (!file) throw ParameterOutOfRange("cannot open output file " + g.out_path);
    os = &file;
  }
  if (g.format == "csv") {
    write_csv(*os, o.rows.is_null() ? json::array({o.doc}) : o.rows);
  } else {
    *os << o.doc.dump(2) << '\n';
  }
}

using Action = std::function<Output()>;

// ---------------------------------------------------------------------------
// oracle

struct OracleOpts {
  int n = 0, cap = kDefaultLawCap, K = 0, m = 0;
  std::string p;
};

struct AsymOpts {
  RegimeOpts ro, ro2;
  std::int64_t K = 0, k = 0;
  double x = 0.0, lower = 0.0;
  bool compare = false;
};

struct BorelOpts {
  double omega = 1.0, lo = 0.0, hi = 5.0;
  std::int64_t k = 1, N = 0;
  RegimeOpts rec, rate, lvl;
};

struct LdpOpts {
  std::string atoms, other, counts, p, mode = "float";
  double theta = 0.0, eps = 0.1, C = 10.0;
  std::int64_t alpha_k = 0, beta_k = 0;
  int cap = kDefaultLawCap;
  RegimeOpts ro;
};

struct SimOpts {
  RegimeOpts ro;
  std::int64_t trials = 1000;
  int workers = 1;
  std::string event = "alpha", p;
};

struct SweepOpts {
  std::string config;
};

// One instance per dispatch() call: option storage must not leak between
// calls (sweep re-enters dispatch for every grid point).
struct State {
  Globals g;
  Action action;
  OracleOpts oracle;
  AsymOpts asym;
  BorelOpts borel;
  LdpOpts ldp;
  SimOpts sim;
  SweepOpts sweep;
};

void add_oracle(CLI::App& app, State& st) {
  auto& [n, cap, K, m, p] = st.oracle;
  auto& action = st.action;
  auto& g = st.g;
  auto* oracle = app.add_subcommand("oracle", "exact rational oracles (p given as \"a/b\" or a finite decimal)");
  oracle->require_subcommand(1);

  auto* law = oracle->add_subcommand("law", "exact cluster-size law of G(n, p)");
  law->add_option("--n", n, "vertex count")->required();
  law->add_option("--p", p, "edge probability, rational")->required();
  law->add_option("--cap", cap, "exact-arithmetic cap on n");
  law->callback([&] {
    action = [&] {
      const ExactLaw l = cluster_law_exact(n, parse_rational(p), cap);
      json rows = json::array();
      for (const auto& e : l.entries) {
        rows.push_back({{"counts", to_json(e.counts)}, {"probability", to_string(e.probability)}});
      }
      return Output{to_json(l), rows};
    };
  });

  auto* conn = oracle->add_subcommand("conn", "exact P(G(K, p) connected)");
  conn->add_option("--K", K, "vertex count")->required();
  conn->add_option("--p", p, "edge probability, rational")->required();
  conn->add_option("--cap", cap, "exact-arithmetic cap on K");
  conn->callback([&] {
    cap = std::max(cap, kDefaultExactCap);
    action = [&] {
      const Rational P = connected_probability_exact(K, parse_rational(p), cap);
      const double lp = sgn(P) > 0 ? static_cast<double>(log_hp(P)) : -INFINITY;
      return Output{json{{"K", K}, {"p", p}, {"probability", to_string(P)}, {"log_probability", lp}}, nullptr};
    };
  });

  auto* count = oracle->add_subcommand("count", "number of connected labeled graphs on K vertices with m edges");
  count->add_option("--K", K, "vertex count")->required();
  count->add_option("--m", m, "edge count")->required();
  count->callback([&] {
    action = [&] {
      return Output{json{{"K", K}, {"m", m}, {"count", to_string(connected_count(K, m))}}, nullptr};
    };
  });

  auto* below = oracle->add_subcommand("below", "exact P(every component of G(n, p) has < m vertices)");
  below->add_option("--n", n, "vertex count")->required();
  below->add_option("--m", m, "size threshold")->required();
  below->add_option("--p", p, "edge probability, rational")->required();
  below->callback([&] {
    action = [&] {
      const int c = std::max(n, kDefaultExactCap);
      const Rational P = prob_all_components_below(n, m, parse_rational(p), c);
      const double lp = sgn(P) > 0 ? static_cast<double>(log_hp(P)) : -INFINITY;
      return Output{json{{"n", n}, {"m", m}, {"p", p}, {"probability", to_string(P)},
                         {"value", P.get_d()}, {"log_probability", lp}},
                    nullptr};
    };
  });

  auto* hp = oracle->add_subcommand("conn-hp", "log P(G(K, p) connected) by the recurrence at high precision");
  hp->add_option("--K", K, "vertex count")->required();
  hp->add_option("--p", p, "edge probability, decimal or rational")->required();
  hp->callback([&] {
    action = [&] {
      // exact when p parses as a rational, otherwise through the double
      std::optional<Rational> q;
      try {
        q = parse_rational(p);
      } catch (const ParameterOutOfRange&) {
      }
      const HighPrecisionConnectivity t =
          q ? HighPrecisionConnectivity(*q, K, g.bits) : HighPrecisionConnectivity(parse_decimal(p), K, g.bits);
      return Output{json{{"K", K},
                         {"p", p},
                         {"bits", g.bits},
                         {"working_bits", t.working_bits()},
                         {"log_probability", t.log_probability(K)},
                         {"probability", t.probability_string(K)}},
                    nullptr};
    };
  });
}

// ---------------------------------------------------------------------------
// asym

void add_asym(CLI::App& app, State& st) {
  auto& [ro, ro2, K, k, x, lower, compare] = st.asym;
  auto& action = st.action;
  auto& g = st.g;
  auto* asym = app.add_subcommand("asym", "connectivity asymptotics");
  asym->require_subcommand(1);

  auto* conn = asym->add_subcommand("conn", "asymptotic log P(G(K, p_n) connected); regime given by n and b_n or gamma");
  conn->add_option("--K", K, "component size")->required();
  ro.add(conn);
  conn->add_flag("--compare", compare, "also run the high-precision recurrence and report the gap");
  conn->callback([&] {
    action = [&] {
      const Regime r = ro.make();
      const ExpansionResult e = log_connected_prob_asymptotic(K, r, g.bits);
      json doc{{"K", K}, {"n", r.n()}, {"b_n", r.b_n()}, {"theta", r.theta()}, {"p", edge_probability(r)}};
      doc.update(to_json(e));
      if (compare) {
        const double exact = log_connected_probability_hp(static_cast<int>(K), edge_probability(r), g.bits);
        doc["recurrence_log"] = exact;
        doc["abs_error"] = std::fabs(e.total_log - exact);
      }
      return Output{doc, nullptr};
    };
  });

  auto* am = asym->add_subcommand("argmax", "argmax of D_n over x >= 1 + 1/K (or --lower)");
  am->add_option("--K", K, "component size")->required();
  am->add_option("--lower", lower, "left end of the search; 0 selects 1 + 1/K");
  ro2.add(am);
  am->callback([&] {
    action = [&] {
      const MesoScale s(K, ro2.make());
      ArgmaxOptions opts;
      opts.lower = lower;
      const ArgmaxResult a = argmax_x(s, opts);
      return Output{json{{"K", K}, {"n", s.regime.n()}, {"c_n", s.c_n}, {"x", a.x}, {"value", a.value},
                         {"iterations", a.iterations}, {"scaled", a.scaled}},
                    nullptr};
    };
  });

  auto* y = asym->add_subcommand("y", "root y of x(y) = artanh(y)/y, and a(x)");
  y->add_option("--x", x, "x >= 1")->required();
  y->callback([&] {
    action = [&] {
      json doc{{"x", x}, {"y", y_of_x(x)}};
      doc["a"] = x > 1.0 ? json(a_of_x(x)) : json(nullptr);
      return Output{doc, nullptr};
    };
  });

  auto* cnt = asym->add_subcommand("count", "asymptotic log count of connected graphs with K vertices and K + k edges");
  cnt->add_option("--K", K, "vertex count")->required();
  cnt->add_option("--k", k, "excess edges beyond K")->required();
  cnt->callback([&] {
    action = [&] { return Output{json{{"K", K}, {"k", k}, {"log_count", bcm_log_connected_count(K, k)}}, nullptr}; };
  });
}

// ---------------------------------------------------------------------------
// borel

void add_borel(CLI::App& app, State& st) {
  auto& [omega, lo, hi, k, N, rec, rate, lvl] = st.borel;
  auto& action = st.action;
  auto& g = st.g;
  auto* borel = app.add_subcommand("borel", "Borel weights, tilting and recovery sequences");
  borel->require_subcommand(1);

  auto* sums = borel->add_subcommand("sums", "sum_k k lambda_k(omega) and sum_k lambda_k(omega), omega in (0, 1]");
  sums->add_option("--omega", omega, "omega in (0, 1]")->required();
  sums->callback([&] {
    action = [&] {
      const double mean = borel_mean_sum(omega), mass = borel_mass_sum(omega);
      return Output{json{{"omega", omega}, {"mean_sum", mean}, {"mean_target", omega},
                         {"mass_sum", mass}, {"mass_target", omega * (1.0 - omega / 2.0)}},
                    nullptr};
    };
  });

  auto* tilt = borel->add_subcommand("tilt", "log lambda_k(1) - k xi(omega) against log lambda_k(omega)");
  tilt->add_option("--k", k, "size k >= 1")->required();
  tilt->add_option("--omega", omega, "omega > 0")->required();
  tilt->callback([&] {
    action = [&] {
      const auto [l, r] = tilt_identity_check_log(k, omega);
      return Output{json{{"k", k}, {"omega", omega}, {"lhs_log", l}, {"rhs_log", r}}, nullptr};
    };
  });

  auto add_N = [&](CLI::App* a) { a->add_option("--N", N, "micro vertex count; 0 means n"); };

  auto* rs = borel->add_subcommand("recovery", "integer mass-exact recovery sequence");
  rec.add(rs);
  add_N(rs);
  rs->callback([&] {
    action = [&] {
      const Regime r = rec.make();
      const RecoverySequence s = recovery_sequence(r, N > 0 ? N : r.n());
      json rows = json::array();
      for (const auto& [kk, lk] : s.counts.sparse()) rows.push_back({{"k", kk}, {"l_k", lk}});
      return Output{to_json(s), rows};
    };
  });

  auto* rc = borel->add_subcommand("rate", "Stirling lower-bound functional of the recovery sequence over b_n^2");
  rate.add(rc);
  add_N(rc);
  rc->callback([&] {
    action = [&] {
      const Regime r = rate.make();
      return Output{to_json(recovery_rate_check(r, N > 0 ? N : r.n(), g.bits)), nullptr};
    };
  });

  auto* ls = borel->add_subcommand("levelset", "argmax of the level-set objective F_n(M)");
  lvl.add(ls);
  add_N(ls);
  ls->add_option("--lo", lo, "lower end of the M search");
  ls->add_option("--hi", hi, "upper end of the M search");
  ls->callback([&] {
    action = [&] {
      const Regime r = lvl.make();
      const std::int64_t NN = N > 0 ? N : r.n();
      const auto [a, b] = level_set_interval(r, NN);
      const double M = level_set_argmax(r, NN, lo, hi);
      return Output{json{{"M_lo", a}, {"M_hi", b}, {"argmax", M}, {"excess", level_set_excess(M, r, NN)}},
                    nullptr};
    };
  });
}

// ---------------------------------------------------------------------------
// ldp

void add_ldp(CLI::App& app, State& st) {
  auto& [atoms, other, counts, p, mode, theta, eps, C, alpha_k, beta_k, cap, ro] = st.ldp;
  auto& action = st.action;
  auto& g = st.g;
  auto* ldp = app.add_subcommand("ldp", "rate function, metric and decomposition");
  ldp->require_subcommand(1);

  auto* rate = ldp->add_subcommand("rate", "rate function I(mu); atoms \"u1,u2,u*m\" in units of (n b_n)^{2/3}");
  rate->add_option("--atoms", atoms, "atom list, empty for the zero measure, \"inf\" for infinite mass")->required();
  rate->add_option("--theta", theta, "window offset theta")->required();
  rate->callback([&] {
    action = [&] { return Output{json{{"theta", theta}, {"rate", rate_function(parse_atoms(atoms), theta)}}, nullptr}; };
  });

  auto* dist = ldp->add_subcommand("dist", "vague distance dm(mu, nu)");
  dist->add_option("--a", atoms, "first measure (atom list)")->required();
  dist->add_option("--b", other, "second measure (atom list)")->required();
  dist->callback([&] {
    action = [&] {
      return Output{json{{"distance", vague_distance(parse_atoms(atoms), parse_atoms(other))}}, nullptr};
    };
  });

  auto* lim = ldp->add_subcommand("limit", "meso limit formula restricted to [eps, C]");
  lim->add_option("--atoms", atoms, "atom list")->required();
  lim->add_option("--theta", theta, "window offset theta")->required();
  lim->add_option("--eps", eps, "lower cutoff");
  lim->add_option("--C", C, "upper cutoff");
  lim->callback([&] {
    action = [&] {
      return Output{json{{"value", meso_limit_formula(parse_atoms(atoms), theta, eps, C)}}, nullptr};
    };
  });

  auto* dec = ldp->add_subcommand(
      "decompose",
      "micro/meso/macro factorization of P(L^n = l). Exact: --p a/b with --alpha-k/--beta-k. "
      "Regime: --n with --b_n or --gamma, --mode float|rational");
  dec->add_option("--counts", counts, "cluster counts \"k:l_k,...\"; n is the total mass")->required();
  dec->add_option("--p", p, "rational edge probability (exact mode)");
  dec->add_option("--alpha-k", alpha_k, "first meso size (exact mode)");
  dec->add_option("--beta-k", beta_k, "last meso size (exact mode)");
  dec->add_option("--mode", mode, "float or rational (regime mode)")->check(CLI::IsMember({"float", "rational"}));
  dec->add_option("--cap", cap, "exact-arithmetic cap");
  dec->add_option("--n", ro.n, "vertex count (regime mode; must equal the mass)");
  ro.b_opt = dec->add_option("--b_n,--b-n", ro.b_n, "speed scale b_n");
  ro.gamma_opt = dec->add_option("--gamma", ro.gamma, "b_n = n^gamma");
  dec->add_option("--theta", ro.theta, "window offset theta");
  dec->add_option("--epsilon", ro.epsilon, "mesoscopic cutoff epsilon");
  dec->callback([&] {
    action = [&] {
      const ClusterCounts l = parse_counts(counts);
      if (!p.empty()) {
        if (alpha_k < 1 || beta_k < alpha_k) throw ParameterOutOfRange("exact mode needs 1 <= --alpha-k <= --beta-k");
        return Output{to_json(decompose(l, parse_rational(p), Bands{alpha_k, beta_k}, cap)), nullptr};
      }
      if (ro.n == 0) ro.n = l.n();
      if (ro.n != l.n()) throw ParameterOutOfRange("--n differs from the mass of --counts");
      const auto m = mode == "rational" ? DecomposeMode::Rational : DecomposeMode::Float;
      return Output{to_json(decompose(l, ro.make(), m, g.bits, cap)), nullptr};
    };
  });
}

// ---------------------------------------------------------------------------
// sim

void add_sim(CLI::App& app, State& st) {
  auto& [ro, trials, workers, event, p] = st.sim;
  auto& action = st.action;
  auto& g = st.g;
  auto* sim = app.add_subcommand("sim", "Monte Carlo estimate of an event under G(n, p_n)");
  ro.add(sim);
  sim->add_option("--p", p, "edge probability override (decimal or a/b); default p_n(theta)");
  sim->add_option("--trials", trials, "number of independent trials");
  sim->add_option("--workers", workers, "worker threads; results do not depend on it");
  sim->add_option("--event", event, "true | connected | below:m | alpha");
  sim->callback([&] {
    action = [&] {
      Regime r = (ro.b_opt->count() || ro.gamma_opt->count()) ? ro.make() : Regime(ro.n, 1.0, 0.0, ro.epsilon);
      SimConfig cfg{r, trials, g.seed, workers, std::nullopt};
      if (!p.empty()) cfg.p = parse_decimal(p);
      const EventEstimate e = estimate_event(cfg, parse_event(event, r));
      const double th = r.theta();
      json doc{{"n", r.n()},     {"b_n", r.b_n()},   {"theta", th},        {"trials", e.trials},
               {"hits", e.hits}, {"p_hat", e.p_hat}, {"ci_lo", e.ci_lo},   {"ci_hi", e.ci_hi}};
      doc["rate_estimate"] = e.rate_estimate ? json(*e.rate_estimate) : json(nullptr);
      doc["rate_target"] = th >= 0.0 ? th * th * th / 6.0 : 0.0;
      doc["event"] = event;
      doc["p"] = cfg.edge_p();
      return Output{doc, nullptr};
    };
  });
}

void add_sweep(CLI::App& app, State& st) {
  auto& config = st.sweep.config;
  auto& action = st.action;
  auto& g = st.g;
  auto* sweep = app.add_subcommand("sweep", "Cartesian parameter sweep from an INI grid file, CSV output");
  sweep->add_option("--config", config, "grid file")->required()->check(CLI::ExistingFile);
  sweep->callback([&] {
    action = [&] {
      if (g.out_path.empty()) throw ParameterOutOfRange("sweep needs --out");
      std::ostringstream err;
      const int rc = run_sweep(config, g.out_path, err);
      json doc{{"config", config}, {"out", g.out_path}, {"status", rc == 0 ? "ok" : "partial"},
               {"diagnostics", err.str()}};
      g.out_path.clear();  // the summary goes to stdout, the rows are in the file
      return Output{doc, nullptr};
    };
  });
}

// ---------------------------------------------------------------------------
// sweep internals

struct Section {
  std::string command;
  std::vector<std::pair<std::string, std::vector<std::string>>> keys;
};

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> expand_values(const std::string& raw) {
  std::vector<std::string> out;
  std::stringstream ss(raw);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    const auto c1 = item.find(':');
    const auto c2 = c1 == std::string::npos ? c1 : item.find(':', c1 + 1);
    if (c2 != std::string::npos && item.find('/') == std::string::npos) {
      // start:stop:step, inclusive; integer-looking ranges stay integral
      const std::string a = item.substr(0, c1), b = item.substr(c1 + 1, c2 - c1 - 1), s = item.substr(c2 + 1);
      const bool integral = (a + b + s).find_first_of(".eE") == std::string::npos;
      const double lo = std::stod(a), hi = std::stod(b), step = std::stod(s);
      if (!(step > 0.0)) throw ParameterOutOfRange("range step must be positive in '" + item + "'");
      const auto count = static_cast<std::int64_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
      for (std::int64_t i = 0; i < count; ++i) {
        const double v = lo + static_cast<double>(i) * step;
        std::ostringstream os;
        if (integral) {
          os << std::llround(v);
        } else {
          os << std::setprecision(15) << v;
        }
        out.push_back(os.str());
      }
    } else if (!item.empty()) {
      out.push_back(item);
    }
  }
  return out;
}

std::vector<Section> read_grid(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParameterOutOfRange("cannot read " + path);
  std::vector<Section> sections;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find_first_of("#;");
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ParameterOutOfRange("line " + std::to_string(lineno) + ": bad section");
      sections.push_back({trim(line.substr(1, line.size() - 2)), {}});
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos || sections.empty()) {
      throw ParameterOutOfRange("line " + std::to_string(lineno) + ": expected key = values inside a section");
    }
    sections.back().keys.emplace_back(trim(line.substr(0, eq)), expand_values(line.substr(eq + 1)));
  }
  return sections;
}

std::set<std::int64_t> existing_indices(const std::string& path) {
  std::set<std::int64_t> done;
  std::ifstream in(path);
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (header) {
      header = false;
      continue;
    }
    const auto comma = line.find(',');
    try {
      done.insert(std::stoll(line.substr(0, comma)));
    } catch (const std::exception&) {
    }
  }
  return done;
}

std::vector<std::string> split_words(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string w;
  while (ss >> w) out.push_back(w);
  return out;
}

}  // namespace

int run_sweep(const std::string& config_path, const std::string& out_path, std::ostream& err) {
  const auto sections = read_grid(config_path);
  std::vector<std::string> columns;
  std::set<std::string> seen;
  for (const auto& s : sections) {
    for (const auto& [k, v] : s.keys) {
      if (seen.insert(k).second) columns.push_back(k);
    }
  }
  const auto done = existing_indices(out_path);
  const bool fresh = !std::ifstream(out_path).good();
  std::ofstream out(out_path, std::ios::app);
  if (!out) throw ParameterOutOfRange("cannot open " + out_path);
  if (fresh) {
    out << "index,command";
    for (const auto& c : columns) out << ',' << c;
    out << ",status,result\n";
  }
  int failures = 0;
  std::int64_t index = 0;
  for (const auto& s : sections) {
    std::vector<std::size_t> odo(s.keys.size(), 0);
    bool empty = false;
    for (const auto& [k, v] : s.keys) empty = empty || v.empty();
    if (empty) continue;
    for (bool more = true; more; ++index) {
      std::map<std::string, std::string> point;
      for (std::size_t i = 0; i < s.keys.size(); ++i) point[s.keys[i].first] = s.keys[i].second[odo[i]];
      // advance the odometer, last key fastest
      more = false;
      for (std::size_t i = s.keys.size(); i-- > 0;) {
        if (++odo[i] < s.keys[i].second.size()) {
          more = true;
          break;
        }
        odo[i] = 0;
      }
      if (done.count(index)) continue;

      std::vector<std::string> args = split_words(s.command);
      for (const auto& [k, v] : point) {
        args.push_back("--" + k);
        args.push_back(v);
      }
      args.push_back("--format");
      args.push_back("json");
      std::ostringstream res, diag;
      const int rc = dispatch(args, res, diag);
      out << index << ',' << csv_cell(s.command);
      for (const auto& c : columns) {
        out << ',';
        if (auto it = point.find(c); it != point.end()) out << csv_cell(it->second);
      }
      if (rc == 0) {
        out << ",ok," << csv_cell(json::parse(res.str()).dump()) << '\n';
      } else {
        ++failures;
        std::string msg = trim(diag.str());
        std::replace(msg.begin(), msg.end(), '\n', ' ');
        out << ",error," << csv_cell(msg) << '\n';
        err << "sweep row " << index << ": " << msg << '\n';
      }
      out.flush();
    }
  }
  return failures == 0 ? 0 : 1;
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"erldp: exact oracles, asymptotics and Monte Carlo for near-critical random graphs"};
  app.name("erldp");
  app.require_subcommand(1);
  app.fallthrough();
  State st;
  auto& g = st.g;
  app.add_option("--format", g.format, "output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--out", g.out_path, "write results to this file instead of stdout");
  app.add_option("--bits", g.bits, "working precision in bits for high-precision paths");
  app.add_option("--seed", g.seed, "master seed for the simulator");

  add_oracle(app, st);
  add_asym(app, st);
  add_borel(app, st);
  add_ldp(app, st);
  add_sim(app, st);
  add_sweep(app, st);
  for (auto* sub : app.get_subcommands({})) {
    sub->fallthrough();
    for (auto* leaf : sub->get_subcommands({})) leaf->fallthrough();
  }

  std::vector<std::string> argv_store{"erldp"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? 0 : 2;
  }
  try {
    if (!st.action) throw ParameterOutOfRange("no command selected");
    emit(st.action(), g, out);
    return 0;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.exit_code();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace erldp::cli
