#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "erldp/borel_micro.hpp"
#include "erldp/cli.hpp"
#include "erldp/connectivity_asymptotics.hpp"
#include "erldp/errors.hpp"
#include "erldp/exact_oracle.hpp"
#include "erldp/ldp_core.hpp"
#include "erldp/simulator.hpp"

namespace py = pybind11;
using namespace erldp;

namespace {

// {k: l_k} for the nonzero entries
py::dict counts_dict(const ClusterCounts& c) {
  py::dict d;
  for (const auto& [k, lk] : c.sparse()) d[py::int_(k)] = lk;
  return d;
}

ClusterCounts counts_from(std::int64_t n, const std::map<std::int64_t, std::int64_t>& m) {
  std::vector<std::pair<std::int64_t, std::int64_t>> pairs(m.begin(), m.end());
  return ClusterCounts::from_pairs(n, pairs);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "exact oracles, asymptotics and Monte Carlo for near-critical G(n, p)";

  static py::exception<Error> error(m, "Error", PyExc_ValueError);
  static py::exception<NoConvergence> no_convergence(m, "NoConvergence", error.ptr());
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const NoConvergence& e) {
      no_convergence(e.what());
    } catch (const Error& e) {
      error(e.what());
    }
  });

  py::class_<Regime>(m, "Regime")
      .def(py::init<std::int64_t, double, double, double, bool>(), py::arg("n"), py::arg("b_n"),
           py::arg("theta"), py::arg("epsilon") = Regime::kDefaultEpsilon, py::arg("asymptotic") = false)
      .def_static("from_gamma", &Regime::from_gamma, py::arg("n"), py::arg("gamma"), py::arg("theta"),
                  py::arg("epsilon") = Regime::kDefaultEpsilon, py::arg("asymptotic") = false)
      .def_property_readonly("n", &Regime::n)
      .def_property_readonly("b_n", &Regime::b_n)
      .def_property_readonly("theta", &Regime::theta)
      .def_property_readonly("epsilon", &Regime::epsilon)
      .def_property_readonly("omega", &Regime::omega)
      .def_property_readonly("p", [](const Regime& r) { return edge_probability(r); })
      .def_property_readonly("alpha_n", [](const Regime& r) { return thresholds(r).alpha_n; })
      .def_property_readonly("beta_n", [](const Regime& r) { return thresholds(r).beta_n; })
      .def("__repr__", [](const Regime& r) {
        std::ostringstream os;
        os << "Regime(n=" << r.n() << ", b_n=" << r.b_n() << ", theta=" << r.theta() << ", epsilon=" << r.epsilon()
           << ")";
        return os.str();
      });

  // exact values cross the boundary as "a/b" strings; the Python layer
  // turns them into Fractions
  m.def("connected_probability_exact",
        [](int K, const std::string& p) { return to_string(connected_probability_exact(K, parse_rational(p))); },
        py::arg("K"), py::arg("p"));
  m.def("connected_count", [](int K, std::int64_t e) { return to_string(connected_count(K, e)); }, py::arg("K"),
        py::arg("m"));
  m.def("cluster_law_exact",
        [](int n, const std::string& p) {
          py::list out;
          for (const auto& e : cluster_law_exact(n, parse_rational(p)).entries) {
            out.append(py::make_tuple(counts_dict(e.counts), to_string(e.probability)));
          }
          return out;
        },
        py::arg("n"), py::arg("p"));
  m.def("prob_all_components_below",
        [](int n, int k, const std::string& p) {
          return to_string(prob_all_components_below(n, k, parse_rational(p), std::max(n, kDefaultExactCap)));
        },
        py::arg("n"), py::arg("m"), py::arg("p"));
  m.def("log_connected_probability_hp", &log_connected_probability_hp, py::arg("K"), py::arg("p"),
        py::arg("bits") = kDefaultPrecisionBits);

  m.def("y_of_x", &y_of_x, py::arg("x"), py::arg("budget") = 200);
  m.def("a_of_x", &a_of_x, py::arg("x"));
  m.def("log_connected_prob_asymptotic",
        [](std::int64_t K, const Regime& r, unsigned bits) {
          const auto e = log_connected_prob_asymptotic(K, r, bits);
          py::dict d;
          d["base_log"] = e.base_log;
          d["correction"] = e.correction;
          d["total_log"] = e.total_log;
          d["regime_case"] = to_string(e.regime_case);
          d["correction_bound"] = e.correction_bound;
          return d;
        },
        py::arg("K"), py::arg("regime"), py::arg("bits") = 256);

  m.def("borel_weight", &borel_weight, py::arg("k"), py::arg("omega"));
  m.def("borel_mean_sum", [](double w) { return borel_mean_sum(w); }, py::arg("omega"));
  m.def("borel_mass_sum", [](double w) { return borel_mass_sum(w); }, py::arg("omega"));
  m.def("recovery_sequence",
        [](const Regime& r, std::int64_t N) {
          const auto s = recovery_sequence(r, N);
          py::dict d;
          d["counts"] = counts_dict(s.counts);
          d["N"] = s.N;
          d["q"] = s.q;
          d["alpha_n"] = s.alpha_n;
          return d;
        },
        py::arg("regime"), py::arg("N"));

  m.def("rate_function",
        [](const std::vector<double>& atoms, double theta) {
          return rate_function(MesoMeasure::from_atoms(atoms), theta);
        },
        py::arg("atoms"), py::arg("theta"));
  m.def("vague_distance",
        [](const std::vector<double>& a, const std::vector<double>& b) {
          return vague_distance(MesoMeasure::from_atoms(a), MesoMeasure::from_atoms(b));
        },
        py::arg("a"), py::arg("b"));
  m.def("decompose_exact",
        [](std::int64_t n, const std::map<std::int64_t, std::int64_t>& counts, const std::string& p,
           std::int64_t alpha_k, std::int64_t beta_k) {
          const auto rep = decompose(counts_from(n, counts), parse_rational(p), Bands{alpha_k, beta_k});
          py::dict d;
          d["log_F_Mi"] = rep.log_F_Mi;
          d["log_F_Me"] = rep.log_F_Me;
          d["log_F_Ma"] = rep.log_F_Ma;
          d["log_P"] = rep.log_P;
          d["regroup_exact"] = rep.regroup_exact;
          d["P_exact"] = rep.P_exact ? py::cast(*rep.P_exact) : py::none();
          return d;
        },
        py::arg("n"), py::arg("counts"), py::arg("p"), py::arg("alpha_k"), py::arg("beta_k"));

  m.def("sample_er",
        [](std::int64_t n, double p, std::uint64_t seed) { return counts_dict(sample_er(n, p, seed)); },
        py::arg("n"), py::arg("p"), py::arg("seed"));
  m.def("estimate_event",
        [](const Regime& r, const std::string& event, std::int64_t trials, std::uint64_t seed, int workers,
           std::optional<double> p) {
          SimConfig cfg{r, trials, seed, workers, p};
          EventEstimate e;
          {
            py::gil_scoped_release release;
            e = estimate_event(cfg, parse_event(event, r));
          }
          py::dict d;
          d["p_hat"] = e.p_hat;
          d["hits"] = e.hits;
          d["trials"] = e.trials;
          d["ci"] = py::make_tuple(e.ci_lo, e.ci_hi);
          d["rate_estimate"] = e.rate_estimate ? py::cast(*e.rate_estimate) : py::none();
          return d;
        },
        py::arg("regime"), py::arg("event"), py::arg("trials"), py::arg("seed") = 1, py::arg("workers") = 1,
        py::arg("p") = py::none());

  m.def("dispatch",
        [](const std::vector<std::string>& args) {
          std::ostringstream out, err;
          const int rc = cli::dispatch(args, out, err);
          return py::make_tuple(rc, out.str(), err.str());
        },
        py::arg("args"));
}
