#include "erldp/json_io.hpp"

#include <cmath>
#include <sstream>

#include "erldp/errors.hpp"

namespace erldp {

json to_json(const Regime& r) {
  const auto t = thresholds(r);
  return json{{"n", r.n()},
              {"b_n", r.b_n()},
              {"theta", r.theta()},
              {"epsilon", r.epsilon()},
              {"p", edge_probability(r)},
              {"omega", r.omega()},
              {"alpha_n", t.alpha_n},
              {"beta_n", t.beta_n}};
}

json to_json(const ClusterCounts& l) {
  json out = json::array();
  for (const auto& [k, lk] : l.sparse()) out.push_back({k, lk});
  return out;
}

json to_json(const ExactLaw& law) {
  json entries = json::array();
  for (const auto& e : law.entries) {
    entries.push_back({{"counts", to_json(e.counts)}, {"probability", to_string(e.probability)}});
  }
  return json{{"n", law.n}, {"p", to_string(law.p)}, {"total", to_string(law.total())},
              {"entries", std::move(entries)}};
}

json to_json(const MesoMeasure& mu) {
  json atoms = json::array();
  for (const auto& [u, m] : mu.atoms()) atoms.push_back({u, m});
  return json{{"atoms", std::move(atoms)}, {"infinite_mass", mu.infinite_mass()}};
}

json to_json(const DecompositionReport& rep) {
  json j{{"mode", to_string(rep.mode)},
         {"n", rep.n},
         {"alpha_k", rep.bands.alpha_k},
         {"beta_k", rep.bands.beta_k},
         {"N", rep.N},
         {"S_alpha", rep.S_alpha},
         {"S_beta", rep.S_beta},
         {"log_F_Mi", rep.log_F_Mi},
         {"log_F_Me", rep.log_F_Me},
         {"log_F_Ma", rep.log_F_Ma},
         {"log_P", rep.log_P},
         {"log_regrouped", rep.log_regrouped},
         {"regroup_identity_residual", rep.regroup_identity_residual},
         {"regroup_exact", rep.regroup_exact},
         {"claim_residual", rep.claim_residual}};
  j["log_P_exact"] = rep.log_P_exact ? json(*rep.log_P_exact) : json(nullptr);
  j["P_exact"] = rep.P_exact ? json(*rep.P_exact) : json(nullptr);
  j["claim_residual_reduced"] =
      rep.claim_residual_reduced ? json(*rep.claim_residual_reduced) : json(nullptr);
  return j;
}

json to_json(const ExpansionResult& e) {
  return json{{"base_log", e.base_log},
              {"correction", e.correction},
              {"total_log", e.total_log},
              {"regime_case", to_string(e.regime_case)},
              {"correction_bound", e.correction_bound}};
}

json to_json(const RecoverySequence& seq) {
  return json{{"N", seq.N},         {"q", seq.q},     {"start", seq.start},
              {"r", seq.r},         {"s", seq.s},     {"m", seq.m},
              {"omega", seq.omega}, {"alpha_n", seq.alpha_n},
              {"mass", seq.counts.mass()}, {"largest", seq.counts.largest()},
              {"counts", to_json(seq.counts)}};
}

json to_json(const RateCheck& rc) {
  return json{{"value", rc.value}, {"target", rc.target}, {"J", rc.J},
              {"F", rc.F},         {"J_scaled", rc.J_scaled}};
}

json to_json(const EventEstimate& e) {
  return json{{"p_hat", e.p_hat},
              {"trials", e.trials},
              {"hits", e.hits},
              {"ci_lo", e.ci_lo},
              {"ci_hi", e.ci_hi},
              {"rate_estimate", e.rate_estimate ? json(*e.rate_estimate) : json(nullptr)}};
}

ExactLaw exact_law_from_json(const json& j) {
  try {
    ExactLaw law;
    law.n = j.at("n").get<int>();
    law.p = parse_rational(j.at("p").get<std::string>());
    for (const auto& e : j.at("entries")) {
      std::vector<std::pair<std::int64_t, std::int64_t>> pairs;
      for (const auto& kv : e.at("counts")) {
        pairs.emplace_back(kv.at(0).get<std::int64_t>(), kv.at(1).get<std::int64_t>());
      }
      law.entries.push_back({ClusterCounts::from_pairs(law.n, pairs),
                             parse_rational(e.at("probability").get<std::string>())});
    }
    return law;
  } catch (const json::exception& ex) {
    throw ParameterOutOfRange(std::string("malformed ExactLaw json: ") + ex.what());
  }
}

MesoMeasure meso_measure_from_json(const json& j) {
  try {
    if (j.value("infinite_mass", false)) return MesoMeasure::infinite();
    std::vector<std::pair<double, std::int64_t>> atoms;
    for (const auto& a : j.at("atoms")) {
      atoms.emplace_back(a.at(0).get<double>(), a.at(1).get<std::int64_t>());
    }
    return MesoMeasure::from_weighted(std::move(atoms));
  } catch (const json::exception& ex) {
    throw ParameterOutOfRange(std::string("malformed measure json: ") + ex.what());
  }
}

MesoMeasure parse_atoms(const std::string& text) {
  if (text == "inf") return MesoMeasure::infinite();
  std::vector<std::pair<double, std::int64_t>> atoms;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.find_first_not_of(" \t") == std::string::npos) continue;
    try {
      const auto star = item.find('*');
      std::size_t pos = 0;
      const double u = std::stod(item.substr(0, star), &pos);
      std::int64_t m = 1;
      if (star != std::string::npos) m = std::stoll(item.substr(star + 1));
      atoms.emplace_back(u, m);
    } catch (const std::exception&) {
      throw ParameterOutOfRange("bad atom '" + item + "'");
    }
  }
  return MesoMeasure::from_weighted(std::move(atoms));
}

}  // namespace erldp
