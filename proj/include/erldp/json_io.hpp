#pragma once

#include <string>

#include <json.hpp>

#include "erldp/borel_micro.hpp"
#include "erldp/connectivity_asymptotics.hpp"
#include "erldp/exact_oracle.hpp"
#include "erldp/ldp_core.hpp"
#include "erldp/regime.hpp"
#include "erldp/simulator.hpp"

namespace erldp {

using json = nlohmann::ordered_json;

json to_json(const Regime& r);
json to_json(const ClusterCounts& l);  // sparse [[k, l_k], ...]
/// {"n", "p", "entries": [{"counts": [[k, l_k]...], "probability": "a/b"}]}
json to_json(const ExactLaw& law);
/// {"atoms": [[u, multiplicity], ...], "infinite_mass": bool}
json to_json(const MesoMeasure& mu);
json to_json(const DecompositionReport& rep);
json to_json(const ExpansionResult& e);
json to_json(const RecoverySequence& seq);
json to_json(const RateCheck& rc);
json to_json(const EventEstimate& e);

ExactLaw exact_law_from_json(const json& j);
MesoMeasure meso_measure_from_json(const json& j);

/// "0.5,0.6,2*3" style list: plain values are single atoms, "u*m" an atom of
/// multiplicity m. The empty string is the empty measure; "inf" is the
/// infinite-mass input.
MesoMeasure parse_atoms(const std::string& text);

}  // namespace erldp
