#pragma once
#include <json.hpp>

#include "bvq/calculus.hpp"
#include "bvq/ccsr.hpp"
#include "bvq/search.hpp"
#include "bvq/standardize.hpp"

namespace bvq {

using json = nlohmann::ordered_json;

json derivation_to_json(const Derivation& d);
// Steps carry no intermediate structures; check_derivation recomputes them.
Derivation derivation_from_json(const json& j);
// Declared premise of a derivation document, if any.
Structure derivation_premise_from_json(const json& j);

json lts_to_json(const LtsNode& t);
LtsNode lts_from_json(const json& j);

json verdict_to_json(const ReachVerdict& v);
json standardize_to_json(const Derivation& before, const StandardizeResult& r);

}  // namespace bvq
