#pragma once
#include <set>
#include <string>

#include "bvq/calculus.hpp"
#include "bvq/ccsr.hpp"

namespace bvq {

Structure to_structure(const Process& e);    // raw image, not canonicalized
Process from_structure(const Structure& s);  // throws on non-process structures

struct StructureKinds {
    bool is_process = false;
    bool is_environment = false;
    bool is_simple = false;
    bool is_invertible = false;
    bool is_tensor_free = false;
};
StructureKinds classify_structure(const Structure& s);
bool is_environment_structure(const Structure& s);
bool is_simple_structure(const Structure& s);
bool is_invertible_structure(const Structure& s);

ActionSeq env_to_actions(const Structure& s, const std::set<std::string>& hidden = {});
Structure actions_to_env(const ActionSeq& alpha);

bool is_trivial_derivation(const Derivation& d);

}  // namespace bvq
