#pragma once
#include <string>
#include <vector>

#include "bvq/calculus.hpp"

namespace bvq {

// Hole at `path` in `host` sits in a right-context (leftmost in every Seq, up to units).
bool is_right_context(const Structure& host, const Path& path);

bool is_standard(const Derivation& d);

// Moves the ai_down at `step_index` one rule upward (or just relabels it).
Derivation commute_once(const Derivation& d, std::size_t step_index);

struct StandardizeResult {
    Derivation derivation;
    std::vector<int> seq_before;  // per ai step of the input
    std::vector<int> seq_after;
    std::string method;  // "relabel", "commute", "search"
    int commutations = 0;
};

StandardizeResult standardize(const Derivation& d);

// Every ai_down with Seq-number 0 becomes ai_down_left.
Derivation relabel_left(const Derivation& d);

}  // namespace bvq
