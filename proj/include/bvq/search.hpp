#pragma once
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "bvq/calculus.hpp"
#include "bvq/ccsr.hpp"

namespace bvq {

struct SearchBudget {
    std::uint64_t max_steps = 100000;
    std::uint64_t max_visited = 100000;
};
SearchBudget default_budget();  // honours BVQ_BUDGET

enum class Fragment { down, standard };

struct SearchStats {
    std::uint64_t steps = 0;
    std::uint64_t visited = 0;
    double elapsed_ms = 0;
};

struct SearchResult {
    std::optional<Derivation> derivation;
    bool exhausted = false;  // budget ran out before closure
    SearchStats stats;
};

SearchResult prove(const Structure& goal, Fragment f, SearchBudget b = default_budget());
SearchResult derive(const Structure& conclusion, const Structure& premise, Fragment f,
                    SearchBudget b = default_budget());
// Derivation search where every atom whose id is in `must_consume` has to be annihilated.
SearchResult derive_consuming(const Structure& conclusion, const Structure& premise,
                              const std::unordered_set<int>& must_consume, Fragment f, SearchBudget b);

// ---- reduction and consumption
Derivation reduce(const Derivation& d);
bool consumes(const Derivation& d, const std::unordered_set<int>& env_ids);

// ---- splitting and inversion
enum class SplitShape { seq, copar, atom, fo };
struct SplitResult {
    std::vector<Structure> parts;        // P1,P2 (seq/copar), T (fo), or empty (atom)
    Derivation link;                     // <P1;P2> |- P, [P1;P2] |- P, fo a.T |- P, or ~R1 |- [R0;P]
    std::vector<Derivation> proofs;      // proofs of the components
};
// `x`/`y` are the shape's components: seq/copar (R,T); atom (R0,R1); fo (binder atom, R).
SplitResult split(const Derivation& proof, SplitShape shape, const Structure& x, const Structure& y,
                  const Structure& P, SearchBudget b = default_budget());
Derivation invert(const Structure& t, const Derivation& proof, SearchBudget b = default_budget());
bool is_co_invertible(const Structure& t);

// ---- witnesses and the pipeline
LtsNode extract_lts(const Derivation& d, const Process& e, const Process& f, const Structure& env,
                    const std::unordered_set<int>& env_ids);

struct ReachOptions {
    SearchBudget budget = default_budget();
    bool via_inversion = false;
};
struct ReachVerdict {
    bool proved = false;
    bool exhausted = false;
    Derivation proof;     // proof of [<e>; ~<f>; R] (inversion path) or the standard derivation
    Derivation standard;  // <f> |- [<e>; R]
    LtsNode witness;
    Structure env;
    std::unordered_set<int> env_ids;
    SearchStats stats;
    std::string method;
};
ReachVerdict reach(const Process& e, const Process& f, const ActionSeq& alpha, ReachOptions o = {});

}  // namespace bvq
