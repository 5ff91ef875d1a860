#pragma once
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "bvq/structures.hpp"

namespace bvq {

enum class Rule { ai_down, ai_down_left, sw, q_down, u_down, ai_up, q_up, u_up };

std::string rule_name(Rule r);
Rule rule_from_name(const std::string& s);
bool is_down(Rule r);
bool is_ai(Rule r);
const std::set<Rule>& down_fragment();
const std::set<Rule>& standard_fragment();  // ai_down_left, q_down, u_down

struct PathStep {
    Kind op;
    int idx;
    auto operator<=>(const PathStep&) const = default;
};
using Path = std::vector<PathStep>;
std::string op_name(Kind k);
Kind op_from_name(const std::string& s);
std::string path_str(const Path& p);

struct RuleInstance {
    Rule rule = Rule::ai_down;
    Path path;
    Structure before;  // conclusion redex
    Structure after;   // premise redex
    std::vector<int> consumed;
    Structure conclusion;  // whole structure below the step (canonical, with ids)
    Structure premise;     // whole structure above the step (canonical, with ids)
};

struct Derivation {
    Structure conclusion;  // canonical, with ids
    std::vector<RuleInstance> steps;  // bottom to top
    Structure premise() const { return steps.empty() ? conclusion : steps.back().premise; }
};

// Canonical form with occurrence ids; atoms lacking ids are numbered in pre-order.
Structure prepare(const Structure& s);

Structure subterm_at(const Structure& s, const Path& p);
Structure replace_at(const Structure& s, const Path& p, const Structure& repl);
bool valid_path(const Structure& s, const Path& p);

struct EnumOptions {
    bool compact = false;  // single-child sides only (complete for provability)
};

std::vector<RuleInstance> enumerate_instances(const Structure& s, const std::set<Rule>& fragment,
                                              EnumOptions o = {});
// Instances rooted at one Par node, using exactly the children in `use` (all if empty).
std::vector<RuleInstance> enumerate_at(const Structure& root, const Path& path, const std::set<Rule>& fragment,
                                       EnumOptions o, const std::vector<int>& use = {});

int seq_number_at(const Structure& root, const Path& p);
int seq_number(const RuleInstance& inst);

enum class System { down, full };
struct CheckResult {
    bool ok = true;
    int step = -1;
    std::string reason;
};
// Re-validates every step; `d.steps[k].premise` are recomputed into `out` when given.
CheckResult check_derivation(const Derivation& d, System sys, Derivation* out = nullptr);

std::size_t derivation_length(const Derivation& d);
Derivation concat(const Derivation& lower, const Derivation& upper);

// Instance from `from` to a structure whose id-key equals that of `to`.
std::optional<RuleInstance> find_step(const Structure& from, const Structure& to, const std::set<Rule>& fragment,
                                      bool by_ids = true);

}  // namespace bvq
