#pragma once
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "bvq/structures.hpp"

namespace bvq {

enum class PKind { Zero, Prefix, Par, Nu };

struct PNode;
using Process = std::shared_ptr<const PNode>;
struct PNode {
    PKind kind = PKind::Zero;
    Name name;  // prefix label, or Nu binder (positive)
    std::vector<Process> kids;
};

Process p_zero();
Process p_prefix(const Name& l, Process body);
Process p_par(Process l, Process r);
Process p_par_all(const std::vector<Process>& ps);  // 0 for empty
Process p_nu(const std::string& binder, Process body);

Process parse_process(const std::string& text);
std::string print_process(const Process& p);
std::size_t process_size(const Process& p);
std::set<std::string> process_free_bases(const Process& p);
Process process_rename_free(const Process& p, const std::string& from, const std::string& to);

// Process structures: <0>=1, <l.E>=<l;<E>>, <E|F>=[<E>;<F>], <nu a.E>=fo a.<E>.
Structure encode_process(const Process& p);
Process decode_structure(const Structure& s);  // throws on non-process structures
bool is_process_structure(const Structure& s);

std::string process_key(const Process& p);
bool process_congruent(const Process& a, const Process& b);
Process process_normal(const Process& p);
std::vector<Process> par_components(const Process& p);  // canonical components

struct Action {
    bool tau = true;
    Name name;
    auto operator<=>(const Action&) const = default;
    static Action t() { return {}; }
    static Action of(const Name& n) { return Action{false, n}; }
};
using ActionSeq = std::vector<Action>;

ActionSeq actions_normalize(const ActionSeq& a);
ActionSeq parse_actions(const std::string& text);
std::string print_actions(const ActionSeq& a);
ActionSeq actions_concat(const ActionSeq& a, const ActionSeq& b);
ActionSeq actions_hide(const ActionSeq& a, const std::string& base);
ActionSeq actions_complement(const ActionSeq& a);
bool actions_equal(const ActionSeq& a, const ActionSeq& b);

enum class LtsRule { act, com, cntxp, res_pass, res_hide, res_merge, refl, tran };
std::string lts_rule_name(LtsRule r);
LtsRule lts_rule_from_name(const std::string& s);

struct LtsNode {
    LtsRule rule = LtsRule::refl;
    Process from, to;
    ActionSeq label;
    std::vector<LtsNode> children;
};

struct Transition {
    Process to;
    ActionSeq label;
    LtsNode tree;
};

std::vector<Transition> lts_steps(const Process& e, bool milner = false);
std::optional<LtsNode> lts_reachable(const Process& e, const Process& f, const ActionSeq& alpha, int depth,
                                     bool milner = false);
LtsNode lts_compose(const std::vector<LtsNode>& chain);  // tran-fold; refl for empty needs a process

struct LtsCheck {
    bool ok = true;
    std::string where;
    std::string reason;
};
LtsCheck check_lts_derivation(const LtsNode& t);

bool is_simple_process(const Process& e);

}  // namespace bvq
