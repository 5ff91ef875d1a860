#include "bvq/standardize.hpp"

#include <functional>
#include <set>
#include <unordered_map>

#include "bvq/search.hpp"

namespace bvq {

namespace {

bool is_unit(const Structure& s) { return canonicalize(s)->kind == Kind::One; }

Structure step_conclusion(const Derivation& d, std::size_t k) { return k == 0 ? d.conclusion : d.steps[k - 1].premise; }

std::set<int> pair_of(const RuleInstance& r) { return {r.consumed.begin(), r.consumed.end()}; }

}  // namespace

bool is_right_context(const Structure& host, const Path& path) {
    if (!valid_path(host, path)) throw Error(ErrorCode::Invalid, "invalid path " + path_str(path));
    Structure cur = host;
    for (auto& st : path) {
        switch (cur->kind) {
            case Kind::Par:
            case Kind::Sdq: break;
            case Kind::Seq:
                for (int k = 0; k < st.idx; ++k)
                    if (!is_unit(cur->kids[k])) return false;
                break;
            default:
                for (std::size_t k = 0; k < cur->kids.size(); ++k)
                    if (static_cast<int>(k) != st.idx && !is_unit(cur->kids[k])) return false;
                if (cur->kind == Kind::Not) return false;
        }
        cur = cur->kids[st.idx];
    }
    return true;
}

bool is_standard(const Derivation& d) {
    auto c = check_derivation(d, System::full);
    if (!c.ok) throw Error(ErrorCode::Invalid, "invalid derivation at step " + std::to_string(c.step) + ": " + c.reason);
    for (auto& st : d.steps)
        if (is_ai(st.rule) && seq_number(st) != 0) return false;
    return true;
}

Derivation relabel_left(const Derivation& d) {
    Derivation out = d;
    for (auto& st : out.steps)
        if (is_ai(st.rule) && seq_number(st) == 0) st.rule = Rule::ai_down_left;
    return out;
}

namespace {

// Bounded search for a segment from `from` to `target` (by ids) ending with the marked ai,
// where any other ai consumes exactly `other` at Seq-number 0.
struct Segment {
    std::set<int> marked, other;
    std::string target;
    int max_plain;
    bool compact;
    std::vector<RuleInstance> found;
    std::unordered_map<std::string, bool> dead;

    bool go(const Structure& s, int plain, bool other_done, std::vector<RuleInstance>& acc) {
        std::string memo = canon_key_ids(s) + "|" + std::to_string(plain) + (other_done ? "o" : "");
        if (dead.count(memo)) return false;
        static const std::set<Rule> frag{Rule::ai_down, Rule::q_down, Rule::u_down};
        for (auto& inst : enumerate_instances(s, frag, EnumOptions{compact})) {
            if (is_ai(inst.rule)) {
                auto p = pair_of(inst);
                if (p == marked) {
                    if (!other.empty() && !other_done) continue;
                    if (canon_key_ids(inst.premise) != target) continue;
                    acc.push_back(inst);
                    found = acc;
                    return true;
                }
                if (p != other || other_done || seq_number(inst) != 0) continue;
                acc.push_back(inst);
                if (go(inst.premise, plain, true, acc)) return true;
                acc.pop_back();
            } else if (plain < max_plain) {
                acc.push_back(inst);
                if (go(inst.premise, plain + 1, other_done, acc)) return true;
                acc.pop_back();
            }
        }
        dead[memo] = true;
        return false;
    }
};

}  // namespace

Derivation commute_once(const Derivation& d_in, std::size_t i) {
    if (i >= d_in.steps.size() || !is_ai(d_in.steps[i].rule))
        throw Error(ErrorCode::Precondition, "commute_once: step " + std::to_string(i) + " is not ai_down");
    Derivation d = d_in;
    for (auto& st : d.steps)
        if (st.rule == Rule::sw || !is_down(st.rule))
            throw Error(ErrorCode::Precondition, "commute_once: only ai_down, q_down, u_down are supported");
    if (seq_number(d.steps[i]) == 0) {
        d.steps[i].rule = Rule::ai_down_left;
        return d;
    }
    if (i + 1 >= d.steps.size()) throw Error(ErrorCode::NotFound, "commute_once: marked ai_down closes the derivation");
    const auto& up = d.steps[i + 1];
    Segment seg;
    seg.marked = pair_of(d.steps[i]);
    if (is_ai(up.rule)) seg.other = pair_of(up);
    seg.target = canon_key_ids(up.premise);
    Structure from = step_conclusion(d, i);
    for (int attempt = 0; attempt < 4; ++attempt) {
        seg.compact = attempt < 2;
        seg.max_plain = attempt % 2 == 0 ? 2 : 3;
        seg.dead.clear();
        std::vector<RuleInstance> acc;
        if (!seg.go(from, 0, false, acc)) continue;
        Derivation lower;
        lower.conclusion = d.conclusion;
        lower.steps.assign(d.steps.begin(), d.steps.begin() + i);
        lower.steps.insert(lower.steps.end(), seg.found.begin(), seg.found.end());
        Derivation upper;
        upper.conclusion = up.premise;
        upper.steps.assign(d.steps.begin() + i + 2, d.steps.end());
        Derivation out = concat(lower, upper);
        return out;
    }
    throw Error(ErrorCode::NotFound, "commute_once: no applicable conversion at step " + std::to_string(i));
}

StandardizeResult standardize(const Derivation& d) {
    auto c = check_derivation(d, System::down);
    if (!c.ok) throw Error(ErrorCode::Precondition, "standardize: invalid derivation: " + c.reason);
    for (auto& st : d.steps) {
        if (st.rule == Rule::sw || !is_down(st.rule))
            throw Error(ErrorCode::Precondition, "standardize: rules must be among ai_down, q_down, u_down");
        if (!is_tensor_free(st.conclusion) || !is_tensor_free(st.premise))
            throw Error(ErrorCode::Precondition, "standardize: derivation is not Tensor-free");
    }
    StandardizeResult r;
    for (auto& st : d.steps)
        if (is_ai(st.rule)) r.seq_before.push_back(seq_number(st));
    Derivation cur = relabel_left(d);
    r.method = "relabel";
    bool ok = true;
    for (int guard = 0; guard < 10000; ++guard) {
        int top = -1;
        for (int k = static_cast<int>(cur.steps.size()) - 1; k >= 0; --k)
            if (cur.steps[k].rule == Rule::ai_down) {
                top = k;
                break;
            }
        if (top < 0) break;
        try {
            cur = relabel_left(commute_once(cur, static_cast<std::size_t>(top)));
            ++r.commutations;
            r.method = "commute";
        } catch (const Error&) {
            ok = false;
            break;
        }
    }
    if (!ok) {
        auto s = derive(d.conclusion, d.premise(), Fragment::standard);
        if (!s.derivation) throw Error(ErrorCode::NotFound, "standardize: no standard derivation found");
        cur = *s.derivation;
        r.method = "search";
    }
    for (auto& st : cur.steps)
        if (is_ai(st.rule)) r.seq_after.push_back(seq_number(st));
    r.derivation = cur;
    return r;
}

}  // namespace bvq
