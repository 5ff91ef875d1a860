#include "bvq/calculus.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <unordered_set>

namespace bvq {

std::string rule_name(Rule r) {
    switch (r) {
        case Rule::ai_down: return "ai_down";
        case Rule::ai_down_left: return "ai_down_left";
        case Rule::sw: return "switch";
        case Rule::q_down: return "q_down";
        case Rule::u_down: return "u_down";
        case Rule::ai_up: return "ai_up";
        case Rule::q_up: return "q_up";
        case Rule::u_up: return "u_up";
    }
    return "?";
}

Rule rule_from_name(const std::string& s) {
    static const std::map<std::string, Rule> m{{"ai_down", Rule::ai_down}, {"ai_down_left", Rule::ai_down_left},
                                               {"switch", Rule::sw},        {"q_down", Rule::q_down},
                                               {"u_down", Rule::u_down},    {"ai_up", Rule::ai_up},
                                               {"q_up", Rule::q_up},        {"u_up", Rule::u_up}};
    auto it = m.find(s);
    if (it == m.end()) throw Error(ErrorCode::Invalid, "unknown rule: " + s);
    return it->second;
}

bool is_down(Rule r) { return r == Rule::ai_down || r == Rule::ai_down_left || r == Rule::sw || r == Rule::q_down || r == Rule::u_down; }
bool is_ai(Rule r) { return r == Rule::ai_down || r == Rule::ai_down_left; }

const std::set<Rule>& down_fragment() {
    static const std::set<Rule> f{Rule::ai_down, Rule::sw, Rule::q_down, Rule::u_down};
    return f;
}
const std::set<Rule>& standard_fragment() {
    static const std::set<Rule> f{Rule::ai_down_left, Rule::q_down, Rule::u_down};
    return f;
}

std::string op_name(Kind k) {
    switch (k) {
        case Kind::Par: return "par";
        case Kind::CoPar: return "copar";
        case Kind::Seq: return "seq";
        case Kind::Sdq: return "fo";
        case Kind::Not: return "not";
        default: return "?";
    }
}

Kind op_from_name(const std::string& s) {
    if (s == "par") return Kind::Par;
    if (s == "copar") return Kind::CoPar;
    if (s == "seq") return Kind::Seq;
    if (s == "fo") return Kind::Sdq;
    if (s == "not") return Kind::Not;
    throw Error(ErrorCode::Invalid, "unknown path operator: " + s);
}

std::string path_str(const Path& p) {
    std::string s = "/";
    for (auto& st : p) s += op_name(st.op) + std::to_string(st.idx) + "/";
    return s;
}

Structure prepare(const Structure& s) {
    Structure c = canonicalize(s);
    std::vector<int> ids;
    collect_ids(c, ids);
    std::set<int> seen;
    bool ok = true;
    for (int i : ids)
        if (i < 0 || !seen.insert(i).second) ok = false;
    return ok ? c : assign_ids(c);
}

bool valid_path(const Structure& s, const Path& p) {
    Structure cur = s;
    for (auto& st : p) {
        if (cur->kind != st.op || st.idx < 0 || st.idx >= static_cast<int>(cur->kids.size())) return false;
        cur = cur->kids[st.idx];
    }
    return true;
}

Structure subterm_at(const Structure& s, const Path& p) {
    if (!valid_path(s, p)) throw Error(ErrorCode::Invalid, "invalid path " + path_str(p));
    Structure cur = s;
    for (auto& st : p) cur = cur->kids[st.idx];
    return cur;
}

namespace {
Structure replace_rec(const Structure& s, const Path& p, std::size_t d, const Structure& repl) {
    if (d == p.size()) return repl;
    auto n = std::make_shared<Node>(*s);
    n->kids[p[d].idx] = replace_rec(s->kids[p[d].idx], p, d + 1, repl);
    return n;
}
}  // namespace

Structure replace_at(const Structure& s, const Path& p, const Structure& repl) {
    if (!valid_path(s, p)) throw Error(ErrorCode::Invalid, "invalid path " + path_str(p));
    return replace_rec(s, p, 0, repl);
}

int seq_number_at(const Structure& root, const Path& p) {
    int n = 0;
    Structure cur = root;
    for (auto& st : p) {
        if (cur->kind == Kind::Seq) n += st.idx;
        cur = cur->kids[st.idx];
    }
    return n;
}

int seq_number(const RuleInstance& inst) {
    if (!is_ai(inst.rule)) throw Error(ErrorCode::Precondition, "seq_number needs an ai_down instance");
    return seq_number_at(inst.conclusion, inst.path);
}

// ---------------------------------------------------------------- enumeration

namespace {

struct QSide {
    std::vector<int> used;
    Structure R, T;
};

std::vector<std::vector<int>> subsets(const std::vector<int>& xs, bool compact) {
    std::vector<std::vector<int>> out;
    if (compact || xs.size() > 10) {
        for (int x : xs) out.push_back({x});
        return out;
    }
    std::size_t n = xs.size();
    for (std::size_t m = 1; m < (std::size_t(1) << n); ++m) {
        std::vector<int> s;
        for (std::size_t k = 0; k < n; ++k)
            if (m & (std::size_t(1) << k)) s.push_back(xs[k]);
        out.push_back(s);
    }
    return out;
}

bool disjoint(const std::vector<int>& a, const std::vector<int>& b) {
    for (int x : a)
        if (std::find(b.begin(), b.end(), x) != b.end()) return false;
    return true;
}

std::vector<Structure> pick(const std::vector<Structure>& kids, const std::vector<int>& idx) {
    std::vector<Structure> v;
    for (int i : idx) v.push_back(kids[i]);
    return v;
}

struct Emitter {
    const Structure& root;
    const Path& path;
    const Structure& node;
    const std::vector<int>& use;
    bool require_all;
    std::vector<RuleInstance>& out;

    void emit(Rule r, std::vector<int> used, Structure after, std::vector<int> consumed = {}) {
        std::sort(used.begin(), used.end());
        if (require_all && used.size() != use.size()) return;
        std::vector<Structure> before_kids = pick(node->kids, used);
        Structure before = mk_par(before_kids);
        if (r != Rule::ai_down && r != Rule::ai_down_left && canon_key(after) == canon_key(before)) return;
        std::vector<Structure> rest{after};
        for (std::size_t k = 0; k < node->kids.size(); ++k)
            if (std::find(used.begin(), used.end(), static_cast<int>(k)) == used.end()) rest.push_back(node->kids[k]);
        RuleInstance inst;
        inst.rule = r;
        inst.path = path;
        inst.before = before;
        inst.after = after;
        inst.consumed = std::move(consumed);
        inst.conclusion = root;
        inst.premise = canonicalize(replace_at(root, path, mk_par(rest)));
        out.push_back(std::move(inst));
    }
};

Structure strip_binder(const std::vector<std::string>& binders, std::size_t skip, const Structure& body) {
    Structure s = body;
    for (std::size_t j = binders.size(); j-- > 0;)
        if (j != skip) s = mk_sdq(binders[j], s);
    return s;
}

void block_of(const Structure& s, std::vector<std::string>& binders, Structure& body) {
    body = s;
    while (body->kind == Kind::Sdq) {
        binders.push_back(body->name.base);
        body = body->kids[0];
    }
}

void enum_node(const Structure& root, const Path& path, const Structure& node, const std::set<Rule>& frag,
               EnumOptions o, const std::vector<int>& use_in, std::vector<RuleInstance>& out) {
    std::vector<int> use = use_in;
    bool require_all = !use_in.empty();
    if (use.empty())
        for (std::size_t k = 0; k < node->kids.size(); ++k) use.push_back(static_cast<int>(k));
    Emitter em{root, path, node, use, require_all, out};
    const auto& kids = node->kids;

    bool ai_any = frag.count(Rule::ai_down) > 0;
    bool ai_left = frag.count(Rule::ai_down_left) > 0;
    if (ai_any || ai_left) {
        int sn = seq_number_at(root, path);
        if (ai_any || sn == 0) {
            Rule r = ai_any ? Rule::ai_down : Rule::ai_down_left;
            for (std::size_t x = 0; x < use.size(); ++x)
                for (std::size_t y = x + 1; y < use.size(); ++y) {
                    const auto& a = kids[use[x]];
                    const auto& b = kids[use[y]];
                    if (a->kind == Kind::Atom && b->kind == Kind::Atom && a->name == b->name.complement())
                        em.emit(r, {use[x], use[y]}, mk_one(), {a->id, b->id});
                }
        }
    }

    if (frag.count(Rule::q_down)) {
        std::vector<QSide> sides;
        for (int i : use) {
            const auto& c = kids[i];
            if (c->kind == Kind::Seq)
                for (std::size_t k = 1; k < c->kids.size(); ++k)
                    sides.push_back({{i},
                                     mk_seq({c->kids.begin(), c->kids.begin() + k}),
                                     mk_seq({c->kids.begin() + k, c->kids.end()})});
        }
        for (auto& g : subsets(use, o.compact)) {
            Structure p = mk_par(pick(kids, g));
            sides.push_back({g, p, mk_one()});
            sides.push_back({g, mk_one(), p});
        }
        for (std::size_t x = 0; x < sides.size(); ++x)
            for (std::size_t y = x + 1; y < sides.size(); ++y) {
                const auto& A = sides[x];
                const auto& B = sides[y];
                if (!disjoint(A.used, B.used)) continue;
                std::vector<int> used = A.used;
                used.insert(used.end(), B.used.begin(), B.used.end());
                if (require_all && used.size() != use.size()) continue;
                Structure after = mk_seq({mk_par({A.R, B.R}), mk_par({A.T, B.T})});
                em.emit(Rule::q_down, used, after);
            }
    }

    if (frag.count(Rule::u_down)) {
        for (int i : use) {
            if (kids[i]->kind != Kind::Sdq) continue;
            std::vector<std::string> bi;
            Structure Bi;
            block_of(kids[i], bi, Bi);
            for (std::size_t j = 0; j < bi.size(); ++j) {
                Structure Ri = strip_binder(bi, j, Bi);
                const std::string& a = bi[j];
                // merge with another quantified child
                for (int l : use) {
                    if (l == i || kids[l]->kind != Kind::Sdq) continue;
                    std::vector<std::string> bl;
                    Structure Bl;
                    block_of(kids[l], bl, Bl);
                    for (std::size_t jj = 0; jj < bl.size(); ++jj) {
                        if (l < i && o.compact) continue;  // symmetric pair, once
                        Structure Tl = strip_binder(bl, jj, Bl);
                        std::string z = a;
                        if (z != bl[jj] && occurs_free(z, Tl)) {
                            auto avoid = all_bases(Ri);
                            for (auto& b : all_bases(Tl)) avoid.insert(b);
                            z = fresh_base(a, avoid);
                        }
                        Structure R2 = rename_free(Ri, a, z);
                        Structure T2 = rename_free(Tl, bl[jj], z);
                        em.emit(Rule::u_down, {i, l}, mk_sdq(z, mk_par({R2, T2})));
                    }
                }
                // pull other children inside the binder
                std::vector<int> others;
                for (int l : use)
                    if (l != i) others.push_back(l);
                for (auto& g : subsets(others, o.compact)) {
                    Structure T = mk_par(pick(kids, g));
                    std::string z = a;
                    Structure R2 = Ri;
                    if (occurs_free(a, T)) {
                        auto avoid = all_bases(Ri);
                        for (auto& b : all_bases(T)) avoid.insert(b);
                        z = fresh_base(a, avoid);
                        R2 = rename_free(Ri, a, z);
                    }
                    std::vector<int> used = g;
                    used.push_back(i);
                    em.emit(Rule::u_down, used, mk_sdq(z, mk_par({R2, T})));
                }
            }
        }
    }

    if (frag.count(Rule::sw)) {
        for (int i : use) {
            const auto& c = kids[i];
            if (c->kind != Kind::CoPar) continue;
            std::size_t m = c->kids.size();
            if (m > 12) continue;
            std::vector<int> others;
            for (int l : use)
                if (l != i) others.push_back(l);
            auto us = subsets(others, o.compact);
            for (std::size_t mask = 1; mask + 1 < (std::size_t(1) << m); ++mask) {
                std::vector<Structure> R, T;
                for (std::size_t k = 0; k < m; ++k) ((mask >> k) & 1 ? R : T).push_back(c->kids[k]);
                for (auto& g : us) {
                    std::vector<Structure> rp{mk_copar(R)};
                    for (int l : g) rp.push_back(kids[l]);
                    std::vector<int> used = g;
                    used.push_back(i);
                    em.emit(Rule::sw, used, mk_copar({mk_par(rp), mk_copar(T)}));
                }
            }
        }
    }
}

void walk(const Structure& root, const Structure& node, Path& path, const std::set<Rule>& frag, EnumOptions o,
          std::vector<RuleInstance>& out) {
    if (node->kind == Kind::Par) enum_node(root, path, node, frag, o, {}, out);
    for (std::size_t k = 0; k < node->kids.size(); ++k) {
        path.push_back({node->kind, static_cast<int>(k)});
        walk(root, node->kids[k], path, frag, o, out);
        path.pop_back();
    }
}

int rule_order(Rule r) {
    switch (r) {
        case Rule::ai_down: case Rule::ai_down_left: return 0;
        case Rule::q_down: return 1;
        case Rule::u_down: return 2;
        case Rule::sw: return 3;
        default: return 4;
    }
}

void order_and_dedupe(std::vector<RuleInstance>& v) {
    std::vector<std::tuple<int, Path, std::string, std::string, std::size_t>> keys;
    for (std::size_t k = 0; k < v.size(); ++k)
        keys.emplace_back(rule_order(v[k].rule), v[k].path, print(v[k].before, {true}), canon_key_ids(v[k].premise), k);
    std::sort(keys.begin(), keys.end());
    std::vector<RuleInstance> out;
    std::unordered_set<std::string> seen;
    for (auto& t : keys) {
        std::string sig = std::to_string(std::get<0>(t)) + "|" + path_str(std::get<1>(t)) + "|" + std::get<2>(t) + "|" + std::get<3>(t);
        if (!seen.insert(sig).second) continue;
        out.push_back(std::move(v[std::get<4>(t)]));
    }
    v = std::move(out);
}

}  // namespace

std::vector<RuleInstance> enumerate_instances(const Structure& s, const std::set<Rule>& fragment, EnumOptions o) {
    for (Rule r : fragment)
        if (!is_down(r)) throw Error(ErrorCode::Precondition, "enumeration is restricted to the down fragment");
    Structure root = prepare(s);
    std::vector<RuleInstance> out;
    Path p;
    walk(root, root, p, fragment, o, out);
    order_and_dedupe(out);
    return out;
}

std::vector<RuleInstance> enumerate_at(const Structure& root, const Path& path, const std::set<Rule>& fragment,
                                       EnumOptions o, const std::vector<int>& use) {
    Structure node = subterm_at(root, path);
    std::vector<RuleInstance> out;
    if (node->kind != Kind::Par) return out;
    enum_node(root, path, node, fragment, o, use, out);
    order_and_dedupe(out);
    return out;
}

std::optional<RuleInstance> find_step(const Structure& from, const Structure& to, const std::set<Rule>& fragment,
                                      bool by_ids) {
    std::string target = by_ids ? canon_key_ids(to) : canon_key(to);
    for (bool compact : {true, false}) {
        for (auto& inst : enumerate_instances(from, fragment, {compact})) {
            std::string k = by_ids ? canon_key_ids(inst.premise) : canon_key(inst.premise);
            if (k == target) return inst;
        }
    }
    return std::nullopt;
}

// ---------------------------------------------------------------- checking

namespace {

Rule dual_of(Rule r) {
    switch (r) {
        case Rule::ai_up: return Rule::ai_down;
        case Rule::q_up: return Rule::q_down;
        case Rule::u_up: return Rule::u_down;
        default: return r;
    }
}

// Assignments of the parts of `before` to children of a Par node.
std::vector<std::vector<int>> match_children(const Structure& node, const Structure& before, bool ids) {
    Structure b = canonicalize(before);
    std::vector<Structure> parts = b->kind == Kind::Par ? b->kids : std::vector<Structure>{b};
    std::vector<std::string> kk;
    for (auto& c : node->kids) kk.push_back(ids ? canon_key_ids(c) : canon_key(c));
    std::vector<std::string> pk;
    for (auto& p : parts) pk.push_back(ids ? canon_key_ids(p) : canon_key(p));
    std::set<std::vector<int>> out;
    std::vector<int> cur;
    std::vector<bool> taken(node->kids.size(), false);
    std::function<void(std::size_t)> go = [&](std::size_t k) {
        if (out.size() >= 64) return;
        if (k == pk.size()) {
            auto v = cur;
            std::sort(v.begin(), v.end());
            out.insert(v);
            return;
        }
        for (std::size_t j = 0; j < kk.size(); ++j)
            if (!taken[j] && kk[j] == pk[k]) {
                taken[j] = true;
                cur.push_back(static_cast<int>(j));
                go(k + 1);
                cur.pop_back();
                taken[j] = false;
            }
    };
    go(0);
    return {out.begin(), out.end()};
}

bool ids_known(const Structure& s) {
    std::vector<int> v;
    collect_ids(s, v);
    for (int i : v)
        if (i < 0) return false;
    return true;
}

int max_id(const Structure& s) {
    std::vector<int> v;
    collect_ids(s, v);
    int m = -1;
    for (int i : v) m = std::max(m, i);
    return m;
}

Structure fill_ids(const Structure& s, int& next) {
    if (s->kind == Kind::Atom) return s->id >= 0 ? s : mk_atom(s->name, next++);
    if (s->kids.empty()) return s;
    auto n = std::make_shared<Node>(*s);
    for (auto& k : n->kids) k = fill_ids(k, next);
    return n;
}

// Candidate premises of a down step, given its recorded data.
std::vector<RuleInstance> down_candidates(const Structure& cur, const RuleInstance& st, std::string& why) {
    if (!valid_path(cur, st.path)) {
        why = "path " + path_str(st.path) + " does not resolve";
        return {};
    }
    Structure node = subterm_at(cur, st.path);
    if (node->kind != Kind::Par) {
        why = "redex position is not a Par node";
        return {};
    }
    bool with_ids = st.before && ids_known(st.before);
    std::vector<std::vector<int>> uses{{}};
    if (st.before) {
        uses = match_children(node, st.before, with_ids);
        if (uses.empty()) {
            why = "redex " + print(st.before) + " not found at " + path_str(st.path);
            return {};
        }
    }
    std::set<Rule> frag{st.rule == Rule::ai_down_left ? Rule::ai_down_left : st.rule};
    std::vector<RuleInstance> cands;
    for (auto& use : uses) {
        auto v = enumerate_at(cur, st.path, frag, {false}, use);
        cands.insert(cands.end(), v.begin(), v.end());
    }
    std::vector<RuleInstance> out;
    std::string after_key = st.after ? canon_key(st.after) : "";
    for (auto& c : cands) {
        if (st.after && canon_key(c.after) != after_key) continue;
        if (!st.consumed.empty()) {
            auto a = st.consumed, b = c.consumed;
            std::sort(a.begin(), a.end());
            std::sort(b.begin(), b.end());
            if (a != b) continue;
        }
        out.push_back(c);
    }
    if (out.empty()) why = "no " + rule_name(st.rule) + " instance matches the recorded redex at " + path_str(st.path);
    return out;
}

}  // namespace

CheckResult check_derivation(const Derivation& d, System sys, Derivation* out) {
    CheckResult res;
    Structure start = prepare(d.conclusion);
    std::vector<RuleInstance> chosen(d.steps.size());
    std::string why;
    int deepest = -1;
    std::string deepest_why;
    // depth-first with backtracking over ambiguous matches
    std::function<bool(std::size_t, const Structure&)> go = [&](std::size_t k, const Structure& cur) -> bool {
        if (k == d.steps.size()) return true;
        const RuleInstance& st = d.steps[k];
        auto fail = [&](const std::string& w) {
            if (static_cast<int>(k) > deepest || deepest_why.empty()) {
                deepest = static_cast<int>(k);
                deepest_why = w;
            }
            return false;
        };
        if (is_down(st.rule)) {
            std::string w;
            auto cands = down_candidates(cur, st, w);
            if (cands.empty()) return fail(w);
            std::set<std::string> tried;
            bool want_exact = st.premise && ids_known(st.premise);
            std::string exact = want_exact ? canon_key_ids(st.premise) : "";
            for (auto& c : cands) {
                std::string kk = canon_key_ids(c.premise);
                if (want_exact && kk != exact) continue;
                if (!tried.insert(kk).second) continue;
                if (st.premise && canon_key(st.premise) != canon_key(c.premise)) continue;
                chosen[k] = c;
                if (go(k + 1, c.premise)) return true;
            }
            return fail("step premise disagrees with the recorded structure");
        }
        if (sys != System::full) return fail("up rule " + rule_name(st.rule) + " outside the down system");
        if (!st.before || !st.after) return fail("up rule without redex");
        if (!valid_path(cur, st.path)) return fail("path " + path_str(st.path) + " does not resolve");
        Structure node = subterm_at(cur, st.path);
        Structure repl;
        if (canon_key(st.before) == "1") {
            repl = mk_copar({node, st.after});
        } else if (canon_key(node) == canon_key(st.before)) {
            repl = st.after;
        } else if (node->kind == Kind::Par || node->kind == Kind::CoPar) {
            Structure b = canonicalize(st.before);
            std::vector<Structure> parts = b->kind == node->kind ? b->kids : std::vector<Structure>{b};
            std::vector<bool> taken(node->kids.size(), false);
            for (auto& p : parts) {
                bool f = false;
                for (std::size_t j = 0; j < node->kids.size() && !f; ++j)
                    if (!taken[j] && canon_key(node->kids[j]) == canon_key(p)) taken[j] = f = true;
                if (!f) return fail("up-rule redex not found");
            }
            std::vector<Structure> rest{st.after};
            for (std::size_t j = 0; j < node->kids.size(); ++j)
                if (!taken[j]) rest.push_back(node->kids[j]);
            repl = mk_op(node->kind, rest);
        } else {
            return fail("up-rule redex not found");
        }
        int next = max_id(cur) + 1;
        Structure prem = canonicalize(fill_ids(replace_at(cur, st.path, repl), next));
        // negate-and-swap: the dual down instance must exist
        Structure nc = prepare(negate(prem));
        Structure np = negate(cur);
        std::string target = canon_key(np);
        bool okd = false;
        for (bool compact : {true, false}) {
            for (auto& inst : enumerate_instances(nc, {dual_of(st.rule)}, {compact}))
                if (canon_key(inst.premise) == target) {
                    okd = true;
                    break;
                }
            if (okd) break;
        }
        if (!okd) return fail("dual of " + rule_name(st.rule) + " is not a valid down instance");
        if (st.premise && canon_key(st.premise) != canon_key(prem)) return fail("step premise disagrees");
        RuleInstance c = st;
        c.conclusion = cur;
        c.premise = prem;
        c.consumed.clear();
        chosen[k] = c;
        return go(k + 1, prem);
    };
    bool ok = go(0, start);
    if (!ok) {
        res.ok = false;
        res.step = deepest;
        res.reason = deepest_why;
        return res;
    }
    if (out) {
        out->conclusion = start;
        out->steps = chosen;
    }
    return res;
}

std::size_t derivation_length(const Derivation& d) { return d.steps.size(); }

namespace {
void zip_ids(const Structure& a, const Structure& b, std::map<int, int>& m) {
    if (a->kind == Kind::Atom && b->kind == Kind::Atom) {
        m[b->id] = a->id;
        return;
    }
    for (std::size_t k = 0; k < std::min(a->kids.size(), b->kids.size()); ++k) zip_ids(a->kids[k], b->kids[k], m);
}

Structure remap(const Structure& s, const std::map<int, int>& m) {
    if (!s) return s;
    if (s->kind == Kind::Atom) {
        auto it = m.find(s->id);
        return it == m.end() ? s : mk_atom(s->name, it->second);
    }
    if (s->kids.empty()) return s;
    auto n = std::make_shared<Node>(*s);
    for (auto& k : n->kids) k = remap(k, m);
    return n;
}
}  // namespace

Derivation concat(const Derivation& lower, const Derivation& upper) {
    Structure lp = lower.premise();
    if (canon_key(lp) != canon_key(upper.conclusion))
        throw Error(ErrorCode::Precondition, "concat: premise and conclusion disagree");
    std::map<int, int> m;
    zip_ids(canonicalize(lp), canonicalize(upper.conclusion), m);
    Derivation d = lower;
    int fresh = 1 << 20;
    for (auto& st : upper.steps) {
        RuleInstance r = st;
        r.conclusion = remap(st.conclusion, m);
        r.premise = remap(st.premise, m);
        r.before = remap(st.before, m);
        r.after = remap(st.after, m);
        for (auto& c : r.consumed) {
            auto it = m.find(c);
            c = it == m.end() ? fresh++ : it->second;
        }
        d.steps.push_back(r);
    }
    return d;
}

}  // namespace bvq
