#include "bvq/ccsr.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <functional>
#include <map>
#include <unordered_map>

namespace bvq {

namespace {
Process mkp(PKind k, Name n, std::vector<Process> kids) {
    auto p = std::make_shared<PNode>();
    p->kind = k;
    p->name = std::move(n);
    p->kids = std::move(kids);
    return p;
}
}  // namespace

Process p_zero() {
    static const Process z = mkp(PKind::Zero, {}, {});
    return z;
}
Process p_prefix(const Name& l, Process body) { return mkp(PKind::Prefix, l, {std::move(body)}); }
Process p_par(Process l, Process r) { return mkp(PKind::Par, {}, {std::move(l), std::move(r)}); }
Process p_par_all(const std::vector<Process>& ps) {
    if (ps.empty()) return p_zero();
    Process acc = ps[0];
    for (std::size_t k = 1; k < ps.size(); ++k) acc = p_par(acc, ps[k]);
    return acc;
}
Process p_nu(const std::string& binder, Process body) { return mkp(PKind::Nu, Name{binder, false}, {std::move(body)}); }

// ---------------------------------------------------------------- parsing / printing

namespace {
struct PParser {
    const std::string& t;
    std::size_t i = 0;
    [[noreturn]] void fail(const std::string& m) const {
        throw Error(ErrorCode::Parse, "parse error at " + std::to_string(i) + ": " + m, i);
    }
    void ws() {
        while (i < t.size() && std::isspace(static_cast<unsigned char>(t[i]))) ++i;
    }
    bool peek(char c) {
        ws();
        return i < t.size() && t[i] == c;
    }
    void expect(char c) {
        if (!peek(c)) fail(std::string("expected '") + c + "'");
        ++i;
    }
    std::string ident() {
        ws();
        std::size_t s = i;
        if (i >= t.size() || !(t[i] >= 'a' && t[i] <= 'z')) fail("expected name");
        while (i < t.size() && (std::isalnum(static_cast<unsigned char>(t[i])) || t[i] == '_')) ++i;
        return t.substr(s, i - s);
    }
    Process par() {
        std::vector<Process> ps{unit()};
        while (peek('|')) {
            ++i;
            ps.push_back(unit());
        }
        return p_par_all(ps);
    }
    Process unit() {
        ws();
        if (i >= t.size()) fail("unexpected end of input");
        if (t[i] == '0') {
            ++i;
            return p_zero();
        }
        if (t[i] == '(') {
            ++i;
            Process p = par();
            expect(')');
            return p;
        }
        bool neg = false;
        if (t[i] == '~') {
            ++i;
            neg = true;
        }
        std::string n = ident();
        if (n == "nu" && !neg) {
            ws();
            if (peek('~')) fail("restriction binder must be a positive name");
            std::string b = ident();
            if (b == "nu") fail("'nu' is reserved");
            expect('.');
            return p_nu(b, unit());
        }
        if (n == "nu") fail("'nu' is reserved");
        expect('.');
        return p_prefix(Name{n, neg}, unit());
    }
};

void pprint(const Process& p, std::string& out) {
    switch (p->kind) {
        case PKind::Zero: out += '0'; return;
        case PKind::Prefix:
            out += p->name.str() + ".";
            pprint(p->kids[0], out);
            return;
        case PKind::Nu:
            out += "nu " + p->name.base + ".";
            pprint(p->kids[0], out);
            return;
        case PKind::Par: {
            // flatten nested parallel compositions for readability
            std::vector<Process> cs;
            std::function<void(const Process&)> fl = [&](const Process& x) {
                if (x->kind == PKind::Par)
                    for (auto& k : x->kids) fl(k);
                else
                    cs.push_back(x);
            };
            fl(p);
            out += '(';
            for (std::size_t k = 0; k < cs.size(); ++k) {
                if (k) out += " | ";
                pprint(cs[k], out);
            }
            out += ')';
            return;
        }
    }
}
}  // namespace

Process parse_process(const std::string& text) {
    PParser p{text};
    Process r = p.par();
    p.ws();
    if (p.i != text.size()) p.fail("trailing input");
    return r;
}

std::string print_process(const Process& p) {
    std::string s;
    pprint(p, s);
    return s;
}

std::size_t process_size(const Process& p) {
    std::size_t n = 1;
    for (auto& k : p->kids) n += process_size(k);
    return n;
}

std::set<std::string> process_free_bases(const Process& p) {
    std::set<std::string> out;
    std::vector<std::string> bound;
    std::function<void(const Process&)> go = [&](const Process& x) {
        if (x->kind == PKind::Prefix && std::find(bound.begin(), bound.end(), x->name.base) == bound.end())
            out.insert(x->name.base);
        if (x->kind == PKind::Nu) bound.push_back(x->name.base);
        for (auto& k : x->kids) go(k);
        if (x->kind == PKind::Nu) bound.pop_back();
    };
    go(p);
    return out;
}

namespace {
std::set<std::string> process_all_bases(const Process& p) {
    std::set<std::string> out;
    std::function<void(const Process&)> go = [&](const Process& x) {
        if (x->kind == PKind::Prefix || x->kind == PKind::Nu) out.insert(x->name.base);
        for (auto& k : x->kids) go(k);
    };
    go(p);
    return out;
}
}  // namespace

Process process_rename_free(const Process& p, const std::string& from, const std::string& to) {
    if (from == to) return p;
    switch (p->kind) {
        case PKind::Zero: return p;
        case PKind::Prefix: {
            Name n = p->name;
            if (n.base == from) n.base = to;
            return p_prefix(n, process_rename_free(p->kids[0], from, to));
        }
        case PKind::Par:
            return p_par(process_rename_free(p->kids[0], from, to), process_rename_free(p->kids[1], from, to));
        case PKind::Nu: {
            if (p->name.base == from) return p;
            const Process& body = p->kids[0];
            if (!process_free_bases(body).count(from)) return p;
            if (p->name.base == to) {
                auto avoid = process_all_bases(body);
                avoid.insert(from);
                avoid.insert(to);
                std::string nb = fresh_base(to, avoid);
                return p_nu(nb, process_rename_free(process_rename_free(body, to, nb), from, to));
            }
            return p_nu(p->name.base, process_rename_free(body, from, to));
        }
    }
    return p;
}

// ---------------------------------------------------------------- structures bridge

Structure encode_process(const Process& p) {
    switch (p->kind) {
        case PKind::Zero: return mk_one();
        case PKind::Prefix: {
            auto n = std::make_shared<Node>();
            n->kind = Kind::Seq;
            n->kids = {mk_atom(p->name), encode_process(p->kids[0])};
            return n;
        }
        case PKind::Par: {
            auto n = std::make_shared<Node>();
            n->kind = Kind::Par;
            n->kids = {encode_process(p->kids[0]), encode_process(p->kids[1])};
            return n;
        }
        case PKind::Nu: return mk_sdq(p->name.base, encode_process(p->kids[0]));
    }
    return mk_one();
}

namespace {
Process decode_rec(const Structure& s) {
    switch (s->kind) {
        case Kind::One: return p_zero();
        case Kind::Atom: return p_prefix(s->name, p_zero());
        case Kind::Seq: {
            for (std::size_t k = 0; k + 1 < s->kids.size(); ++k)
                if (s->kids[k]->kind != Kind::Atom)
                    throw Error(ErrorCode::Invalid, "not a process structure: non-atomic prefix in " + print(s));
            Process acc = decode_rec(s->kids.back());
            if (s->kids.back()->kind == Kind::Atom) acc = p_prefix(s->kids.back()->name, p_zero());
            for (std::size_t k = s->kids.size() - 1; k-- > 0;) acc = p_prefix(s->kids[k]->name, acc);
            return acc;
        }
        case Kind::Par: {
            std::vector<Process> ps;
            for (auto& k : s->kids) ps.push_back(decode_rec(k));
            return p_par_all(ps);
        }
        case Kind::Sdq: return p_nu(s->name.base, decode_rec(s->kids[0]));
        default: throw Error(ErrorCode::Invalid, "not a process structure: " + print(s));
    }
}
}  // namespace

Process decode_structure(const Structure& s) { return decode_rec(canonicalize(s)); }

bool is_process_structure(const Structure& s) {
    try {
        decode_structure(s);
        return true;
    } catch (const Error&) {
        return false;
    }
}

std::string process_key(const Process& p) { return canon_key(encode_process(p)); }
bool process_congruent(const Process& a, const Process& b) { return process_key(a) == process_key(b); }
Process process_normal(const Process& p) { return decode_structure(encode_process(p)); }

std::vector<Process> par_components(const Process& p) {
    Structure c = canonicalize(encode_process(p));
    if (c->kind == Kind::One) return {};
    if (c->kind != Kind::Par) return {decode_rec(c)};
    std::vector<Process> out;
    for (auto& k : c->kids) out.push_back(decode_rec(k));
    return out;
}

// ---------------------------------------------------------------- actions

ActionSeq actions_normalize(const ActionSeq& a) {
    ActionSeq out;
    for (auto& x : a)
        if (!x.tau) out.push_back(x);
    if (out.empty()) out.push_back(Action::t());
    return out;
}

ActionSeq parse_actions(const std::string& text) {
    ActionSeq out;
    std::string cur;
    auto flush = [&] {
        std::string s;
        for (char c : cur)
            if (!std::isspace(static_cast<unsigned char>(c))) s += c;
        cur.clear();
        if (s.empty() || s == "tau" || s == "\xcf\x84") {
            out.push_back(Action::t());
            return;
        }
        bool neg = false;
        if (s[0] == '~') {
            neg = true;
            s = s.substr(1);
        }
        if (s.empty() || !(s[0] >= 'a' && s[0] <= 'z')) throw Error(ErrorCode::Parse, "bad action label: " + s);
        for (char c : s)
            if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) throw Error(ErrorCode::Parse, "bad action label: " + s);
        out.push_back(Action::of(Name{s, neg}));
    };
    for (char c : text) {
        if (c == ';' || c == ',') flush();
        else cur += c;
    }
    flush();
    return out;
}

std::string print_actions(const ActionSeq& a) {
    std::string s;
    for (std::size_t k = 0; k < a.size(); ++k) {
        if (k) s += ";";
        s += a[k].tau ? "tau" : a[k].name.str();
    }
    return s.empty() ? "tau" : s;
}

ActionSeq actions_concat(const ActionSeq& a, const ActionSeq& b) {
    ActionSeq r = a;
    r.insert(r.end(), b.begin(), b.end());
    return actions_normalize(r);
}

ActionSeq actions_hide(const ActionSeq& a, const std::string& base) {
    ActionSeq r;
    for (auto& x : a) r.push_back(!x.tau && x.name.base == base ? Action::t() : x);
    return actions_normalize(r);
}

ActionSeq actions_complement(const ActionSeq& a) {
    ActionSeq r;
    for (auto& x : a) r.push_back(x.tau ? x : Action::of(x.name.complement()));
    return r;
}

bool actions_equal(const ActionSeq& a, const ActionSeq& b) { return actions_normalize(a) == actions_normalize(b); }

// ---------------------------------------------------------------- LTS

std::string lts_rule_name(LtsRule r) {
    switch (r) {
        case LtsRule::act: return "act";
        case LtsRule::com: return "com";
        case LtsRule::cntxp: return "cntxp";
        case LtsRule::res_pass: return "res_pass";
        case LtsRule::res_hide: return "res_hide";
        case LtsRule::res_merge: return "res_merge";
        case LtsRule::refl: return "refl";
        case LtsRule::tran: return "tran";
    }
    return "?";
}

LtsRule lts_rule_from_name(const std::string& s) {
    static const std::map<std::string, LtsRule> m{{"act", LtsRule::act},         {"com", LtsRule::com},
                                                  {"cntxp", LtsRule::cntxp},     {"res_pass", LtsRule::res_pass},
                                                  {"res_hide", LtsRule::res_hide}, {"res_merge", LtsRule::res_merge},
                                                  {"refl", LtsRule::refl},       {"tran", LtsRule::tran}};
    auto it = m.find(s);
    if (it == m.end()) throw Error(ErrorCode::Invalid, "unknown LTS rule: " + s);
    return it->second;
}

namespace {

struct Step {
    Process to;
    Action a;
    LtsNode tree;
};

LtsNode node(LtsRule r, Process from, Process to, ActionSeq label, std::vector<LtsNode> ch = {}) {
    LtsNode n;
    n.rule = r;
    n.from = std::move(from);
    n.to = std::move(to);
    n.label = std::move(label);
    n.children = std::move(ch);
    return n;
}

std::vector<Process> flat_par(const Process& p) {
    std::vector<Process> out;
    std::function<void(const Process&)> go = [&](const Process& x) {
        if (x->kind == PKind::Par)
            for (auto& k : x->kids) go(k);
        else if (x->kind != PKind::Zero)
            out.push_back(x);
    };
    go(p);
    return out;
}

Step wrap_context(Step s, const Process& core_from, const std::vector<Process>& rest) {
    if (rest.empty()) return s;
    Process F = p_par_all(rest);
    Process from = p_par(core_from, F);
    Process to = p_par(s.to, F);
    ActionSeq lab{s.a};
    LtsNode t = node(LtsRule::cntxp, from, to, lab, {std::move(s.tree)});
    return Step{to, s.a, std::move(t)};
}

std::vector<Step> gen(const Process& e, bool milner);

std::vector<Step> gen_par(const std::vector<Process>& comps, bool milner) {
    std::vector<Step> out;
    std::size_t n = comps.size();
    if (n == 0) return out;
    if (n == 1) return gen(comps[0], milner);
    std::vector<std::vector<Step>> each(n);
    for (std::size_t i = 0; i < n; ++i) each[i] = gen(comps[i], milner);
    auto others = [&](std::initializer_list<std::size_t> skip) {
        std::vector<Process> r;
        for (std::size_t k = 0; k < n; ++k)
            if (std::find(skip.begin(), skip.end(), k) == skip.end()) r.push_back(comps[k]);
        return r;
    };
    for (std::size_t i = 0; i < n; ++i)
        for (auto& s : each[i]) out.push_back(wrap_context(s, comps[i], others({i})));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            for (auto& s1 : each[i])
                for (auto& s2 : each[j]) {
                    if (s1.a.tau || s2.a.tau || s1.a.name != s2.a.name.complement()) continue;
                    Process from = p_par(comps[i], comps[j]);
                    Process to = p_par(s1.to, s2.to);
                    Step st{to, Action::t(), node(LtsRule::com, from, to, {Action::t()}, {s1.tree, s2.tree})};
                    out.push_back(wrap_context(st, from, others({i, j})));
                }
    if (milner) return out;
    for (std::size_t i = 0; i < n; ++i) {
        if (comps[i]->kind != PKind::Nu) continue;
        const std::string a = comps[i]->name.base;
        const Process& X = comps[i]->kids[0];
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            std::vector<std::pair<std::string, Process>> bodies;
            const Process& cj = comps[j];
            if (cj->kind == PKind::Nu && i < j) {
                const std::string b = cj->name.base;
                const Process& Y = cj->kids[0];
                std::string z = a;
                if (z != b && process_free_bases(Y).count(z)) {
                    auto avoid = process_all_bases(X);
                    for (auto& s : process_all_bases(Y)) avoid.insert(s);
                    z = fresh_base(a, avoid);
                }
                bodies.emplace_back(z, p_par(process_rename_free(X, a, z), process_rename_free(Y, b, z)));
            }
            {
                std::string z = a;
                Process X2 = X;
                if (process_free_bases(cj).count(a)) {
                    auto avoid = process_all_bases(X);
                    for (auto& s : process_all_bases(cj)) avoid.insert(s);
                    z = fresh_base(a, avoid);
                    X2 = process_rename_free(X, a, z);
                }
                bodies.emplace_back(z, p_par(X2, cj));
            }
            Process from = p_par(comps[i], cj);
            for (auto& [z, body] : bodies) {
                std::vector<Step> inner = gen(body, milner);
                inner.insert(inner.begin(), Step{body, Action::t(), node(LtsRule::refl, body, body, {Action::t()})});
                for (auto& s : inner) {
                    Process to = p_nu(z, s.to);
                    ActionSeq lab = actions_hide({s.a}, z);
                    Step st{to, lab[0], node(LtsRule::res_merge, from, to, lab, {s.tree})};
                    out.push_back(wrap_context(st, from, others({i, j})));
                }
            }
        }
    }
    return out;
}

std::vector<Step> gen(const Process& e, bool milner) {
    std::vector<Step> out;
    switch (e->kind) {
        case PKind::Zero: return out;
        case PKind::Prefix:
            out.push_back(Step{e->kids[0], Action::of(e->name), node(LtsRule::act, e, e->kids[0], {Action::of(e->name)})});
            return out;
        case PKind::Nu: {
            const std::string a = e->name.base;
            for (auto& s : gen(e->kids[0], milner)) {
                Process to = p_nu(a, s.to);
                if (s.a.tau || s.a.name.base != a) {
                    out.push_back(Step{to, s.a, node(LtsRule::res_pass, e, to, {s.a}, {s.tree})});
                } else if (!milner) {
                    out.push_back(Step{to, Action::t(), node(LtsRule::res_hide, e, to, {Action::t()}, {s.tree})});
                }
            }
            return out;
        }
        case PKind::Par: return gen_par(flat_par(e), milner);
    }
    return out;
}

}  // namespace

std::vector<Transition> lts_steps(const Process& e, bool milner) {
    std::vector<Transition> out;
    std::map<std::pair<std::string, std::string>, std::size_t> seen;
    auto add = [&](Process to, ActionSeq lab, LtsNode tree) {
        auto key = std::make_pair(print_actions(lab), process_key(to));
        if (seen.count(key)) return;
        seen[key] = out.size();
        out.push_back(Transition{std::move(to), std::move(lab), std::move(tree)});
    };
    add(e, {Action::t()}, node(LtsRule::refl, e, e, {Action::t()}));
    for (auto& s : gen(e, milner)) add(s.to, {s.a}, s.tree);
    std::vector<std::size_t> idx(out.size());
    for (std::size_t k = 0; k < idx.size(); ++k) idx[k] = k;
    std::vector<std::pair<std::string, std::string>> keys(out.size());
    for (auto& [k, v] : seen) keys[v] = k;
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t x, std::size_t y) { return keys[x] < keys[y]; });
    std::vector<Transition> sorted;
    for (auto k : idx) sorted.push_back(out[k]);
    return sorted;
}

LtsNode lts_compose(const std::vector<LtsNode>& chain) {
    if (chain.empty()) throw Error(ErrorCode::Precondition, "empty transition chain");
    LtsNode acc = chain[0];
    for (std::size_t k = 1; k < chain.size(); ++k)
        acc = node(LtsRule::tran, acc.from, chain[k].to, actions_concat(acc.label, chain[k].label), {acc, chain[k]});
    return acc;
}

std::optional<LtsNode> lts_reachable(const Process& e, const Process& f, const ActionSeq& alpha_in, int depth,
                                     bool milner) {
    ActionSeq alpha = actions_normalize(alpha_in);
    bool alpha_tau = alpha.size() == 1 && alpha[0].tau;
    std::size_t need = alpha_tau ? 0 : alpha.size();
    std::string fk = process_key(f);
    struct St {
        Process p;
        std::size_t k;
        int parent;
        LtsNode step;
        int depth;
    };
    std::vector<St> states;
    std::unordered_map<std::string, int> seen;
    std::deque<int> q;
    auto key_of = [&](const Process& p, std::size_t k) { return process_key(p) + "|" + std::to_string(k); };
    states.push_back({e, 0, -1, {}, 0});
    seen[key_of(e, 0)] = 0;
    q.push_back(0);
    auto build = [&](int idx) {
        std::vector<LtsNode> chain;
        for (int c = idx; states[c].parent >= 0; c = states[c].parent) chain.push_back(states[c].step);
        std::reverse(chain.begin(), chain.end());
        if (chain.empty()) return node(LtsRule::refl, e, e, {Action::t()});
        return lts_compose(chain);
    };
    if (need == 0 && process_key(e) == fk) return build(0);
    while (!q.empty()) {
        int cur = q.front();
        q.pop_front();
        if (states[cur].depth >= depth) continue;
        Process p = states[cur].p;
        std::size_t k = states[cur].k;
        for (auto& t : lts_steps(p, milner)) {
            if (t.tree.rule == LtsRule::refl) continue;
            std::size_t nk = k;
            if (!t.label[0].tau) {
                if (k >= need || alpha[k] != t.label[0]) continue;
                nk = k + 1;
            }
            std::string key = key_of(t.to, nk);
            if (seen.count(key)) continue;
            int id = static_cast<int>(states.size());
            seen[key] = id;
            states.push_back({t.to, nk, cur, t.tree, states[cur].depth + 1});
            if (nk == need && process_key(t.to) == fk) return build(id);
            q.push_back(id);
        }
    }
    return std::nullopt;
}

// ---------------------------------------------------------------- checking

namespace {

std::vector<std::string> comp_keys(const Process& p) {
    std::vector<std::string> out;
    for (auto& c : par_components(p)) out.push_back(process_key(c));
    std::sort(out.begin(), out.end());
    return out;
}

// F such that whole = part | F, as components; nullopt when part is not a sub-multiset.
std::optional<Process> subtract(const Process& whole, const Process& part) {
    auto wc = par_components(whole);
    auto pk = comp_keys(part);
    std::vector<bool> used(wc.size(), false);
    for (auto& k : pk) {
        bool f = false;
        for (std::size_t j = 0; j < wc.size() && !f; ++j)
            if (!used[j] && process_key(wc[j]) == k) used[j] = f = true;
        if (!f) return std::nullopt;
    }
    std::vector<Process> rest;
    for (std::size_t j = 0; j < wc.size(); ++j)
        if (!used[j]) rest.push_back(wc[j]);
    return p_par_all(rest);
}

std::vector<std::string> binder_candidates(const std::vector<Process>& ps) {
    std::set<std::string> s;
    for (auto& p : ps)
        for (auto& b : process_free_bases(p)) s.insert(b);
    std::set<std::string> all = s;
    for (auto& p : ps)
        for (auto& b : process_all_bases(p)) all.insert(b);
    std::vector<std::string> out(s.begin(), s.end());
    out.push_back(fresh_base("v", all));
    return out;
}

bool single_visible(const ActionSeq& a, Action& out) {
    ActionSeq n = actions_normalize(a);
    if (n.size() != 1 || n[0].tau) return false;
    out = n[0];
    return true;
}

LtsCheck check_rec(const LtsNode& t, const std::string& where) {
    auto bad = [&](const std::string& why) { return LtsCheck{false, where + lts_rule_name(t.rule), why}; };
    if (!t.from || !t.to) return bad("missing endpoint");
    for (std::size_t k = 0; k < t.children.size(); ++k) {
        auto r = check_rec(t.children[k], where + lts_rule_name(t.rule) + "/" + std::to_string(k) + "/");
        if (!r.ok) return r;
    }
    auto nkids = [&](std::size_t n) { return t.children.size() == n; };
    switch (t.rule) {
        case LtsRule::refl:
            if (!nkids(0)) return bad("refl has premises");
            if (!process_congruent(t.from, t.to)) return bad("endpoints differ");
            if (!actions_equal(t.label, {Action::t()})) return bad("label is not tau");
            return {};
        case LtsRule::act: {
            if (!nkids(0)) return bad("act has premises");
            Action l;
            if (!single_visible(t.label, l)) return bad("label is not a single action");
            if (!process_congruent(t.from, p_prefix(l.name, t.to))) return bad("source is not the prefix of the target");
            return {};
        }
        case LtsRule::com: {
            if (!nkids(2)) return bad("com needs two premises");
            Action l1, l2;
            if (!single_visible(t.children[0].label, l1) || !single_visible(t.children[1].label, l2))
                return bad("premises do not fire single actions");
            if (l1.name != l2.name.complement()) return bad("premises fire non-complementary actions");
            if (!actions_equal(t.label, {Action::t()})) return bad("label is not tau");
            if (!process_congruent(t.from, p_par(t.children[0].from, t.children[1].from))) return bad("source mismatch");
            if (!process_congruent(t.to, p_par(t.children[0].to, t.children[1].to))) return bad("target mismatch");
            return {};
        }
        case LtsRule::cntxp: {
            if (!nkids(1)) return bad("cntxp needs one premise");
            const auto& c = t.children[0];
            auto F = subtract(t.from, c.from);
            if (!F) return bad("premise source is not a parallel component");
            if (!process_congruent(t.to, p_par(c.to, *F))) return bad("target mismatch");
            if (!actions_equal(t.label, c.label)) return bad("label mismatch");
            return {};
        }
        case LtsRule::res_pass:
        case LtsRule::res_hide: {
            if (!nkids(1)) return bad("restriction rule needs one premise");
            const auto& c = t.children[0];
            for (auto& a : binder_candidates({c.from, c.to})) {
                bool hits = false;
                for (auto& x : actions_normalize(c.label))
                    if (!x.tau && x.name.base == a) hits = true;
                if (t.rule == LtsRule::res_pass && hits) continue;
                if (t.rule == LtsRule::res_hide && !hits) continue;
                if (!process_congruent(t.from, p_nu(a, c.from))) continue;
                if (!process_congruent(t.to, p_nu(a, c.to))) continue;
                if (!actions_equal(t.label, actions_hide(c.label, a))) continue;
                return {};
            }
            return bad("no binder justifies the restriction step");
        }
        case LtsRule::res_merge: {
            if (!nkids(1)) return bad("res_merge needs one premise");
            const auto& c = t.children[0];
            auto comps = par_components(c.from);
            if (comps.size() > 12) return bad("too many components");
            for (auto& a : binder_candidates({c.from, c.to})) {
                if (!process_congruent(t.to, p_nu(a, c.to))) continue;
                if (!actions_equal(t.label, actions_hide(c.label, a))) continue;
                std::string fk = process_key(t.from);
                for (std::size_t m = 0; m < (std::size_t(1) << comps.size()); ++m) {
                    std::vector<Process> E, F;
                    for (std::size_t k = 0; k < comps.size(); ++k) ((m >> k) & 1 ? E : F).push_back(comps[k]);
                    if (process_key(p_par(p_nu(a, p_par_all(E)), p_nu(a, p_par_all(F)))) == fk) return {};
                }
            }
            return bad("no binder/split justifies the merge");
        }
        case LtsRule::tran: {
            if (!nkids(2)) return bad("tran needs two premises");
            const auto& a = t.children[0];
            const auto& b = t.children[1];
            if (!process_congruent(t.from, a.from)) return bad("source mismatch");
            if (!process_congruent(a.to, b.from)) return bad("premises do not chain");
            if (!process_congruent(t.to, b.to)) return bad("target mismatch");
            if (!actions_equal(t.label, actions_concat(a.label, b.label))) return bad("label is not the concatenation");
            return {};
        }
    }
    return bad("unknown rule");
}

}  // namespace

LtsCheck check_lts_derivation(const LtsNode& t) { return check_rec(t, "/"); }

bool is_simple_process(const Process& e) {
    Process n = process_normal(e);
    std::vector<std::string> labels;
    std::map<std::string, std::string> env;
    int counter = 0;
    std::function<bool(const Process&, std::map<std::string, std::string>)> go =
        [&](const Process& p, std::map<std::string, std::string> m) -> bool {
        switch (p->kind) {
            case PKind::Zero: return true;
            case PKind::Prefix: {
                if (p->kids[0]->kind != PKind::Zero) return false;
                auto it = m.find(p->name.base);
                std::string b = it == m.end() ? p->name.base : it->second;
                labels.push_back((p->name.neg ? "~" : "") + b);
                return true;
            }
            case PKind::Par: return go(p->kids[0], m) && go(p->kids[1], m);
            case PKind::Nu:
                m[p->name.base] = p->name.base + "#" + std::to_string(counter++);
                return go(p->kids[0], m);
        }
        return false;
    };
    if (!go(n, env)) return false;
    std::set<std::string> s(labels.begin(), labels.end());
    for (auto& l : s) {
        std::string c = l[0] == '~' ? l.substr(1) : "~" + l;
        if (s.count(c)) return false;
    }
    return true;
}

}  // namespace bvq
