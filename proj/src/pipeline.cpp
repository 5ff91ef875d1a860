#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <set>

#include "bvq/bridge.hpp"
#include "bvq/search.hpp"
#include "bvq/standardize.hpp"

namespace bvq {

namespace {

Structure erase_ids(const Structure& s, const std::set<int>& ids) {
    if (s->kind == Kind::Atom) return ids.count(s->id) ? mk_one() : s;
    if (s->kids.empty()) return s;
    auto n = std::make_shared<Node>(*s);
    for (auto& k : n->kids) k = erase_ids(k, ids);
    return n;
}

int lowermost_ai(const Derivation& d) {
    for (std::size_t k = 0; k < d.steps.size(); ++k)
        if (is_ai(d.steps[k].rule)) return static_cast<int>(k);
    return -1;
}

Structure step_conclusion(const Derivation& d, std::size_t k) { return k == 0 ? d.conclusion : d.steps[k - 1].premise; }

}  // namespace

Derivation reduce(const Derivation& d) {
    int k = lowermost_ai(d);
    if (k < 0) throw Error(ErrorCode::Precondition, "reduce needs a non-trivial derivation");
    std::set<int> gone(d.steps[k].consumed.begin(), d.steps[k].consumed.end());
    Derivation out;
    out.conclusion = canonicalize(erase_ids(d.conclusion, gone));
    Structure cur = out.conclusion;
    // every step is re-justified: erasing atoms can rename or drop binders above as well as below
    for (std::size_t j = 0; j < d.steps.size(); ++j) {
        Structure next = canonicalize(erase_ids(d.steps[j].premise, gone));
        if (canon_key_ids(cur) == canon_key_ids(next)) continue;  // fake instance
        Rule r = d.steps[j].rule;
        auto st = find_step(cur, next, {r == Rule::ai_down_left ? Rule::ai_down : r});
        if (!st) st = find_step(cur, next, down_fragment());
        if (!st) throw Error(ErrorCode::Internal, "reduce: cannot re-justify step " + std::to_string(j));
        if (r == Rule::ai_down_left && is_ai(st->rule)) st->rule = Rule::ai_down_left;
        out.steps.push_back(*st);
        cur = st->premise;
    }
    return out;
}

bool consumes(const Derivation& d, const std::unordered_set<int>& env_ids) {
    std::vector<int> present;
    collect_ids(d.conclusion, present);
    std::set<int> pres(present.begin(), present.end());
    for (int i : env_ids)
        if (!pres.count(i)) throw Error(ErrorCode::Precondition, "environment id " + std::to_string(i) + " not in conclusion");
    std::set<int> eaten;
    for (auto& st : d.steps)
        if (is_ai(st.rule)) eaten.insert(st.consumed.begin(), st.consumed.end());
    for (int i : env_ids)
        if (!eaten.count(i)) return false;
    return true;
}

namespace {

Structure env_part(const Structure& s, const std::unordered_set<int>& env_ids, bool keep_env) {
    std::set<int> drop;
    std::vector<int> ids;
    collect_ids(s, ids);
    for (int i : ids)
        if (env_ids.count(i) != (keep_env ? 1u : 0u)) drop.insert(i);
    return canonicalize(erase_ids(s, drop));
}

Name atom_name(const Structure& s, int id) {
    if (s->kind == Kind::Atom && s->id == id) return s->name;
    for (auto& k : s->kids) {
        Name n = atom_name(k, id);
        if (!n.base.empty()) return n;
    }
    return {};
}

struct Compiled {
    Structure conclusion;
    std::unordered_set<int> env_ids;
    Structure env;
};

// [<e>;R] in canonical form, ids in pre-order, environment ids remembered.
Compiled compile_goal(const Process& e, const Structure& R) {
    Structure pe = assign_ids(to_structure(e), 0);
    int n = static_cast<int>(atom_count(pe));
    Structure re = assign_ids(R, n);
    Structure c = canonicalize(mk_par({pe, re}));
    std::vector<int> order;
    collect_ids(c, order);
    std::map<int, int> remap;
    for (std::size_t k = 0; k < order.size(); ++k) remap[order[k]] = static_cast<int>(k);
    Compiled out;
    out.conclusion = assign_ids(c, 0);
    for (int i = n; i < n + static_cast<int>(atom_count(re)); ++i) out.env_ids.insert(remap[i]);
    out.env = R;
    return out;
}

// true when the atom `id` sits under a binder of its own base
bool atom_bound(const Structure& s, int id, std::vector<std::string>& binders) {
    if (s->kind == Kind::Atom)
        return s->id == id && std::find(binders.begin(), binders.end(), s->name.base) != binders.end();
    if (s->kind == Kind::Sdq) binders.push_back(s->name.base);
    bool r = false;
    for (auto& k : s->kids)
        if (atom_bound(k, id, binders)) {
            r = true;
            break;
        }
    if (s->kind == Kind::Sdq) binders.pop_back();
    return r;
}

bool atom_bound(const Structure& s, int id) {
    std::vector<std::string> b;
    return atom_bound(s, id, b);
}

LtsNode refl_of(const Process& p) {
    LtsNode n;
    n.rule = LtsRule::refl;
    n.from = n.to = p;
    n.label = {Action::t()};
    return n;
}

}  // namespace

LtsNode extract_lts(const Derivation& d_in, const Process& e, const Process& f, const Structure& env,
                    const std::unordered_set<int>& env_ids) {
    if (!is_simple_process(f)) throw Error(ErrorCode::Precondition, "extract_lts needs a simple target");
    if (!consumes(d_in, env_ids)) throw Error(ErrorCode::Precondition, "derivation does not consume its environment");
    Derivation cur = d_in;
    std::unordered_set<int> eids = env_ids;
    if (process_key(decode_structure(env_part(cur.conclusion, eids, false))) != process_key(e))
        throw Error(ErrorCode::Precondition, "conclusion is not [<e>;env]");
    Structure fstruct = to_structure(f);
    if (canon_key(cur.premise()) != canon_key(fstruct)) throw Error(ErrorCode::Precondition, "premise is not <f>");
    (void)env;
    std::vector<LtsNode> chain;
    Process curE = e;
    int guard = 0;
    while (lowermost_ai(cur) >= 0) {
        if (++guard > 1000) throw Error(ErrorCode::Internal, "extract_lts does not terminate");
        int k = lowermost_ai(cur);
        const auto& st = cur.steps[k];
        ActionSeq label{Action::t()};
        for (int id : st.consumed)
            if (eids.count(id) && !atom_bound(step_conclusion(cur, k), id))
                label = {Action::of(atom_name(step_conclusion(cur, k), id).complement())};
        Derivation red = reduce(cur);
        std::string gk = process_key(decode_structure(env_part(red.conclusion, eids, false)));
        std::optional<Transition> pick;
        std::vector<Transition> alts;
        for (auto& t : lts_steps(curE)) {
            if (t.tree.rule == LtsRule::refl || !actions_equal(t.label, label)) continue;
            if (process_key(t.to) == gk) {
                pick = t;
                break;
            }
            alts.push_back(t);
        }
        if (pick) {
            chain.push_back(pick->tree);
            curE = pick->to;
            cur = red;
            continue;
        }
        // prefixes under separate binders: the LTS merges the scopes, so
        // continue from the merged state with a re-searched residual derivation
        Structure Renv = canonicalize(env_part(red.conclusion, eids, true));
        bool moved = false;
        for (auto& t : alts) {
            Compiled g = compile_goal(t.to, Renv);
            auto r = derive_consuming(g.conclusion, fstruct, g.env_ids, Fragment::standard, default_budget());
            if (!r.derivation) continue;
            chain.push_back(t.tree);
            curE = t.to;
            cur = *r.derivation;
            eids = g.env_ids;
            moved = true;
            break;
        }
        if (!moved)
            throw Error(ErrorCode::Internal,
                        "extract_lts: no transition of " + print_process(curE) + " matches step " + std::to_string(k));
    }
    // trivial residue: only scope merges remain
    for (std::size_t j = 0; j < cur.steps.size(); ++j) {
        Structure nx = env_part(cur.steps[j].premise, eids, false);
        if (!is_process_structure(nx)) continue;
        Process P2 = decode_structure(nx);
        if (process_key(P2) == process_key(curE)) continue;
        std::optional<Transition> tt;
        for (auto& t : lts_steps(curE))
            if (t.tree.rule != LtsRule::refl && t.label[0].tau && process_key(t.to) == process_key(P2)) {
                tt = t;
                break;
            }
        if (tt) {
            chain.push_back(tt->tree);
        } else {
            auto w = lts_reachable(curE, P2, {Action::t()}, 4);
            if (!w) throw Error(ErrorCode::Internal, "extract_lts: trivial step " + std::to_string(j) + " has no tau move");
            chain.push_back(*w);
        }
        curE = P2;
    }
    if (process_key(curE) != process_key(f)) {
        auto w = lts_reachable(curE, f, {Action::t()}, 4);
        if (!w) throw Error(ErrorCode::Internal, "extract_lts: residue does not reach the target");
        chain.push_back(*w);
    }
    if (chain.empty()) return refl_of(e);
    return lts_compose(chain);
}

// ---------------------------------------------------------------- reach

namespace {

// Per restriction (pre-order index): prefixes it binds, by polarity.
struct NuInfo {
    std::string base;
    int pos = 0, neg = 0;
};

void scan_nus(const Process& p, std::vector<std::pair<std::string, int>>& scope, std::vector<NuInfo>& out) {
    if (p->kind == PKind::Prefix)
        for (auto it = scope.rbegin(); it != scope.rend(); ++it)
            if (it->first == p->name.base) {
                ++(p->name.neg ? out[it->second].neg : out[it->second].pos);
                break;
            }
    if (p->kind == PKind::Nu) {
        out.push_back({p->name.base});
        scope.push_back({p->name.base, static_cast<int>(out.size()) - 1});
    }
    for (auto& k : p->kids) scan_nus(k, scope, out);
    if (p->kind == PKind::Nu) scope.pop_back();
}

// Encoding of `p` where restriction k also holds partners[k] = (positive, negative) co-prefixes.
// Partner atoms get ids from kPartnerBase and are recorded with their restriction.
constexpr int kPartnerBase = 1 << 20;

Structure encode_partnered(const Process& p, const std::vector<std::pair<int, int>>& partners, int& nu, int& next,
                           int& pid, std::map<int, std::pair<int, bool>>& owner) {
    switch (p->kind) {
        case PKind::Zero: return mk_one();
        case PKind::Prefix:
            return mk_seq({mk_atom(p->name, next++), encode_partnered(p->kids[0], partners, nu, next, pid, owner)});
        case PKind::Par:
            return mk_par({encode_partnered(p->kids[0], partners, nu, next, pid, owner),
                           encode_partnered(p->kids[1], partners, nu, next, pid, owner)});
        case PKind::Nu: {
            int k = nu++;
            std::vector<Structure> body{encode_partnered(p->kids[0], partners, nu, next, pid, owner)};
            for (int q = 0; q < partners[k].first + partners[k].second; ++q) {
                bool neg = q >= partners[k].first;
                owner[pid] = {k, neg};
                body.push_back(mk_atom(Name{p->name.base, neg}, pid++));
            }
            return mk_sdq(p->name.base, mk_par(body));
        }
    }
    return mk_one();
}

// Canonical form with pre-order ids; `tagged` original ids are reported under their new numbers.
Structure renumber(const Structure& s, std::map<int, int>& remap) {
    Structure c = canonicalize(s);
    std::vector<int> order;
    collect_ids(c, order);
    for (std::size_t k = 0; k < order.size(); ++k) remap[order[k]] = static_cast<int>(k);
    return assign_ids(c, 0);
}

struct EnvItem {
    int group = -1;  // -1: visible
    bool neg = false;
    Name vis;
};

// Env Seq of `items`; binder of group g opens at position at[g].
Structure build_env(const std::vector<EnvItem>& items, const std::vector<int>& at,
                    const std::vector<std::string>& binder) {
    Structure S = mk_one();
    for (int q = static_cast<int>(items.size()) - 1; q >= 0; --q) {
        const auto& it = items[q];
        S = mk_seq({it.group < 0 ? mk_atom(it.vis) : mk_atom(Name{binder[it.group], it.neg}), S});
        for (std::size_t g = 0; g < at.size(); ++g)
            if (at[g] == q) S = mk_sdq(binder[g], S);
    }
    return S;
}

// All partner allocations with the given totals, restrictions in order.
void allocations(const std::vector<NuInfo>& nus, std::size_t k, int hp, int hn, std::vector<std::pair<int, int>>& cur,
                 std::vector<std::vector<std::pair<int, int>>>& out) {
    if (k == nus.size()) {
        if (hp == 0 && hn == 0) out.push_back(cur);
        return;
    }
    for (int pp = 0; pp <= std::min(hp, nus[k].neg); ++pp)
        for (int nn = 0; nn <= std::min(hn, nus[k].pos); ++nn) {
            cur.push_back({pp, nn});
            allocations(nus, k + 1, hp - pp, hn - nn, cur, out);
            cur.pop_back();
        }
}

constexpr std::size_t kHiddenVisited = 20000;

}  // namespace

ReachVerdict reach(const Process& e, const Process& f, const ActionSeq& alpha, ReachOptions o) {
    if (!is_simple_process(f)) throw Error(ErrorCode::Precondition, "reach needs a simple target process");
    auto t0 = std::chrono::steady_clock::now();
    ReachVerdict v;
    ActionSeq a = actions_normalize(alpha);
    Structure R = actions_to_env(actions_complement(a));
    Compiled g = compile_goal(e, R);
    v.env = R;
    v.env_ids = g.env_ids;
    Structure fs = to_structure(f);
    std::optional<Derivation> std_d;
    if (o.via_inversion) {
        v.method = "inversion";
        Structure goal = mk_par({to_structure(e), negate(fs), R});
        auto pr = prove(goal, Fragment::down, o.budget);
        v.stats = pr.stats;
        v.exhausted = pr.exhausted;
        if (pr.derivation) {
            v.proof = *pr.derivation;
            try {
                Derivation inv = invert(fs, *pr.derivation, o.budget);
                // align ids with the compiled conclusion, then standardize
                Derivation tmp;
                auto chk = check_derivation(inv, System::down, &tmp);
                if (chk.ok && congruent(tmp.conclusion, g.conclusion)) {
                    Derivation realigned;
                    realigned.conclusion = g.conclusion;
                    Derivation aligned = concat(realigned, tmp);
                    auto sr = standardize(aligned);
                    if (is_standard(sr.derivation) && consumes(sr.derivation, g.env_ids)) std_d = sr.derivation;
                }
            } catch (const Error&) {
            }
        }
        if (!std_d) v.method = "inversion+search";
    } else {
        v.method = "search";
    }
    if (!std_d) {
        auto r = derive_consuming(g.conclusion, fs, g.env_ids, Fragment::standard, o.budget);
        v.stats.steps += r.stats.steps;
        v.stats.visited += r.stats.visited;
        v.exhausted = r.exhausted;
        if (r.derivation) std_d = *r.derivation;
    }
    if (!std_d) {
        // Restricted actions fire silently. First find a derivation where each restriction
        // owns co-prefix partners; its interaction order then fixes a real environment
        // whose restricted co-actions are tried under every admissible binder placement.
        std::vector<std::pair<std::string, int>> scope;
        std::vector<NuInfo> nus, fnus;
        scan_nus(e, scope, nus);
        scan_nus(f, scope, fnus);
        int ep = 0, en = 0, fp = 0, fn = 0;
        for (auto& x : nus) ep += x.pos, en += x.neg;
        for (auto& x : fnus) fp += x.pos, fn += x.neg;
        int dp = ep - fp, dn = en - fn;
        int H = dp >= 0 && dn >= 0 ? dp + dn : 0;
        std::vector<Name> vis;
        for (auto& x : actions_complement(a))
            if (!x.tau) vis.push_back(x.name);
        Structure Rvis = actions_to_env(actions_complement(a));
        SearchBudget hb = o.budget;
        hb.max_visited = std::min<std::size_t>(hb.max_visited, kHiddenVisited);
        hb.max_steps = std::min<std::size_t>(hb.max_steps, kHiddenVisited);
        auto account = [&](const SearchResult& r) {
            v.stats.steps += r.stats.steps;
            v.stats.visited += r.stats.visited;
            v.exhausted = v.exhausted || r.exhausted;
        };
        std::set<std::string> tried;
        for (int h = 1; h <= H && !std_d; ++h) {
            // negative partners eat positive prefixes: hn - hp = dp - dn
            if ((h + dp - dn) % 2 != 0) continue;
            int hn = (h + dp - dn) / 2, hp = h - hn;
            if (hn < 0 || hp < 0 || hn > dp || hp > dn) continue;
            std::vector<std::vector<std::pair<int, int>>> allocs;
            std::vector<std::pair<int, int>> cur;
            allocations(nus, 0, hp, hn, cur, allocs);
            for (auto& alloc : allocs) {
                if (std_d) break;
                int nu = 0, next = 0, pid = kPartnerBase;
                std::map<int, std::pair<int, bool>> owner;
                Structure pe = encode_partnered(e, alloc, nu, next, pid, owner);
                Structure re = assign_ids(Rvis, next);
                int nvis = static_cast<int>(atom_count(re));
                std::map<int, int> remap;
                Structure concl = renumber(mk_par({pe, re}), remap);
                std::unordered_set<int> must;
                std::map<int, int> vis_of;                      // new id -> visible index
                std::map<int, std::pair<int, bool>> part_of;    // new id -> (restriction, polarity)
                for (int q = 0; q < nvis; ++q) {
                    must.insert(remap[next + q]);
                    vis_of[remap[next + q]] = q;
                }
                for (auto& [old, ow] : owner) {
                    must.insert(remap[old]);
                    part_of[remap[old]] = ow;
                }
                auto r = derive_consuming(concl, fs, must, Fragment::standard, hb);
                account(r);
                if (!r.derivation) continue;
                // interaction order, bottom-up
                std::vector<EnvItem> items;
                std::map<int, int> group_of;  // restriction -> group
                for (auto& st : r.derivation->steps) {
                    if (!is_ai(st.rule)) continue;
                    for (int id : st.consumed) {
                        if (vis_of.count(id)) items.push_back({-1, false, vis[vis_of[id]]});
                        if (part_of.count(id)) {
                            auto [k, neg] = part_of[id];
                            if (!group_of.count(k)) group_of[k] = static_cast<int>(group_of.size());
                            items.push_back({group_of[k], neg, {}});
                        }
                    }
                }
                int G = static_cast<int>(group_of.size());
                std::set<std::string> avoid = process_free_bases(e);
                for (auto& x : vis) avoid.insert(x.base);
                for (auto& x : process_free_bases(f)) avoid.insert(x);
                std::vector<std::string> bn;
                for (int k = 0; k < G; ++k) {
                    bn.push_back(fresh_base("h", avoid));
                    avoid.insert(bn.back());
                }
                std::vector<int> first(G, -1);
                for (int q = 0; q < static_cast<int>(items.size()); ++q)
                    if (items[q].group >= 0 && first[items[q].group] < 0) first[items[q].group] = q;
                std::vector<int> at(G, 0);
                std::function<bool(int)> place = [&](int gi) -> bool {
                    if (gi == G) {
                        Structure Rh = build_env(items, at, bn);
                        if (!tried.insert(canon_key(Rh)).second) return false;
                        Compiled gh = compile_goal(e, Rh);
                        auto rr = derive_consuming(gh.conclusion, fs, gh.env_ids, Fragment::standard, hb);
                        account(rr);
                        if (!rr.derivation) return false;
                        std_d = *rr.derivation;
                        R = Rh;
                        g = gh;
                        v.env = Rh;
                        v.env_ids = gh.env_ids;
                        v.method += "+hidden" + std::to_string(h);
                        return true;
                    }
                    for (int q = first[gi]; q >= 0; --q) {
                        at[gi] = q;
                        if (place(gi + 1)) return true;
                    }
                    return false;
                };
                place(0);
            }
        }
    }
    if (std_d) {
        v.standard = *std_d;
        if (!o.via_inversion) v.proof = *std_d;
        v.witness = extract_lts(*std_d, e, f, R, g.env_ids);
        v.proved = true;
        v.exhausted = false;
    }
    v.stats.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return v;
}

}  // namespace bvq
