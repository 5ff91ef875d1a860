#include "bvq/bridge.hpp"

#include <functional>
#include <map>

namespace bvq {

Structure to_structure(const Process& e) { return encode_process(e); }
Process from_structure(const Structure& s) { return decode_structure(s); }

namespace {

// Atom labels with every binder renamed apart, so that distinct scopes never clash.
bool labels_apart(const Structure& s, std::vector<std::string>& out) {
    int counter = 0;
    std::function<void(const Structure&, std::map<std::string, std::string>)> go =
        [&](const Structure& x, std::map<std::string, std::string> m) {
            if (x->kind == Kind::Atom) {
                auto it = m.find(x->name.base);
                out.push_back((x->name.neg ? "~" : "") + (it == m.end() ? x->name.base : it->second));
                return;
            }
            if (x->kind == Kind::Sdq) m[x->name.base] = x->name.base + "#" + std::to_string(counter++);
            for (auto& k : x->kids) go(k, m);
        };
    go(s, {});
    return true;
}

bool no_complementary_pair(const Structure& s) {
    std::vector<std::string> ls;
    labels_apart(s, ls);
    std::set<std::string> set(ls.begin(), ls.end());
    for (auto& l : set) {
        std::string c = l[0] == '~' ? l.substr(1) : "~" + l;
        if (set.count(c)) return false;
    }
    return true;
}

bool simple_shape(const Structure& s) {
    switch (s->kind) {
        case Kind::One:
        case Kind::Atom: return true;
        case Kind::Par:
            for (auto& k : s->kids)
                if (!simple_shape(k)) return false;
            return true;
        case Kind::Sdq: return simple_shape(s->kids[0]);
        default: return false;
    }
}

bool invertible_shape(const Structure& s) {
    switch (s->kind) {
        case Kind::One:
        case Kind::Atom: return true;
        case Kind::Par:
            for (auto& k : s->kids)
                if (k->kind != Kind::Atom) return false;
            return no_complementary_pair(s);
        case Kind::CoPar:
            for (auto& k : s->kids)
                if (!invertible_shape(k)) return false;
            return true;
        case Kind::Sdq: return invertible_shape(s->kids[0]);
        default: return false;
    }
}

// L ::= l | <l;...;l;X> where X is l or fo a.L ; top ::= 1 | L | fo a.L
bool env_list(const Structure& s) {
    switch (s->kind) {
        case Kind::Atom: return true;
        case Kind::Sdq: return env_list(s->kids[0]);
        case Kind::Seq: {
            for (std::size_t k = 0; k + 1 < s->kids.size(); ++k)
                if (s->kids[k]->kind != Kind::Atom) return false;
            const auto& last = s->kids.back();
            return last->kind == Kind::Atom || (last->kind == Kind::Sdq && env_list(last));
        }
        default: return false;
    }
}

}  // namespace

bool is_environment_structure(const Structure& s) {
    if (!is_canonical(s)) return false;
    return s->kind == Kind::One || env_list(s);
}

bool is_simple_structure(const Structure& s) {
    Structure c = canonicalize(s);
    return simple_shape(c) && no_complementary_pair(c);
}

bool is_invertible_structure(const Structure& s) { return invertible_shape(canonicalize(s)); }

StructureKinds classify_structure(const Structure& s) {
    StructureKinds k;
    Structure c = canonicalize(s);
    k.is_process = is_process_structure(c);
    k.is_environment = is_environment_structure(s);
    k.is_simple = is_simple_structure(c);
    k.is_invertible = is_invertible_structure(c);
    k.is_tensor_free = !has_kind(c, Kind::CoPar);
    return k;
}

ActionSeq env_to_actions(const Structure& s, const std::set<std::string>& hidden) {
    if (!is_environment_structure(s)) throw Error(ErrorCode::Precondition, "not an environment structure: " + print(s));
    ActionSeq out;
    std::function<void(const Structure&, std::set<std::string>)> go = [&](const Structure& x, std::set<std::string> h) {
        switch (x->kind) {
            case Kind::One: out.push_back(Action::t()); return;
            case Kind::Atom: out.push_back(h.count(x->name.base) ? Action::t() : Action::of(x->name)); return;
            case Kind::Sdq:
                h.insert(x->name.base);
                go(x->kids[0], h);
                return;
            default:
                for (auto& k : x->kids) go(k, h);
        }
    };
    go(s, hidden);
    return actions_normalize(out);
}

Structure actions_to_env(const ActionSeq& alpha) {
    ActionSeq a = actions_normalize(alpha);
    if (a.size() == 1 && a[0].tau) return mk_one();
    std::vector<Structure> atoms;
    for (auto& x : a) {
        if (x.tau) throw Error(ErrorCode::Precondition, "tau inside a normalized action sequence");
        atoms.push_back(mk_atom(x.name));
    }
    return mk_seq(atoms);
}

bool is_trivial_derivation(const Derivation& d) {
    if (has_kind(canonicalize(d.conclusion), Kind::CoPar)) return false;
    for (auto& st : d.steps) {
        if (is_ai(st.rule)) return false;
        if (st.premise && has_kind(st.premise, Kind::CoPar)) return false;
    }
    return true;
}

}  // namespace bvq
