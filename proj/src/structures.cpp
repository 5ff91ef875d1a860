#include "bvq/structures.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <numeric>

namespace bvq {

namespace {

Structure make(Kind k, Name n, std::vector<Structure> kids, int id = -1) {
    auto p = std::make_shared<Node>();
    p->kind = k;
    p->name = std::move(n);
    p->kids = std::move(kids);
    p->id = id;
    return p;
}

const Structure& one_singleton() {
    static const Structure one = make(Kind::One, {}, {});
    return one;
}

bool valid_ident(const std::string& s) {
    if (s.empty() || !(s[0] >= 'a' && s[0] <= 'z')) return false;
    for (char c : s)
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
    return true;
}

}  // namespace

Structure mk_one() { return one_singleton(); }
Structure mk_atom(const Name& n, int id) { return make(Kind::Atom, n, {}, id); }
Structure mk_atom(const std::string& base, bool neg, int id) { return mk_atom(Name{base, neg}, id); }

Structure mk_op(Kind k, std::vector<Structure> kids) {
    if (kids.empty()) return mk_one();
    if (kids.size() == 1) return kids[0];
    return make(k, {}, std::move(kids));
}
Structure mk_seq(std::vector<Structure> kids) { return mk_op(Kind::Seq, std::move(kids)); }
Structure mk_par(std::vector<Structure> kids) { return mk_op(Kind::Par, std::move(kids)); }
Structure mk_copar(std::vector<Structure> kids) { return mk_op(Kind::CoPar, std::move(kids)); }
Structure mk_not(Structure s) { return make(Kind::Not, {}, {std::move(s)}); }
Structure mk_sdq(const std::string& binder, Structure body) {
    if (!valid_ident(binder) || binder == "fo") throw Error(ErrorCode::Invalid, "invalid binder name: " + binder);
    return make(Kind::Sdq, Name{binder, false}, {std::move(body)});
}

// ---------------------------------------------------------------- parser

namespace {

struct Parser {
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
    std::vector<Structure> list(char close) {
        std::vector<Structure> v;
        v.push_back(parse());
        while (peek(';')) {
            ++i;
            v.push_back(parse());
        }
        expect(close);
        if (v.size() < 2) fail("compound structure needs at least two members");
        return v;
    }
    Structure parse() {
        ws();
        if (i >= t.size()) fail("unexpected end of input");
        char c = t[i];
        if (c == '1') {
            ++i;
            return mk_one();
        }
        if (c == '~') {
            ++i;
            ws();
            if (i < t.size() && t[i] >= 'a' && t[i] <= 'z') {
                std::size_t save = i;
                std::string n = ident();
                if (n != "fo") return mk_atom(n, true);
                i = save;
            }
            return mk_not(parse());
        }
        if (c == '[') {
            ++i;
            return make(Kind::Par, {}, list(']'));
        }
        if (c == '(') {
            ++i;
            return make(Kind::CoPar, {}, list(')'));
        }
        if (c == '<') {
            ++i;
            return make(Kind::Seq, {}, list('>'));
        }
        if (c >= 'a' && c <= 'z') {
            std::string n = ident();
            if (n == "fo") {
                ws();
                if (peek('~')) fail("binder must be a positive name");
                std::string b = ident();
                if (b == "fo") fail("'fo' is reserved");
                expect('.');
                return make(Kind::Sdq, Name{b, false}, {parse()});
            }
            return mk_atom(n, false);
        }
        fail(std::string("unexpected character '") + c + "'");
    }
};

}  // namespace

Structure parse_structure(const std::string& text) {
    Parser p{text};
    Structure s = p.parse();
    p.ws();
    if (p.i != text.size()) p.fail("trailing input");
    return s;
}

// ---------------------------------------------------------------- printing

namespace {
void print_rec(const Structure& s, PrintOpts o, std::string& out) {
    switch (s->kind) {
        case Kind::One: out += '1'; return;
        case Kind::Atom:
            out += s->name.str();
            if (o.ids && s->id >= 0) out += "@" + std::to_string(s->id);
            return;
        case Kind::Not:
            out += '~';
            print_rec(s->kids[0], o, out);
            return;
        case Kind::Sdq:
            out += "fo " + s->name.base + ".";
            print_rec(s->kids[0], o, out);
            return;
        default: break;
    }
    char open = s->kind == Kind::Seq ? '<' : s->kind == Kind::Par ? '[' : '(';
    char close = s->kind == Kind::Seq ? '>' : s->kind == Kind::Par ? ']' : ')';
    out += open;
    for (std::size_t k = 0; k < s->kids.size(); ++k) {
        if (k) out += ';';
        print_rec(s->kids[k], o, out);
    }
    out += close;
}
}  // namespace

std::string print(const Structure& s, PrintOpts o) {
    std::string out;
    print_rec(s, o, out);
    return out;
}

// ---------------------------------------------------------------- names

namespace {
bool free_in(const std::string& b, const Structure& s) {
    switch (s->kind) {
        case Kind::One: return false;
        case Kind::Atom: return s->name.base == b;
        case Kind::Sdq:
            if (s->name.base == b) return false;
            return free_in(b, s->kids[0]);
        default:
            for (auto& k : s->kids)
                if (free_in(b, k)) return true;
            return false;
    }
}
}  // namespace

bool occurs_free(const std::string& base, const Structure& s) { return free_in(base, s); }

std::set<std::string> free_bases(const Structure& s) {
    std::set<std::string> out;
    auto ns = names(s);
    for (auto& n : ns.free) out.insert(n.base);
    return out;
}

NameSets names(const Structure& s) {
    NameSets r;
    std::vector<std::string> bound;
    std::function<void(const Structure&)> go = [&](const Structure& x) {
        if (x->kind == Kind::Atom) {
            if (std::find(bound.begin(), bound.end(), x->name.base) != bound.end())
                r.bound.insert(x->name);
            else
                r.free.insert(x->name);
            return;
        }
        if (x->kind == Kind::Sdq) {
            bound.push_back(x->name.base);
            go(x->kids[0]);
            bound.pop_back();
            return;
        }
        for (auto& k : x->kids) go(k);
    };
    go(s);
    return r;
}

std::set<std::string> all_bases(const Structure& s) {
    std::set<std::string> out;
    std::function<void(const Structure&)> go = [&](const Structure& x) {
        if (x->kind == Kind::Atom || x->kind == Kind::Sdq) out.insert(x->name.base);
        for (auto& k : x->kids) go(k);
    };
    go(s);
    return out;
}

std::string fresh_base(const std::string& hint, const std::set<std::string>& avoid) {
    std::string stem = hint;
    while (!stem.empty() && std::isdigit(static_cast<unsigned char>(stem.back()))) stem.pop_back();
    if (stem.empty()) stem = "x";
    if (!avoid.count(stem)) return stem;
    for (int k = 1;; ++k) {
        std::string c = stem + std::to_string(k);
        if (!avoid.count(c)) return c;
    }
}

Structure rename_free(const Structure& s, const std::string& from, const std::string& to) {
    if (from == to) return s;
    switch (s->kind) {
        case Kind::One: return s;
        case Kind::Atom:
            if (s->name.base == from) return mk_atom(Name{to, s->name.neg}, s->id);
            return s;
        case Kind::Sdq: {
            if (s->name.base == from) return s;
            const Structure& body = s->kids[0];
            if (!free_in(from, body)) return s;
            if (s->name.base == to) {
                auto avoid = all_bases(body);
                avoid.insert(from);
                avoid.insert(to);
                std::string nb = fresh_base(to, avoid);
                Structure b2 = rename_free(body, to, nb);
                return make(Kind::Sdq, Name{nb, false}, {rename_free(b2, from, to)});
            }
            return make(Kind::Sdq, s->name, {rename_free(body, from, to)});
        }
        default: {
            std::vector<Structure> ks;
            ks.reserve(s->kids.size());
            for (auto& k : s->kids) ks.push_back(rename_free(k, from, to));
            return make(s->kind, s->name, std::move(ks));
        }
    }
}

// ---------------------------------------------------------------- negation / normal form

Structure negate(const Structure& s) {
    switch (s->kind) {
        case Kind::One: return s;
        case Kind::Atom: return mk_atom(s->name.complement(), s->id);
        case Kind::Not: return s->kids[0];
        case Kind::Sdq: return make(Kind::Sdq, s->name, {negate(s->kids[0])});
        default: {
            Kind k = s->kind == Kind::Par ? Kind::CoPar : s->kind == Kind::CoPar ? Kind::Par : Kind::Seq;
            std::vector<Structure> ks;
            for (auto& c : s->kids) ks.push_back(negate(c));
            return make(k, {}, std::move(ks));
        }
    }
}

namespace {

// Negation to atoms, unit removal, flattening, vacuous binder removal.
Structure nnf(const Structure& s, bool neg) {
    switch (s->kind) {
        case Kind::One: return s;
        case Kind::Atom: return neg ? mk_atom(s->name.complement(), s->id) : s;
        case Kind::Not: return nnf(s->kids[0], !neg);
        case Kind::Sdq: {
            Structure b = nnf(s->kids[0], neg);
            if (!free_in(s->name.base, b)) return b;
            return make(Kind::Sdq, s->name, {b});
        }
        default: {
            Kind k = s->kind;
            if (neg && k == Kind::Par)
                k = Kind::CoPar;
            else if (neg && k == Kind::CoPar)
                k = Kind::Par;
            std::vector<Structure> ks;
            for (auto& c : s->kids) {
                Structure n = nnf(c, neg);
                if (n->kind == Kind::One) continue;
                if (n->kind == k)
                    ks.insert(ks.end(), n->kids.begin(), n->kids.end());
                else
                    ks.push_back(n);
            }
            return mk_op(k, std::move(ks));
        }
    }
}

struct KeyCfg {
    const std::unordered_set<int>* marks = nullptr;
    bool ids = false;
};

struct Keyed {
    Structure s;
    std::string key;
    std::string ord;
    int rank = 0;
};

int rank_of(Kind k) {
    switch (k) {
        case Kind::Atom: return 0;
        case Kind::Seq: return 1;
        case Kind::CoPar: return 2;
        case Kind::Par: return 3;
        case Kind::Sdq: return 4;
        case Kind::Not: return 5;
        default: return 6;
    }
}

std::string pad(std::size_t v) {
    std::string s = std::to_string(v);
    return std::string(s.size() < 6 ? 6 - s.size() : 0, '0') + s;
}

Keyed sortp(const Structure& s, std::vector<std::string>& env, const KeyCfg& cfg);

Keyed sort_block(const Structure& s, std::vector<std::string>& env, const KeyCfg& cfg) {
    std::vector<std::string> binders;
    Structure body = s;
    while (body->kind == Kind::Sdq) {
        binders.push_back(body->name.base);
        body = body->kids[0];
    }
    std::size_t k = binders.size();
    std::vector<std::size_t> perm(k);
    std::iota(perm.begin(), perm.end(), 0);
    Keyed best;
    std::vector<std::size_t> best_perm;
    bool have = false;
    bool exhaustive = k <= 5;
    do {
        for (auto p : perm) env.push_back(binders[p]);
        Keyed kb = sortp(body, env, cfg);
        env.resize(env.size() - k);
        if (!have || kb.key < best.key) {
            best = kb;
            best_perm = perm;
            have = true;
        }
    } while (exhaustive && std::next_permutation(perm.begin(), perm.end()));
    Structure out = best.s;
    for (std::size_t j = k; j-- > 0;) out = make(Kind::Sdq, Name{binders[best_perm[j]], false}, {out});
    Keyed r;
    r.s = out;
    r.key = "Q" + std::to_string(k) + "." + best.key;
    r.ord = r.key;
    r.rank = rank_of(Kind::Sdq);
    return r;
}

Keyed sortp(const Structure& s, std::vector<std::string>& env, const KeyCfg& cfg) {
    Keyed r;
    r.rank = rank_of(s->kind);
    switch (s->kind) {
        case Kind::One:
            r.s = s;
            r.key = r.ord = "1";
            return r;
        case Kind::Atom: {
            std::size_t lvl = env.size();
            for (std::size_t j = env.size(); j-- > 0;)
                if (env[j] == s->name.base) {
                    lvl = j;
                    break;
                }
            std::string sign = s->name.neg ? "~" : "";
            std::string tag;
            if (cfg.marks && s->id >= 0 && cfg.marks->count(s->id)) tag += "!";
            if (cfg.ids) tag += "@" + std::to_string(s->id);
            if (lvl == env.size()) {
                r.key = sign + s->name.base + tag;
                r.ord = "0" + s->name.base + std::string(1, s->name.neg ? '\x02' : '\x01') + tag;
            } else {
                r.key = sign + "#" + std::to_string(lvl) + tag;
                r.ord = "1" + pad(lvl) + (s->name.neg ? "1" : "0") + tag;
            }
            r.s = s;
            return r;
        }
        case Kind::Sdq: return sort_block(s, env, cfg);
        case Kind::Not: {
            Keyed c = sortp(s->kids[0], env, cfg);
            r.s = make(Kind::Not, {}, {c.s});
            r.key = r.ord = "~" + c.key;
            return r;
        }
        default: break;
    }
    std::vector<Keyed> ks;
    ks.reserve(s->kids.size());
    for (auto& c : s->kids) ks.push_back(sortp(c, env, cfg));
    if (s->kind != Kind::Seq) {
        std::sort(ks.begin(), ks.end(), [](const Keyed& a, const Keyed& b) {
            if (a.rank != b.rank) return a.rank < b.rank;
            if (a.ord != b.ord) return a.ord < b.ord;
            if (a.key != b.key) return a.key < b.key;
            return print(a.s) < print(b.s);
        });
    }
    char open = s->kind == Kind::Seq ? '<' : s->kind == Kind::Par ? '[' : '(';
    char close = s->kind == Kind::Seq ? '>' : s->kind == Kind::Par ? ']' : ')';
    std::string key(1, open);
    std::vector<Structure> kids;
    for (std::size_t j = 0; j < ks.size(); ++j) {
        if (j) key += ';';
        key += ks[j].key;
        kids.push_back(ks[j].s);
    }
    key += close;
    r.s = make(s->kind, {}, std::move(kids));
    r.key = r.ord = key;
    return r;
}

Keyed canon_keyed(const Structure& s, const KeyCfg& cfg) {
    std::vector<std::string> env;
    return sortp(nnf(s, false), env, cfg);
}

}  // namespace

Structure canonicalize(const Structure& s) { return canon_keyed(s, {}).s; }

std::string canon_key(const Structure& s) { return canon_keyed(s, {}).key; }

std::string canon_key_marked(const Structure& s, const std::unordered_set<int>& marked) {
    KeyCfg c;
    c.marks = &marked;
    return canon_keyed(s, c).key;
}

std::string canon_key_ids(const Structure& s) {
    KeyCfg c;
    c.ids = true;
    return canon_keyed(s, c).key;
}

bool congruent(const Structure& r, const Structure& t) { return canon_key(r) == canon_key(t); }

bool structurally_equal(const Structure& a, const Structure& b, bool with_ids) {
    if (a == b) return true;
    if (a->kind != b->kind || a->name != b->name || a->kids.size() != b->kids.size()) return false;
    if (with_ids && a->kind == Kind::Atom && a->id != b->id) return false;
    for (std::size_t k = 0; k < a->kids.size(); ++k)
        if (!structurally_equal(a->kids[k], b->kids[k], with_ids)) return false;
    return true;
}

bool is_canonical(const Structure& s) { return structurally_equal(s, canonicalize(s)); }

std::size_t size(const Structure& s) {
    switch (s->kind) {
        case Kind::One: return 0;
        case Kind::Atom: return 1;
        case Kind::Sdq: return size(s->kids[0]) + (free_in(s->name.base, s->kids[0]) ? 1 : 0);
        default: {
            std::size_t n = 0;
            for (auto& k : s->kids) n += size(k);
            return n;
        }
    }
}

namespace {
Structure assign_rec(const Structure& s, int& next) {
    if (s->kind == Kind::Atom) return mk_atom(s->name, next++);
    if (s->kids.empty()) return s;
    std::vector<Structure> ks;
    for (auto& k : s->kids) ks.push_back(assign_rec(k, next));
    return make(s->kind, s->name, std::move(ks));
}
}  // namespace

Structure assign_ids(const Structure& s, int start) {
    int next = start;
    return assign_rec(s, next);
}

void collect_ids(const Structure& s, std::vector<int>& out) {
    if (s->kind == Kind::Atom) {
        out.push_back(s->id);
        return;
    }
    for (auto& k : s->kids) collect_ids(k, out);
}

std::size_t atom_count(const Structure& s) {
    if (s->kind == Kind::Atom) return 1;
    std::size_t n = 0;
    for (auto& k : s->kids) n += atom_count(k);
    return n;
}

bool has_kind(const Structure& s, Kind k) {
    if (s->kind == k) return true;
    for (auto& c : s->kids)
        if (has_kind(c, k)) return true;
    return false;
}

bool is_tensor_free(const Structure& s) { return !has_kind(canonicalize(s), Kind::CoPar); }

}  // namespace bvq
