#include <functional>
#include <random>

#include "bvq/structures.hpp"
#include "doctest.h"
#include "gen.hpp"

using namespace bvq;

namespace {

Structure P(const char* s) { return parse_structure(s); }

// Independent size counter over the printed form: atoms plus binders used in their scope.
std::size_t oracle_size(const Structure& s) {
    std::function<std::size_t(const Structure&)> go = [&](const Structure& x) -> std::size_t {
        if (x->kind == Kind::Atom) return 1;
        std::size_t n = 0;
        for (auto& k : x->kids) n += go(k);
        if (x->kind == Kind::Sdq) {
            std::function<bool(const Structure&)> occ = [&](const Structure& y) -> bool {
                if (y->kind == Kind::Atom) return y->name.base == x->name.base;
                if (y->kind == Kind::Sdq && y->name.base == x->name.base) return false;
                for (auto& k : y->kids)
                    if (occ(k)) return true;
                return false;
            };
            if (occ(x->kids[0])) ++n;
        }
        return n;
    };
    return go(s);
}

std::shared_ptr<Node> clone(const Structure& s) { return std::make_shared<Node>(*s); }

// One congruence clause at one position.
Structure apply_clause(const Structure& s, int clause, std::mt19937_64& rng) {
    switch (clause) {
        case 0:  // Par/CoPar symmetry
            if ((s->kind == Kind::Par || s->kind == Kind::CoPar) && s->kids.size() >= 2) {
                auto n = clone(s);
                std::swap(n->kids.front(), n->kids.back());
                return n;
            }
            return s;
        case 1:  // associativity
            if ((s->kind == Kind::Par || s->kind == Kind::CoPar || s->kind == Kind::Seq) && s->kids.size() >= 3) {
                auto n = clone(s);
                auto inner = mk_op(s->kind, {s->kids[1], s->kids[2]});
                n->kids.erase(n->kids.begin() + 1, n->kids.begin() + 3);
                n->kids.insert(n->kids.begin() + 1, inner);
                return n;
            }
            return s;
        case 2: return Structure(std::make_shared<Node>(Node{Kind::Par, {}, {s, mk_one()}}));
        case 3: return Structure(std::make_shared<Node>(Node{Kind::Seq, {}, {mk_one(), s}}));
        case 4: return Structure(std::make_shared<Node>(Node{Kind::CoPar, {}, {mk_one(), s}}));
        case 5: return mk_not(mk_not(s));
        case 6: return mk_not(negate(s));
        case 7: {  // alpha-intro with a fresh name
            auto avoid = all_bases(s);
            return mk_sdq(fresh_base("z", avoid), s);
        }
        case 8:  // alpha-varsub
            if (s->kind == Kind::Sdq) {
                auto avoid = all_bases(s);
                std::string nb = fresh_base("v", avoid);
                return mk_sdq(nb, rename_free(s->kids[0], s->name.base, nb));
            }
            return s;
        case 9:  // alpha-symm
            if (s->kind == Kind::Sdq && s->kids[0]->kind == Kind::Sdq && s->name.base != s->kids[0]->name.base)
                return mk_sdq(s->kids[0]->name.base, mk_sdq(s->name.base, s->kids[0]->kids[0]));
            return s;
        default: (void)rng; return s;
    }
}

Structure apply_somewhere(const Structure& s, int clause, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> coin(0, 2);
    if (s->kids.empty() || coin(rng) == 0) return apply_clause(s, clause, rng);
    std::uniform_int_distribution<std::size_t> k(0, s->kids.size() - 1);
    auto n = clone(s);
    std::size_t j = k(rng);
    n->kids[j] = apply_somewhere(s->kids[j], clause, rng);
    return n;
}

}  // namespace

TEST_CASE("parse structures") {
    auto s = P("fo a.[a;~a]");
    CHECK(s->kind == Kind::Sdq);
    CHECK(s->name.base == "a");
    CHECK(s->kids[0]->kind == Kind::Par);
    CHECK(s->kids[0]->kids[1]->name.neg);
    auto t = P(" [ (a;b) ; <c;1> ] ");
    CHECK(print(t) == "[(a;b);<c;1>]");
    CHECK_THROWS_AS(P("fo ~a.a"), Error);
    CHECK_THROWS_AS(P("[a]"), Error);
    CHECK_THROWS_AS(P("[a;b"), Error);
    CHECK_THROWS_AS(P("a b"), Error);
    try {
        P("[a;;b]");
    } catch (const Error& e) {
        CHECK(e.code == ErrorCode::Parse);
        CHECK(e.pos == 3);
    }
}

TEST_CASE("negate") {
    CHECK(print(negate(P("1"))) == "1");
    CHECK(print(negate(P("[a;~b]"))) == "(~a;b)");
    CHECK(congruent(negate(negate(P("fo a.[a;~a]"))), P("fo a.[a;~a]")));
    CHECK(print(canonicalize(negate(P("fo a.[a;~a]")))) == "fo a.(a;~a)");
}

TEST_CASE("canonical forms") {
    CHECK(print(canonicalize(P("[a;1]"))) == "a");
    CHECK(print(canonicalize(P("~[a;(1;b)]"))) == "(~a;~b)");
    CHECK(print(canonicalize(P("[~a;(~b;fo d.~c)]"))) == "[~a;(~b;~c)]");
    CHECK(print(canonicalize(P("[(~a;~b); fo c.~c]"))) == "[(~a;~b);fo c.~c]");
    CHECK(print(canonicalize(P("(~[a;(1;b)];<1;~b>)"))) == "(~a;~b;~b)");
}

TEST_CASE("congruence examples") {
    CHECK(congruent(P("[a;b]"), P("[b;a]")));
    CHECK(congruent(P("fo a.fo b.[a;b]"), P("fo b.fo a.[a;b]")));
    CHECK_FALSE(congruent(P("<a;b>"), P("<b;a>")));
    CHECK(congruent(P("fo a.[a;~a]"), P("fo b.[b;~b]")));
    CHECK_FALSE(congruent(P("fo a.<a;b>"), P("fo b.<a;b>")));
    CHECK(congruent(P("fo a.fo b.<a;b>"), P("fo b.fo a.<a;b>")));
    CHECK(congruent(P("fo a.fo b.<a;b>"), P("fo a.fo b.<b;a>")));
}

TEST_CASE("size and names") {
    CHECK(size(P("[a;~a]")) == 2);
    CHECK(size(P("fo b.[a;~a]")) == 2);
    CHECK(size(P("fo a.[a;~a]")) == 3);
    auto n = names(P("fo a.[a;b]"));
    CHECK(n.free == std::set<Name>{{"b", false}});
    CHECK(n.bound == std::set<Name>{{"a", false}});
    n = names(P("fo a.[a;~a]"));
    CHECK(n.free.empty());
    CHECK(n.bound == std::set<Name>{{"a", false}, {"a", true}});
    n = names(P("[a;~a]"));
    CHECK(n.free == std::set<Name>{{"a", false}, {"a", true}});
    CHECK(n.bound.empty());
}

TEST_CASE("canonical form properties on random structures") {
    std::mt19937_64 rng(7);
    for (int it = 0; it < 400; ++it) {
        Structure s = testgen::rand_structure(rng, 4);
        Structure c = canonicalize(s);
        CHECK(print(canonicalize(c)) == print(c));
        CHECK(congruent(s, c));
        CHECK(congruent(negate(negate(s)), s));
        CHECK(size(s) == oracle_size(s));
        CHECK(print(parse_structure(print(c))) == print(c));
        for (int clause = 0; clause < 10; ++clause) {
            Structure t = apply_somewhere(s, clause, rng);
            INFO("clause " << clause << " on " << print(s) << " gave " << print(t));
            CHECK(canon_key(t) == canon_key(s));
            CHECK(size(t) == size(s));
            CHECK(print(canonicalize(t)).size() > 0);
        }
        // contextual closure
        Structure r = testgen::rand_structure(rng, 2);
        Structure ctx1 = mk_op(Kind::Seq, {r, s});
        Structure ctx2 = mk_op(Kind::Seq, {r, apply_somewhere(s, it % 10, rng)});
        CHECK(congruent(ctx1, ctx2));
    }
}
