#include <functional>
#include <random>

#include "bvq/bridge.hpp"
#include "bvq/search.hpp"
#include "bvq/standardize.hpp"
#include "doctest.h"
#include "gen.hpp"

using namespace bvq;

namespace {
Structure P(const char* s) { return parse_structure(s); }
Process E(const char* s) { return parse_process(s); }
ActionSeq A(const char* s) { return parse_actions(s); }

std::unordered_set<int> ids_of(const Structure& s) {
    std::vector<int> v;
    collect_ids(s, v);
    return {v.begin(), v.end()};
}

bool tree_has(const LtsNode& t, LtsRule r) {
    if (t.rule == r) return true;
    for (auto& c : t.children)
        if (tree_has(c, r)) return true;
    return false;
}

// The env part of a prepared Par conclusion: the kid congruent to `env`.
std::unordered_set<int> env_ids_in(const Structure& concl, const Structure& env) {
    for (auto& k : concl->kids)
        if (congruent(k, env)) return ids_of(k);
    return {};
}
}  // namespace

TEST_CASE("derive examples") {
    auto r = derive(P("[<a;r>;<~b;t>;<~a;b>]"), P("[r;t]"), Fragment::down);
    REQUIRE(r.derivation);
    CHECK(check_derivation(*r.derivation, System::down).ok);
    CHECK(congruent(r.derivation->premise(), P("[r;t]")));
    r = derive(P("[a;<b;c>]"), P("[<b;c>;a]"), Fragment::down);
    REQUIRE(r.derivation);
    CHECK(r.derivation->steps.empty());
    r = derive(P("[a;b]"), P("1"), Fragment::down);
    CHECK_FALSE(r.derivation);
    CHECK_FALSE(r.exhausted);
    r = prove(P("[<a;b>;<~a;~b>]"), Fragment::standard);
    REQUIRE(r.derivation);
    CHECK(is_standard(*r.derivation));
    SearchBudget tiny{3, 3};
    r = prove(P("[<a;b;c>;<~a;~b;~c>;[d;~d]]"), Fragment::down, tiny);
    CHECK_FALSE(r.derivation);
    CHECK(r.exhausted);
}

TEST_CASE("consumption") {
    auto r = derive(P("[<a;r>;<~b;t>;<~a;b>]"), P("[r;t]"), Fragment::standard);
    REQUIRE(r.derivation);
    const Derivation& d = *r.derivation;
    auto env = env_ids_in(d.conclusion, P("<~a;b>"));
    REQUIRE(env.size() == 2);
    CHECK(consumes(d, env));
    CHECK(consumes(d, {}));
    Derivation cut = d;
    while (!cut.steps.empty() && consumes(cut, env)) cut.steps.pop_back();
    CHECK_FALSE(consumes(cut, env));
    CHECK_THROWS_AS(consumes(d, {12345}), Error);
}

TEST_CASE("reduction") {
    auto v = reach(E("nu a.(a.b.0|~a.0)"), E("nu a.(0|0)"), A("b"));
    REQUIRE(v.proved);
    Derivation red = reduce(v.standard);
    CHECK(check_derivation(red, System::down).ok);
    CHECK(congruent(red.conclusion, P("[b;~b]")));
    CHECK(congruent(red.premise(), P("1")));
    CHECK(is_standard(red));
    auto one = derive(P("[a;~a;<b;c>]"), P("<b;c>"), Fragment::standard);
    REQUIRE(one.derivation);
    Derivation t = reduce(*one.derivation);
    CHECK(is_trivial_derivation(t));
    CHECK(classify_structure(t.conclusion).is_process);
}

TEST_CASE("splitting") {
    auto pr = prove(P("[<a;b>;<~a;~b>]"), Fragment::down);
    REQUIRE(pr.derivation);
    auto s = split(*pr.derivation, SplitShape::seq, P("a"), P("b"), P("<~a;~b>"));
    REQUIRE(s.parts.size() == 2);
    CHECK(congruent(s.parts[0], P("~a")));
    CHECK(congruent(s.parts[1], P("~b")));
    CHECK(check_derivation(s.link, System::down).ok);
    for (auto& p : s.proofs) CHECK(check_derivation(p, System::down).ok);

    pr = prove(P("[fo a.[a;~a];1]"), Fragment::down);
    REQUIRE(pr.derivation);
    s = split(*pr.derivation, SplitShape::fo, P("a"), P("[a;~a]"), P("1"));
    REQUIRE(s.parts.size() == 1);
    CHECK(congruent(s.parts[0], P("1")));

    pr = prove(P("[a;~a]"), Fragment::down);
    REQUIRE(pr.derivation);
    s = split(*pr.derivation, SplitShape::atom, P("a"), P("1"), P("~a"));
    CHECK(check_derivation(s.link, System::down).ok);
    CHECK(congruent(s.link.conclusion, P("[a;~a]")));
}

TEST_CASE("inversion") {
    auto pr = prove(P("[<a;b>;<~a;~b>]"), Fragment::down);
    REQUIRE(pr.derivation);
    Derivation d = invert(P("1"), *pr.derivation);
    CHECK(congruent(d.premise(), P("1")));
    CHECK(congruent(d.conclusion, P("[<a;b>;<~a;~b>]")));

    pr = prove(P("[(~a;b);[a;~b]]"), Fragment::down);
    REQUIRE(pr.derivation);
    d = invert(P("[a;~b]"), *pr.derivation);
    CHECK(check_derivation(d, System::down).ok);
    CHECK(congruent(d.premise(), P("[a;~b]")));
    CHECK(congruent(d.conclusion, P("[a;~b]")));

    CHECK(is_co_invertible(P("[a;~b]")));
    CHECK_FALSE(is_co_invertible(P("<a;b>")));
    CHECK_THROWS_AS(invert(P("<a;b>"), *pr.derivation), Error);
}

TEST_CASE("witness extraction") {
    auto v = reach(E("nu a.(a.b.0|~a.0)"), E("nu a.(0|0)"), A("b"));
    REQUIRE(v.proved);
    LtsNode w = extract_lts(v.standard, E("nu a.(a.b.0|~a.0)"), E("nu a.(0|0)"), v.env, v.env_ids);
    CHECK(check_lts_derivation(w).ok);
    CHECK(process_congruent(w.from, E("nu a.(a.b.0|~a.0)")));
    CHECK(process_congruent(w.to, E("nu a.(0|0)")));
    CHECK(actions_equal(w.label, A("b")));

    v = reach(E("(nu a.a.0)|(nu a.b.0)"), E("nu a.(a.0|b.0)"), A("tau"));
    REQUIRE(v.proved);
    CHECK(is_trivial_derivation(v.standard));
    CHECK(check_lts_derivation(v.witness).ok);
    CHECK(tree_has(v.witness, LtsRule::res_merge));
    CHECK(actions_equal(v.witness.label, A("tau")));

    v = reach(E("a.0|~a.0"), E("0"), A("tau"));
    REQUIRE(v.proved);
    CHECK(tree_has(v.witness, LtsRule::com));
    CHECK(actions_equal(v.witness.label, A("tau")));
    CHECK(lts_reachable(E("a.0|~a.0"), E("0"), A("tau"), 2));
}

TEST_CASE("reach examples") {
    auto v = reach(E("nu a.(a.b.0|~a.0)"), E("nu a.(0|0)"), A("b"));
    REQUIRE(v.proved);
    CHECK(is_standard(v.standard));
    CHECK(congruent(v.standard.premise(), to_structure(E("nu a.(0|0)"))));
    CHECK(congruent(v.standard.conclusion, P("[fo a.[<a;b>;~a];~b]")));
    CHECK(consumes(v.standard, v.env_ids));

    v = reach(E("0"), E("0"), A("tau"));
    REQUIRE(v.proved);
    CHECK(v.standard.steps.empty());
    CHECK(v.witness.rule == LtsRule::refl);

    v = reach(E("a.0"), E("0"), A("b"));
    CHECK_FALSE(v.proved);
    CHECK_FALSE(v.exhausted);

    CHECK_THROWS_AS(reach(E("a.0"), E("a.b.0"), A("tau")), Error);

    ReachOptions inv;
    inv.via_inversion = true;
    v = reach(E("nu a.(a.b.0|~a.0)"), E("nu a.(0|0)"), A("b"), inv);
    REQUIRE(v.proved);
    CHECK(check_lts_derivation(v.witness).ok);
    CHECK(check_derivation(v.proof, System::down).ok);
}

TEST_CASE("reach agrees with the transition system on small processes") {
    std::mt19937_64 rng(17);
    for (int k = 0; k < 25; ++k) {
        Process e = testgen::rand_process(rng, 1 + static_cast<int>(rng() % 6));
        for (auto& t : lts_steps(e)) {
            if (!is_simple_process(t.to)) continue;
            auto v = reach(e, t.to, t.label);
            CHECK_MESSAGE(v.proved, print_process(e), " -> ", print_process(t.to));
            if (!v.proved) continue;
            CHECK(check_lts_derivation(v.witness).ok);
            CHECK(is_standard(v.standard));
            CHECK(lts_reachable(e, t.to, t.label, 1 + static_cast<int>(v.standard.steps.size())));
        }
    }
}
