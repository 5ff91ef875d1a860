#include <random>

#include "bvq/bridge.hpp"
#include "bvq/search.hpp"
#include "doctest.h"
#include "gen.hpp"

using namespace bvq;

namespace {
Structure P(const char* s) { return parse_structure(s); }
Process E(const char* s) { return parse_process(s); }
ActionSeq A(const char* s) { return parse_actions(s); }

Derivation found(const char* c, const char* p) {
    auto r = derive(P(c), P(p), Fragment::down);
    REQUIRE(r.derivation);
    return *r.derivation;
}
}  // namespace

TEST_CASE("process images") {
    CHECK(print(to_structure(E("a.b.0 | ~a.0"))) == "[<a;<b;1>>;<~a;1>]");
    CHECK(print(to_structure(E("0"))) == "1");
    CHECK(print(to_structure(E("nu a.(a.0|b.0)"))) == "fo a.[<a;1>;<b;1>]");
    CHECK(process_congruent(from_structure(P("[<a;b>;~a]")), E("a.b.0 | ~a.0")));
    CHECK(congruent(to_structure(from_structure(P("[<a;b>;~a]"))), P("[<a;b>;~a]")));
    CHECK(process_congruent(from_structure(P("1")), E("0")));
    CHECK_THROWS_AS(from_structure(P("(a;b)")), Error);
}

TEST_CASE("classifier examples") {
    CHECK(classify_structure(P("<~a;b>")).is_environment);
    auto k = classify_structure(P("[a;~b]"));
    CHECK(k.is_simple);
    CHECK(k.is_process);
    CHECK(k.is_tensor_free);
    CHECK(classify_structure(P("(~a;b)")).is_invertible);
    CHECK_FALSE(is_environment_structure(P("(a;b)")));
    CHECK_FALSE(is_environment_structure(P("[a;b]")));
    CHECK(classify_structure(P("[a; fo b.[fo d.[a;~c];b]; a]")).is_simple);
    CHECK_FALSE(classify_structure(P("[a;~a]")).is_simple);
    CHECK_FALSE(classify_structure(P("<a;b>")).is_simple);
    CHECK(classify_structure(P("<a;b>")).is_process);
    CHECK_FALSE(classify_structure(P("(a;b)")).is_process);
}

TEST_CASE("environment structures and actions") {
    CHECK(print_actions(env_to_actions(P("<a1; fo b2.<~a1; fo b1.<b2;b1>>>"))) == "a1;~a1");
    CHECK(print_actions(env_to_actions(P("1"))) == "tau");
    CHECK(print_actions(env_to_actions(P("~b"))) == "~b");
    CHECK(print(actions_to_env(A("b"))) == "b");
    CHECK(print(actions_to_env(A("a;b"))) == "<a;b>");
    CHECK(print(actions_to_env(A("tau"))) == "1");
    CHECK_THROWS(env_to_actions(P("[a;b]")));
    for (const char* s : {"a;b", "~a;b;c", "tau", "a;~a;a"})
        CHECK(actions_equal(env_to_actions(actions_to_env(A(s))), A(s)));
}

TEST_CASE("trivial derivations") {
    CHECK(is_trivial_derivation(found("[fo a.<a;e>; fo a.<~a;f>]", "fo a.[<a;e>;<~a;f>]")));
    CHECK_FALSE(is_trivial_derivation(found("[<a;e>;<~a;f>]", "[e;f]")));
    Derivation none;
    none.conclusion = prepare(P("[a;b]"));
    CHECK(is_trivial_derivation(none));
}

TEST_CASE("bridge round trips on random processes") {
    std::mt19937_64 rng(3);
    for (int it = 0; it < 300; ++it) {
        Process e = testgen::rand_process(rng, 1 + static_cast<int>(rng() % 8));
        Structure s = to_structure(e);
        CHECK(process_congruent(from_structure(s), e));
        Structure c = canonicalize(s);
        auto k = classify_structure(c);
        CHECK(k.is_process);
        CHECK(congruent(to_structure(from_structure(c)), c));
        CHECK(is_simple_process(e) == k.is_simple);
        if (k.is_simple) {
            CHECK(k.is_tensor_free);
            CHECK(is_invertible_structure(negate(c)));
        }
    }
}

TEST_CASE("trivial derivation between process structures with an unrestricted q") {
    Derivation d;
    d.conclusion = prepare(P("[a;<~b;b>]"));
    auto q1 = find_step(d.conclusion, P("<[a;~b];b>"), {Rule::q_down}, false);
    REQUIRE(q1);
    auto q2 = find_step(q1->premise, P("<a;~b;b>"), {Rule::q_down}, false);
    REQUIRE(q2);
    d.steps = {*q1, *q2};
    CHECK(check_derivation(d, System::down).ok);
    CHECK(is_trivial_derivation(d));
    CHECK(classify_structure(d.conclusion).is_process);
    CHECK(classify_structure(d.premise()).is_process);
    // the lower instance is neither [<l;R'>;R''] <- <l;[R';R'']> nor [R';R''] <- <R';R''>
    CHECK_FALSE(congruent(q1->premise, P("<~b;[b;a]>")));
    CHECK_FALSE(congruent(q1->premise, P("<~b;b;a>")));
    CHECK_FALSE(congruent(q1->premise, P("<a;~b;b>")));
}
