#include <random>

#include "bvq/ccsr.hpp"
#include "doctest.h"
#include "gen.hpp"

using namespace bvq;

namespace {
Process E(const char* s) { return parse_process(s); }
ActionSeq A(const char* s) { return parse_actions(s); }

bool has_step(const char* from, const char* to, const char* label, LtsRule rule) {
    for (auto& t : lts_steps(E(from)))
        if (process_congruent(t.to, E(to)) && actions_equal(t.label, A(label)) && t.tree.rule == rule) return true;
    return false;
}

// Labels any transition sequence from e can ever show: the prefixes of e.
void prefixes(const Process& p, std::set<std::string>& out) {
    if (p->kind == PKind::Prefix) out.insert(p->name.str());
    for (auto& k : p->kids) prefixes(k, out);
}
}  // namespace

TEST_CASE("parse processes") {
    auto p = E("nu a.(a.b.0 | ~a.0)");
    REQUIRE(p->kind == PKind::Nu);
    CHECK(p->name.base == "a");
    auto par = p->kids[0];
    REQUIRE(par->kind == PKind::Par);
    CHECK(par->kids[0]->kind == PKind::Prefix);
    CHECK(par->kids[0]->kids[0]->name.base == "b");
    CHECK(par->kids[1]->name.neg);
    CHECK(E("0")->kind == PKind::Zero);
    CHECK_THROWS_AS(E("nu ~a.0"), Error);
    CHECK_THROWS_AS(E("a."), Error);
    CHECK_THROWS_AS(E("(a.0 | b.0"), Error);
}

TEST_CASE("process congruence") {
    CHECK(process_congruent(E("(a.0|0)"), E("a.0")));
    CHECK(process_congruent(E("nu a.a.0"), E("nu b.b.0")));
    CHECK(process_congruent(E("(a.0|b.0)"), E("(b.0|a.0)")));
    CHECK(process_congruent(E("nu a.0"), E("0")));
    CHECK(process_congruent(E("nu a.b.0"), E("b.0")));
    CHECK(process_congruent(E("nu a.nu b.(a.0|b.0)"), E("nu b.nu a.(a.0|b.0)")));
    CHECK_FALSE(process_congruent(E("a.b.0"), E("b.a.0")));
    CHECK_FALSE(process_congruent(E("nu a.a.0"), E("a.0")));
}

TEST_CASE("action sequences") {
    CHECK(print_actions(actions_normalize(A("a1;~a1;tau;tau"))) == "a1;~a1");
    CHECK(print_actions(actions_normalize(A("tau"))) == "tau");
    CHECK(print_actions(actions_normalize(A("tau;b"))) == "b");
    CHECK(print_actions(actions_hide(A("a;b;~a"), "a")) == "b");
    CHECK(print_actions(actions_hide(A("a"), "a")) == "tau");
    CHECK(print_actions(actions_complement(A("a;~b"))) == "~a;b");
}

TEST_CASE("one-step transitions") {
    CHECK(has_step("a.0 | ~a.0", "0|0", "tau", LtsRule::com));
    CHECK(has_step("nu a.(a.b.0|~a.0)", "nu a.(b.0|0)", "tau", LtsRule::res_pass));
    CHECK(has_step("(nu a.a.b.0)|(nu a.~a.0)", "nu a.(b.0|0)", "tau", LtsRule::res_merge));
    CHECK(has_step("a.0", "0", "a", LtsRule::act));
    CHECK(has_step("nu b.b.0", "nu b.0", "tau", LtsRule::res_hide));
    CHECK(has_step("a.0", "a.0", "tau", LtsRule::refl));
    bool found = false;
    for (auto& t : lts_steps(E("(nu a.a.b.0)|(nu a.~a.0)"), true))
        found |= process_congruent(t.to, E("nu a.(b.0|0)")) && t.tree.rule != LtsRule::refl;
    CHECK_FALSE(found);
    // deterministic ordering
    auto x = lts_steps(E("(a.0|~a.b.0)|c.0")), y = lts_steps(E("(a.0|~a.b.0)|c.0"));
    REQUIRE(x.size() == y.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        CHECK(process_key(x[i].to) == process_key(y[i].to));
        CHECK(print_actions(x[i].label) == print_actions(y[i].label));
    }
}

TEST_CASE("bounded reachability") {
    CHECK(lts_reachable(E("nu a.(a.b.0|~a.0)"), E("nu a.(0|0)"), A("b"), 4));
    CHECK(lts_reachable(E("(nu a.a.b.0)|(nu a.~a.0)"), E("nu a.(0|0)"), A("b"), 4));
    CHECK_FALSE(lts_reachable(E("(nu a.a.b.0)|(nu a.~a.0)"), E("nu a.(0|0)"), A("b"), 4, true));
    std::set<std::string> labels;
    prefixes(E("a.0"), labels);
    CHECK_FALSE(labels.count("b"));
    CHECK_FALSE(lts_reachable(E("a.0"), E("0"), A("b"), 4));
    auto w = lts_reachable(E("a.0|b.0"), E("0"), A("b;a"), 3);
    REQUIRE(w);
    CHECK(check_lts_derivation(*w).ok);
}

TEST_CASE("lts checker rejects bad nodes") {
    LtsNode r;
    r.rule = LtsRule::refl;
    r.from = E("a.0");
    r.to = E("b.0");
    r.label = A("tau");
    CHECK_FALSE(check_lts_derivation(r).ok);
    r.to = E("a.0");
    CHECK(check_lts_derivation(r).ok);

    LtsNode l, rr, c;
    l.rule = rr.rule = LtsRule::act;
    l.from = E("a.0"), l.to = E("0"), l.label = A("a");
    rr.from = E("b.0"), rr.to = E("0"), rr.label = A("b");
    c.rule = LtsRule::com;
    c.from = E("a.0|b.0"), c.to = E("0|0"), c.label = A("tau");
    c.children = {l, rr};
    CHECK(check_lts_derivation(l).ok);
    CHECK_FALSE(check_lts_derivation(c).ok);
    rr.from = E("~a.0"), rr.label = A("~a");
    c.from = E("a.0|~a.0");
    c.children = {l, rr};
    CHECK(check_lts_derivation(c).ok);
}

TEST_CASE("simple processes") {
    CHECK(is_simple_process(E("a.0 | ~b.0")));
    CHECK_FALSE(is_simple_process(E("a.0 | ~a.0")));
    CHECK_FALSE(is_simple_process(E("a.b.0")));
    CHECK(is_simple_process(E("nu a.(a.0|b.0)")));
    CHECK(is_simple_process(E("0")));
}

TEST_CASE("lts properties on random processes") {
    std::mt19937_64 rng(11);
    for (int it = 0; it < 150; ++it) {
        Process e = testgen::rand_process(rng, 1 + static_cast<int>(rng() % 7));
        auto steps = lts_steps(e);
        auto msteps = lts_steps(e, true);
        for (auto& t : steps) {
            auto c = check_lts_derivation(t.tree);
            CHECK_MESSAGE(c.ok, print_process(e), " ", c.reason);
            CHECK(process_congruent(t.tree.from, e));
        }
        for (auto& m : msteps) {
            bool in = false;
            for (auto& t : steps) in |= process_congruent(t.to, m.to) && actions_equal(t.label, m.label);
            CHECK(in);
        }
        CHECK(lts_reachable(e, e, A("tau"), 0));
        // invariance under a congruent presentation
        Process e2 = p_par(p_zero(), e);
        for (auto& t : steps)
            CHECK(lts_reachable(e2, t.to, t.label, 1).has_value() == lts_reachable(e, t.to, t.label, 1).has_value());
    }
}
