#include <random>

#include "bvq/calculus.hpp"
#include "doctest.h"
#include "gen.hpp"

using namespace bvq;

namespace {
Structure P(const char* s) { return parse_structure(s); }

bool has_instance(const char* s, Rule r, const char* premise) {
    for (auto& i : enumerate_instances(P(s), down_fragment()))
        if (i.rule == r && congruent(i.premise, P(premise))) return true;
    return false;
}

Derivation one_step(const RuleInstance& i) {
    Derivation d;
    d.conclusion = i.conclusion;
    d.steps.push_back(i);
    return d;
}
}  // namespace

TEST_CASE("enumeration examples") {
    CHECK(has_instance("[<a;e>;<~a;f>]", Rule::q_down, "<[a;~a];[e;f]>"));
    CHECK(has_instance("[a;~a]", Rule::ai_down, "1"));
    CHECK(has_instance("[fo a.<a;e>; fo a.<~a;f>]", Rule::u_down, "fo a.[<a;e>;<~a;f>]"));
    CHECK(has_instance("[(a;b);c]", Rule::sw, "([a;c];b)"));
    CHECK(has_instance("[<a;r>;u]", Rule::q_down, "<a;[r;u]>"));
    CHECK_FALSE(has_instance("[a;a]", Rule::ai_down, "1"));
}

TEST_CASE("internal communication derivation") {
    Derivation d;
    d.conclusion = prepare(P("[<a;e>;<~a;f>]"));
    RuleInstance q;
    q.rule = Rule::q_down;
    q.path = {};
    q.before = P("[<a;e>;<~a;f>]");
    q.after = P("<[a;~a];[e;f]>");
    RuleInstance ai;
    ai.rule = Rule::ai_down;
    ai.path = {{Kind::Seq, 0}};
    ai.before = P("[a;~a]");
    ai.after = P("1");
    d.steps = {q, ai};
    Derivation out;
    auto r = check_derivation(d, System::down, &out);
    CHECK(r.ok);
    CHECK(derivation_length(out) == 2);
    CHECK(congruent(out.premise(), P("[e;f]")));
    CHECK(seq_number(out.steps[1]) == 0);
    // ai pointing at a non-redex position
    d.steps[1].path = {{Kind::Seq, 1}};
    r = check_derivation(d, System::down);
    CHECK_FALSE(r.ok);
    CHECK(r.step == 1);
}

TEST_CASE("every enumerated instance checks and respects size") {
    std::mt19937_64 rng(11);
    int total = 0;
    for (int it = 0; it < 150; ++it) {
        Structure s = testgen::rand_structure(rng, 3, it % 2 == 0, true);
        auto insts = enumerate_instances(s, down_fragment(), {it % 3 == 0});
        for (auto& i : insts) {
            ++total;
            std::size_t a = size(i.conclusion), b = size(i.premise);
            if (is_ai(i.rule))
                CHECK(b + 2 <= a);
            else
                CHECK(b <= a);
            CHECK(check_derivation(one_step(i), System::down).ok);
        }
    }
    CHECK(total > 100);
}

TEST_CASE("up rules validate by duality") {
    std::mt19937_64 rng(5);
    int checked = 0;
    for (int it = 0; it < 60; ++it) {
        Structure s = testgen::rand_structure(rng, 3, false, true);
        for (auto& i : enumerate_instances(s, {Rule::q_down, Rule::u_down, Rule::ai_down}, {true})) {
            // down step C <- P  gives up step  neg(P) <- neg(C)
            Derivation d;
            d.conclusion = prepare(negate(i.premise));
            RuleInstance up;
            up.rule = i.rule == Rule::q_down ? Rule::q_up : i.rule == Rule::u_down ? Rule::u_up : Rule::ai_up;
            up.path = {};
            up.before = d.conclusion;
            up.after = negate(i.conclusion);
            d.steps.push_back(up);
            CHECK(check_derivation(d, System::full).ok);
            CHECK_FALSE(check_derivation(d, System::down).ok);
            ++checked;
            if (checked % 7 == 0) break;
        }
    }
    CHECK(checked > 20);
}
