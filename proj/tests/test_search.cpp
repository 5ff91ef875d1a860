#include "bvq/search.hpp"
#include "doctest.h"

using namespace bvq;

namespace {
Structure P(const char* s) { return parse_structure(s); }
}

TEST_CASE("prove basics") {
    auto r = prove(P("[a;~a]"), Fragment::down);
    REQUIRE(r.derivation);
    CHECK(r.derivation->steps.size() == 1);
    r = prove(P("[<a;b>;<~a;~b>]"), Fragment::down);
    REQUIRE(r.derivation);
    CHECK(check_derivation(*r.derivation, System::down).ok);
    r = prove(P("[<a;b>;<~b;~a>]"), Fragment::down);
    CHECK_FALSE(r.derivation);
    CHECK_FALSE(r.exhausted);
    r = prove(P("[a;a]"), Fragment::down);
    CHECK_FALSE(r.derivation);
    CHECK_FALSE(r.exhausted);
}
