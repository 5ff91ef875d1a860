#include <cstdio>
#include <fstream>
#include <string>

#include "doctest.h"

#ifdef BVQ_CLI_PATH
namespace {
struct Run {
    int code;
    std::string out;
};

Run cli(const std::string& args, const std::string& stdin_file = "") {
    std::string cmd = std::string(BVQ_CLI_PATH) + " " + args + " 2>/dev/null";
    if (!stdin_file.empty()) cmd += " < " + stdin_file;
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p);
    std::string out;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
    int st = pclose(p);
    return {WEXITSTATUS(st), out};
}

std::string save(const std::string& name, const std::string& text) {
    std::string path = "bvq_cli_test_" + name + ".json";
    std::ofstream(path) << text;
    return path;
}
}  // namespace

TEST_CASE("cli exit codes") {
    auto r = cli("reach \"nu a.(a.b.0|~a.0)\" \"nu a.(0|0)\" b");
    CHECK(r.code == 0);
    CHECK(r.out.rfind("Proved", 0) == 0);
    CHECK(cli("congruent \"[a;b]\" \"[b;a]\"").code == 0);
    CHECK(cli("congruent \"<a;b>\" \"<b;a>\"").code == 1);
    CHECK(cli("prove \"[<a;b>;<~b;~a>]\"").code == 1);
    CHECK(cli("prove \"[a;\"").code == 2);
    CHECK(cli("frobnicate").code == 2);
    CHECK(cli("").code == 2);
    CHECK(cli("canon \"[a;1]\"").out == "a\n");
}

TEST_CASE("cli output is deterministic") {
    for (const char* args : {"--json reach \"nu a.(a.b.0|~a.0)\" \"nu a.(0|0)\" b",
                             "--json prove \"[<a;b>;<~a;~b>]\"", "lts \"(a.0|~a.b.0)|c.0\"",
                             "--json classify \"[a;~b]\"", "selftest --seed 2"}) {
        auto a = cli(args), b = cli(args);
        CHECK(a.code == b.code);
        CHECK(a.out == b.out);
    }
    auto t = cli("--json --timing prove \"[a;~a]\"");
    CHECK(t.out.find("\"elapsed_ms\": null") == std::string::npos);
    CHECK(cli("--json prove \"[a;~a]\"").out.find("\"elapsed_ms\": null") != std::string::npos);
}

TEST_CASE("emitted documents re-validate") {
    auto v = cli("--json reach \"nu a.(a.b.0|~a.0)\" \"nu a.(0|0)\" b");
    auto f = save("verdict", v.out);
    CHECK(cli("check " + f).code == 0);
    CHECK(cli("check -", f).code == 0);

    auto p = cli("--json derive \"[<a;r>;<~b;t>;<~a;b>]\" \"[r;t]\"");
    REQUIRE(p.code == 0);
    auto pf = save("derive", p.out);
    CHECK(cli("check " + pf).code == 0);
    auto s = cli("--json standardize " + pf);
    REQUIRE(s.code == 0);
    CHECK(cli("check " + save("std", s.out)).code == 0);
    auto red = cli("--json reduce " + pf);
    REQUIRE(red.code == 0);
    CHECK(cli("check " + save("red", red.out)).code == 0);

    // a tampered step no longer checks
    std::string bad = p.out;
    auto at = bad.find("\"redexAfter\": \"");
    REQUIRE(at != std::string::npos);
    bad.insert(at + 15, "<z;");
    auto close = bad.find('"', at + 18);
    bad.insert(close, ">");
    CHECK(cli("check " + save("bad", bad)).code != 0);

    auto l = cli("--json lts \"nu a.(a.b.0|~a.0)\" \"nu a.(0|0)\" b");
    REQUIRE(l.code == 0);
    CHECK(l.out.find("\"witness\"") != std::string::npos);
    for (const char* n : {"verdict", "derive", "std", "red", "bad"})
        std::remove(("bvq_cli_test_" + std::string(n) + ".json").c_str());
}
#endif
