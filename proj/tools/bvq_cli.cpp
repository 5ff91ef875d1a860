// Command-line front end; talks to the library only through bvq.h.
#include <bvq/bvq.h>

#include <CLI11.hpp>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>

namespace {

std::string slurp(const std::string& path) {
    if (path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

int finish(bvq_status st, bvq_result* r) {
    std::fputs(bvq_result_text(r), stdout);
    if (st > BVQ_NO) {
        std::fprintf(stderr, "bvq: %s: %s", bvq_status_name(st), bvq_result_error(r));
        if (st == BVQ_ERR_PARSE) std::fprintf(stderr, " (at %zu)", bvq_result_error_pos(r));
        std::fputc('\n', stderr);
    }
    bvq_result_free(r);
    switch (st) {
        case BVQ_OK: return 0;
        case BVQ_NO: return 1;
        case BVQ_ERR_PARSE:
        case BVQ_ERR_INVALID:
        case BVQ_ERR_ARGUMENT: return 2;
        default: return 3;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"BV with first-order quantifiers: proof search and CCS reachability"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_version_flag("--version", bvq_version());

    std::uint64_t budget = 0, seed = 1;
    if (const char* env = std::getenv("BVQ_BUDGET")) budget = std::strtoull(env, nullptr, 10);
    int depth = 6;
    std::string fragment;
    bool milner = false, via_inv = false, as_json = false, timing = false;
    app.add_option("--budget", budget, "max visited states per search");
    app.add_option("--depth", depth, "depth bound for LTS search");
    app.add_option("--fragment", fragment, "down or standard")->check(CLI::IsMember({"down", "standard"}));
    app.add_flag("--milner", milner, "Milner-style restriction: no res_hide, no res_merge");
    app.add_flag("--via-inversion", via_inv, "reach: build the derivation through inversion");
    app.add_flag("--json", as_json, "JSON output");
    app.add_flag("--timing", timing, "report elapsed time in JSON stats");
    app.add_option("--seed", seed, "selftest seed");

    std::string a, b, c;
    auto* canon = app.add_subcommand("canon", "canonical form of a structure");
    canon->add_option("structure", a)->required();
    auto* cong = app.add_subcommand("congruent", "decide structural congruence");
    cong->add_option("left", a)->required();
    cong->add_option("right", b)->required();
    auto* prove = app.add_subcommand("prove", "search for a proof");
    prove->add_option("structure", a)->required();
    auto* derive = app.add_subcommand("derive", "search for a derivation from premise to conclusion");
    derive->add_option("conclusion", a)->required();
    derive->add_option("premise", b)->required();
    auto* stdz = app.add_subcommand("standardize", "standardize a derivation (JSON file or -)");
    stdz->add_option("file", a)->required();
    auto* red = app.add_subcommand("reduce", "reduce a standard derivation (JSON file or -)");
    red->add_option("file", a)->required();
    auto* cls = app.add_subcommand("classify", "report structure classes");
    cls->add_option("structure", a)->required();
    auto* comp = app.add_subcommand("compile", "encode a reachability query as structures");
    comp->add_option("from", a)->required();
    comp->add_option("to", b)->required();
    comp->add_option("actions", c);
    auto* reach = app.add_subcommand("reach", "decide E =alpha=> F by proof search");
    reach->add_option("from", a)->required();
    reach->add_option("to", b)->required();
    reach->add_option("actions", c);
    auto* lts = app.add_subcommand("lts", "list transitions, or search an LTS witness");
    lts->add_option("from", a)->required();
    lts->add_option("to", b);
    lts->add_option("actions", c);
    auto* chk = app.add_subcommand("check", "re-validate a JSON document (file or -)");
    chk->add_option("file", a)->required();
    app.add_subcommand("selftest", "randomized self-checks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    bvq_options* o = bvq_options_new();
    if (budget) bvq_options_set_budget(o, budget);
    bvq_options_set_depth(o, depth);
    if (!fragment.empty()) bvq_options_set_fragment(o, fragment.c_str());
    bvq_options_set_milner(o, milner);
    bvq_options_set_via_inversion(o, via_inv);
    bvq_options_set_json(o, as_json);
    bvq_options_set_timing(o, timing);
    bvq_options_set_seed(o, seed);

    bvq_result* r = nullptr;
    bvq_status st;
    const char* cc = c.empty() ? "" : c.c_str();
    try {
        if (*canon)
            st = bvq_canon(a.c_str(), o, &r);
        else if (*cong)
            st = bvq_congruent(a.c_str(), b.c_str(), o, &r);
        else if (*prove)
            st = bvq_prove(a.c_str(), o, &r);
        else if (*derive)
            st = bvq_derive(a.c_str(), b.c_str(), o, &r);
        else if (*stdz)
            st = bvq_standardize(slurp(a).c_str(), o, &r);
        else if (*red)
            st = bvq_reduce(slurp(a).c_str(), o, &r);
        else if (*cls)
            st = bvq_classify(a.c_str(), o, &r);
        else if (*comp)
            st = bvq_compile(a.c_str(), b.c_str(), cc, o, &r);
        else if (*reach)
            st = bvq_reach(a.c_str(), b.c_str(), cc, o, &r);
        else if (*lts)
            st = bvq_lts(a.c_str(), b.empty() ? nullptr : b.c_str(), b.empty() ? nullptr : cc, o, &r);
        else if (*chk)
            st = bvq_check(slurp(a).c_str(), o, &r);
        else
            st = bvq_selftest(o, &r);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "bvq: %s\n", e.what());
        bvq_options_free(o);
        return 2;
    }
    bvq_options_free(o);
    return finish(st, r);
}
