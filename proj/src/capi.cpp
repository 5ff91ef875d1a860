#include "bvq/bvq.h"

#include <chrono>
#include <cstring>
#include <map>
#include <sstream>

#include "bvq/bridge.hpp"
#include "bvq/json_io.hpp"
#include "bvq/random.hpp"

using namespace bvq;

struct bvq_options {
    SearchBudget budget = default_budget();
    int depth = 6;
    Fragment fragment = Fragment::down;
    bool fragment_set = false;
    bool milner = false;
    bool via_inversion = false;
    bool json = false;
    bool timing = false;
    std::uint64_t seed = 1;
};

struct bvq_result {
    bvq_status status = BVQ_OK;
    std::string text;
    std::string error;
    std::size_t pos = 0;
};

struct bvq_structure {
    Structure s;
};
struct bvq_process {
    Process p;
};

namespace {

bvq_status code_of(ErrorCode c) {
    switch (c) {
        case ErrorCode::Parse: return BVQ_ERR_PARSE;
        case ErrorCode::Invalid: return BVQ_ERR_INVALID;
        case ErrorCode::Precondition: return BVQ_ERR_PRECONDITION;
        case ErrorCode::Budget: return BVQ_ERR_BUDGET;
        case ErrorCode::NotFound: return BVQ_NO;
        default: return BVQ_ERR_INTERNAL;
    }
}

const bvq_options& opts(const bvq_options* o) {
    static const bvq_options def;
    return o ? *o : def;
}

// Runs `body`, converting exceptions into an error result.
template <class F>
bvq_status run(bvq_result** out, F&& body) {
    auto* r = new bvq_result;
    try {
        r->status = body(*r);
    } catch (const Error& e) {
        r->status = code_of(e.code);
        r->error = e.what();
        r->pos = e.pos;
        if (r->status == BVQ_NO) r->status = BVQ_ERR_INVALID;
    } catch (const std::exception& e) {
        r->status = BVQ_ERR_INTERNAL;
        r->error = e.what();
    }
    bvq_status s = r->status;
    if (out)
        *out = r;
    else
        delete r;
    return s;
}

std::string str(const char* s) {
    if (!s) throw Error(ErrorCode::Parse, "missing argument");
    return s;
}

json parse_json(const char* text) {
    try {
        return json::parse(str(text));
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::Parse, std::string("bad JSON: ") + e.what(), e.byte);
    }
}

std::string listing(const Derivation& d) {
    std::ostringstream o;
    o << "conclusion: " << print(d.conclusion) << "\n";
    int k = 0;
    for (auto& st : d.steps) {
        o << "  " << ++k << ". " << rule_name(st.rule) << " at " << path_str(st.path);
        if (st.before && st.after) o << ": " << print(st.before) << " => " << print(st.after);
        if (!st.consumed.empty()) {
            o << "  [ids";
            for (int i : st.consumed) o << " " << i;
            o << "]";
        }
        o << "\n     " << print(st.premise) << "\n";
    }
    o << "premise: " << print(d.premise()) << "\n";
    return o.str();
}

void lts_lines(const LtsNode& t, int indent, std::ostringstream& o) {
    o << std::string(indent * 2, ' ') << lts_rule_name(t.rule) << ": " << print_process(t.from) << " --"
      << print_actions(t.label) << "--> " << print_process(t.to) << "\n";
    for (auto& c : t.children) lts_lines(c, indent + 1, o);
}

std::string lts_listing(const LtsNode& t) {
    std::ostringstream o;
    lts_lines(t, 0, o);
    return o.str();
}

json stats_json(const SearchStats& s, const bvq_options& o) {
    json j = {{"steps", s.steps}, {"visited", s.visited}};
    if (o.timing)
        j["elapsed_ms"] = s.elapsed_ms;
    else
        j["elapsed_ms"] = nullptr;
    return j;
}

// Accepts a bare derivation or a search result wrapping one.
json unwrap(json j) {
    if (j.contains("derivation")) return j["derivation"];
    if (j.contains("standardDerivation")) return j["standardDerivation"];
    if (j.contains("after") && j["after"].is_object()) return j["after"];
    return j;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

Derivation checked(const json& j, System sys = System::down) {
    Derivation d = derivation_from_json(j);
    Derivation full;
    auto c = check_derivation(d, sys, &full);
    if (!c.ok) throw Error(ErrorCode::Invalid, "derivation fails at step " + std::to_string(c.step + 1) + ": " + c.reason);
    Structure p = derivation_premise_from_json(j);
    if (p && !congruent(p, full.premise())) throw Error(ErrorCode::Invalid, "declared premise disagrees with the steps");
    return full;
}

}  // namespace

extern "C" {

const char* bvq_version(void) { return "1.0.0"; }

const char* bvq_status_name(bvq_status s) {
    switch (s) {
        case BVQ_OK: return "ok";
        case BVQ_NO: return "no";
        case BVQ_ERR_PARSE: return "parse error";
        case BVQ_ERR_INVALID: return "invalid";
        case BVQ_ERR_PRECONDITION: return "precondition violated";
        case BVQ_ERR_BUDGET: return "budget exhausted";
        case BVQ_ERR_INTERNAL: return "internal error";
        case BVQ_ERR_ARGUMENT: return "bad argument";
    }
    return "unknown";
}

bvq_options* bvq_options_new(void) { return new bvq_options; }
void bvq_options_free(bvq_options* o) { delete o; }
void bvq_options_set_budget(bvq_options* o, uint64_t n) {
    if (o && n > 0) o->budget.max_visited = o->budget.max_steps = n;
}
void bvq_options_set_depth(bvq_options* o, int d) {
    if (o && d >= 0) o->depth = d;
}
bvq_status bvq_options_set_fragment(bvq_options* o, const char* f) {
    if (!o || !f) return BVQ_ERR_ARGUMENT;
    std::string s = f;
    if (s == "down")
        o->fragment = Fragment::down;
    else if (s == "standard")
        o->fragment = Fragment::standard;
    else
        return BVQ_ERR_ARGUMENT;
    o->fragment_set = true;
    return BVQ_OK;
}
void bvq_options_set_milner(bvq_options* o, int on) {
    if (o) o->milner = on != 0;
}
void bvq_options_set_via_inversion(bvq_options* o, int on) {
    if (o) o->via_inversion = on != 0;
}
void bvq_options_set_json(bvq_options* o, int on) {
    if (o) o->json = on != 0;
}
void bvq_options_set_timing(bvq_options* o, int on) {
    if (o) o->timing = on != 0;
}
void bvq_options_set_seed(bvq_options* o, uint64_t seed) {
    if (o) o->seed = seed;
}

bvq_status bvq_result_status(const bvq_result* r) { return r ? r->status : BVQ_ERR_ARGUMENT; }
const char* bvq_result_text(const bvq_result* r) { return r ? r->text.c_str() : ""; }
const char* bvq_result_error(const bvq_result* r) { return r ? r->error.c_str() : ""; }
size_t bvq_result_error_pos(const bvq_result* r) { return r ? r->pos : 0; }
void bvq_result_free(bvq_result* r) { delete r; }

bvq_status bvq_structure_parse(const char* text, bvq_structure** out, bvq_result** err) {
    return run(err, [&](bvq_result&) {
        Structure s = parse_structure(str(text));
        if (out) *out = new bvq_structure{s};
        return BVQ_OK;
    });
}
char* bvq_structure_print(const bvq_structure* s) { return s ? strdup(print(s->s).c_str()) : nullptr; }
bvq_structure* bvq_structure_canonical(const bvq_structure* s) {
    return s ? new bvq_structure{canonicalize(s->s)} : nullptr;
}
size_t bvq_structure_size(const bvq_structure* s) { return s ? size(s->s) : 0; }
int bvq_structure_congruent(const bvq_structure* a, const bvq_structure* b) {
    return a && b && congruent(a->s, b->s) ? 1 : 0;
}
void bvq_structure_free(bvq_structure* s) { delete s; }

bvq_status bvq_process_parse(const char* text, bvq_process** out, bvq_result** err) {
    return run(err, [&](bvq_result&) {
        Process p = parse_process(str(text));
        if (out) *out = new bvq_process{p};
        return BVQ_OK;
    });
}
char* bvq_process_print(const bvq_process* p) { return p ? strdup(print_process(p->p).c_str()) : nullptr; }
int bvq_process_is_simple(const bvq_process* p) { return p && is_simple_process(p->p) ? 1 : 0; }
void bvq_process_free(bvq_process* p) { delete p; }
void bvq_string_free(char* s) { free(s); }

bvq_status bvq_canon(const char* structure, const bvq_options* op, bvq_result** out) {
    return run(out, [&](bvq_result& r) {
        const auto& o = opts(op);
        Structure s = parse_structure(str(structure));
        Structure c = canonicalize(s);
        if (o.json)
            r.text = dump({{"input", print(s)}, {"canonical", print(c)}, {"size", size(c)}});
        else
            r.text = print(c) + "\n";
        return BVQ_OK;
    });
}

bvq_status bvq_congruent(const char* a, const char* b, const bvq_options* op, bvq_result** out) {
    return run(out, [&](bvq_result& r) {
        const auto& o = opts(op);
        Structure x = parse_structure(str(a)), y = parse_structure(str(b));
        bool eq = congruent(x, y);
        if (o.json)
            r.text = dump({{"left", print(canonicalize(x))}, {"right", print(canonicalize(y))}, {"congruent", eq}});
        else
            r.text = eq ? "true\n" : "false\n";
        return eq ? BVQ_OK : BVQ_NO;
    });
}

namespace {

bvq_status search_result(bvq_result& r, const SearchResult& sr, const bvq_options& o) {
    if (o.json) {
        json j;
        j["status"] = sr.derivation ? "Proved" : "NotFound";
        if (sr.derivation)
            j["derivation"] = derivation_to_json(*sr.derivation);
        else
            j["exhausted"] = sr.exhausted;
        j["stats"] = stats_json(sr.stats, o);
        r.text = dump(j);
    } else if (sr.derivation) {
        r.text = "Proved\n" + listing(*sr.derivation);
    } else {
        r.text = std::string("NotFound") + (sr.exhausted ? " (budget exhausted)" : " (search space closed)") + "\n";
    }
    return sr.derivation ? BVQ_OK : BVQ_NO;
}

}  // namespace

bvq_status bvq_prove(const char* goal, const bvq_options* op, bvq_result** out) {
    return run(out, [&](bvq_result& r) {
        const auto& o = opts(op);
        Structure g = parse_structure(str(goal));
        Fragment f = o.fragment_set ? o.fragment : Fragment::down;
        return search_result(r, prove(g, f, o.budget), o);
    });
}

bvq_status bvq_derive(const char* conclusion, const char* premise, const bvq_options* op, bvq_result** out) {
    return run(out, [&](bvq_result& r) {
        const auto& o = opts(op);
        Structure c = parse_structure(str(conclusion)), p = parse_structure(str(premise));
        Fragment f = o.fragment_set ? o.fragment : Fragment::down;
        return search_result(r, derive(c, p, f, o.budget), o);
    });
}

bvq_status bvq_standardize(const char* derivation_json, const bvq_options* op, bvq_result** out) {
    return run(out, [&](bvq_result& r) {
        const auto& o = opts(op);
        Derivation d = checked(unwrap(parse_json(derivation_json)));
        StandardizeResult sr = standardize(d);
        if (o.json) {
            r.text = dump(standardize_to_json(d, sr));
        } else {
            std::ostringstream s;
            s << "before (Seq-numbers";
            for (int x : sr.seq_before) s << " " << x;
            s << ")\n" << listing(d) << "after (" << sr.method << ", Seq-numbers";
            for (int x : sr.seq_after) s << " " << x;
            s << ")\n" << listing(sr.derivation);
            r.text = s.str();
        }
        return BVQ_OK;
    });
}

bvq_status bvq_reduce(const char* derivation_json, const bvq_options* op, bvq_result** out) {
    return run(out, [&](bvq_result& r) {
        const auto& o = opts(op);
        Derivation d = relabel_left(checked(unwrap(parse_json(derivation_json))));
        if (!is_standard(d)) throw Error(ErrorCode::Precondition, "reduce needs a standard derivation");
        Derivation red = reduce(d);
        r.text = o.json ? dump(derivation_to_json(red)) : listing(red);
        return BVQ_OK;
    });
}

bvq_status bvq_classify(const char* structure, const bvq_options* op, bvq_result** out) {
    return run(out, [&](bvq_result& r) {
        const auto& o = opts(op);
        Structure s = parse_structure(str(structure));
        StructureKinds k = classify_structure(s);
        json j = {{"structure", print(canonicalize(s))},
                  {"process", k.is_process},
                  {"environment", k.is_environment},
                  {"simple", k.is_simple},
                  {"invertible", k.is_invertible},
                  {"tensorFree", k.is_tensor_free}};
        if (k.is_process) j["asProcess"] = print_process(from_structure(s));
        if (k.is_environment) j["actions"] = print_actions(env_to_actions(s));
        if (o.json) {
            r.text = dump(j);
        } else {
            std::ostringstream t;
            for (auto& [key, val] : j.items()) t << key << ": " << (val.is_string() ? val.get<std::string>() : val.dump()) << "\n";
            r.text = t.str();
        }
        return BVQ_OK;
    });
}

bvq_status bvq_compile(const char* e, const char* f, const char* alpha, const bvq_options* op, bvq_result** out) {
    return run(out, [&](bvq_result& r) {
        const auto& o = opts(op);
        Process pe = parse_process(str(e)), pf = parse_process(str(f));
        ActionSeq a = actions_normalize(parse_actions(alpha ? alpha : ""));
        Structure R = actions_to_env(actions_complement(a));
        Structure concl = canonicalize(mk_par({to_structure(pe), R}));
        Structure prem = canonicalize(to_structure(pf));
        Structure goal = canonicalize(mk_par({to_structure(pe), negate(to_structure(pf)), R}));
        json j = {{"process", print(canonicalize(to_structure(pe)))},
                  {"environment", print(R)},
                  {"conclusion", print(concl)},
                  {"premise", print(prem)},
                  {"goal", print(goal)},
                  {"targetSimple", is_simple_process(pf)}};
        if (o.json) {
            r.text = dump(j);
        } else {
            std::ostringstream t;
            for (auto& [key, val] : j.items()) t << key << ": " << (val.is_string() ? val.get<std::string>() : val.dump()) << "\n";
            r.text = t.str();
        }
        return BVQ_OK;
    });
}

bvq_status bvq_reach(const char* e, const char* f, const char* alpha, const bvq_options* op, bvq_result** out) {
    return run(out, [&](bvq_result& r) {
        const auto& o = opts(op);
        Process pe = parse_process(str(e)), pf = parse_process(str(f));
        ActionSeq a = parse_actions(alpha ? alpha : "");
        ReachOptions ro;
        ro.budget = o.budget;
        ro.via_inversion = o.via_inversion;
        ReachVerdict v = reach(pe, pf, a, ro);
        if (o.json) {
            json j = verdict_to_json(v);
            j["stats"] = stats_json(v.stats, o);
            r.text = dump(j);
        } else if (v.proved) {
            r.text = "Proved (" + v.method + ")\nenvironment: " + print(v.env) + "\nstandard derivation\n" +
                     listing(v.standard) + "LTS witness\n" + lts_listing(v.witness);
        } else {
            r.text = std::string("NotFound") + (v.exhausted ? " (budget exhausted)" : " (search space closed)") + "\n";
        }
        return v.proved ? BVQ_OK : BVQ_NO;
    });
}

bvq_status bvq_lts(const char* e, const char* f, const char* alpha, const bvq_options* op, bvq_result** out) {
    return run(out, [&](bvq_result& r) {
        const auto& o = opts(op);
        Process pe = parse_process(str(e));
        if (!f) {
            auto steps = lts_steps(pe, o.milner);
            json arr = json::array();
            std::ostringstream t;
            for (auto& s : steps) {
                arr.push_back(lts_to_json(s.tree));
                t << print_actions(s.label) << "  " << print_process(s.to) << "  (" << lts_rule_name(s.tree.rule) << ")\n";
            }
            r.text = o.json ? dump({{"from", print_process(pe)}, {"steps", arr}}) : t.str();
            return BVQ_OK;
        }
        Process pf = parse_process(str(f));
        ActionSeq a = parse_actions(alpha ? alpha : "");
        auto w = lts_reachable(pe, pf, a, o.depth, o.milner);
        if (o.json) {
            json j = {{"reachable", w.has_value()}};
            if (w) j["witness"] = lts_to_json(*w);
            r.text = dump(j);
        } else {
            r.text = w ? "reachable\n" + lts_listing(*w) : std::string("unreachable within depth ") + std::to_string(o.depth) + "\n";
        }
        return w ? BVQ_OK : BVQ_NO;
    });
}

bvq_status bvq_check(const char* document_json, const bvq_options* op, bvq_result** out) {
    return run(out, [&](bvq_result& r) {
        const auto& o = opts(op);
        json j = parse_json(document_json);
        std::vector<std::pair<std::string, std::string>> failures;
        std::string kind;
        auto check_deriv = [&](const std::string& name, const json& d, bool must_standard) {
            try {
                Derivation full = checked(d, System::full);
                if (must_standard && !is_standard(full)) failures.push_back({name, "not standard"});
            } catch (const Error& e) {
                failures.push_back({name, e.what()});
            }
        };
        auto check_lts = [&](const std::string& name, const json& t) {
            try {
                auto c = check_lts_derivation(lts_from_json(t));
                if (!c.ok) failures.push_back({name, c.where + ": " + c.reason});
            } catch (const Error& e) {
                failures.push_back({name, e.what()});
            }
        };
        if (j.contains("status")) {
            kind = "verdict";
            if (j["status"] == "Proved") {
                if (j.contains("proof")) check_deriv("proof", j["proof"], false);
                if (j.contains("derivation")) check_deriv("derivation", j["derivation"], false);
                if (j.contains("standardDerivation")) check_deriv("standardDerivation", j["standardDerivation"], true);
                if (j.contains("ltsWitness")) check_lts("ltsWitness", j["ltsWitness"]);
            }
        } else if (j.contains("steps")) {
            kind = "derivation";
            check_deriv("derivation", j, false);
        } else if (j.contains("judgment")) {
            kind = "lts";
            check_lts("lts", j);
        } else if (j.contains("after")) {
            kind = "standardization";
            check_deriv("before", j["before"], false);
            check_deriv("after", j["after"], true);
        } else {
            throw Error(ErrorCode::Parse, "unrecognised document");
        }
        if (o.json) {
            json f = json::array();
            for (auto& [k, v] : failures) f.push_back({{"part", k}, {"reason", v}});
            r.text = dump({{"kind", kind}, {"valid", failures.empty()}, {"failures", f}});
        } else {
            std::ostringstream t;
            t << (failures.empty() ? "valid " : "invalid ") << kind << "\n";
            for (auto& [k, v] : failures) t << "  " << k << ": " << v << "\n";
            r.text = t.str();
        }
        return failures.empty() ? BVQ_OK : BVQ_NO;
    });
}

bvq_status bvq_selftest(const bvq_options* op, bvq_result** out) {
    return run(out, [&](bvq_result& r) {
        const auto& o = opts(op);
        std::mt19937_64 rng(o.seed);
        std::map<std::string, std::pair<int, int>> tally;  // suite -> (runs, failures)
        std::vector<std::string> notes;
        auto note = [&](const std::string& suite, bool ok, const std::string& what) {
            auto& t = tally[suite];
            ++t.first;
            if (!ok) {
                ++t.second;
                if (notes.size() < 20) notes.push_back(suite + ": " + what);
            }
        };
        for (int k = 0; k < 200; ++k) {
            Structure s = gen::rand_structure(rng, 3);
            Structure c = canonicalize(s);
            bool ok = congruent(s, c) && canon_key(canonicalize(c)) == canon_key(c) &&
                      canon_key(negate(negate(s))) == canon_key(s) && print(canonicalize(c)) == print(c);
            note("structures", ok, print(s));
        }
        for (int k = 0; k < 20; ++k) {
            auto d = gen::rand_proof(rng, 6, 10);
            if (!d) continue;
            bool ok = check_derivation(*d, System::down).ok;
            if (ok) {
                auto sr = standardize(*d);
                ok = is_standard(sr.derivation) && congruent(sr.derivation.conclusion, d->conclusion) &&
                     congruent(sr.derivation.premise(), d->premise());
            }
            note("standardize", ok, print(d->conclusion));
        }
        for (int k = 0; k < 25; ++k) {
            Process e = gen::rand_process(rng, 1 + static_cast<int>(rng() % 6));
            std::map<std::pair<std::string, std::string>, std::pair<Process, ActionSeq>> seen;
            std::vector<std::pair<Process, ActionSeq>> frontier{{e, {Action::t()}}};
            seen[{process_key(e), "tau"}] = {e, {Action::t()}};
            for (int d = 0; d < 4; ++d) {
                std::vector<std::pair<Process, ActionSeq>> next;
                for (auto& [p, a] : frontier)
                    for (auto& t : lts_steps(p)) {
                        ActionSeq b = actions_concat(a, t.label);
                        if (seen.emplace(std::make_pair(process_key(t.to), print_actions(b)), std::make_pair(t.to, b)).second)
                            next.push_back({t.to, b});
                    }
                frontier = next;
            }
            for (auto& [key, v] : seen) {
                if (!is_simple_process(v.first)) continue;
                ReachOptions ro;
                ro.budget = o.budget;
                ReachVerdict rv = reach(e, v.first, v.second, ro);
                bool ok = rv.proved && check_lts_derivation(rv.witness).ok;
                note("reach", ok, print_process(e) + " => " + print_process(v.first) + " / " + print_actions(v.second));
            }
        }
        int fails = 0;
        for (auto& [k, v] : tally) fails += v.second;
        if (o.json) {
            json j;
            j["seed"] = o.seed;
            for (auto& [k, v] : tally) j["suites"][k] = {{"runs", v.first}, {"failures", v.second}};
            j["notes"] = notes;
            r.text = dump(j);
        } else {
            std::ostringstream t;
            t << "selftest seed " << o.seed << "\n";
            for (auto& [k, v] : tally) t << "  " << k << ": " << v.first << " runs, " << v.second << " failures\n";
            for (auto& n : notes) t << "  ! " << n << "\n";
            r.text = t.str();
        }
        return fails == 0 ? BVQ_OK : BVQ_NO;
    });
}

}  // extern "C"
