#include "bvq/json_io.hpp"

#include <unordered_map>

namespace bvq {

json derivation_to_json(const Derivation& d) {
    // ids are exported as pre-order positions in the printed conclusion, which is how a reader renumbers them
    std::vector<int> order;
    collect_ids(d.conclusion, order);
    std::unordered_map<int, int> pos;
    for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = static_cast<int>(i);
    json j;
    j["conclusion"] = print(d.conclusion);
    j["premise"] = print(d.premise());
    json steps = json::array();
    for (auto& st : d.steps) {
        json p = json::array();
        for (auto& ps : st.path) p.push_back(json::array({op_name(ps.op), ps.idx}));
        steps.push_back({{"rule", rule_name(st.rule)},
                         {"path", p},
                         {"redexBefore", st.before ? print(st.before) : ""},
                         {"redexAfter", st.after ? print(st.after) : ""},
                         {"consumedIds", [&] {
                              std::vector<int> v;
                              for (int c : st.consumed) v.push_back(pos.count(c) ? pos[c] : c);
                              return v;
                          }()}});
    }
    j["steps"] = steps;
    return j;
}

namespace {

const json& field(const json& j, const char* k) {
    if (!j.is_object() || !j.contains(k)) throw Error(ErrorCode::Parse, std::string("missing field '") + k + "'");
    return j.at(k);
}

}  // namespace

Derivation derivation_from_json(const json& j) {
    Derivation d;
    try {
        d.conclusion = prepare(parse_structure(field(j, "conclusion").get<std::string>()));
        for (auto& s : field(j, "steps")) {
            RuleInstance st;
            st.rule = rule_from_name(field(s, "rule").get<std::string>());
            for (auto& p : field(s, "path")) st.path.push_back({op_from_name(p.at(0).get<std::string>()), p.at(1).get<int>()});
            std::string b = s.value("redexBefore", ""), a = s.value("redexAfter", "");
            if (!b.empty()) st.before = parse_structure(b);
            if (!a.empty()) st.after = parse_structure(a);
            if (s.contains("consumedIds")) st.consumed = s.at("consumedIds").get<std::vector<int>>();
            d.steps.push_back(st);
        }
    } catch (const json::exception& e) {
        throw Error(ErrorCode::Parse, std::string("bad derivation JSON: ") + e.what());
    }
    return d;
}

Structure derivation_premise_from_json(const json& j) {
    if (!j.contains("premise")) return nullptr;
    return parse_structure(j.at("premise").get<std::string>());
}

json lts_to_json(const LtsNode& t) {
    json kids = json::array();
    for (auto& c : t.children) kids.push_back(lts_to_json(c));
    return {{"rule", lts_rule_name(t.rule)},
            {"judgment", {{"from", print_process(t.from)}, {"to", print_process(t.to)}, {"label", print_actions(t.label)}}},
            {"children", kids}};
}

LtsNode lts_from_json(const json& j) {
    LtsNode n;
    try {
        n.rule = lts_rule_from_name(field(j, "rule").get<std::string>());
        const json& jj = field(j, "judgment");
        n.from = parse_process(field(jj, "from").get<std::string>());
        n.to = parse_process(field(jj, "to").get<std::string>());
        n.label = parse_actions(field(jj, "label").get<std::string>());
        if (j.contains("children"))
            for (auto& c : j.at("children")) n.children.push_back(lts_from_json(c));
    } catch (const json::exception& e) {
        throw Error(ErrorCode::Parse, std::string("bad LTS JSON: ") + e.what());
    }
    return n;
}

json verdict_to_json(const ReachVerdict& v) {
    json j;
    j["status"] = v.proved ? "Proved" : "NotFound";
    if (v.proved) {
        j["proof"] = derivation_to_json(v.proof);
        j["standardDerivation"] = derivation_to_json(v.standard);
        j["ltsWitness"] = lts_to_json(v.witness);
        j["environment"] = print(v.env);
        j["method"] = v.method;
    } else {
        j["exhausted"] = v.exhausted;
    }
    j["stats"] = {{"steps", v.stats.steps}, {"visited", v.stats.visited}, {"elapsed_ms", v.stats.elapsed_ms}};
    return j;
}

json standardize_to_json(const Derivation& before, const StandardizeResult& r) {
    return {{"before", derivation_to_json(before)},
            {"after", derivation_to_json(r.derivation)},
            {"seqNumbersBefore", r.seq_before},
            {"seqNumbersAfter", r.seq_after},
            {"method", r.method},
            {"commutations", r.commutations}};
}

}  // namespace bvq
