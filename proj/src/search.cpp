#include "bvq/search.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <cstdlib>
#include <map>
#include <queue>
#include <unordered_map>

namespace bvq {

SearchBudget default_budget() {
    SearchBudget b;
    if (const char* env = std::getenv("BVQ_BUDGET")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end != env && v > 0) b.max_steps = b.max_visited = v;
    }
    return b;
}

namespace {

using Counts = std::map<std::string, std::pair<int, int>>;  // free base -> (#pos, #neg)

Counts free_counts(const Structure& s) {
    Counts c;
    std::vector<std::string> bound;
    std::function<void(const Structure&)> go = [&](const Structure& x) {
        if (x->kind == Kind::Atom) {
            if (std::find(bound.begin(), bound.end(), x->name.base) == bound.end())
                (x->name.neg ? c[x->name.base].second : c[x->name.base].first)++;
            return;
        }
        if (x->kind == Kind::Sdq) bound.push_back(x->name.base);
        for (auto& k : x->kids) go(k);
        if (x->kind == Kind::Sdq) bound.pop_back();
    };
    go(s);
    return c;
}

// Every rule keeps #pos - #neg of each free base; only ai removes atoms, pairwise.
bool counts_compatible(const Counts& state, const Counts& target) {
    for (auto& [b, pn] : state) {
        auto it = target.find(b);
        int tp = it == target.end() ? 0 : it->second.first;
        int tn = it == target.end() ? 0 : it->second.second;
        if (pn.first < tp || pn.second < tn) return false;
        if (pn.first - pn.second != tp - tn) return false;
    }
    for (auto& [b, pn] : target)
        if (!state.count(b) && (pn.first || pn.second)) return false;
    return true;
}

bool has_marked(const Structure& s, const std::unordered_set<int>& marks) {
    if (marks.empty()) return false;
    std::vector<int> ids;
    collect_ids(s, ids);
    for (int i : ids)
        if (marks.count(i)) return true;
    return false;
}

SearchResult run(const Structure& conclusion, const Structure& premise, const std::unordered_set<int>& marks,
                 Fragment f, SearchBudget b) {
    auto t0 = std::chrono::steady_clock::now();
    SearchResult res;
    Structure start = prepare(conclusion);
    std::string target = canon_key(premise);
    std::size_t target_size = size(premise);
    Counts tc = free_counts(canonicalize(premise));
    const std::set<Rule>& frag = f == Fragment::standard ? standard_fragment() : down_fragment();
    if (f == Fragment::standard && has_kind(start, Kind::CoPar))
        throw Error(ErrorCode::Precondition, "standard-fragment search needs a Tensor-free goal");

    struct Entry {
        Structure s;
        int parent;
        RuleInstance step;
    };
    std::vector<Entry> nodes;
    std::unordered_set<std::string> visited;
    using QItem = std::tuple<std::size_t, std::size_t>;  // (size, index)
    std::priority_queue<QItem, std::vector<QItem>, std::greater<>> open;

    auto finish = [&](int idx) {
        Derivation d;
        d.conclusion = start;
        std::vector<RuleInstance> st;
        for (int c = idx; nodes[c].parent >= 0; c = nodes[c].parent) st.push_back(nodes[c].step);
        std::reverse(st.begin(), st.end());
        d.steps = std::move(st);
        res.derivation = d;
    };
    auto is_goal = [&](const Structure& s) { return !has_marked(s, marks) && canon_key(s) == target; };
    auto stamp = [&] {
        res.stats.visited = visited.size();
        res.stats.elapsed_ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    };

    nodes.push_back({start, -1, {}});
    visited.insert(canon_key_marked(start, marks));
    if (is_goal(start)) {
        finish(0);
        stamp();
        return res;
    }
    if (size(start) < target_size || !counts_compatible(free_counts(start), tc)) {
        stamp();
        return res;
    }
    open.emplace(size(start), 0);
    while (!open.empty()) {
        if (res.stats.steps >= b.max_steps || visited.size() >= b.max_visited) {
            res.exhausted = true;
            break;
        }
        auto [sz, idx] = open.top();
        open.pop();
        ++res.stats.steps;
        Structure cur = nodes[idx].s;
        for (auto& inst : enumerate_instances(cur, frag, {true})) {
            const Structure& nx = inst.premise;
            if (size(nx) < target_size) continue;
            if (is_ai(inst.rule) && !counts_compatible(free_counts(nx), tc)) continue;
            std::string k = canon_key_marked(nx, marks);
            if (!visited.insert(k).second) continue;
            int id = static_cast<int>(nodes.size());
            nodes.push_back({nx, static_cast<int>(idx), inst});
            if (is_goal(nx)) {
                finish(id);
                stamp();
                return res;
            }
            open.emplace(size(nx), id);
        }
    }
    stamp();
    return res;
}

}  // namespace

SearchResult prove(const Structure& goal, Fragment f, SearchBudget b) { return run(goal, mk_one(), {}, f, b); }

SearchResult derive(const Structure& conclusion, const Structure& premise, Fragment f, SearchBudget b) {
    return run(conclusion, premise, {}, f, b);
}

SearchResult derive_consuming(const Structure& conclusion, const Structure& premise,
                              const std::unordered_set<int>& must_consume, Fragment f, SearchBudget b) {
    return run(conclusion, premise, must_consume, f, b);
}

}  // namespace bvq
