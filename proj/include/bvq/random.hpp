#pragma once
// Seeded random generators (self-test, property tests).
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "bvq/calculus.hpp"
#include "bvq/ccsr.hpp"
#include "bvq/structures.hpp"

namespace bvq::gen {

using namespace bvq;

inline Structure rand_structure(std::mt19937_64& rng, int depth, bool tensor = true, bool sdq = true,
                                const std::vector<std::string>& names = {"a", "b", "c", "d"}) {
    std::uniform_int_distribution<int> pick(0, 9);
    int r = depth <= 0 ? 0 : pick(rng);
    auto atom = [&] {
        std::uniform_int_distribution<std::size_t> n(0, names.size() - 1);
        std::bernoulli_distribution neg(0.5);
        return mk_atom(names[n(rng)], neg(rng));
    };
    if (r <= 2) return r == 0 && depth > 0 && pick(rng) == 0 ? mk_one() : atom();
    std::uniform_int_distribution<int> arity(2, 3);
    auto kids = [&] {
        std::vector<Structure> v;
        int n = arity(rng);
        for (int k = 0; k < n; ++k) v.push_back(rand_structure(rng, depth - 1, tensor, sdq, names));
        return v;
    };
    switch (r) {
        case 3: case 4: return mk_op(Kind::Par, kids());
        case 5: case 6: return mk_op(Kind::Seq, kids());
        case 7: if (tensor) return mk_op(Kind::CoPar, kids()); return mk_op(Kind::Par, kids());
        case 8: if (sdq) { std::uniform_int_distribution<std::size_t> n(0, names.size() - 1); return mk_sdq(names[n(rng)], rand_structure(rng, depth - 1, tensor, sdq, names)); }
            return atom();
        default: if (tensor) return mk_not(rand_structure(rng, depth - 1, tensor, sdq, names)); return atom();
    }
}

// All paths into a canonical tree (the root included).
inline void all_paths(const Structure& s, Path& cur, std::vector<Path>& out) {
    out.push_back(cur);
    for (std::size_t k = 0; k < s->kids.size(); ++k) {
        Kind op = s->kind;
        cur.push_back({op, static_cast<int>(k)});
        all_paths(s->kids[k], cur, out);
        cur.pop_back();
    }
}

// Forward step on a Tensor-free structure: introduce an interacting pair, or undo q/u
// (read top-down). Returns the new, lower structure or null when nothing applied.
inline Structure forward_step(std::mt19937_64& rng, const Structure& s0, const std::vector<std::string>& names) {
    Structure s = canonicalize(s0);
    std::vector<Path> paths;
    Path cur;
    all_paths(s, cur, paths);
    std::uniform_int_distribution<int> kind(0, 9);
    auto pick = [&](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };
    int k = kind(rng);
    if (k <= 4) {
        const Path& p = paths[pick(paths.size())];
        Structure x = subterm_at(s, p);
        std::string n = names[pick(names.size())];
        bool neg = pick(2);
        Structure pair = mk_par({mk_atom(n, neg), mk_atom(n, !neg)});
        if (pick(4) == 0) pair = mk_sdq(n, pair);
        Structure repl;
        switch (pick(3)) {
            case 0: repl = mk_par({x, pair}); break;
            case 1: repl = mk_seq({x, pair}); break;
            default: repl = mk_seq({pair, x}); break;
        }
        return canonicalize(replace_at(s, p, repl));
    }
    if (k <= 7) {
        // <..;A;B;..> becomes <..;[<R;T>;<U;V>];..> with A=[R;U], B=[T;V]
        std::vector<Path> seqs;
        for (auto& p : paths)
            if (subterm_at(s, p)->kind == Kind::Seq) seqs.push_back(p);
        if (seqs.empty()) return nullptr;
        const Path& p = seqs[pick(seqs.size())];
        Structure q = subterm_at(s, p);
        std::size_t i = pick(q->kids.size() - 1);
        auto halves = [&](const Structure& a, Structure& l, Structure& r) {
            std::vector<Structure> kids = a->kind == Kind::Par ? a->kids : std::vector<Structure>{a};
            std::vector<Structure> x, y;
            for (auto& c : kids) (pick(2) ? x : y).push_back(c);
            l = mk_par(x);
            r = mk_par(y);
        };
        Structure R, U, T, V;
        halves(q->kids[i], R, U);
        halves(q->kids[i + 1], T, V);
        std::vector<Structure> kids(q->kids.begin(), q->kids.begin() + i);
        kids.push_back(mk_par({mk_seq({R, T}), mk_seq({U, V})}));
        kids.insert(kids.end(), q->kids.begin() + i + 2, q->kids.end());
        return canonicalize(replace_at(s, p, mk_seq(kids)));
    }
    // fo a.[R;T] becomes [fo a.R; fo a.T]
    std::vector<Path> sdqs;
    for (auto& p : paths) {
        Structure q = subterm_at(s, p);
        if (q->kind == Kind::Sdq && q->kids[0]->kind == Kind::Par) sdqs.push_back(p);
    }
    if (sdqs.empty()) return nullptr;
    const Path& p = sdqs[pick(sdqs.size())];
    Structure q = subterm_at(s, p);
    std::vector<Structure> x, y;
    for (auto& c : q->kids[0]->kids) (pick(2) ? x : y).push_back(c);
    return canonicalize(replace_at(s, p, mk_par({mk_sdq(q->name.base, mk_par(x)), mk_sdq(q->name.base, mk_par(y))})));
}

// Random Tensor-free proof built top-down from 1, then justified bottom-up step by step.
inline std::optional<Derivation> rand_proof(std::mt19937_64& rng, int max_steps, std::size_t max_atoms,
                                            const std::vector<std::string>& names = {"a", "b", "c"}) {
    std::vector<Structure> chain{mk_one()};
    int n = std::uniform_int_distribution<int>(1, max_steps)(rng);
    for (int t = 0; t < 4 * max_steps && static_cast<int>(chain.size()) <= n; ++t) {
        Structure nx = forward_step(rng, chain.back(), names);
        if (!nx || atom_count(nx) > max_atoms) continue;
        if (canon_key(nx) == canon_key(chain.back())) continue;
        chain.push_back(nx);
    }
    Derivation d;
    d.conclusion = prepare(chain.back());
    Structure cur = d.conclusion;
    static const std::set<Rule> frag{Rule::ai_down, Rule::q_down, Rule::u_down};
    for (int k = static_cast<int>(chain.size()) - 2; k >= 0; --k) {
        auto st = find_step(cur, chain[k], frag, false);
        if (!st) return std::nullopt;
        d.steps.push_back(*st);
        cur = st->premise;
    }
    return d;
}

inline Process rand_process(std::mt19937_64& rng, int budget, const std::vector<std::string>& names = {"a", "b"}) {
    auto pick = [&](int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); };
    if (budget <= 1) return p_zero();
    int c = pick(10);
    if (c < 5) return p_prefix(Name{names[pick(static_cast<int>(names.size()))], pick(2) == 1}, rand_process(rng, budget - 1, names));
    if (c < 8 && budget >= 3) {
        int l = 1 + pick(budget - 2);
        return p_par(rand_process(rng, l, names), rand_process(rng, budget - 1 - l, names));
    }
    return p_nu(names[pick(static_cast<int>(names.size()))], rand_process(rng, budget - 1, names));
}

}  // namespace bvq::gen
