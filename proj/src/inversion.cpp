#include <algorithm>
#include <functional>
#include <map>
#include <unordered_map>

#include "bvq/bridge.hpp"
#include "bvq/search.hpp"

namespace bvq {

namespace {

using Chain = std::vector<Structure>;  // bottom to top, consecutive entries one rule apart (or congruent)

std::vector<Structure> par_kids(const Structure& s) {
    if (s->kind == Kind::One) return {};
    if (s->kind == Kind::Par) return s->kids;
    return {s};
}

Chain chain_of(const Derivation& d) {
    Chain c{d.conclusion};
    for (auto& st : d.steps) c.push_back(st.premise);
    return c;
}

Derivation rebuild(const Chain& c) {
    Derivation d;
    d.conclusion = prepare(c.front());
    Structure cur = d.conclusion;
    for (std::size_t j = 1; j < c.size(); ++j) {
        if (canon_key(cur) == canon_key(c[j])) continue;
        auto st = find_step(cur, c[j], down_fragment(), false);
        if (!st) throw Error(ErrorCode::Internal, "inversion: cannot justify " + print(cur) + " from " + print(c[j]));
        d.steps.push_back(*st);
        cur = st->premise;
    }
    return d;
}

Chain lift(const Chain& c, const std::function<Structure(const Structure&)>& ctx) {
    Chain out;
    for (auto& s : c) out.push_back(canonicalize(ctx(s)));
    return out;
}

// States Q with a down derivation Q |- P, found breadth-first.
struct Below {
    std::vector<Structure> states;
    std::vector<int> parent;
    std::size_t limit;

    Below(const Structure& P, std::size_t lim) : limit(lim) {
        std::unordered_map<std::string, int> seen;
        Structure p = prepare(P);
        states.push_back(p);
        parent.push_back(-1);
        seen[canon_key(p)] = 0;
        for (std::size_t q = 0; q < states.size() && states.size() < limit; ++q) {
            for (auto& inst : enumerate_instances(states[q], down_fragment(), EnumOptions{true})) {
                std::string k = canon_key(inst.premise);
                if (seen.count(k)) continue;
                seen[k] = static_cast<int>(states.size());
                states.push_back(inst.premise);
                parent.push_back(static_cast<int>(q));
                if (states.size() >= limit) break;
            }
        }
    }
    Chain path_to(int q) const {
        Chain c;
        for (int x = q; x >= 0; x = parent[x]) c.push_back(states[x]);
        std::reverse(c.begin(), c.end());
        return c;
    }
};

SearchBudget small(SearchBudget b) {
    b.max_steps = std::min<std::size_t>(b.max_steps, 20000);
    b.max_visited = std::min<std::size_t>(b.max_visited, 20000);
    return b;
}

std::optional<Derivation> try_prove(const Structure& g, SearchBudget b) {
    return prove(g, Fragment::down, small(b)).derivation;
}

Chain inv(const Structure& N, const Structure& P, const Derivation& proof, SearchBudget b);

}  // namespace

bool is_co_invertible(const Structure& t) { return is_invertible_structure(negate(t)); }

SplitResult split(const Derivation& proof, SplitShape shape, const Structure& x, const Structure& y,
                  const Structure& P, SearchBudget b) {
    auto c = check_derivation(proof, System::down);
    if (!c.ok) throw Error(ErrorCode::Precondition, "split: invalid proof: " + c.reason);
    SplitResult r;
    if (shape == SplitShape::atom) {
        // ~R1 |- [R0;P]
        auto d = derive(mk_par({x, P}), negate(y), Fragment::down, small(b));
        if (!d.derivation) throw Error(ErrorCode::Budget, "split: atom shape not found within budget");
        r.link = *d.derivation;
        return r;
    }
    Below below(P, 4000);
    for (std::size_t q = 0; q < below.states.size(); ++q) {
        const Structure& Q = below.states[q];
        if (shape == SplitShape::fo) {
            if (x->kind != Kind::Atom) throw Error(ErrorCode::Invalid, "split: fo shape needs a binder atom");
            std::string a = x->name.base;
            Structure T;
            if (Q->kind == Kind::Sdq && Q->name.base == a)
                T = Q->kids[0];
            else if (Q->kind == Kind::Sdq && !occurs_free(a, Q))
                T = rename_free(Q->kids[0], Q->name.base, a);
            else if (!occurs_free(a, Q))
                T = Q;
            else
                continue;
            auto pr = try_prove(mk_par({y, T}), b);
            if (!pr) continue;
            r.parts = {T};
            r.link = rebuild(below.path_to(static_cast<int>(q)));
            r.proofs = {*pr};
            return r;
        }
        std::vector<Structure> kids = par_kids(Q);
        if (shape == SplitShape::seq) {
            if (Q->kind != Kind::Seq) {
                // <P1;1> and <1;P2> degenerate splits
                for (int side = 0; side < 2; ++side) {
                    Structure P1 = side == 0 ? Q : mk_one(), P2 = side == 0 ? mk_one() : Q;
                    auto p1 = try_prove(mk_par({x, P1}), b);
                    if (!p1) continue;
                    auto p2 = try_prove(mk_par({y, P2}), b);
                    if (!p2) continue;
                    r.parts = {P1, P2};
                    r.link = rebuild(below.path_to(static_cast<int>(q)));
                    r.proofs = {*p1, *p2};
                    return r;
                }
                continue;
            }
            for (std::size_t cut = 0; cut <= Q->kids.size(); ++cut) {
                std::vector<Structure> l(Q->kids.begin(), Q->kids.begin() + cut), rr(Q->kids.begin() + cut, Q->kids.end());
                Structure P1 = mk_seq(l), P2 = mk_seq(rr);
                auto p1 = try_prove(mk_par({x, P1}), b);
                if (!p1) continue;
                auto p2 = try_prove(mk_par({y, P2}), b);
                if (!p2) continue;
                r.parts = {P1, P2};
                r.link = rebuild(below.path_to(static_cast<int>(q)));
                r.proofs = {*p1, *p2};
                return r;
            }
            continue;
        }
        // copar: [P1;P2] |- P
        if (kids.size() > 12) continue;
        std::size_t n = kids.size();
        for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
            std::vector<Structure> l, rr;
            for (std::size_t k = 0; k < n; ++k) ((mask >> k) & 1 ? l : rr).push_back(kids[k]);
            Structure P1 = mk_par(l), P2 = mk_par(rr);
            auto p1 = try_prove(mk_par({x, P1}), b);
            if (!p1) continue;
            auto p2 = try_prove(mk_par({y, P2}), b);
            if (!p2) continue;
            r.parts = {P1, P2};
            r.link = rebuild(below.path_to(static_cast<int>(q)));
            r.proofs = {*p1, *p2};
            return r;
        }
    }
    (void)proof;
    throw Error(ErrorCode::Budget, "split: no split found within budget");
}

namespace {

Chain inv(const Structure& N, const Structure& P, const Derivation& proof, SearchBudget b) {
    Structure t = canonicalize(negate(N));
    switch (N->kind) {
        case Kind::One: {
            Chain c = chain_of(proof);
            c.front() = P;
            return c;
        }
        case Kind::Atom:
        case Kind::Par: {
            auto s = split(proof, SplitShape::atom, N, mk_one(), P, b);
            (void)s;
            auto d = derive(P, t, Fragment::down, small(b));
            if (!d.derivation) throw Error(ErrorCode::Budget, "invert: atom case not found within budget");
            return chain_of(*d.derivation);
        }
        case Kind::CoPar: {
            Structure A = N->kids[0];
            Structure B = mk_copar(std::vector<Structure>(N->kids.begin() + 1, N->kids.end()));
            auto s = split(proof, SplitShape::copar, A, B, P, b);
            Chain c = chain_of(s.link);
            Chain c1 = inv(A, s.parts[0], s.proofs[0], b);
            Chain c2 = inv(B, s.parts[1], s.proofs[1], b);
            Structure P2 = s.parts[1];
            Structure t1 = canonicalize(negate(A));
            for (auto& x : lift(c1, [&](const Structure& z) { return mk_par({z, P2}); })) c.push_back(x);
            for (auto& x : lift(c2, [&](const Structure& z) { return mk_par({t1, z}); })) c.push_back(x);
            return c;
        }
        case Kind::Sdq: {
            std::string a = N->name.base;
            auto s = split(proof, SplitShape::fo, mk_atom(a), N->kids[0], P, b);
            Chain c = chain_of(s.link);
            Chain c1 = inv(canonicalize(N->kids[0]), s.parts[0], s.proofs[0], b);
            for (auto& x : lift(c1, [&](const Structure& z) { return mk_sdq(a, z); })) c.push_back(x);
            return c;
        }
        default: throw Error(ErrorCode::Precondition, "invert: structure outside the invertible grammar");
    }
}

}  // namespace

Derivation invert(const Structure& t, const Derivation& proof, SearchBudget b) {
    if (!is_co_invertible(t)) throw Error(ErrorCode::Precondition, "invert: negation of t is not invertible");
    auto ck = check_derivation(proof, System::down);
    if (!ck.ok) throw Error(ErrorCode::Precondition, "invert: invalid proof: " + ck.reason);
    if (proof.premise()->kind != Kind::One) throw Error(ErrorCode::Precondition, "invert: not a proof");
    Structure N = canonicalize(negate(t));
    Structure C = canonicalize(proof.conclusion);
    std::vector<Structure> rest = par_kids(C);
    for (auto& n : par_kids(N)) {
        std::string k = canon_key(n);
        auto it = std::find_if(rest.begin(), rest.end(), [&](const Structure& z) { return canon_key(z) == k; });
        if (it == rest.end()) throw Error(ErrorCode::Precondition, "invert: conclusion does not contain negate(t)");
        rest.erase(it);
    }
    Structure P = canonicalize(mk_par(rest));
    Derivation d = rebuild(inv(N, P, proof, b));
    auto c2 = check_derivation(d, System::down);
    if (!c2.ok || !congruent(d.premise(), t) || !congruent(d.conclusion, P))
        throw Error(ErrorCode::Internal, "invert: assembled derivation does not validate");
    return d;
}

}  // namespace bvq
