#pragma once

#include <array>
#include <optional>
#include <unordered_map>
#include <vector>

#include "acirc/identity.hpp"
#include "acirc/semantics.hpp"

namespace acirc {

namespace detail {

// Union-find over node positions.
class Merge {
public:
    explicit Merge(std::size_t n) : parent_(n) {
        for (std::size_t i = 0; i < n; ++i) parent_[i] = i;
    }
    std::size_t find(std::size_t x) {
        while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
        return x;
    }
    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (a > b) std::swap(a, b); // smallest position (= smallest id) survives
        parent_[b] = a;
    }

private:
    std::vector<std::size_t> parent_;
};

// Groups nodes with equal exact values. Polynomial values are grouped by
// canonical form; proper fractions (rare) are compared pairwise by
// cross-multiplication, since their normal form is not unique.
inline Merge group_equal_exact(const std::vector<RatFunc>& values) {
    Merge merge(values.size());
    std::unordered_map<std::size_t, std::vector<std::size_t>> poly_buckets;
    std::vector<std::size_t> fractions;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (values[i].is_polynomial()) poly_buckets[values[i].num().hash()].push_back(i);
        else fractions.push_back(i);
    }
    for (auto& [h, bucket] : poly_buckets)
        for (std::size_t k = 1; k < bucket.size(); ++k)
            for (std::size_t j = 0; j < k; ++j)
                if (values[bucket[k]].num() == values[bucket[j]].num()) {
                    merge.unite(bucket[j], bucket[k]);
                    break;
                }
    for (std::size_t f : fractions)
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (i == f) continue;
            if (merge.find(i) == merge.find(f)) continue;
            if (values[f].equal(values[i])) merge.unite(i, f);
        }
    return merge;
}

// Modular fallback above the term budget: signatures at one random point per
// prime, three independent 62-bit primes. Evaluation failures make a node
// unmergeable (conservative).
inline Merge group_equal_modular(const Circuit& c, Rng& rng) {
    constexpr int kPrimes = 3;
    std::vector<std::array<std::uint64_t, kPrimes>> sig(c.nodes.size());
    std::vector<bool> failed(c.nodes.size(), false);
    for (int t = 0; t < kPrimes; ++t) {
        std::uint64_t p = random_prime62(rng);
        std::vector<std::uint64_t> params(std::size_t(c.r)), inputs(std::size_t(c.n));
        for (auto& v : params) v = rng.below(p);
        for (auto& v : inputs) v = rng.below(p);
        std::vector<std::uint64_t> val(c.nodes.size(), 0);
        for (std::size_t i = 0; i < c.nodes.size(); ++i) {
            const Node& nd = c.nodes[i];
            switch (nd.kind) {
            case OpKind::Scalar: {
                std::uint64_t den = mpz_fdiv_ui(nd.scalar.get_den().get_mpz_t(), p);
                if (den == 0) { failed[i] = true; break; }
                val[i] = mulmod(mpz_fdiv_ui(nd.scalar.get_num().get_mpz_t(), p), invmod(den, p), p);
                break;
            }
            case OpKind::Param: val[i] = params[std::size_t(nd.index - 1)]; break;
            case OpKind::Input: val[i] = inputs[std::size_t(nd.index - 1)]; break;
            default: {
                std::size_t l = std::size_t(c.node_pos(nd.lhs)), r = std::size_t(c.node_pos(nd.rhs));
                if (failed[l] || failed[r]) { failed[i] = true; break; }
                std::uint64_t a = val[l], b = val[r];
                switch (nd.kind) {
                case OpKind::Add: val[i] = a + b >= p ? a + b - p : a + b; break;
                case OpKind::Sub: val[i] = a >= b ? a - b : a + p - b; break;
                case OpKind::Mul: val[i] = mulmod(a, b, p); break;
                case OpKind::Div:
                    if (b == 0) failed[i] = true;
                    else val[i] = mulmod(a, invmod(b, p), p);
                    break;
                default: break;
                }
            }
            }
            sig[i][std::size_t(t)] = val[i];
        }
    }
    Merge merge(c.nodes.size());
    std::map<std::array<std::uint64_t, kPrimes>, std::size_t> first_seen;
    for (std::size_t i = 0; i < c.nodes.size(); ++i) {
        if (failed[i]) continue;
        auto [it, inserted] = first_seen.emplace(sig[i], i);
        if (!inserted) merge.unite(it->second, i);
    }
    return merge;
}

inline Circuit rebuild_merged(const Circuit& c, Merge& merge) {
    std::vector<int> rep(c.nodes.size());
    for (std::size_t i = 0; i < c.nodes.size(); ++i) rep[i] = c.nodes[merge.find(i)].id;
    Circuit out;
    out.name = c.name;
    out.r = c.r;
    out.n = c.n;
    for (std::size_t i = 0; i < c.nodes.size(); ++i) {
        if (rep[i] != c.nodes[i].id) continue; // merged away
        Node nd = c.nodes[i];
        if (!is_leaf(nd.kind)) {
            nd.lhs = rep[std::size_t(c.node_pos(nd.lhs))];
            nd.rhs = rep[std::size_t(c.node_pos(nd.rhs))];
        }
        out.nodes.push_back(nd);
    }
    for (int id : c.outputs) out.outputs.push_back(rep[std::size_t(c.node_pos(id))]);
    validate_circuit(out);
    return out;
}

} // namespace detail

// Semantic deduplication: afterwards no two distinct nodes compute the same
// intermediate result, final results are unchanged, and the smallest node id
// of each equivalence class survives. Exact comparison within the term
// budget; above it, probabilistic modular comparison (may miss merges, never
// merges unequal nodes up to three independent 62-bit primes).
inline Circuit reduce(const Circuit& c, const EvalOptions& opts = {},
                      std::optional<std::uint64_t> seed = std::nullopt) {
    try {
        Interpretation interp = interpret(c, opts); // throws on inconsistency
        detail::Merge merge = detail::group_equal_exact(interp.values);
        return detail::rebuild_merged(c, merge);
    } catch (const BudgetExceeded&) {
        Rng rng(seed ? *seed : Rng::entropy_seed());
        detail::Merge merge = detail::group_equal_modular(c, rng);
        return detail::rebuild_merged(c, merge);
    }
}

// Composition: c2's inputs are fed by c1's outputs. mapping[i-1] is the
// 1-based position in c1's output list feeding input i of c2. The result has
// c1's inputs and c2's outputs; consistency is re-checked.
inline Circuit join(const Circuit& c1, const Circuit& c2, const std::vector<int>& mapping,
                    const EvalOptions& opts = {}) {
    if (c1.r != c2.r) throw ArityMismatch("join requires a shared parameter count");
    if (static_cast<int>(mapping.size()) != c2.n)
        throw ArityMismatch("join mapping must cover all " + std::to_string(c2.n) +
                            " inputs of the second circuit");
    for (int pos : mapping)
        if (pos < 1 || pos > static_cast<int>(c1.outputs.size()))
            throw ArityMismatch("join mapping position " + std::to_string(pos) +
                                " outside the first circuit's outputs");

    CircuitBuilder b(c1.r, c1.n, "join");
    std::vector<int> base_feed;
    for (int i = 1; i <= c1.n; ++i) base_feed.push_back(b.input(i));
    auto map1 = b.splice(c1, base_feed);
    std::vector<int> feed;
    feed.reserve(mapping.size());
    for (int pos : mapping) feed.push_back(map1.at(c1.outputs[std::size_t(pos - 1)]));
    auto map2 = b.splice(c2, feed);
    for (int out : c2.outputs) b.output(map2.at(out));
    Circuit joined = b.take();
    interpret(joined, opts); // consistency check
    return joined;
}

// Drops nodes that no output depends on.
inline Circuit prune_unreachable(const Circuit& c) {
    std::vector<bool> live(c.nodes.size(), false);
    std::vector<int> stack = c.outputs;
    while (!stack.empty()) {
        int id = stack.back();
        stack.pop_back();
        std::size_t pos = std::size_t(c.node_pos(id));
        if (live[pos]) continue;
        live[pos] = true;
        if (!is_leaf(c.nodes[pos].kind)) {
            stack.push_back(c.nodes[pos].lhs);
            stack.push_back(c.nodes[pos].rhs);
        }
    }
    Circuit out;
    out.name = c.name;
    out.r = c.r;
    out.n = c.n;
    out.outputs = c.outputs;
    for (std::size_t i = 0; i < c.nodes.size(); ++i)
        if (live[i]) out.nodes.push_back(c.nodes[i]);
    validate_circuit(out);
    return out;
}

// Rewrites c by joining gamma in at the nodes P (gamma's input k is fed by
// node P[k]); the original outputs and final results are unchanged. gamma
// must be totally division-free, so the rewriting is by valid polynomial
// identities only. Reduction runs afterwards.
inline Circuit broadcast(const Circuit& c, const std::vector<int>& P, const Circuit& gamma,
                         const EvalOptions& opts = {},
                         std::optional<std::uint64_t> seed = std::nullopt) {
    if (gamma.r != c.r) throw ArityMismatch("broadcast requires a shared parameter count");
    if (static_cast<int>(P.size()) != gamma.n)
        throw ArityMismatch("broadcast needs one target node per gamma input");
    if (division_class(gamma, opts) != DivisionClass::TotallyDivisionFree)
        throw ValidationError("broadcast requires a totally division-free circuit");

    CircuitBuilder b(c.r, c.n, c.name);
    std::vector<int> base_feed;
    for (int i = 1; i <= c.n; ++i) base_feed.push_back(b.input(i));
    auto map1 = b.splice(c, base_feed);
    std::vector<int> feed;
    for (int id : P) feed.push_back(map1.at(id));
    b.splice(gamma, feed);
    for (int out : c.outputs) b.output(map1.at(out));
    Circuit pasted = b.take();
    return prune_unreachable(reduce(pasted, opts, seed));
}

} // namespace acirc
