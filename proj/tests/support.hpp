#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include <doctest.h>

#include "acirc/acirc.hpp"

namespace testsupport {

using namespace acirc;

inline std::string fixture_path(const std::string& name) {
    return std::string(FIXTURES_DIR) + "/" + name;
}

inline std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE_MESSAGE(bool(in), ("cannot open " + path).c_str());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline Circuit load_circuit(const std::string& fixture) {
    return parse_circuit(slurp(fixture_path(fixture)));
}

// Random consistent circuit with biased op mix; retries on inconsistency or
// blow-up so callers always get something interpretable.
inline Circuit random_circuit(Rng& rng, int r, int n, int internal_ops, bool allow_div) {
    for (int attempt = 0; attempt < 64; ++attempt) {
        CircuitBuilder b(r, n, "rand");
        std::vector<int> pool;
        for (int k = 1; k <= r; ++k) pool.push_back(b.param(k));
        for (int i = 1; i <= n; ++i) pool.push_back(b.input(i));
        int scalars = 1 + static_cast<int>(rng.below(3));
        for (int s = 0; s < scalars; ++s) pool.push_back(b.scalar(rat(rng.range(-3, 3))));
        int last = pool.back();
        for (int k = 0; k < internal_ops; ++k) {
            int lhs = pool[std::size_t(rng.below(pool.size()))];
            int rhs = pool[std::size_t(rng.below(pool.size()))];
            std::uint64_t dice = rng.below(100);
            OpKind kind;
            if (dice < 35) kind = OpKind::Add;
            else if (dice < 55) kind = OpKind::Sub;
            else if (dice < 90 || !allow_div) kind = OpKind::Mul;
            else kind = OpKind::Div;
            last = b.op(kind, lhs, rhs);
            pool.push_back(last);
        }
        b.output(last);
        if (rng.below(3) == 0) b.output(pool[std::size_t(rng.below(pool.size()))]);
        Circuit c = b.take();
        try {
            interpret(c, EvalOptions{50'000});
            return c;
        } catch (const InconsistentCircuit&) {
        } catch (const BudgetExceeded&) {
        }
    }
    throw std::runtime_error("random_circuit failed to produce a consistent circuit");
}

inline bool finals_equal(const Circuit& a, const Circuit& b, const EvalOptions& opts = {}) {
    Interpretation ia = interpret(a, opts), ib = interpret(b, opts);
    if (ia.finals.size() != ib.finals.size()) return false;
    for (std::size_t i = 0; i < ia.finals.size(); ++i)
        if (!ia.finals[i].equal(ib.finals[i])) return false;
    return true;
}

// Remaps variable ids in a polynomial (test-side glue when two contexts
// number the same symbols differently).
inline SparsePoly rename_vars(const SparsePoly& p, const std::map<int, int>& mapping) {
    SparsePoly out;
    for (const auto& [m, c] : p.terms()) {
        Monomial::Exps e;
        for (const auto& [v, k] : m.exponents()) {
            auto it = mapping.find(v);
            e.emplace_back(it == mapping.end() ? v : it->second, k);
        }
        out.add_term(Monomial(std::move(e)), c);
    }
    return out;
}

} // namespace testsupport
