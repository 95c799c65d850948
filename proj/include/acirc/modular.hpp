#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "acirc/circuit.hpp"
#include "acirc/rng.hpp"

namespace acirc {

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

inline std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
    std::uint64_t acc = 1 % m;
    base %= m;
    while (exp) {
        if (exp & 1u) acc = mulmod(acc, base, m);
        base = mulmod(base, base, m);
        exp >>= 1u;
    }
    return acc;
}

inline std::uint64_t invmod(std::uint64_t a, std::uint64_t p) {
    return powmod(a, p - 2, p); // p prime
}

// Miller-Rabin with `rounds` random bases.
inline bool miller_rabin(std::uint64_t n, int rounds, Rng& rng) {
    if (n < 2) return false;
    for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull}) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1u) == 0) {
        d >>= 1u;
        ++s;
    }
    for (int i = 0; i < rounds; ++i) {
        std::uint64_t a = 2 + rng.below(n - 3);
        std::uint64_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int j = 1; j < s; ++j) {
            x = mulmod(x, x, n);
            if (x == n - 1) { witness = false; break; }
        }
        if (witness) return false;
    }
    return true;
}

// Random probable prime in [2^61, 2^62), 40 Miller-Rabin rounds.
inline std::uint64_t random_prime62(Rng& rng) {
    for (;;) {
        std::uint64_t c = (1ull << 61) | rng.below(1ull << 61) | 1ull;
        if (miller_rabin(c, 40, rng)) return c;
    }
}

inline std::uint64_t rational_mod(const Rational& q, std::uint64_t p) {
    std::uint64_t num = mpz_fdiv_ui(q.get_num().get_mpz_t(), p);
    std::uint64_t den = mpz_fdiv_ui(q.get_den().get_mpz_t(), p);
    if (den == 0) throw DivisionByZero(0); // scalar denominator hit the prime
    return mulmod(num, invmod(den, p), p);
}

inline std::uint64_t integer_mod(const Integer& v, std::uint64_t p) {
    return mpz_fdiv_ui(v.get_mpz_t(), p);
}

// Evaluates every node of `c` modulo prime p at the given residue assignment.
// Throws DivisionByZero(node) when a denominator vanishes mod p at this point.
inline std::vector<std::uint64_t> eval_mod(const Circuit& c, std::uint64_t p,
                                           const std::vector<std::uint64_t>& params,
                                           const std::vector<std::uint64_t>& inputs) {
    if (static_cast<int>(params.size()) != c.r || static_cast<int>(inputs.size()) != c.n)
        throw ArityMismatch("eval_mod needs full assignments");
    std::vector<std::uint64_t> val(c.nodes.size());
    for (std::size_t i = 0; i < c.nodes.size(); ++i) {
        const Node& nd = c.nodes[i];
        switch (nd.kind) {
        case OpKind::Scalar:
            try {
                val[i] = rational_mod(nd.scalar, p);
            } catch (const DivisionByZero&) {
                throw DivisionByZero(nd.id);
            }
            break;
        case OpKind::Param: val[i] = params[std::size_t(nd.index - 1)] % p; break;
        case OpKind::Input: val[i] = inputs[std::size_t(nd.index - 1)] % p; break;
        default: {
            std::uint64_t a = val[std::size_t(c.node_pos(nd.lhs))];
            std::uint64_t b = val[std::size_t(c.node_pos(nd.rhs))];
            switch (nd.kind) {
            case OpKind::Add: val[i] = a + b >= p ? a + b - p : a + b; break;
            case OpKind::Sub: val[i] = a >= b ? a - b : a + p - b; break;
            case OpKind::Mul: val[i] = mulmod(a, b, p); break;
            case OpKind::Div:
                if (b == 0) throw DivisionByZero(nd.id);
                val[i] = mulmod(a, invmod(b, p), p);
                break;
            default: break;
            }
        }
        }
    }
    return val;
}

inline std::vector<std::uint64_t> eval_mod_outputs(const Circuit& c, std::uint64_t p,
                                                   const std::vector<std::uint64_t>& params,
                                                   const std::vector<std::uint64_t>& inputs) {
    auto val = eval_mod(c, p, params, inputs);
    std::vector<std::uint64_t> out;
    out.reserve(c.outputs.size());
    for (int id : c.outputs) out.push_back(val[std::size_t(c.node_pos(id))]);
    return out;
}

} // namespace acirc
