#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "acirc/identity.hpp"
#include "acirc/modular.hpp"
#include "acirc/semantics.hpp"

namespace acirc {

// Chain of division-free circuits, each with no parameters and one input T.
// Valid iff level j computes the falling factorial prod over 0 <= j' < 2^j
// of (T - j').
struct PochChain {
    std::vector<Circuit> levels; // Gamma_0 .. Gamma_n

    int depth() const { return static_cast<int>(levels.size()) - 1; }
};

namespace detail {

// Shift circuit mu_j: T - 2^(j-1), the constant built by repeated doubling.
// Returns the node computing the shifted input inside `b`.
inline int shift_node(CircuitBuilder& b, int input_node, int level) {
    int c = b.scalar(1);
    for (int i = 1; i < level; ++i) c = b.add(c, c);
    return b.op(OpKind::Sub, input_node, c);
}

} // namespace detail

// The doubling construction: from a claimed Gamma_{j-1} build the circuit
// computing Gamma_{j-1}(T) * Gamma_{j-1}(T - 2^(j-1)).
inline Circuit poch_double(const Circuit& gamma_prev, int level) {
    if (gamma_prev.r != 0 || gamma_prev.n != 1 || gamma_prev.outputs.size() != 1)
        throw ArityMismatch("chain circuits must have no parameters, input T and one output");
    CircuitBuilder b(0, 1, "poch_" + std::to_string(level));
    int t = b.input(1);
    auto left = b.splice(gamma_prev, {t});
    int shifted = detail::shift_node(b, t, level);
    auto right = b.splice(gamma_prev, {shifted});
    b.output(b.mul(left.at(gamma_prev.outputs[0]), right.at(gamma_prev.outputs[0])));
    return b.take();
}

// Certified chain for T^(falling 2^j), j = 0..n: Gamma_0 is the identity on
// T, every later level is the doubling construction applied to its
// predecessor.
inline PochChain gen_chain(int n) {
    if (n < 0 || n > 16) throw BudgetExceeded("chain generation is capped at n = 16");
    PochChain chain;
    {
        CircuitBuilder b(0, 1, "poch_0");
        b.output(b.input(1));
        chain.levels.push_back(b.take());
    }
    for (int j = 1; j <= n; ++j) chain.levels.push_back(poch_double(chain.levels.back(), j));
    return chain;
}

struct PochWitness {
    int level = 0;
    std::uint64_t prime = 0;
    Integer point;
    std::uint64_t claimed = 0;  // value of the claimed Gamma_j
    std::uint64_t expected = 0; // value of the doubling construction
};

struct LevelCheck {
    int level = 0;
    std::uint64_t prime = 0;
    int points = 0;
    bool ok = true;
};

struct VerifyReport {
    bool accepted = false;
    int levels_checked = 0;
    std::string reject_reason;
    std::optional<PochWitness> witness;
    std::vector<LevelCheck> transcript;
};

// Chain verification: (i) Gamma_0 computes T, checked by exact
// interpretation; (ii) per level, the doubling construction from the claimed
// predecessor must agree with the claimed circuit at `trials` random points
// modulo fresh random 62-bit primes, point bit length 2(L+1) for L the
// combined nonscalar size of the two circuits.
inline VerifyReport verify_chain(const PochChain& chain, int trials,
                                 std::optional<std::uint64_t> seed = std::nullopt) {
    VerifyReport report;
    if (chain.levels.empty()) {
        report.reject_reason = "empty chain";
        return report;
    }
    if (trials < 1) throw ValidationError("verification needs at least one trial");
    Rng rng(seed ? *seed : Rng::entropy_seed());

    for (std::size_t j = 0; j < chain.levels.size(); ++j) {
        const Circuit& g = chain.levels[j];
        if (g.r != 0 || g.n != 1 || g.outputs.size() != 1) {
            report.reject_reason = "level " + std::to_string(j) + " is not a chain circuit";
            report.witness = PochWitness{static_cast<int>(j), 0, 0, 0, 0};
            return report;
        }
        for (const auto& nd : g.nodes)
            if (nd.kind == OpKind::Div) {
                report.reject_reason = "level " + std::to_string(j) + " uses division";
                report.witness = PochWitness{static_cast<int>(j), 0, 0, 0, 0};
                return report;
            }
    }

    // (i) exact check of the base level.
    {
        Interpretation base = interpret(chain.levels[0]);
        if (!(base.finals[0] == RatFunc(SparsePoly::variable(0)))) {
            report.reject_reason = "level 0 does not compute T";
            report.witness = PochWitness{0, 0, 0, 0, 0};
            return report;
        }
        report.levels_checked = 1;
    }

    for (int j = 1; j <= chain.depth(); ++j) {
        const Circuit& claimed = chain.levels[std::size_t(j)];
        Circuit expected = poch_double(chain.levels[std::size_t(j - 1)], j);
        Integer L = Integer(metrics(expected).nonscalar_size) + metrics(claimed).nonscalar_size;
        Integer bit_bound = 2 * (L + 1);
        unsigned bits = static_cast<unsigned>(std::min<long>(bit_bound.get_si(), 4096));
        for (int t = 0; t < trials; ++t) {
            std::uint64_t p = random_prime62(rng);
            Integer point = rng.bits(bits);
            std::uint64_t tm = integer_mod(point, p);
            std::uint64_t lhs = eval_mod_outputs(claimed, p, {}, {tm})[0];
            std::uint64_t rhs = eval_mod_outputs(expected, p, {}, {tm})[0];
            report.transcript.push_back({j, p, 1, lhs == rhs});
            if (lhs != rhs) {
                report.reject_reason = "level " + std::to_string(j) +
                                       " disagrees with the doubling construction";
                report.witness = PochWitness{j, p, point, lhs, rhs};
                return report;
            }
        }
        ++report.levels_checked;
    }
    report.accepted = true;
    return report;
}

// Re-verifies a Reject witness by an independent evaluation route: both
// circuits are evaluated exactly over the rationals at the witness point and
// reduced modulo the stored prime.
inline bool recheck_witness(const PochChain& chain, const PochWitness& w) {
    if (w.level < 1 || w.level > chain.depth()) return false;
    const Circuit& claimed = chain.levels[std::size_t(w.level)];
    Circuit expected = poch_double(chain.levels[std::size_t(w.level - 1)], w.level);
    Rational point{w.point};
    Rational lhs = eval_numeric(claimed, {}, {point})[0];
    Rational rhs = eval_numeric(expected, {}, {point})[0];
    if (lhs.get_den() != 1 || rhs.get_den() != 1) return false; // division-free chains are integral
    std::uint64_t lm = integer_mod(lhs.get_num(), w.prime);
    std::uint64_t rm = integer_mod(rhs.get_num(), w.prime);
    return lm == w.claimed && rm == w.expected && lm != rm;
}

// --- chain.manifest -----------------------------------------------------------

inline std::string render_manifest(const std::vector<std::string>& files) {
    std::string out;
    for (const auto& f : files) out += f + "\n";
    return out;
}

inline std::vector<std::string> parse_manifest(const std::string& text) {
    std::vector<std::string> files;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back()))) line.pop_back();
        std::size_t start = 0;
        while (start < line.size() && std::isspace(static_cast<unsigned char>(line[start]))) ++start;
        if (start < line.size()) files.push_back(line.substr(start));
    }
    return files;
}

} // namespace acirc
