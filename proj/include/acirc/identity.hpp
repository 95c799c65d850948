#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "acirc/modular.hpp"
#include "acirc/semantics.hpp"

namespace acirc {

// Deterministic 1D test-set size for circuits of nonscalar size L:
// m = 4(L+2)^2+2 points of bit length at most 2(L+1).
struct PointCount {
    Integer count;
    Integer bit_bound;
};

inline PointCount det_point_count(const Integer& L) {
    if (L < 0) throw ValidationError("nonscalar size must be nonnegative");
    return {4 * (L + 2) * (L + 2) + 2, 2 * (L + 1)};
}

// Correctness-set size for n-variate families: K = 16n^2+2 points of bit
// length at most 4n.
inline PointCount correctness_set_size(const Integer& n) {
    if (n < 1) throw ValidationError("input count must be positive");
    return {16 * n * n + 2, 4 * n};
}

// A materialized test-point set. The count and bit bound follow the closed
// form of the chosen source; the points themselves are sampled at the
// prescribed bit length.
enum class PointSource { Deterministic1D, CorrectnessSet, Random };

struct TestPointSet {
    PointSource source = PointSource::Random;
    Integer bit_bound;
    std::vector<std::vector<Integer>> points;

    bool invariants_hold() const {
        Integer limit = Integer(1) << bit_bound.get_ui();
        for (const auto& pt : points)
            for (const auto& c : pt) {
                Integer mag = c >= 0 ? c : Integer(-c);
                if (mag >= limit) return false;
            }
        return true;
    }
};

namespace detail {

inline Integer signed_sample(Rng& rng, unsigned bits) {
    Integer mag = rng.bits(bits);
    return rng.coin() ? mag : Integer(-mag);
}

} // namespace detail

// m = 4(L+2)^2+2 integers of bit length at most 2(L+1).
inline TestPointSet deterministic_1d_points(const Integer& L, Rng& rng) {
    PointCount pc = det_point_count(L);
    if (pc.count > 1'000'000) throw BudgetExceeded("test set materialization is desk-scale only");
    TestPointSet set;
    set.source = PointSource::Deterministic1D;
    set.bit_bound = pc.bit_bound;
    unsigned bits = static_cast<unsigned>(pc.bit_bound.get_ui());
    for (Integer i = 0; i < pc.count; ++i) set.points.push_back({detail::signed_sample(rng, bits)});
    return set;
}

// K = 16n^2+2 points of Z^n with coordinates of bit length at most 4n.
inline TestPointSet correctness_points(const Integer& n, Rng& rng) {
    PointCount pc = correctness_set_size(n);
    if (n > 16) throw BudgetExceeded("correctness sets are materialized for n <= 16");
    TestPointSet set;
    set.source = PointSource::CorrectnessSet;
    set.bit_bound = pc.bit_bound;
    unsigned bits = static_cast<unsigned>(pc.bit_bound.get_ui());
    long dim = n.get_si();
    for (Integer i = 0; i < pc.count; ++i) {
        std::vector<Integer> pt;
        for (long d = 0; d < dim; ++d) pt.push_back(detail::signed_sample(rng, bits));
        set.points.push_back(std::move(pt));
    }
    return set;
}

inline TestPointSet random_points(int count, int dim, const Integer& bit_bound, Rng& rng) {
    if (count < 0 || dim < 1) throw ValidationError("bad point-set shape");
    TestPointSet set;
    set.source = PointSource::Random;
    set.bit_bound = bit_bound;
    unsigned bits = static_cast<unsigned>(bit_bound.get_ui());
    for (int i = 0; i < count; ++i) {
        std::vector<Integer> pt;
        for (int d = 0; d < dim; ++d) pt.push_back(detail::signed_sample(rng, bits));
        set.points.push_back(std::move(pt));
    }
    return set;
}

enum class EquivMode { Exact, Modular };

struct EquivWitness {
    std::uint64_t prime = 0;
    std::vector<std::uint64_t> params;
    std::vector<std::uint64_t> inputs;
    int output_position = 0; // 0-based
    std::uint64_t lhs_value = 0;
    std::uint64_t rhs_value = 0;
};

struct EquivReport {
    enum class Verdict { Equal, Distinct, Unknown } verdict = Verdict::Unknown;
    std::optional<EquivWitness> witness;
    int trials_run = 0;
    int trials_skipped = 0;
    std::vector<std::string> log;
};

namespace detail {

inline std::optional<EquivWitness> modular_trial(const Circuit& a, const Circuit& b, Rng& rng,
                                                 EquivReport& report) {
    constexpr int max_retries = 16;
    std::uint64_t p = random_prime62(rng);
    for (int attempt = 0; attempt < max_retries; ++attempt) {
        std::vector<std::uint64_t> params(std::size_t(a.r)), inputs(std::size_t(a.n));
        for (auto& v : params) v = rng.below(p);
        for (auto& v : inputs) v = rng.below(p);
        try {
            auto va = eval_mod_outputs(a, p, params, inputs);
            auto vb = eval_mod_outputs(b, p, params, inputs);
            for (std::size_t i = 0; i < va.size(); ++i)
                if (va[i] != vb[i])
                    return EquivWitness{p, params, inputs, static_cast<int>(i), va[i], vb[i]};
            return std::nullopt;
        } catch (const DivisionByZero& e) {
            report.log.push_back("retry: division by zero at node " + std::to_string(e.node_id) +
                                 " (attempt " + std::to_string(attempt + 1) + ")");
        }
    }
    report.log.push_back("trial skipped after 16 retries");
    ++report.trials_skipped;
    return std::nullopt;
}

} // namespace detail

// Polynomial identity test between two circuits with equal arities.
// Exact mode decides via canonical forms; Modular mode evaluates both at
// random points modulo independent random 62-bit primes (one-sided error).
// Distinct verdicts are re-verified at the stored witness before reporting.
inline EquivReport equiv(const Circuit& a, const Circuit& b, EquivMode mode, int trials = 8,
                         std::optional<std::uint64_t> seed = std::nullopt,
                         const EvalOptions& opts = {}) {
    if (a.r != b.r || a.n != b.n || a.outputs.size() != b.outputs.size())
        throw ArityMismatch("equiv requires matching parameter, input and output counts");
    EquivReport report;
    if (mode == EquivMode::Exact) {
        Interpretation ia = interpret(a, opts), ib = interpret(b, opts);
        for (std::size_t i = 0; i < ia.finals.size(); ++i)
            if (!ia.finals[i].equal(ib.finals[i])) {
                report.verdict = EquivReport::Verdict::Distinct;
                report.log.push_back("exact mismatch at output " + std::to_string(i + 1));
                return report;
            }
        report.verdict = EquivReport::Verdict::Equal;
        return report;
    }

    Rng rng(seed ? *seed : Rng::entropy_seed());
    if (trials < 1) throw ValidationError("modular equivalence needs at least one trial");
    for (int t = 0; t < trials; ++t) {
        ++report.trials_run;
        auto witness = detail::modular_trial(a, b, rng, report);
        if (witness) {
            // Confirm before reporting: never emit a false Distinct.
            auto va = eval_mod_outputs(a, witness->prime, witness->params, witness->inputs);
            auto vb = eval_mod_outputs(b, witness->prime, witness->params, witness->inputs);
            std::size_t pos = std::size_t(witness->output_position);
            if (va[pos] == witness->lhs_value && vb[pos] == witness->rhs_value &&
                va[pos] != vb[pos]) {
                report.verdict = EquivReport::Verdict::Distinct;
                report.witness = witness;
                return report;
            }
            report.log.push_back("witness failed re-verification; discarded");
        }
    }
    report.verdict = report.trials_skipped == report.trials_run ? EquivReport::Verdict::Unknown
                                                                : EquivReport::Verdict::Equal;
    return report;
}

} // namespace acirc
