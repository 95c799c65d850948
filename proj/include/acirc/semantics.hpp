#pragma once

#include <map>
#include <optional>
#include <vector>

#include "acirc/circuit.hpp"
#include "acirc/ratfunc.hpp"
#include "acirc/varnames.hpp"

namespace acirc {

struct EvalOptions {
    std::size_t max_terms = 1'000'000;
};

// Node-by-node values of a circuit as exact rational functions in the
// parameter variables (ids 0..r-1) and input variables (ids r..r+n-1).
struct Interpretation {
    VarNames names;
    std::vector<RatFunc> values; // aligned with Circuit::nodes
    std::vector<RatFunc> finals; // output order

    const RatFunc& of(const Circuit& c, int id) const {
        return values[std::size_t(c.node_pos(id))];
    }
};

inline int param_var(const Circuit&, int k) { return k - 1; }
inline int input_var(const Circuit& c, int i) { return c.r + i - 1; }

inline Interpretation interpret(const Circuit& c, const EvalOptions& opts = {},
                                std::optional<VarNames> names = std::nullopt) {
    Interpretation out;
    out.names = names ? std::move(*names) : VarNames::circuit_vars(c.r, c.n);
    out.values.reserve(c.nodes.size());
    for (const auto& nd : c.nodes) {
        RatFunc v;
        switch (nd.kind) {
        case OpKind::Scalar: v = RatFunc(nd.scalar); break;
        case OpKind::Param: v = RatFunc(SparsePoly::variable(param_var(c, nd.index))); break;
        case OpKind::Input: v = RatFunc(SparsePoly::variable(input_var(c, nd.index))); break;
        default: {
            const RatFunc& a = out.values[std::size_t(c.node_pos(nd.lhs))];
            const RatFunc& b = out.values[std::size_t(c.node_pos(nd.rhs))];
            switch (nd.kind) {
            case OpKind::Add: v = a + b; break;
            case OpKind::Sub: v = a - b; break;
            case OpKind::Mul: v = a * b; break;
            case OpKind::Div:
                if (b.is_zero()) throw InconsistentCircuit(nd.id);
                v = a / b;
                break;
            default: break;
            }
        }
        }
        if (v.term_count() > opts.max_terms)
            throw BudgetExceeded("node " + std::to_string(nd.id) + " has " +
                                 std::to_string(v.term_count()) + " terms (max " +
                                 std::to_string(opts.max_terms) + ")");
        out.values.push_back(std::move(v));
    }
    for (int id : c.outputs) out.finals.push_back(out.of(c, id));
    return out;
}

// Replaces assigned Param leaves by Scalar leaves; r and all indices are
// preserved. The result may be inconsistent - that surfaces on interpret.
inline Circuit restrict(const Circuit& c, const std::map<int, Rational>& assignment) {
    Circuit out = c;
    for (auto& nd : out.nodes) {
        if (nd.kind != OpKind::Param) continue;
        auto it = assignment.find(nd.index);
        if (it == assignment.end()) continue;
        nd.kind = OpKind::Scalar;
        nd.scalar = it->second;
        nd.index = 0;
    }
    return out;
}

// Exact output values at a fully assigned point, in output order.
// params[k-1] is the value of parameter k, inputs[i-1] of input i.
inline std::vector<Rational> eval_numeric(const Circuit& c, const std::vector<Rational>& params,
                                          const std::vector<Rational>& inputs) {
    if (static_cast<int>(params.size()) != c.r || static_cast<int>(inputs.size()) != c.n)
        throw ArityMismatch("eval_numeric needs all " + std::to_string(c.r) + " parameters and " +
                            std::to_string(c.n) + " inputs");
    std::vector<Rational> val(c.nodes.size());
    for (std::size_t i = 0; i < c.nodes.size(); ++i) {
        const Node& nd = c.nodes[i];
        switch (nd.kind) {
        case OpKind::Scalar: val[i] = nd.scalar; break;
        case OpKind::Param: val[i] = params[std::size_t(nd.index - 1)]; break;
        case OpKind::Input: val[i] = inputs[std::size_t(nd.index - 1)]; break;
        default: {
            const Rational& a = val[std::size_t(c.node_pos(nd.lhs))];
            const Rational& b = val[std::size_t(c.node_pos(nd.rhs))];
            switch (nd.kind) {
            case OpKind::Add: val[i] = a + b; break;
            case OpKind::Sub: val[i] = a - b; break;
            case OpKind::Mul: val[i] = a * b; break;
            case OpKind::Div:
                if (b == 0) throw DivisionByZero(nd.id);
                val[i] = a / b;
                break;
            default: break;
            }
        }
        }
    }
    std::vector<Rational> out;
    out.reserve(c.outputs.size());
    for (int id : c.outputs) out.push_back(val[std::size_t(c.node_pos(id))]);
    return out;
}

// One final result written as a polynomial in the input variables whose
// coefficients are rational functions of the parameters, keyed by input
// monomial in ascending graded-lex order.
struct CoefficientEntry {
    Monomial input_monomial; // over input variable ids
    RatFunc coefficient;     // over parameter variable ids
};

struct CoefficientMap {
    VarNames names;
    std::vector<std::vector<CoefficientEntry>> per_output;
};

inline CoefficientMap coefficient_map(const Circuit& c, const EvalOptions& opts = {},
                                      std::optional<VarNames> names = std::nullopt) {
    Interpretation interp = interpret(c, opts, std::move(names));
    CoefficientMap out;
    out.names = interp.names;
    auto is_input_var = [&](int v) { return v >= c.r && v < c.r + c.n; };
    for (std::size_t oi = 0; oi < interp.finals.size(); ++oi) {
        const RatFunc& f = interp.finals[oi];
        for (int v : f.den().variables())
            if (is_input_var(v)) throw NotPolynomialInInputs(c.outputs[oi]);
        // Split each numerator term into input-part and parameter-part.
        std::map<Monomial, SparsePoly, GrlexLess> groups;
        for (const auto& [m, coef] : f.num().terms()) {
            Monomial::Exps in_part, par_part;
            for (const auto& [v, e] : m.exponents())
                (is_input_var(v) ? in_part : par_part).emplace_back(v, e);
            groups[Monomial(std::move(in_part))].add_term(Monomial(std::move(par_part)), coef);
        }
        std::vector<CoefficientEntry> entries;
        for (const auto& [m, num] : groups)
            entries.push_back({m, RatFunc(num, f.den())});
        out.per_output.push_back(std::move(entries));
    }
    return out;
}

// Recombines a coefficient map entry list back into one polynomial-with-
// parameter-coefficients; used to check the recombination identity.
inline RatFunc recombine(const std::vector<CoefficientEntry>& entries) {
    RatFunc acc;
    for (const auto& e : entries)
        acc = acc + e.coefficient * RatFunc(SparsePoly::monomial_term(e.input_monomial, 1));
    return acc;
}

// Strongest applicable division class. Needs the interpretation to decide
// whether divisor subcircuits are (nonzero) scalars.
inline DivisionClass division_class(const Circuit& c, const EvalOptions& opts = {}) {
    bool any_div = false;
    for (const auto& nd : c.nodes) any_div |= nd.kind == OpKind::Div;
    if (!any_div) return DivisionClass::TotallyDivisionFree;

    Interpretation interp = interpret(c, opts); // throws InconsistentCircuit on zero divisor
    bool totally = true;
    for (const auto& nd : c.nodes) {
        if (nd.kind != OpKind::Div) continue;
        if (!interp.of(c, nd.rhs).is_constant_scalar()) { totally = false; break; }
    }
    if (totally) return DivisionClass::TotallyDivisionFree;

    Classification cl = classify(c);
    bool essentially = true;
    for (std::size_t i = 0; i < c.nodes.size(); ++i)
        if (c.nodes[i].kind == OpKind::Div && !cl.flags[i].is_parameter_node) {
            essentially = false;
            break;
        }
    return essentially ? DivisionClass::EssentiallyDivisionFree : DivisionClass::General;
}

// Syntactic sufficient condition: totally division-free circuits are robust;
// anything else is reported as unknown.
enum class Robustness { Certified, Unknown };

inline Robustness robustness(const Circuit& c, const EvalOptions& opts = {}) {
    return division_class(c, opts) == DivisionClass::TotallyDivisionFree ? Robustness::Certified
                                                                         : Robustness::Unknown;
}

} // namespace acirc
