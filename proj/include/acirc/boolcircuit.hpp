#pragma once

#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "acirc/elim.hpp"
#include "acirc/semantics.hpp"

namespace acirc {

enum class BoolOp { And, Or, Not, Const0, Const1, Var };

struct BoolNode {
    int id = 0;
    BoolOp op = BoolOp::Const0;
    int index = 0;        // Var
    int lhs = 0, rhs = 0; // And/Or both, Not lhs only
};

// Boolean DAG over m variables, split into r parameters followed by n inputs
// when used for counting.
struct BoolCircuit {
    std::string name = "boolcircuit";
    int m = 0;
    int r = 0, n = 0; // split, r + n = m
    std::vector<BoolNode> nodes;
    std::vector<int> outputs;

    int node_pos(int id) const {
        auto it = std::lower_bound(nodes.begin(), nodes.end(), id,
                                   [](const BoolNode& a, int b) { return a.id < b; });
        if (it == nodes.end() || it->id != id)
            throw ValidationError("unknown node id " + std::to_string(id));
        return static_cast<int>(it - nodes.begin());
    }
};

inline void validate_bool(const BoolCircuit& b) {
    if (b.m < 0 || b.r < 0 || b.n < 0 || b.r + b.n != b.m)
        throw ValidationError("split must partition the variables");
    int prev = 0;
    auto defined_before = [&](int arg, int id) {
        if (arg <= 0 || arg >= id) return false;
        auto it = std::lower_bound(b.nodes.begin(), b.nodes.end(), arg,
                                   [](const BoolNode& a, int x) { return a.id < x; });
        return it != b.nodes.end() && it->id == arg;
    };
    for (const auto& nd : b.nodes) {
        if (nd.id <= prev)
            throw ValidationError("node ids must be strictly increasing (node " +
                                  std::to_string(nd.id) + ")");
        prev = nd.id;
        switch (nd.op) {
        case BoolOp::Const0:
        case BoolOp::Const1: break;
        case BoolOp::Var:
            if (nd.index < 1 || nd.index > b.m)
                throw ValidationError("var index out of range at node " + std::to_string(nd.id));
            break;
        case BoolOp::Not:
            if (!defined_before(nd.lhs, nd.id))
                throw ValidationError("node " + std::to_string(nd.id) + " references undefined node");
            break;
        default:
            for (int arg : {nd.lhs, nd.rhs})
                if (!defined_before(arg, nd.id))
                    throw ValidationError("node " + std::to_string(nd.id) +
                                          " references undefined node " + std::to_string(arg));
        }
    }
    if (b.outputs.empty()) throw ValidationError("boolean circuit has no outputs");
    for (int id : b.outputs) b.node_pos(id);
}

// --- .bool format ------------------------------------------------------------

inline std::string render_bool(const BoolCircuit& b) {
    std::ostringstream out;
    out << "boolcircuit " << b.name << "\n";
    out << "vars " << b.m << "\n";
    out << "split " << b.r << " " << b.n << "\n";
    for (const auto& nd : b.nodes) {
        out << "node " << nd.id << " ";
        switch (nd.op) {
        case BoolOp::And: out << "and " << nd.lhs << " " << nd.rhs; break;
        case BoolOp::Or: out << "or " << nd.lhs << " " << nd.rhs; break;
        case BoolOp::Not: out << "not " << nd.lhs; break;
        case BoolOp::Const0: out << "const0"; break;
        case BoolOp::Const1: out << "const1"; break;
        case BoolOp::Var: out << "var " << nd.index; break;
        }
        out << "\n";
    }
    out << "output";
    for (int id : b.outputs) out << " " << id;
    out << "\n";
    return out.str();
}

inline BoolCircuit parse_bool(const std::string& text) {
    BoolCircuit b;
    std::istringstream in(text);
    std::string line;
    int lineno = 0, stage = 0;
    bool saw_output = false;
    auto next_token = [](std::istringstream& ls, const std::string& what, int lineno) {
        std::string t;
        if (!(ls >> t)) throw ParseError(lineno, "expected " + what);
        return t;
    };
    auto parse_int = [](const std::string& t, const std::string& what, int lineno) {
        try {
            std::size_t used = 0;
            int v = std::stoi(t, &used);
            if (used != t.size()) throw std::invalid_argument(t);
            return v;
        } catch (...) {
            throw ParseError(lineno, "bad " + what + " '" + t + "'");
        }
    };
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string word;
        if (!(ls >> word)) continue;
        if (saw_output) throw ParseError(lineno, "content after output line");
        if (stage == 0) {
            if (word != "boolcircuit") throw ParseError(lineno, "expected 'boolcircuit <name>'");
            b.name = next_token(ls, "name", lineno);
            stage = 1;
        } else if (stage == 1) {
            if (word != "vars") throw ParseError(lineno, "expected 'vars <m>'");
            b.m = parse_int(next_token(ls, "variable count", lineno), "variable count", lineno);
            stage = 2;
        } else if (stage == 2) {
            if (word != "split") throw ParseError(lineno, "expected 'split <r> <n>'");
            b.r = parse_int(next_token(ls, "parameter count", lineno), "parameter count", lineno);
            b.n = parse_int(next_token(ls, "input count", lineno), "input count", lineno);
            stage = 3;
        } else if (word == "node") {
            BoolNode nd;
            nd.id = parse_int(next_token(ls, "node id", lineno), "node id", lineno);
            std::string kind = next_token(ls, "node kind", lineno);
            if (kind == "and" || kind == "or") {
                nd.op = kind == "and" ? BoolOp::And : BoolOp::Or;
                nd.lhs = parse_int(next_token(ls, "left argument", lineno), "argument", lineno);
                nd.rhs = parse_int(next_token(ls, "right argument", lineno), "argument", lineno);
            } else if (kind == "not") {
                nd.op = BoolOp::Not;
                nd.lhs = parse_int(next_token(ls, "argument", lineno), "argument", lineno);
            } else if (kind == "const0") nd.op = BoolOp::Const0;
            else if (kind == "const1") nd.op = BoolOp::Const1;
            else if (kind == "var") {
                nd.op = BoolOp::Var;
                nd.index = parse_int(next_token(ls, "var index", lineno), "var index", lineno);
            } else throw ParseError(lineno, "unknown node kind '" + kind + "'");
            std::string extra;
            if (ls >> extra) throw ParseError(lineno, "trailing tokens");
            b.nodes.push_back(nd);
        } else if (word == "output") {
            std::string t;
            while (ls >> t) b.outputs.push_back(parse_int(t, "output id", lineno));
            if (b.outputs.empty()) throw ParseError(lineno, "output line lists no ids");
            saw_output = true;
        } else throw ParseError(lineno, "expected 'node' or 'output'");
    }
    if (!saw_output) throw ParseError(lineno, "missing output line");
    validate_bool(b);
    return b;
}

// Truth values of every node at one assignment (index i holds variable i+1).
inline std::vector<bool> eval_bool(const BoolCircuit& b, const std::vector<bool>& z) {
    if (static_cast<int>(z.size()) != b.m) throw ArityMismatch("assignment must cover all variables");
    std::vector<bool> val(b.nodes.size());
    for (std::size_t i = 0; i < b.nodes.size(); ++i) {
        const BoolNode& nd = b.nodes[i];
        switch (nd.op) {
        case BoolOp::Const0: val[i] = false; break;
        case BoolOp::Const1: val[i] = true; break;
        case BoolOp::Var: val[i] = z[std::size_t(nd.index - 1)]; break;
        case BoolOp::Not: val[i] = !val[std::size_t(b.node_pos(nd.lhs))]; break;
        case BoolOp::And:
            val[i] = val[std::size_t(b.node_pos(nd.lhs))] && val[std::size_t(b.node_pos(nd.rhs))];
            break;
        case BoolOp::Or:
            val[i] = val[std::size_t(b.node_pos(nd.lhs))] || val[std::size_t(b.node_pos(nd.rhs))];
            break;
        }
    }
    return val;
}

// Standard arithmetization: and -> product, or -> sum minus product,
// not -> one minus. The resulting circuit is totally division-free and agrees
// with the Boolean circuit node-for-node on {0,1} assignments.
struct Arithmetization {
    Circuit circuit;
    std::vector<int> node_of; // bool node position -> arithmetic node id
};

inline Arithmetization standard_arithmetization(const BoolCircuit& b) {
    CircuitBuilder cb(b.r, b.n, b.name + "_arith");
    Arithmetization out;
    out.node_of.resize(b.nodes.size());
    for (std::size_t i = 0; i < b.nodes.size(); ++i) {
        const BoolNode& nd = b.nodes[i];
        int id = 0;
        switch (nd.op) {
        case BoolOp::Const0: id = cb.scalar(0); break;
        case BoolOp::Const1: id = cb.scalar(1); break;
        case BoolOp::Var:
            id = nd.index <= b.r ? cb.param(nd.index) : cb.input(nd.index - b.r);
            break;
        case BoolOp::Not:
            id = cb.sub(cb.scalar(1), out.node_of[std::size_t(b.node_pos(nd.lhs))]);
            break;
        case BoolOp::And:
            id = cb.mul(out.node_of[std::size_t(b.node_pos(nd.lhs))],
                        out.node_of[std::size_t(b.node_pos(nd.rhs))]);
            break;
        case BoolOp::Or: {
            int l = out.node_of[std::size_t(b.node_pos(nd.lhs))];
            int r = out.node_of[std::size_t(b.node_pos(nd.rhs))];
            id = cb.sub(cb.add(l, r), cb.mul(l, r));
            break;
        }
        }
        out.node_of[i] = id;
    }
    for (int id : b.outputs) cb.output(out.node_of[std::size_t(b.node_pos(id))]);
    out.circuit = cb.take();
    return out;
}

// Counting through the elimination polynomial. Computes F = prod over
// x in {0,1}^n of (Y - H(u,x)) with the enumeration oracle, reads the
// satisfying count k both from the order of F^q at zero (k = 2^n - l/q) and
// from the first coefficient (k = -phi_1(u)/q), and checks both against the
// exhaustive truth table.
struct CountResult {
    int n = 0;
    int q = 1;
    Integer points;       // 2^n
    Integer order_l;      // order of F^q(u, Y) at Y = 0
    Rational phi1_at_u;   // first coefficient of F^q at the parameter instance
    Integer k_from_order;
    Integer k_from_phi1;
    Integer k_truth;
    int deg_u_phi1 = 0; // symbolic phi_1 of F, degree in the parameters
    int deg_u_H = 0;
};

inline CountResult count_satisfying(const BoolCircuit& b, const std::vector<bool>& u, int q = 1,
                                    const EvalOptions& opts = {}, int max_inputs = 12) {
    if (b.outputs.size() != 1) throw ValidationError("counting needs a single-output circuit");
    if (static_cast<int>(u.size()) != b.r) throw ArityMismatch("assignment must cover the parameters");
    if (b.n > max_inputs)
        throw BudgetExceeded("counting is capped at " + std::to_string(max_inputs) + " inputs");
    if (q < 1) throw ValidationError("q must be positive");

    Arithmetization arith = standard_arithmetization(b);

    // Restrict the parameters to u and set up the elimination problem for H(u, X).
    std::map<int, Rational> assignment;
    for (int k = 1; k <= b.r; ++k) assignment[k] = Rational(u[std::size_t(k - 1)] ? 1 : 0);
    Circuit at_u = restrict(arith.circuit, assignment);

    ElimProblem problem;
    for (int k = 1; k <= b.r; ++k) problem.names.add("U" + std::to_string(k));
    for (int i = 1; i <= b.n; ++i)
        problem.input_vars.push_back(problem.names.add("X" + std::to_string(i)));
    problem.y_var = problem.names.add("Y");
    for (int k = 0; k < b.r; ++k) problem.param_vars.push_back(k);
    for (int v : problem.input_vars) {
        SparsePoly x = SparsePoly::variable(v);
        problem.equations.push_back(x * x - x);
    }
    Interpretation interp_u = interpret(at_u, opts, problem.names);
    if (!interp_u.finals[0].is_polynomial())
        throw ValidationError("arithmetization must be polynomial");
    problem.H = interp_u.finals[0].num();

    ElimResult res = eliminate_enum(problem, opts);
    if (q > 1) res = raise_power(res, q);

    CountResult out;
    out.n = b.n;
    out.q = q;
    out.points = Integer(1) << b.n;

    // Order at zero: trailing zero coefficients of F^q(u, Y).
    Integer l = 0;
    for (std::size_t k = res.phi.size(); k-- > 1;) {
        if (!res.phi[k].is_zero()) break;
        ++l;
    }
    out.order_l = l;
    if (l % q != 0) throw ValidationError("order at zero is not divisible by q");
    out.k_from_order = out.points - l / q;

    out.phi1_at_u = res.phi.size() > 1 ? res.phi[1].constant_value() : Rational(0);
    Rational k_phi = -out.phi1_at_u / q;
    if (k_phi.get_den() != 1) throw ValidationError("phi_1(u) is not divisible by q");
    out.k_from_phi1 = k_phi.get_num();

    // Exhaustive truth table.
    std::vector<bool> z(std::size_t(b.m));
    for (int k = 0; k < b.r; ++k) z[std::size_t(k)] = u[std::size_t(k)];
    Integer truth = 0;
    for (std::uint64_t x = 0; x < (1ull << b.n); ++x) {
        for (int i = 0; i < b.n; ++i) z[std::size_t(b.r + i)] = (x >> i) & 1u;
        auto vals = eval_bool(b, z);
        if (vals[std::size_t(b.node_pos(b.outputs[0]))]) ++truth;
    }
    out.k_truth = truth;

    if (out.k_from_order != out.k_truth || out.k_from_phi1 != out.k_truth)
        throw ValidationError("count cross-check failed: order " + out.k_from_order.get_str() +
                              ", phi1 " + out.k_from_phi1.get_str() + ", truth " +
                              out.k_truth.get_str());

    // Symbolic degree check: phi_1 of F is -sum over x of H(U, x).
    Interpretation interp_sym = interpret(arith.circuit, opts, problem.names);
    const SparsePoly& H_sym = interp_sym.finals[0].num();
    SparsePoly phi1_sym;
    for (std::uint64_t x = 0; x < (1ull << b.n); ++x) {
        std::map<int, Rational> point;
        for (int i = 0; i < b.n; ++i)
            point[problem.input_vars[std::size_t(i)]] = Rational((x >> i) & 1u);
        phi1_sym -= poly_eval(H_sym, point);
    }
    // phi_1 of F^q is q times phi_1 of F, so the parameter degree is unchanged.
    auto is_param = [&](int v) { return v < b.r; };
    out.deg_u_phi1 = phi1_sym.degree_where(is_param);
    out.deg_u_H = H_sym.degree_where(is_param);
    return out;
}

} // namespace acirc
