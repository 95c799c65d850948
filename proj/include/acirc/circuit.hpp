#pragma once

#include <algorithm>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "acirc/errors.hpp"
#include "acirc/rational.hpp"

namespace acirc {

enum class OpKind { Scalar, Param, Input, Add, Sub, Mul, Div };

inline bool is_leaf(OpKind k) {
    return k == OpKind::Scalar || k == OpKind::Param || k == OpKind::Input;
}

struct Node {
    int id = 0;
    OpKind kind = OpKind::Scalar;
    Rational scalar;     // Scalar
    int index = 0;       // Param (1..r) / Input (1..n)
    int lhs = 0, rhs = 0; // internal nodes; Div: lhs/rhs = numerator/denominator
};

// Parameterized arithmetic circuit: labelled DAG with ids strictly increasing
// and arguments referencing earlier ids, so the node list is already in
// topological order. Immutable after construction.
struct Circuit {
    std::string name = "circuit";
    int r = 0; // parameter count
    int n = 0; // input count
    std::vector<Node> nodes;
    std::vector<int> outputs;

    int node_pos(int id) const {
        auto it = std::lower_bound(nodes.begin(), nodes.end(), id,
                                   [](const Node& a, int b) { return a.id < b; });
        if (it == nodes.end() || it->id != id)
            throw ValidationError("unknown node id " + std::to_string(id));
        return static_cast<int>(it - nodes.begin());
    }

    const Node& node(int id) const { return nodes[std::size_t(node_pos(id))]; }
};

// Structural validation; everything parse_circuit promises.
inline void validate_circuit(const Circuit& c) {
    if (c.r < 0 || c.n < 0) throw ValidationError("negative parameter or input count");
    int prev = 0;
    auto defined_before = [&](int arg, int id) {
        if (arg <= 0 || arg >= id) return false;
        auto it = std::lower_bound(c.nodes.begin(), c.nodes.end(), arg,
                                   [](const Node& a, int b) { return a.id < b; });
        return it != c.nodes.end() && it->id == arg;
    };
    for (const auto& nd : c.nodes) {
        if (nd.id <= prev)
            throw ValidationError("node ids must be strictly increasing (node " +
                                  std::to_string(nd.id) + ")");
        prev = nd.id;
        switch (nd.kind) {
        case OpKind::Scalar: break;
        case OpKind::Param:
            if (nd.index < 1 || nd.index > c.r)
                throw ValidationError("param index out of range at node " + std::to_string(nd.id));
            break;
        case OpKind::Input:
            if (nd.index < 1 || nd.index > c.n)
                throw ValidationError("input index out of range at node " + std::to_string(nd.id));
            break;
        default:
            for (int arg : {nd.lhs, nd.rhs})
                if (!defined_before(arg, nd.id))
                    throw ValidationError("node " + std::to_string(nd.id) +
                                          " references undefined node " + std::to_string(arg));
        }
    }
    if (c.outputs.empty()) throw ValidationError("circuit has no outputs");
    for (int out : c.outputs) c.node_pos(out); // throws on unknown id
}

// Incremental construction with sequential ids and leaf deduplication.
class CircuitBuilder {
public:
    CircuitBuilder(int r, int n, std::string name = "circuit") {
        c_.r = r;
        c_.n = n;
        c_.name = std::move(name);
    }

    int scalar(const Rational& v) {
        auto key = to_string(v);
        auto it = scalar_cache_.find(key);
        if (it != scalar_cache_.end()) return it->second;
        Node nd;
        nd.kind = OpKind::Scalar;
        nd.scalar = v;
        int id = push(nd);
        scalar_cache_.emplace(key, id);
        return id;
    }

    int param(int k) {
        if (k < 1 || k > c_.r) throw ValidationError("param index out of range");
        if (int& slot = param_cache_[std::size_t(k)]; slot != 0) return slot;
        Node nd;
        nd.kind = OpKind::Param;
        nd.index = k;
        return param_cache_[std::size_t(k)] = push(nd);
    }

    int input(int i) {
        if (i < 1 || i > c_.n) throw ValidationError("input index out of range");
        if (int& slot = input_cache_[std::size_t(i)]; slot != 0) return slot;
        Node nd;
        nd.kind = OpKind::Input;
        nd.index = i;
        return input_cache_[std::size_t(i)] = push(nd);
    }

    int op(OpKind kind, int lhs, int rhs) {
        if (is_leaf(kind)) throw ValidationError("op() requires an arithmetic kind");
        if (lhs <= 0 || lhs > next_ - 1 || rhs <= 0 || rhs > next_ - 1)
            throw ValidationError("argument id out of range");
        Node nd;
        nd.kind = kind;
        nd.lhs = lhs;
        nd.rhs = rhs;
        return push(nd);
    }

    int add(int a, int b) { return op(OpKind::Add, a, b); }
    int sub(int a, int b) { return op(OpKind::Sub, a, b); }
    int mul(int a, int b) { return op(OpKind::Mul, a, b); }
    int div(int a, int b) { return op(OpKind::Div, a, b); }

    // Appends every node of `other` (same r), rewiring its input leaves to
    // existing nodes; returns old-id -> new-id. `feed[i]` is the node that
    // replaces Input i+1 of `other`.
    std::map<int, int> splice(const Circuit& other, const std::vector<int>& feed) {
        if (other.r != c_.r) throw ArityMismatch("spliced circuit has different parameter count");
        if (static_cast<int>(feed.size()) < other.n)
            throw ArityMismatch("splice feed does not cover the inputs");
        std::map<int, int> remap;
        for (const auto& nd : other.nodes) {
            int id;
            switch (nd.kind) {
            case OpKind::Scalar: id = scalar(nd.scalar); break;
            case OpKind::Param: id = param(nd.index); break;
            case OpKind::Input: id = feed[std::size_t(nd.index - 1)]; break;
            default: id = op(nd.kind, remap.at(nd.lhs), remap.at(nd.rhs)); break;
            }
            remap.emplace(nd.id, id);
        }
        return remap;
    }

    void output(int id) { c_.outputs.push_back(id); }

    Circuit take() {
        if (c_.outputs.empty()) throw ValidationError("circuit has no outputs");
        Circuit out = std::move(c_);
        c_ = Circuit{};
        return out;
    }

private:
    int push(Node nd) {
        nd.id = next_++;
        c_.nodes.push_back(std::move(nd));
        return next_ - 1;
    }

    Circuit c_;
    int next_ = 1;
    std::map<std::string, int> scalar_cache_;
    std::map<std::size_t, int> param_cache_;
    std::map<std::size_t, int> input_cache_;
};

// --- .circ format -----------------------------------------------------------

inline std::string render_circuit(const Circuit& c) {
    std::ostringstream out;
    out << "circuit " << c.name << "\n";
    out << "params " << c.r << "\n";
    out << "inputs " << c.n << "\n";
    for (const auto& nd : c.nodes) {
        out << "node " << nd.id << " ";
        switch (nd.kind) {
        case OpKind::Scalar: out << "const " << to_string(nd.scalar); break;
        case OpKind::Param: out << "param " << nd.index; break;
        case OpKind::Input: out << "input " << nd.index; break;
        case OpKind::Add: out << "add " << nd.lhs << " " << nd.rhs; break;
        case OpKind::Sub: out << "sub " << nd.lhs << " " << nd.rhs; break;
        case OpKind::Mul: out << "mul " << nd.lhs << " " << nd.rhs; break;
        case OpKind::Div: out << "div " << nd.lhs << " " << nd.rhs; break;
        }
        out << "\n";
    }
    out << "output";
    for (int id : c.outputs) out << " " << id;
    out << "\n";
    return out.str();
}

inline Circuit parse_circuit(const std::string& text) {
    Circuit c;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    int stage = 0; // 0: circuit, 1: params, 2: inputs, 3: nodes/output
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
            if (word != "circuit") throw ParseError(lineno, "expected 'circuit <name>'");
            c.name = next_token(ls, "circuit name", lineno);
            stage = 1;
        } else if (stage == 1) {
            if (word != "params") throw ParseError(lineno, "expected 'params <r>'");
            c.r = parse_int(next_token(ls, "parameter count", lineno), "parameter count", lineno);
            stage = 2;
        } else if (stage == 2) {
            if (word != "inputs") throw ParseError(lineno, "expected 'inputs <n>'");
            c.n = parse_int(next_token(ls, "input count", lineno), "input count", lineno);
            stage = 3;
        } else if (word == "node") {
            Node nd;
            nd.id = parse_int(next_token(ls, "node id", lineno), "node id", lineno);
            std::string kind = next_token(ls, "node kind", lineno);
            if (kind == "const") {
                nd.kind = OpKind::Scalar;
                try {
                    nd.scalar = parse_rational(next_token(ls, "constant", lineno));
                } catch (const ValidationError& e) {
                    throw ParseError(lineno, e.what());
                }
            } else if (kind == "param") {
                nd.kind = OpKind::Param;
                nd.index = parse_int(next_token(ls, "param index", lineno), "param index", lineno);
            } else if (kind == "input") {
                nd.kind = OpKind::Input;
                nd.index = parse_int(next_token(ls, "input index", lineno), "input index", lineno);
            } else if (kind == "add" || kind == "sub" || kind == "mul" || kind == "div") {
                nd.kind = kind == "add" ? OpKind::Add
                        : kind == "sub" ? OpKind::Sub
                        : kind == "mul" ? OpKind::Mul
                                        : OpKind::Div;
                nd.lhs = parse_int(next_token(ls, "left argument", lineno), "left argument", lineno);
                nd.rhs = parse_int(next_token(ls, "right argument", lineno), "right argument", lineno);
            } else throw ParseError(lineno, "unknown node kind '" + kind + "'");
            std::string extra;
            if (ls >> extra) throw ParseError(lineno, "trailing tokens");
            c.nodes.push_back(nd);
        } else if (word == "output") {
            std::string t;
            while (ls >> t) c.outputs.push_back(parse_int(t, "output id", lineno));
            if (c.outputs.empty()) throw ParseError(lineno, "output line lists no ids");
            saw_output = true;
        } else throw ParseError(lineno, "expected 'node' or 'output'");
    }
    if (!saw_output) throw ParseError(lineno, "missing output line");
    validate_circuit(c);
    return c;
}

// --- classification and metrics ---------------------------------------------

struct NodeFlags {
    bool is_parameter_node = false;
    bool depends_on_input = false;
    bool is_essential = false;
};

// Per node, in node-list order; one topological sweep.
struct Classification {
    std::vector<NodeFlags> flags;
    std::vector<bool> depends_on_param;

    const NodeFlags& of(const Circuit& c, int id) const {
        return flags[std::size_t(c.node_pos(id))];
    }
};

inline Classification classify(const Circuit& c) {
    Classification out;
    out.flags.resize(c.nodes.size());
    out.depends_on_param.resize(c.nodes.size());
    for (std::size_t i = 0; i < c.nodes.size(); ++i) {
        const Node& nd = c.nodes[i];
        NodeFlags& f = out.flags[i];
        switch (nd.kind) {
        case OpKind::Scalar: break;
        case OpKind::Param: out.depends_on_param[i] = true; break;
        case OpKind::Input: f.depends_on_input = true; break;
        default: {
            std::size_t l = std::size_t(c.node_pos(nd.lhs));
            std::size_t r = std::size_t(c.node_pos(nd.rhs));
            f.depends_on_input = out.flags[l].depends_on_input || out.flags[r].depends_on_input;
            out.depends_on_param[i] = out.depends_on_param[l] || out.depends_on_param[r];
            if (nd.kind == OpKind::Add || nd.kind == OpKind::Mul)
                f.is_essential = out.flags[l].depends_on_input && out.flags[r].depends_on_input;
            else if (nd.kind == OpKind::Div)
                f.is_essential = out.flags[r].depends_on_input;
            break;
        }
        }
        f.is_parameter_node = !f.depends_on_input;
    }
    return out;
}

struct Metrics {
    int total_nodes = 0;
    int internal_nodes = 0;
    int nonscalar_size = 0;   // Ostrowski measure
    int nonscalar_depth = 0;
    int essential_mul_count = 0;
    int param_mul_count = 0;
};

inline Metrics metrics(const Circuit& c) {
    Classification cl = classify(c);
    Metrics m;
    m.total_nodes = static_cast<int>(c.nodes.size());
    std::vector<int> depth(c.nodes.size(), 0);
    for (std::size_t i = 0; i < c.nodes.size(); ++i) {
        const Node& nd = c.nodes[i];
        if (is_leaf(nd.kind)) continue;
        ++m.internal_nodes;
        std::size_t l = std::size_t(c.node_pos(nd.lhs));
        std::size_t r = std::size_t(c.node_pos(nd.rhs));
        auto nonscalar_arg = [&](std::size_t k) {
            return cl.depends_on_param[k] || cl.flags[k].depends_on_input;
        };
        bool counts = false;
        if (nd.kind == OpKind::Mul) counts = nonscalar_arg(l) && nonscalar_arg(r);
        else if (nd.kind == OpKind::Div) counts = nonscalar_arg(r);
        if (counts) {
            ++m.nonscalar_size;
            if (nd.kind == OpKind::Mul) {
                if (cl.flags[i].is_essential) ++m.essential_mul_count;
                else ++m.param_mul_count; // a parameter is involved on one side
            }
        }
        depth[i] = std::max(depth[l], depth[r]) + (counts ? 1 : 0);
        m.nonscalar_depth = std::max(m.nonscalar_depth, depth[i]);
    }
    return m;
}

enum class DivisionClass { TotallyDivisionFree, EssentiallyDivisionFree, General };

inline const char* to_string(DivisionClass d) {
    switch (d) {
    case DivisionClass::TotallyDivisionFree: return "totally-division-free";
    case DivisionClass::EssentiallyDivisionFree: return "essentially-division-free";
    case DivisionClass::General: return "general";
    }
    return "?";
}

} // namespace acirc
