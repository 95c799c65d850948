// Command-line workbench for parameterized arithmetic circuits over exact
// rationals: circuit statistics and rewriting, identity testing, Boolean
// arithmetization and satisfiability counting, elimination families with
// their lower-bound witnesses, and the Pochhammer chain protocol.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "acirc/acirc.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace acirc;

namespace {

// Exit codes: 0 success/PASS/Equal/Accept, 1 semantic negative, 2 usage or
// parse error, 3 budget exceeded, 4 inconsistent circuit.
constexpr int kOk = 0;
constexpr int kNegative = 1;
constexpr int kUsage = 2;
constexpr int kBudget = 3;
constexpr int kInconsistent = 4;

struct Global {
    std::uint64_t seed = 0;
    bool seed_given = false;
    std::size_t max_terms = 1'000'000;
    bool json_out = false;

    EvalOptions opts() const { return EvalOptions{max_terms}; }
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot write '" + path + "'");
    out << content;
}

void emit(const Global& g, const json& doc, const std::string& text) {
    if (g.json_out) std::cout << doc.dump(2) << "\n";
    else std::cout << text;
}

std::vector<Rational> parse_rational_list(const std::string& csv) {
    std::vector<Rational> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(parse_rational(item));
    return out;
}

std::map<int, Rational> parse_assignments(const std::vector<std::string>& pairs) {
    std::map<int, Rational> out;
    for (const auto& p : pairs) {
        auto eq = p.find('=');
        if (eq == std::string::npos) throw ValidationError("expected <index>=<value>: '" + p + "'");
        out[std::stoi(p.substr(0, eq))] = parse_rational(p.substr(eq + 1));
    }
    return out;
}

json metrics_json(const Circuit& c, const Global& g) {
    Metrics m = metrics(c);
    DivisionClass dc = division_class(c, g.opts());
    return json{{"total_nodes", m.total_nodes},
                {"internal_nodes", m.internal_nodes},
                {"nonscalar_size", m.nonscalar_size},
                {"nonscalar_depth", m.nonscalar_depth},
                {"essential_mul_count", m.essential_mul_count},
                {"param_mul_count", m.param_mul_count},
                {"division_class", to_string(dc)},
                {"robust", robustness(c, g.opts()) == Robustness::Certified ? "certified" : "unknown"}};
}

int cmd_circ_stats(const Global& g, const std::string& file) {
    Circuit c = parse_circuit(read_file(file));
    json m = metrics_json(c, g);
    std::ostringstream text;
    text << "circuit " << c.name << ": params " << c.r << ", inputs " << c.n << "\n";
    for (auto it = m.begin(); it != m.end(); ++it)
        text << it.key() << " " << (it.value().is_string() ? it.value().get<std::string>()
                                                           : it.value().dump())
             << "\n";
    // lint: every node of outdegree zero should be an output
    std::vector<int> dangling;
    {
        std::vector<bool> used(c.nodes.size(), false);
        for (const auto& nd : c.nodes)
            if (!is_leaf(nd.kind)) {
                used[std::size_t(c.node_pos(nd.lhs))] = true;
                used[std::size_t(c.node_pos(nd.rhs))] = true;
            }
        for (int id : c.outputs) used[std::size_t(c.node_pos(id))] = true;
        for (std::size_t i = 0; i < c.nodes.size(); ++i)
            if (!used[i]) dangling.push_back(c.nodes[i].id);
    }
    for (int id : dangling) text << "lint: node " << id << " has outdegree zero but is not an output\n";
    json doc{{"command", "circ stats"}, {"inputs", {{"file", file}}}, {"verdict", "ok"},
             {"metrics", m}};
    if (!dangling.empty()) doc["lint"] = dangling;
    emit(g, doc, text.str());
    return kOk;
}

int cmd_circ_reduce(const Global& g, const std::string& file, const std::string& out_path) {
    Circuit c = parse_circuit(read_file(file));
    Circuit red = reduce(c, g.opts(), g.seed);
    std::string rendered = render_circuit(red);
    if (!out_path.empty()) write_file(out_path, rendered);
    json doc{{"command", "circ reduce"},
             {"inputs", {{"file", file}}},
             {"verdict", "ok"},
             {"seed", g.seed},
             {"metrics",
              {{"nodes_before", c.nodes.size()}, {"nodes_after", red.nodes.size()}}}};
    if (out_path.empty()) doc["circuit"] = rendered;
    emit(g, doc,
         out_path.empty() ? rendered
                          : "reduced " + std::to_string(c.nodes.size()) + " -> " +
                                std::to_string(red.nodes.size()) + " nodes, wrote " + out_path + "\n");
    return kOk;
}

int cmd_circ_join(const Global& g, const std::string& file_a, const std::string& file_b,
                  const std::string& map_spec, const std::string& out_path) {
    Circuit a = parse_circuit(read_file(file_a));
    Circuit b = parse_circuit(read_file(file_b));
    std::vector<int> mapping(std::size_t(b.n), 0);
    std::stringstream ss(map_spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto eq = item.find('=');
        if (eq == std::string::npos) throw ValidationError("join map expects i=j pairs");
        int input = std::stoi(item.substr(0, eq));
        int pos = std::stoi(item.substr(eq + 1));
        if (input < 1 || input > b.n) throw ValidationError("join map input out of range");
        mapping[std::size_t(input - 1)] = pos;
    }
    for (int v : mapping)
        if (v == 0) throw ValidationError("join map must cover every input of the second circuit");
    Circuit joined = join(a, b, mapping, g.opts());
    std::string rendered = render_circuit(joined);
    if (!out_path.empty()) write_file(out_path, rendered);
    json doc{{"command", "circ join"},
             {"inputs", {{"first", file_a}, {"second", file_b}, {"map", map_spec}}},
             {"verdict", "ok"},
             {"metrics", {{"nodes", joined.nodes.size()}}}};
    if (out_path.empty()) doc["circuit"] = rendered;
    emit(g, doc, out_path.empty() ? rendered : "wrote " + out_path + "\n");
    return kOk;
}

int cmd_circ_restrict(const Global& g, const std::string& file,
                      const std::vector<std::string>& sets, const std::string& out_path) {
    Circuit c = parse_circuit(read_file(file));
    Circuit r = restrict(c, parse_assignments(sets));
    std::string rendered = render_circuit(r);
    if (!out_path.empty()) write_file(out_path, rendered);
    json doc{{"command", "circ restrict"}, {"inputs", {{"file", file}}}, {"verdict", "ok"}};
    if (out_path.empty()) doc["circuit"] = rendered;
    emit(g, doc, out_path.empty() ? rendered : "wrote " + out_path + "\n");
    return kOk;
}

int cmd_circ_equiv(const Global& g, const std::string& file_a, const std::string& file_b,
                   const std::string& mode, int trials) {
    Circuit a = parse_circuit(read_file(file_a));
    Circuit b = parse_circuit(read_file(file_b));
    EquivMode m = mode == "exact" ? EquivMode::Exact : EquivMode::Modular;
    if (mode != "exact" && mode != "modular") throw ValidationError("mode must be exact|modular");
    EquivReport rep = equiv(a, b, m, trials, g.seed, g.opts());
    const char* verdict = rep.verdict == EquivReport::Verdict::Equal     ? "Equal"
                          : rep.verdict == EquivReport::Verdict::Distinct ? "Distinct"
                                                                          : "Unknown";
    json doc{{"command", "circ equiv"},
             {"inputs", {{"first", file_a}, {"second", file_b}, {"mode", mode}, {"trials", trials}}},
             {"verdict", verdict},
             {"seed", g.seed},
             {"metrics", {{"trials_run", rep.trials_run}, {"trials_skipped", rep.trials_skipped}}}};
    std::ostringstream text;
    if (m == EquivMode::Modular) text << "seed " << g.seed << "\n";
    text << verdict << "\n";
    if (rep.witness) {
        json w{{"prime", rep.witness->prime},
               {"params", rep.witness->params},
               {"inputs", rep.witness->inputs},
               {"output_position", rep.witness->output_position + 1},
               {"lhs", rep.witness->lhs_value},
               {"rhs", rep.witness->rhs_value}};
        doc["witness"] = w;
        text << "witness prime " << rep.witness->prime << " output "
             << rep.witness->output_position + 1 << " lhs " << rep.witness->lhs_value << " rhs "
             << rep.witness->rhs_value << "\n";
    }
    emit(g, doc, text.str());
    return rep.verdict == EquivReport::Verdict::Equal     ? kOk
           : rep.verdict == EquivReport::Verdict::Distinct ? kNegative
                                                            : kUsage;
}

int cmd_circ_eval(const Global& g, const std::string& file, const std::string& params_csv,
                  const std::string& inputs_csv) {
    Circuit c = parse_circuit(read_file(file));
    auto vals = eval_numeric(c, parse_rational_list(params_csv), parse_rational_list(inputs_csv));
    std::ostringstream text;
    json out = json::array();
    for (const auto& v : vals) {
        text << to_string(v) << "\n";
        out.push_back(to_string(v));
    }
    emit(g, json{{"command", "circ eval"}, {"inputs", {{"file", file}}}, {"verdict", "ok"},
                 {"metrics", {{"values", out}}}},
         text.str());
    return kOk;
}

int cmd_bool_arith(const Global& g, const std::string& file, const std::string& out_path) {
    BoolCircuit b = parse_bool(read_file(file));
    Arithmetization arith = standard_arithmetization(b);
    std::string rendered = render_circuit(arith.circuit);
    if (!out_path.empty()) write_file(out_path, rendered);
    json doc{{"command", "bool arith"}, {"inputs", {{"file", file}}}, {"verdict", "ok"},
             {"metrics", {{"nodes", arith.circuit.nodes.size()}}}};
    if (out_path.empty()) doc["circuit"] = rendered;
    emit(g, doc, out_path.empty() ? rendered : "wrote " + out_path + "\n");
    return kOk;
}

int cmd_count_sat(const Global& g, const std::string& file, const std::string& assign, int q) {
    BoolCircuit b = parse_bool(read_file(file));
    std::vector<bool> u;
    for (char ch : assign) {
        if (ch != '0' && ch != '1') throw ValidationError("--assign expects a 0/1 string");
        u.push_back(ch == '1');
    }
    CountResult res = count_satisfying(b, u, q, g.opts());
    std::ostringstream text;
    text << "points " << res.points.get_str() << "\n";
    text << "order_l " << res.order_l.get_str() << "\n";
    text << "phi1 " << to_string(res.phi1_at_u) << "\n";
    text << "k_from_order " << res.k_from_order.get_str() << "\n";
    text << "k_from_phi1 " << res.k_from_phi1.get_str() << "\n";
    text << "k " << res.k_truth.get_str() << "\n";
    text << "deg_u_phi1 " << res.deg_u_phi1 << " deg_u_H " << res.deg_u_H << "\n";
    emit(g, json{{"command", "count sat"},
                 {"inputs", {{"file", file}, {"assign", assign}, {"q", q}}},
                 {"verdict", "ok"},
                 {"metrics",
                  {{"points", res.points.get_str()},
                   {"order_l", res.order_l.get_str()},
                   {"phi1", to_string(res.phi1_at_u)},
                   {"k_from_order", res.k_from_order.get_str()},
                   {"k_from_phi1", res.k_from_phi1.get_str()},
                   {"k", res.k_truth.get_str()},
                   {"deg_u_phi1", res.deg_u_phi1},
                   {"deg_u_H", res.deg_u_H}}}},
         text.str());
    return kOk;
}

std::string render_problem(const ElimProblem& p) {
    std::ostringstream out;
    out << "params";
    for (int v : p.param_vars) out << " " << p.names.name(v);
    out << "\ninputs";
    for (int v : p.input_vars) out << " " << p.names.name(v);
    out << "\n";
    for (std::size_t i = 0; i < p.equations.size(); ++i)
        out << "G" << i + 1 << " " << to_string(p.equations[i], p.names) << "\n";
    out << "H " << to_string(p.H, p.names) << "\n";
    return out.str();
}

int cmd_elim_family(const Global& g, const std::string& name, int n, const std::string& emit_kind,
                    const std::string& out_dir) {
    FamilyKind kind = family_kind_from(name);
    Family fam = family(kind, n, g.seed);
    std::ostringstream text;
    json doc{{"command", "elim family"},
             {"inputs", {{"name", name}, {"n", n}, {"emit", emit_kind}}},
             {"verdict", "ok"},
             {"seed", g.seed}};
    if (!out_dir.empty()) {
        fs::create_directories(out_dir);
        write_file((fs::path(out_dir) / "beta.circ").string(), render_circuit(fam.beta));
        write_file((fs::path(out_dir) / "problem.txt").string(), render_problem(fam.problem));
        text << "wrote beta.circ problem.txt";
        if (kind == FamilyKind::Points) {
            write_file((fs::path(out_dir) / "eval_points.circ").string(),
                       render_circuit(*fam.eval_points));
            write_file((fs::path(out_dir) / "interp.circ").string(), render_circuit(*fam.interp));
            std::ostringstream xi, formula;
            for (const auto& pt : fam.xi) {
                for (std::size_t i = 0; i < pt.size(); ++i) xi << (i ? " " : "") << pt[i];
                xi << "\n";
            }
            for (const auto& eq : fam.formula11)
                formula << to_string(eq, fam.formula_names) << " = 0\n";
            write_file((fs::path(out_dir) / "xi.txt").string(), xi.str());
            write_file((fs::path(out_dir) / "formula11.txt").string(), formula.str());
            text << " eval_points.circ interp.circ xi.txt formula11.txt";
        }
        text << " to " << out_dir << "\n";
    } else if (emit_kind == "circ") {
        text << render_circuit(fam.beta);
        doc["circuit"] = render_circuit(fam.beta);
    } else if (emit_kind == "problem") {
        text << render_problem(fam.problem);
        doc["problem"] = render_problem(fam.problem);
    } else throw ValidationError("--emit must be circ|problem");
    emit(g, doc, text.str());
    return kOk;
}

int cmd_elim_oracle(const Global& g, const std::string& method, const std::string& name, int n) {
    Family fam = family(family_kind_from(name), n, g.seed);
    ElimResult res;
    if (method == "enum") res = eliminate_enum(fam.problem, g.opts());
    else if (method == "multmatrix") res = eliminate_multmatrix(fam.problem, g.opts());
    else throw ValidationError("--method must be enum|multmatrix");
    std::ostringstream text;
    text << "F " << to_string(res.F, res.names) << "\n";
    text << "q " << res.q << "\n";
    text << "deg_Y " << res.F.degree_in(res.y_var) << "\n";
    emit(g, json{{"command", "elim oracle"},
                 {"inputs", {{"method", method}, {"name", name}, {"n", n}}},
                 {"verdict", "ok"},
                 {"metrics",
                  {{"F", to_string(res.F, res.names)},
                   {"q", res.q},
                   {"deg_Y", res.F.degree_in(res.y_var)}}}},
         text.str());
    return kOk;
}

int cmd_elim_witness(const Global& g, const std::string& which, const std::string& name, int n) {
    Family fam = family(family_kind_from(name), n, g.seed);
    std::ostringstream text;
    bool pass = false;
    json m;
    if (which == "delta-rank") {
        int rank = witness_delta_rank(fam.problem, g.opts());
        pass = rank == (1 << n);
        text << "rank " << rank << (pass ? " = " : " != ") << "2^" << n << " "
             << (pass ? "PASS" : "FAIL") << "\n";
        m = json{{"rank", rank}, {"expected", 1 << n}};
    } else if (which == "l-indep") {
        bool indep = witness_L_independence(fam.problem, n, g.opts());
        pass = indep;
        text << "L-independence " << (indep ? "true PASS" : "false FAIL") << "\n";
        m = json{{"independent", indep}};
    } else throw ValidationError("--which must be delta-rank|l-indep");
    emit(g, json{{"command", "elim witness"},
                 {"inputs", {{"which", which}, {"name", name}, {"n", n}}},
                 {"verdict", pass ? "PASS" : "FAIL"},
                 {"metrics", m}},
         text.str());
    return pass ? kOk : kNegative;
}

int cmd_poch_gen(const Global& g, int n, const std::string& out_dir) {
    PochChain chain = gen_chain(n);
    fs::create_directories(out_dir);
    std::vector<std::string> files;
    for (int j = 0; j <= chain.depth(); ++j) {
        std::string fname = "gamma_" + std::to_string(j) + ".circ";
        write_file((fs::path(out_dir) / fname).string(), render_circuit(chain.levels[std::size_t(j)]));
        files.push_back(fname);
    }
    write_file((fs::path(out_dir) / "chain.manifest").string(), render_manifest(files));
    emit(g, json{{"command", "poch gen"}, {"inputs", {{"n", n}, {"out", out_dir}}},
                 {"verdict", "ok"}, {"metrics", {{"levels", n + 1}}}},
         "wrote " + std::to_string(n + 1) + " circuits and chain.manifest to " + out_dir + "\n");
    return kOk;
}

int cmd_poch_verify(const Global& g, const std::string& dir, int trials) {
    auto files = parse_manifest(read_file((fs::path(dir) / "chain.manifest").string()));
    if (files.empty()) throw ValidationError("chain.manifest lists no circuits");
    PochChain chain;
    for (const auto& f : files)
        chain.levels.push_back(parse_circuit(read_file((fs::path(dir) / f).string())));
    VerifyReport rep = verify_chain(chain, trials, g.seed);
    std::ostringstream text;
    text << "seed " << g.seed << "\n";
    for (const auto& lc : rep.transcript)
        text << "level " << lc.level << " prime " << lc.prime << " points " << lc.points << " "
             << (lc.ok ? "ok" : "mismatch") << "\n";
    json doc{{"command", "poch verify"},
             {"inputs", {{"dir", dir}, {"trials", trials}}},
             {"verdict", rep.accepted ? "Accept" : "Reject"},
             {"seed", g.seed},
             {"metrics", {{"levels_checked", rep.levels_checked}}}};
    if (rep.accepted) text << "Accept\n";
    else {
        text << "Reject " << rep.reject_reason;
        if (rep.witness && rep.witness->prime != 0) {
            text << " (point " << rep.witness->point.get_str() << ", prime " << rep.witness->prime
                 << ", claimed " << rep.witness->claimed << ", expected " << rep.witness->expected
                 << ")";
            doc["witness"] = json{{"level", rep.witness->level},
                                  {"prime", rep.witness->prime},
                                  {"point", rep.witness->point.get_str()},
                                  {"claimed", rep.witness->claimed},
                                  {"expected", rep.witness->expected}};
        }
        text << "\n";
        doc["reason"] = rep.reject_reason;
    }
    emit(g, doc, text.str());
    return rep.accepted ? kOk : kNegative;
}

} // namespace

int main(int argc, char** argv) {
    Global g;
    CLI::App app{"workbench for parameterized arithmetic circuits over exact rationals"};
    app.require_subcommand(1);
    app.add_option("--seed", g.seed, "seed for all randomness (default: OS entropy)")
        ->each([&](const std::string&) { g.seed_given = true; });
    app.add_option("--max-terms", g.max_terms, "global term budget for symbolic values");
    app.add_flag("--json", g.json_out, "emit one JSON report instead of text");

    // circ
    auto* circ = app.add_subcommand("circ", "circuit operations");
    circ->require_subcommand(1);
    std::string st_file;
    auto* stats = circ->add_subcommand("stats", "metrics and classification");
    stats->add_option("file", st_file)->required();

    std::string rd_file, rd_out;
    auto* red = circ->add_subcommand("reduce", "merge nodes with equal intermediate results");
    red->add_option("file", rd_file)->required();
    red->add_option("-o,--out", rd_out, "write the reduced circuit here");

    std::string jn_a, jn_b, jn_map, jn_out;
    auto* jn = circ->add_subcommand("join", "compose: second circuit's inputs from first's outputs");
    jn->add_option("first", jn_a)->required();
    jn->add_option("second", jn_b)->required();
    jn->add_option("--map", jn_map, "i=j pairs: input i of second <- output position j of first")
        ->required();
    jn->add_option("-o,--out", jn_out);

    std::string rs_file, rs_out;
    std::vector<std::string> rs_sets;
    auto* rs = circ->add_subcommand("restrict", "pin parameters to rational values");
    rs->add_option("file", rs_file)->required();
    rs->add_option("--set", rs_sets, "<param-index>=<rational>")->required();
    rs->add_option("-o,--out", rs_out);

    std::string eq_a, eq_b, eq_mode = "exact";
    int eq_trials = 8;
    auto* eq = circ->add_subcommand("equiv", "polynomial identity test between two circuits");
    eq->add_option("--mode", eq_mode, "exact|modular");
    eq->add_option("--trials", eq_trials);
    eq->add_option("first", eq_a)->required();
    eq->add_option("second", eq_b)->required();

    std::string ev_file, ev_params, ev_inputs;
    auto* ev = circ->add_subcommand("eval", "exact evaluation at a rational point");
    ev->add_option("file", ev_file)->required();
    ev->add_option("--params", ev_params, "comma-separated rationals");
    ev->add_option("--inputs", ev_inputs, "comma-separated rationals");

    // bool
    auto* bl = app.add_subcommand("bool", "boolean circuit operations");
    bl->require_subcommand(1);
    std::string ba_file, ba_out;
    auto* ba = bl->add_subcommand("arith", "standard arithmetization");
    ba->add_option("file", ba_file)->required();
    ba->add_option("-o,--out", ba_out);

    // count
    auto* cnt = app.add_subcommand("count", "satisfiability counting");
    cnt->require_subcommand(1);
    std::string cs_file, cs_assign;
    int cs_q = 1;
    auto* cs = cnt->add_subcommand("sat", "count satisfying inputs via the elimination polynomial");
    cs->add_option("--assign", cs_assign, "parameter bits, e.g. 101")->default_val("");
    cs->add_option("--q", cs_q, "exercise the q-aware formulas with F^q");
    cs->add_option("file", cs_file)->required();

    // elim
    auto* el = app.add_subcommand("elim", "elimination families, oracles, witnesses");
    el->require_subcommand(1);
    std::string ef_name, ef_emit = "circ", ef_out;
    int ef_n = 1;
    auto* ef = el->add_subcommand("family", "construct a built-in elimination family");
    ef->add_option("--name", ef_name, "basic|hat|boolhard|points")->required();
    ef->add_option("--n", ef_n)->required();
    ef->add_option("--emit", ef_emit, "circ|problem");
    ef->add_option("--out", ef_out, "write all artifacts into this directory");

    std::string eo_method, eo_name;
    int eo_n = 1;
    auto* eo = el->add_subcommand("oracle", "compute the elimination polynomial");
    eo->add_option("--method", eo_method, "enum|multmatrix")->required();
    eo->add_option("--name", eo_name, "basic|hat|boolhard|points")->required();
    eo->add_option("--n", eo_n)->required();

    std::string ew_which, ew_name;
    int ew_n = 1;
    auto* ew = el->add_subcommand("witness", "run a lower-bound witness");
    ew->add_option("--which", ew_which, "delta-rank|l-indep")->required();
    ew->add_option("--name", ew_name, "basic|hat|boolhard|points")->required();
    ew->add_option("--n", ew_n)->required();

    // poch
    auto* po = app.add_subcommand("poch", "Pochhammer chain protocol");
    po->require_subcommand(1);
    int pg_n = 1;
    std::string pg_out;
    auto* pg = po->add_subcommand("gen", "generate a certified chain");
    pg->add_option("--n", pg_n)->required();
    pg->add_option("--out", pg_out, "output directory")->required();

    std::string pv_dir;
    int pv_trials = 8;
    auto* pv = po->add_subcommand("verify", "verify a claimed chain");
    pv->add_option("--trials", pv_trials);
    pv->add_option("dir", pv_dir)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kUsage;
    }

    if (!g.seed_given) {
        g.seed = Rng::entropy_seed();
    }

    try {
        if (stats->parsed()) return cmd_circ_stats(g, st_file);
        if (red->parsed()) return cmd_circ_reduce(g, rd_file, rd_out);
        if (jn->parsed()) return cmd_circ_join(g, jn_a, jn_b, jn_map, jn_out);
        if (rs->parsed()) return cmd_circ_restrict(g, rs_file, rs_sets, rs_out);
        if (eq->parsed()) return cmd_circ_equiv(g, eq_a, eq_b, eq_mode, eq_trials);
        if (ev->parsed()) return cmd_circ_eval(g, ev_file, ev_params, ev_inputs);
        if (ba->parsed()) return cmd_bool_arith(g, ba_file, ba_out);
        if (cs->parsed()) return cmd_count_sat(g, cs_file, cs_assign, cs_q);
        if (ef->parsed()) return cmd_elim_family(g, ef_name, ef_n, ef_emit, ef_out);
        if (eo->parsed()) return cmd_elim_oracle(g, eo_method, eo_name, eo_n);
        if (ew->parsed()) return cmd_elim_witness(g, ew_which, ew_name, ew_n);
        if (pg->parsed()) return cmd_poch_gen(g, pg_n, pg_out);
        if (pv->parsed()) return cmd_poch_verify(g, pv_dir, pv_trials);
        std::cerr << "no subcommand\n";
        return kUsage;
    } catch (const BudgetExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kBudget;
    } catch (const InconsistentCircuit& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInconsistent;
    } catch (const DivisionByZero& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInconsistent;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
}
