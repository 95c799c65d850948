#include <array>
#include <cstdio>
#include <filesystem>

#include "support.hpp"

using namespace testsupport;
namespace fs = std::filesystem;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run(const std::string& args) {
    std::string cmd = std::string(ACIRC_BIN) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult r;
    std::array<char, 4096> buf{};
    std::size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
    int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string q(const std::string& path) { return "'" + path + "'"; }

} // namespace

TEST_CASE("circ stats on a fixture") {
    RunResult r = run("circ stats " + q(fixture_path("beta_2.circ")));
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("nonscalar_size 6") != std::string::npos);
    CHECK(r.out.find("totally-division-free") != std::string::npos);
}

TEST_CASE("circ stats json") {
    RunResult r = run("--json circ stats " + q(fixture_path("beta_1.circ")));
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\"command\": \"circ stats\"") != std::string::npos);
    CHECK(r.out.find("\"nonscalar_size\": 3") != std::string::npos);
}

TEST_CASE("circ equiv exact reflexivity") {
    std::string f = q(fixture_path("h_family_1.circ"));
    RunResult r = run("circ equiv --mode exact " + f + " " + f);
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("Equal") != std::string::npos);
}

TEST_CASE("circ equiv modular is seed-deterministic") {
    std::string f = q(fixture_path("h_family_2.circ"));
    std::string cmd = "--seed 99 circ equiv --mode modular --trials 4 " + f + " " + f;
    RunResult a = run(cmd);
    RunResult b = run(cmd);
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out.find("seed 99") != std::string::npos);
}

TEST_CASE("circ eval") {
    RunResult r = run("circ eval " + q(fixture_path("h_family_2.circ")) +
                      " --params 1,2,3 --inputs 1,1");
    CHECK(r.exit_code == 0);
    CHECK(r.out == "9\n");
}

TEST_CASE("circ reduce and restrict emit circuits") {
    RunResult r = run("circ reduce " + q(fixture_path("beta_1.circ")));
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("circuit basic_1") != std::string::npos);
    RunResult rr = run("circ restrict " + q(fixture_path("h_family_1.circ")) + " --set 1=1 --set 2=1");
    CHECK(rr.exit_code == 0);
    CHECK(rr.out.find("const 1") != std::string::npos);
}

TEST_CASE("parse errors exit with code 2") {
    fs::path bad = fs::temp_directory_path() / "acirc_bad.circ";
    std::ofstream(bad) << "circuit x\nparams 0\ninputs 1\nnode 1 mul 5 5\noutput 1\n";
    RunResult r = run("circ stats " + q(bad.string()));
    CHECK(r.exit_code == 2);
}

TEST_CASE("inconsistent circuits exit with code 4") {
    fs::path bad = fs::temp_directory_path() / "acirc_incons.circ";
    std::ofstream(bad) << "circuit x\nparams 0\ninputs 1\nnode 1 input 1\n"
                          "node 2 sub 1 1\nnode 3 div 1 2\noutput 3\n";
    RunResult r = run("circ stats " + q(bad.string()));
    CHECK(r.exit_code == 4);
}

TEST_CASE("count sat matches the library") {
    RunResult r = run("count sat --assign '' " + q(fixture_path("or2.bool")));
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("k 3") != std::string::npos);
    CHECK(r.out.find("phi1 -3") != std::string::npos);
}

TEST_CASE("bool arith emits the arithmetization") {
    RunResult r = run("bool arith " + q(fixture_path("and2.bool")));
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("mul") != std::string::npos);
}

TEST_CASE("elim witness output format") {
    RunResult r = run("elim witness --which delta-rank --name basic --n 2");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("rank 4 = 2^2 PASS") != std::string::npos);

    RunResult rl = run("elim witness --which l-indep --name basic --n 2");
    CHECK(rl.exit_code == 0);
    CHECK(rl.out.find("PASS") != std::string::npos);

    // the measured boolhard deficiency surfaces as a semantic FAIL (exit 1)
    RunResult rb = run("elim witness --which delta-rank --name boolhard --n 2");
    CHECK(rb.exit_code == 1);
    CHECK(rb.out.find("rank 3 != 2^2 FAIL") != std::string::npos);
}

TEST_CASE("elim family and oracle") {
    RunResult r = run("elim family --name basic --n 1 --emit problem");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("H T*U1*X1-T*X1+X1+T") != std::string::npos);

    RunResult ro = run("elim oracle --method enum --name basic --n 1");
    CHECK(ro.exit_code == 0);
    CHECK(ro.out.find("F -T*U1*Y+T^2*U1+Y^2-T*Y-Y+T") != std::string::npos);

    RunResult rm = run("elim oracle --method multmatrix --name basic --n 1");
    CHECK(rm.out.find("F -T*U1*Y+T^2*U1+Y^2-T*Y-Y+T") != std::string::npos);
}

TEST_CASE("poch gen and verify round trip") {
    fs::path dir = fs::temp_directory_path() / "acirc_poch_test";
    fs::remove_all(dir);
    RunResult g = run("poch gen --n 4 --out " + q(dir.string()));
    CHECK(g.exit_code == 0);
    CHECK(fs::exists(dir / "chain.manifest"));
    CHECK(fs::exists(dir / "gamma_4.circ"));

    RunResult v = run("--seed 5 poch verify --trials 4 " + q(dir.string()));
    CHECK(v.exit_code == 0);
    CHECK(v.out.find("Accept") != std::string::npos);

    // corrupt one circuit and expect Reject with exit 1
    {
        std::string path = (dir / "gamma_3.circ").string();
        Circuit c = parse_circuit(slurp(path));
        for (auto& nd : c.nodes)
            if (nd.kind == OpKind::Scalar) {
                nd.scalar += 1;
                break;
            }
        std::ofstream(path) << render_circuit(c);
    }
    RunResult v2 = run("--seed 5 poch verify --trials 4 " + q(dir.string()));
    CHECK(v2.exit_code == 1);
    CHECK(v2.out.find("Reject") != std::string::npos);
}

TEST_CASE("elim family points writes the full artifact set") {
    fs::path dir = fs::temp_directory_path() / "acirc_points_test";
    fs::remove_all(dir);
    RunResult r = run("--seed 11 elim family --name points --n 1 --out " + q(dir.string()));
    CHECK(r.exit_code == 0);
    for (const char* f : {"beta.circ", "problem.txt", "eval_points.circ", "interp.circ",
                          "xi.txt", "formula11.txt"})
        CHECK(fs::exists(dir / f));
}

TEST_CASE("seeded transcripts are byte identical") {
    std::string cmd = "--seed 1234 elim family --name points --n 1 --emit problem";
    RunResult a = run(cmd);
    RunResult b = run(cmd);
    CHECK(a.out == b.out);
}

TEST_CASE("CLI output equals the direct library result") {
    // the CLI is a thin shell: the oracle's printed F is exactly the
    // library's rendering, and stats mirror metrics()
    for (int n : {1, 2}) {
        Family fam = family_basic(n);
        ElimResult res = eliminate_enum(fam.problem);
        RunResult r = run("elim oracle --method enum --name basic --n " + std::to_string(n));
        CHECK(r.out.find("F " + to_string(res.F, res.names) + "\n") != std::string::npos);

        Metrics m = metrics(fam.beta);
        RunResult s = run("elim family --name basic --n " + std::to_string(n) + " --emit circ");
        Circuit c = parse_circuit(s.out);
        CHECK(metrics(c).nonscalar_size == m.nonscalar_size);
        CHECK(metrics(c).total_nodes == m.total_nodes);
    }
}

TEST_CASE("stats lints outdegree-zero non-outputs") {
    fs::path f = fs::temp_directory_path() / "acirc_lint.circ";
    std::ofstream(f) << "circuit l\nparams 0\ninputs 1\n"
                        "node 1 input 1\nnode 2 mul 1 1\nnode 3 add 1 1\noutput 2\n";
    RunResult r = run("circ stats " + q(f.string()));
    CHECK(r.exit_code == 0); // warning, not an error
    CHECK(r.out.find("lint: node 3") != std::string::npos);
}
