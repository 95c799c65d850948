#include "support.hpp"

using namespace testsupport;

TEST_CASE("parse the inline example") {
    std::string text = "circuit h1\nparams 2\ninputs 1\n"
                       "node 1 param 1\nnode 2 input 1\nnode 3 mul 1 2\noutput 3\n";
    Circuit c = parse_circuit(text);
    CHECK(c.name == "h1");
    CHECK(c.r == 2);
    CHECK(c.n == 1);
    REQUIRE(c.nodes.size() == 3);
    Interpretation interp = interpret(c);
    CHECK(to_string(interp.finals[0], interp.names) == "U1*X1");
}

TEST_CASE("parse errors and validation errors") {
    CHECK_THROWS_AS(parse_circuit("circuit a\nparams 1\ninputs 1\n"
                                  "node 3 mul 1 5\noutput 3\n"),
                    ValidationError); // forward reference
    CHECK_THROWS_AS(parse_circuit("circuit a\nparams 0\ninputs 1\n"
                                  "node 1 input 1\nnode 1 input 1\noutput 1\n"),
                    ValidationError); // duplicate id
    CHECK_THROWS_AS(parse_circuit("circuit a\nparams 0\ninputs 1\n"
                                  "node 1 input 2\noutput 1\n"),
                    ValidationError); // bad index
    CHECK_THROWS_AS(parse_circuit("circuit a\nparams 0\ninputs 1\nnode 1 input 1\n"),
                    ParseError); // missing outputs
    CHECK_THROWS_AS(parse_circuit("params 1\n"), ParseError);
    CHECK_THROWS_AS(parse_circuit("circuit a\nparams 0\ninputs 1\n"
                                  "node 1 frobnicate\noutput 1\n"),
                    ParseError);
    CHECK_THROWS_AS(parse_circuit("circuit a\nparams 0\ninputs 1\n"
                                  "node 1 input 1 9\noutput 1\n"),
                    ParseError); // trailing tokens
    try {
        parse_circuit("circuit a\nparams 0\ninputs 1\nnode x input 1\noutput 1\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line == 4);
    }
}

TEST_CASE("parse-render round trip on the fixture corpus") {
    for (const char* name : {"beta_1.circ", "beta_2.circ", "beta_3.circ", "beta_4.circ",
                             "beta_5.circ", "beta_6.circ", "h_family_1.circ", "h_family_2.circ"}) {
        Circuit c = load_circuit(name);
        std::string rendered = render_circuit(c);
        Circuit again = parse_circuit(rendered);
        CHECK(render_circuit(again) == rendered);
        REQUIRE(again.nodes.size() == c.nodes.size());
        for (std::size_t i = 0; i < c.nodes.size(); ++i) {
            CHECK(again.nodes[i].id == c.nodes[i].id);
            CHECK(again.nodes[i].kind == c.nodes[i].kind);
        }
        CHECK(again.outputs == c.outputs);
    }
}

TEST_CASE("scalar constants round trip with signs and fractions") {
    std::string text = "circuit s\nparams 0\ninputs 0\n"
                       "node 1 const -5/7\nnode 2 const 3\nnode 3 add 1 2\noutput 3\n";
    Circuit c = parse_circuit(text);
    CHECK(render_circuit(c) == text);
    CHECK(eval_numeric(c, {}, {})[0] == rat(16, 7));
}

TEST_CASE("classify") {
    CircuitBuilder b(1, 1, "c");
    int p = b.param(1);
    int x = b.input(1);
    int mix = b.mul(p, x);  // param * input: not essential
    int ess = b.mul(x, x);  // essential
    b.output(mix);
    b.output(ess);
    Circuit c = b.take();
    Classification cl = classify(c);

    CHECK(cl.of(c, p).is_parameter_node);
    CHECK_FALSE(cl.of(c, p).is_essential);
    CHECK(cl.of(c, mix).depends_on_input);
    CHECK_FALSE(cl.of(c, mix).is_essential);
    CHECK(cl.of(c, ess).is_essential);

    // complement property on every node
    for (std::size_t i = 0; i < c.nodes.size(); ++i)
        CHECK(cl.flags[i].is_parameter_node != cl.flags[i].depends_on_input);
}

TEST_CASE("metrics") {
    {
        CircuitBuilder b(0, 1, "sq");
        int x = b.input(1);
        b.output(b.mul(x, x));
        Metrics m = metrics(b.take());
        CHECK(m.nonscalar_size == 1);
        CHECK(m.essential_mul_count == 1);
    }
    {
        CircuitBuilder b(0, 1, "scaled");
        b.output(b.mul(b.scalar(3), b.input(1)));
        Metrics m = metrics(b.take());
        CHECK(m.nonscalar_size == 0); // scalar factor is free
    }
    {
        Circuit beta1 = load_circuit("beta_1.circ");
        CHECK(metrics(beta1).nonscalar_size == 3);
    }
}

TEST_CASE("family fixtures stay linear in nonscalar size") {
    for (int n = 1; n <= 6; ++n) {
        Circuit beta = load_circuit("beta_" + std::to_string(n) + ".circ");
        Metrics m = metrics(beta);
        CHECK(m.nonscalar_size <= 3 * n + 2);
    }
}

TEST_CASE("nonscalar size is invariant under node renumbering") {
    Rng rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        Circuit c = random_circuit(rng, 2, 2, 12, false);
        Circuit shifted = c;
        auto shift = [](int id) { return id * 7 + 3; };
        for (auto& nd : shifted.nodes) {
            nd.id = shift(nd.id);
            if (!is_leaf(nd.kind)) {
                nd.lhs = shift(nd.lhs);
                nd.rhs = shift(nd.rhs);
            }
        }
        for (auto& o : shifted.outputs) o = shift(o);
        validate_circuit(shifted);
        CHECK(metrics(shifted).nonscalar_size == metrics(c).nonscalar_size);
    }
}

TEST_CASE("outputs may repeat a node id") {
    Circuit c = parse_circuit("circuit twice\nparams 0\ninputs 1\n"
                              "node 1 input 1\nnode 2 mul 1 1\noutput 2 2\n");
    REQUIRE(c.outputs.size() == 2);
    Interpretation interp = interpret(c);
    CHECK(interp.finals[0].equal(interp.finals[1]));
}

TEST_CASE("division classes") {
    {
        CircuitBuilder b(0, 1, "nodiv");
        b.output(b.add(b.input(1), b.scalar(1)));
        CHECK(division_class(b.take()) == DivisionClass::TotallyDivisionFree);
    }
    {
        // divisor is a subcircuit evaluating to a nonzero scalar
        CircuitBuilder b(0, 1, "scalar_div");
        int two = b.add(b.scalar(1), b.scalar(1));
        b.output(b.div(b.input(1), two));
        CHECK(division_class(b.take()) == DivisionClass::TotallyDivisionFree);
    }
    {
        CircuitBuilder b(2, 1, "param_div");
        int q = b.div(b.param(1), b.param(2));
        b.output(b.mul(q, b.input(1)));
        Circuit c = b.take();
        CHECK(division_class(c) == DivisionClass::EssentiallyDivisionFree);
        CHECK(robustness(c) == Robustness::Unknown);
    }
    {
        CircuitBuilder b(0, 2, "gen_div");
        b.output(b.div(b.input(1), b.input(2)));
        CHECK(division_class(b.take()) == DivisionClass::General);
    }
    {
        // zero divisor function is inconsistent
        CircuitBuilder b(0, 1, "bad");
        int x = b.input(1);
        b.output(b.div(x, b.sub(x, x)));
        CHECK_THROWS_AS(division_class(b.take()), InconsistentCircuit);
    }
}
