#include "doctest.h"

#include "advice5/circuit.hpp"
#include "advice5/corpus.hpp"
#include "advice5/equiv.hpp"
#include "advice5/error.hpp"

using namespace advice5;

namespace {

// Recursive evaluator straight off the node graph, used as the oracle for eval_circuit.
bool eval_rec(const Circuit& c, NodeId id, const Bits& x) {
  const Node& n = c.nodes[id];
  switch (n.kind) {
  case GateKind::Input: return x[n.a - 1];
  case GateKind::Const: return n.a;
  case GateKind::Not: return !eval_rec(c, n.a, x);
  case GateKind::And: return eval_rec(c, n.a, x) && eval_rec(c, n.b, x);
  case GateKind::Or: return eval_rec(c, n.a, x) || eval_rec(c, n.b, x);
  }
  return false;
}

int depth_rec(const Circuit& c, NodeId id) {
  const Node& n = c.nodes[id];
  switch (n.kind) {
  case GateKind::Not: return depth_rec(c, n.a);
  case GateKind::And:
  case GateKind::Or: return 1 + std::max(depth_rec(c, n.a), depth_rec(c, n.b));
  default: return 0;
  }
}

Circuit and_tree(int leaves) {
  CircuitBuilder cb(leaves);
  std::vector<NodeId> layer;
  for (int i = 1; i <= leaves; ++i) layer.push_back(cb.input(i));
  while (layer.size() > 1) {
    std::vector<NodeId> next;
    for (std::size_t i = 0; i + 1 < layer.size(); i += 2) next.push_back(cb.make_and(layer[i], layer[i + 1]));
    layer = next;
  }
  return std::move(cb).finish(layer[0]);
}

int error_line(const std::string& text) {
  try {
    parse_circuit(text);
  } catch (const ParseError& e) {
    return static_cast<int>(e.line());
  }
  return -1;
}

} // namespace

TEST_CASE("parse a two-input AND") {
  Circuit c = parse_circuit("inputs 2\ng1 = AND x1 x2\noutput g1");
  CHECK(c.num_inputs == 2);
  CHECK(gate_count(c) == 1);
  CHECK(c.nodes[c.output].kind == GateKind::And);
  CHECK(eval_circuit(c, Bits{1, 1}));
  CHECK_FALSE(eval_circuit(c, Bits{1, 0}));
  CHECK(depth(c) == 1);
}

TEST_CASE("identity and constant circuits") {
  Circuit id = parse_circuit("inputs 1\noutput x1\n");
  CHECK(depth(id) == 0);
  CHECK(eval_circuit(id, Bits{1}));
  CHECK_FALSE(eval_circuit(id, Bits{0}));

  Circuit one = parse_circuit("# constant\ninputs 3\noutput 1\n");
  for (std::uint64_t i = 0; i < 8; ++i) CHECK(eval_circuit(one, input_from_index(i, 3)));
}

TEST_CASE("parse errors carry line numbers") {
  CHECK_THROWS_AS(parse_circuit("inputs 1\ng1 = AND x1 x2\noutput g1"), ParseError);
  CHECK(error_line("inputs 1\ng1 = AND x1 x2\noutput g1") == 2);
  CHECK(error_line("inputs 2\ng1 = AND x1 y\noutput g1") == 2);             // undefined name
  CHECK(error_line("inputs 2\ng1 = OR x1 x2\ng1 = OR x1 x2\noutput g1") == 3); // duplicate
  CHECK(error_line("inputs 2\ng1 = AND x1 x2\n") > 0);                        // missing output
  CHECK(error_line("inputs 2\nx3 = AND x1 x2\noutput x3") == 2);              // reserved name
  CHECK(error_line("inputs 2\ng1 = XOR x1 x2\noutput g1") == 2);
  CHECK(error_line("inputs 2\ng1 = NOT x1 x2\noutput g1") == 2);
  CHECK(error_line("inputs x\noutput 1") == 1);
  CHECK(error_line("g1 = AND x1 x2") == 1);
  CHECK(error_line("inputs 1\noutput x1\ng1 = NOT x1") == 3);
  CHECK(error_line("inputs 1\ng1 = NOT g2\ng2 = NOT x1\noutput g1") == 2);     // forward reference
}

TEST_CASE("eval rejects wrong input length") {
  Circuit c = parse_circuit("inputs 2\ng1 = AND x1 x2\noutput g1");
  CHECK_THROWS_AS(eval_circuit(c, Bits{1}), ArityMismatch);
}

TEST_CASE("depth counts AND/OR only") {
  CHECK(depth(parse_circuit("inputs 1\ng = NOT x1\noutput g")) == 0);
  CHECK(depth(parse_circuit("inputs 2\na = AND x1 x2\nb = NOT a\nc = NOT b\nd = OR c x1\noutput d")) == 2);
  Circuit t = and_tree(8);
  CHECK(depth(t) == 3);
  CHECK(depth(t) == depth_rec(t, t.output));
}

TEST_CASE("random circuits agree with the recursive evaluator") {
  Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    int n = 1 + static_cast<int>(rng() % 8);
    Circuit c = random_circuit(rng, n, 6, 24);
    CHECK(depth(c) <= 6);
    CHECK(depth(c) == depth_rec(c, c.output));
    CHECK(depth(c) <= gate_count(c));
    for (std::uint64_t i = 0; i < (1u << n); ++i) {
      Bits x = input_from_index(i, n);
      REQUIRE(eval_circuit(c, x) == eval_rec(c, c.output, x));
    }
  }
}

TEST_CASE("netlist round trip is stable") {
  Rng rng(12);
  for (int trial = 0; trial < 200; ++trial) {
    Circuit built = random_circuit(rng, 1 + static_cast<int>(rng() % 8), 6, 24);
    Circuit once = parse_circuit(to_netlist(built));
    Circuit twice = parse_circuit(to_netlist(once));
    REQUIRE(once == twice);
    CHECK(equiv_exhaustive(evaluator(built), evaluator(once), built.num_inputs).equal);
  }
  Circuit c = parse_circuit("inputs 3\nfoo = OR x3 0\nbar = NOT foo\nout_1 = AND bar x1\noutput out_1\n");
  CHECK(parse_circuit(to_netlist(c)) == c);
}

TEST_CASE("builder shares structurally equal gates") {
  CircuitBuilder cb(2);
  NodeId a = cb.make_and(cb.input(1), cb.input(2));
  NodeId b = cb.make_and(cb.input(2), cb.input(1));
  CHECK(a == b);
  CHECK(cb.size() == 3);
  CHECK_THROWS_AS(cb.input(3), InvariantViolation);
}

TEST_CASE("validate catches broken graphs") {
  Circuit c{1, {{GateKind::Input, 1, 0}, {GateKind::And, 0, 2}}, 1};
  CHECK_THROWS_AS(validate(c), InvariantViolation);
  Circuit d{1, {{GateKind::Input, 2, 0}}, 0};
  CHECK_THROWS_AS(validate(d), InvariantViolation);
  Circuit e{1, {{GateKind::Input, 1, 0}}, 3};
  CHECK_THROWS_AS(validate(e), InvariantViolation);
}
