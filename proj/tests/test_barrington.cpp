#include "doctest.h"

#include "advice5/barrington.hpp"
#include "advice5/corpus.hpp"
#include "advice5/equiv.hpp"
#include "advice5/error.hpp"

using namespace advice5;

namespace {

const Perm5 kAlpha = Perm5::parse("23451");
const Perm5 kBeta = Perm5::parse("24153");

bool yield_is_disciplined(const PermProgram& p, int n) {
  for (std::uint64_t i = 0; i < (std::uint64_t{1} << n); ++i) {
    Perm5 y = yield_perm(p, input_from_index(i, n));
    if (!y.is_identity() && y != p.target) return false;
  }
  return true;
}

bool truth_table_matches(const PermProgram& p, int n, bool (*f)(const Bits&)) {
  for (std::uint64_t i = 0; i < (std::uint64_t{1} << n); ++i) {
    Bits x = input_from_index(i, n);
    if (eval_perm_bp(p, x) != f(x)) return false;
  }
  return true;
}

Circuit balanced_and(int d) {
  int leaves = 1 << d;
  CircuitBuilder cb(leaves);
  std::vector<NodeId> layer;
  for (int i = 1; i <= leaves; ++i) layer.push_back(cb.input(i));
  while (layer.size() > 1) {
    std::vector<NodeId> next;
    for (std::size_t i = 0; i < layer.size(); i += 2) next.push_back(cb.make_and(layer[i], layer[i + 1]));
    layer = next;
  }
  return std::move(cb).finish(layer[0]);
}

} // namespace

TEST_CASE("literal") {
  PermProgram p = compile_literal(1, kAlpha, 1);
  CHECK(p.length() == 1);
  CHECK(eval_perm_bp(p, Bits{1}));
  CHECK_FALSE(eval_perm_bp(p, Bits{0}));
  CHECK(yield_perm(p, Bits{0}).is_identity());
  CHECK_THROWS_AS(compile_literal(1, Perm5::identity(), 1), NotFiveCycle);
  CHECK_THROWS_AS(compile_literal(2, kAlpha, 1), InvariantViolation);
  CHECK_THROWS_AS(compile_literal(0, kAlpha, 1), InvariantViolation);
}

TEST_CASE("constants") {
  PermProgram zero = compile_const(false, kAlpha, 4);
  PermProgram one = compile_const(true, kAlpha, 4);
  CHECK(zero.length() == 0);
  CHECK(one.length() == 1);
  for (std::uint64_t i = 0; i < 16; ++i) {
    Bits x = input_from_index(i, 4);
    CHECK_FALSE(eval_perm_bp(zero, x));
    CHECK(eval_perm_bp(one, x));
    CHECK(yield_perm(one, x) == kAlpha);
  }
  CHECK_THROWS_AS(compile_const(true, kAlpha, 0), InvariantViolation);
  CHECK(compile_const(false, kAlpha, 0).length() == 0);
}

TEST_CASE("retarget and invert_target") {
  Rng rng(31);
  for (int trial = 0; trial < 60; ++trial) {
    int n = 1 + static_cast<int>(rng() % 8);
    PermProgram p = compile_circuit(random_circuit(rng, n, 3, 10));
    Perm5 beta = five_cycles()[rng() % 24];
    PermProgram r = retarget(p, beta);
    CHECK(r.length() == p.length());
    CHECK(r.target == beta);
    CHECK(equiv_exhaustive(evaluator(p), evaluator(r), n).equal);

    PermProgram inv = invert_target(p);
    CHECK(inv.length() == p.length());
    CHECK(inv.target == inverse(p.target));
    CHECK(invert_target(inv) == p);
    for (int k = 0; k < 8; ++k) {
      Bits x = input_from_index(rng() % (1u << n), n);
      CHECK(yield_perm(inv, x) == inverse(yield_perm(p, x)));
    }
    CHECK(equiv_exhaustive(evaluator(p), evaluator(inv), n).equal);
  }
  PermProgram lit = compile_literal(1, kAlpha, 1);
  CHECK(retarget(lit, kAlpha) == lit);
  CHECK(invert_target(PermProgram{2, {}, kAlpha}).length() == 0);
  CHECK_THROWS_AS(retarget(lit, Perm5::identity()), NotFiveCycle);
}

TEST_CASE("not") {
  PermProgram n1 = compile_not(compile_literal(1, kAlpha, 1));
  CHECK(n1.length() == 1);
  CHECK(n1.target == kAlpha);
  CHECK(eval_perm_bp(n1, Bits{0}));
  CHECK_FALSE(eval_perm_bp(n1, Bits{1}));

  PermProgram from_empty = compile_not(compile_const(false, kAlpha, 3));
  CHECK(from_empty.length() == 1);
  for (std::uint64_t i = 0; i < 8; ++i) CHECK(eval_perm_bp(from_empty, input_from_index(i, 3)));

  Rng rng(32);
  for (int trial = 0; trial < 60; ++trial) {
    int n = 1 + static_cast<int>(rng() % 6);
    PermProgram p = compile_circuit(random_circuit(rng, n, 3, 10));
    PermProgram np = compile_not(p);
    CHECK(np.length() == std::max<std::size_t>(p.length(), 1));
    for (std::uint64_t i = 0; i < (1u << n); ++i) {
      Bits x = input_from_index(i, n);
      REQUIRE(eval_perm_bp(np, x) == !eval_perm_bp(p, x));
    }
    CHECK(equiv_exhaustive(evaluator(compile_not(np)), evaluator(p), n).equal);
  }
}

TEST_CASE("and / or of literals") {
  PermProgram x1 = compile_literal(1, kAlpha, 2), x2 = compile_literal(2, kAlpha, 2);
  PermProgram a = compile_and(x1, x2);
  CHECK(a.length() == 4);
  CHECK(a.target == kAlpha);
  CHECK(truth_table_matches(a, 2, [](const Bits& x) { return x[0] && x[1]; }));
  PermProgram o = compile_or(x1, x2);
  CHECK(o.length() == 4);
  CHECK(truth_table_matches(o, 2, [](const Bits& x) { return x[0] || x[1]; }));

  PermProgram zero = compile_const(false, kAlpha, 2), one = compile_const(true, kAlpha, 2);
  CHECK(truth_table_matches(compile_and(x1, zero), 2, [](const Bits&) { return false; }));
  CHECK(truth_table_matches(compile_and(zero, x2), 2, [](const Bits&) { return false; }));
  CHECK(truth_table_matches(compile_or(one, x2), 2, [](const Bits&) { return true; }));
  CHECK(truth_table_matches(compile_or(x1, zero), 2, [](const Bits& x) { return x[0] != 0; }));
  CHECK(compile_and(x1, x2, kBeta).target == kBeta);

  CHECK_THROWS_AS(compile_and(x1, compile_literal(1, kAlpha, 1)), ArityMismatch);
  CHECK_THROWS_AS(compile_or(x1, compile_literal(1, kAlpha, 1)), ArityMismatch);
}

TEST_CASE("balanced AND trees hit 4^d exactly") {
  for (int d = 0; d <= 3; ++d) {
    Circuit c = balanced_and(d);
    PermProgram p = compile_circuit(c);
    CHECK(depth(c) == d);
    CHECK(p.length() == pow4(d));
    CHECK(compiled_length(c) == pow4(d));
  }
  CHECK(compile_circuit(parse_circuit("inputs 1\noutput x1")).length() == 1);
}

TEST_CASE("compiled programs match their circuits") {
  Rng rng(33);
  for (int trial = 0; trial < 150; ++trial) {
    int n = 1 + static_cast<int>(rng() % 8);
    Circuit c = random_circuit(rng, n, 1 + static_cast<int>(rng() % 6), 24);
    PermProgram p = compile_circuit(c);
    CHECK(p.length() <= pow4(depth(c)));
    CHECK(p.length() == compiled_length(c));
    CHECK(yield_is_disciplined(p, n));
    REQUIRE(equiv_exhaustive(evaluator(c), evaluator(p), n).equal);
    CHECK(compile_circuit(c) == p);  // deterministic
  }
}

TEST_CASE("wider circuits: exhaustive yield discipline up to 12 inputs, sampled to 16") {
  Rng rng(34);
  for (int n = 9; n <= 16; ++n) {
    Circuit c = random_circuit(rng, n, 5, 30);
    PermProgram p = compile_circuit(c);
    if (n <= 12) CHECK(yield_is_disciplined(p, n));
    CHECK(equiv_sampled(evaluator(c), evaluator(p), n, 10'000, static_cast<std::uint64_t>(n)).equal);
  }
}

TEST_CASE("compressed compilation expands to the flat program") {
  Rng rng(35);
  for (int trial = 0; trial < 150; ++trial) {
    int n = 1 + static_cast<int>(rng() % 8);
    Circuit c = random_circuit(rng, n, 1 + static_cast<int>(rng() % 6), 24);
    CompressedProgram cp = compile_circuit_compressed(c);
    PermProgram flat = compile_circuit(c);
    CHECK(cp.length() == flat.length());
    REQUIRE(cp.expand() == flat);
    for (std::uint64_t i = 0; i < (1u << n); ++i) {
      Bits x = input_from_index(i, n);
      REQUIRE(cp.yield(x) == yield_perm(flat, x));
    }
  }
  for (const auto& c : enumerate_small_circuits(2)) REQUIRE(compile_circuit_compressed(c).expand() == compile_circuit(c));
}

TEST_CASE("resource limits") {
  // A chain of ORs over one shared subterm expands to 4^(k+1).
  CircuitBuilder cb(2);
  NodeId g = cb.make_and(cb.input(1), cb.input(2));
  for (int i = 0; i < 13; ++i) g = cb.make_or(g, g);
  Circuit c = std::move(cb).finish(g);
  CHECK(compiled_length(c) > 100'000'000ULL);
  CHECK_THROWS_AS(compile_circuit(c), ResourceError);
  CompressedProgram cp = compile_circuit_compressed(c);
  CHECK(cp.length() == compiled_length(c));
  CHECK(cp.length() <= pow4(depth(c)));
  CHECK_THROWS_AS(cp.expand(), ResourceError);
  CHECK(cp.eval(Bits{1, 1}));
  CHECK_FALSE(cp.eval(Bits{0, 1}));

  CompileLimits tight{1, 3};
  CHECK_THROWS_AS(compile_circuit(parse_circuit("inputs 2\ng = AND x1 x2\noutput g"), kAlpha, tight), ResourceError);
  CHECK_THROWS_AS(compile_circuit(parse_circuit("inputs 1\noutput x1"), Perm5::identity()), NotFiveCycle);
}
