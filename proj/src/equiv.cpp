#include "advice5/equiv.hpp"

#include "advice5/error.hpp"

#include <memory>
#include <random>

namespace advice5 {

Evaluator evaluator(Circuit c) {
  int n = c.num_inputs;
  auto obj = std::make_shared<const Circuit>(std::move(c));
  return {n, [obj](BitView x) { return eval_circuit(*obj, x); }, "circuit"};
}

Evaluator evaluator(PermProgram p) {
  int n = p.num_inputs;
  auto obj = std::make_shared<const PermProgram>(std::move(p));
  return {n, [obj](BitView x) { return eval_perm_bp(*obj, x); }, "permbp"};
}

Evaluator evaluator(GeneralBP b) {
  int n = b.num_inputs;
  auto obj = std::make_shared<const GeneralBP>(std::move(b));
  return {n, [obj](BitView x) { return eval_general_bp(*obj, x); }, "genbp"};
}

Evaluator evaluator(CompressedProgram p) {
  int n = p.num_inputs();
  auto obj = std::make_shared<const CompressedProgram>(std::move(p));
  return {n, [obj](BitView x) { return obj->eval(x); }, "compressed"};
}

Evaluator evaluator(AdviceTape t) {
  int n = t.num_inputs;
  auto obj = std::make_shared<const AdviceTape>(std::move(t));
  return {n, [obj](BitView x) { return run_tm(*obj, x).accept; }, "advice"};
}

Bits input_from_index(std::uint64_t index, int n) {
  Bits x(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) x[static_cast<std::size_t>(j)] = static_cast<std::uint8_t>((index >> j) & 1);
  return x;
}

namespace {

void check_arity(const Evaluator& f, const Evaluator& g, int n) {
  if (f.num_inputs != n || g.num_inputs != n)
    throw ArityMismatch("cannot compare a " + std::to_string(f.num_inputs) + "-input " + f.kind + " with a " +
                        std::to_string(g.num_inputs) + "-input " + g.kind + " over " + std::to_string(n) + " inputs");
}

// Both sides are evaluated again so a reported difference is never a fluke of
// stateful evaluation.
bool confirm(const Evaluator& f, const Evaluator& g, const Bits& x) { return f(x) != g(x); }

} // namespace

Verdict equiv_exhaustive(const Evaluator& f, const Evaluator& g, int n) {
  check_arity(f, g, n);
  if (n > kMaxExhaustiveInputs)
    throw ResourceError("exhaustive comparison is capped at " + std::to_string(kMaxExhaustiveInputs) + " inputs");
  Verdict v;
  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t i = 0; i < total; ++i) {
    Bits x = input_from_index(i, n);
    ++v.inputs_checked;
    if (f(x) != g(x)) {
      if (!confirm(f, g, x)) throw InvariantViolation("evaluators disagreed once and then agreed");
      v.equal = false;
      v.counterexample = std::move(x);
      return v;
    }
  }
  return v;
}

Verdict equiv_sampled(const Evaluator& f, const Evaluator& g, int n, std::uint64_t samples, std::uint64_t seed) {
  check_arity(f, g, n);
  std::mt19937_64 rng(seed);
  Verdict v;
  Bits x(static_cast<std::size_t>(n));
  for (std::uint64_t s = 0; s < samples; ++s) {
    for (auto& bit : x) bit = static_cast<std::uint8_t>(rng() & 1);
    ++v.inputs_checked;
    if (f(x) != g(x)) {
      if (!confirm(f, g, x)) throw InvariantViolation("evaluators disagreed once and then agreed");
      v.equal = false;
      v.counterexample = x;
      return v;
    }
  }
  return v;
}

} // namespace advice5
