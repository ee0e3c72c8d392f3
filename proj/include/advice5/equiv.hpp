#pragma once

#include "advice5/advice_machine.hpp"
#include "advice5/barrington.hpp"
#include "advice5/branching_program.hpp"
#include "advice5/circuit.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

namespace advice5 {

/// Anything that maps n input bits to one output bit.
struct Evaluator {
  int num_inputs = 0;
  std::function<bool(BitView)> fn;
  std::string kind;

  bool operator()(BitView x) const { return fn(x); }
};

Evaluator evaluator(Circuit c);
Evaluator evaluator(PermProgram p);
Evaluator evaluator(GeneralBP b);
Evaluator evaluator(CompressedProgram p);
/// Runs the tape on the constant-space interpreter.
Evaluator evaluator(AdviceTape t);

/// Assignment number `index` with x1 as the least significant bit.
Bits input_from_index(std::uint64_t index, int n);

struct Verdict {
  bool equal = true;
  std::optional<Bits> counterexample;
  std::uint64_t inputs_checked = 0;
};

inline constexpr int kMaxExhaustiveInputs = 20;

/// Compares f and g on all 2^n assignments in index order; the reported
/// counterexample is the first differing one and is re-checked before it is
/// returned. Throws ArityMismatch when either side does not take n inputs and
/// ResourceError when n exceeds kMaxExhaustiveInputs.
Verdict equiv_exhaustive(const Evaluator& f, const Evaluator& g, int n);

/// Compares f and g on `samples` uniform random assignments.
Verdict equiv_sampled(const Evaluator& f, const Evaluator& g, int n, std::uint64_t samples, std::uint64_t seed);

} // namespace advice5
