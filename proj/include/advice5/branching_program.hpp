#pragma once

#include "advice5/circuit.hpp"
#include "advice5/perm5.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace advice5 {

/// One step of a width-5 permutation program: apply perm1 when x[var] is 1,
/// perm0 otherwise. `var` is 1-based.
struct Instruction {
  int var = 1;
  Perm5 perm1;
  Perm5 perm0;

  friend bool operator==(const Instruction&, const Instruction&) = default;
};

/// A program that target-computes f: its yield is `target` when f(x) = 1 and
/// the identity when f(x) = 0. The empty program computes constant 0.
struct PermProgram {
  int num_inputs = 0;
  std::vector<Instruction> instructions;
  Perm5 target = kDefaultTarget;

  std::size_t length() const noexcept { return instructions.size(); }
  friend bool operator==(const PermProgram&, const PermProgram&) = default;
};

/// Checks variable ranges and that the target is a 5-cycle.
void validate(const PermProgram& p);

/// Left-to-right product of the selected permutations.
Perm5 yield_perm(const PermProgram& p, BitView x);

/// Throws IllFormedProgram if the yield is neither identity nor target.
bool eval_perm_bp(const PermProgram& p, BitView x);

/// Acceptance by where state 1 ends up: true iff the yield sends 1 to
/// target(1). Agrees with eval_perm_bp on well-formed programs, and is the
/// only reading available for programs decoded from advice, whose target is
/// known only through target(1).
bool eval_state_one(const PermProgram& p, BitView x);

struct BranchNode {
  int var = 1;  // 1-based variable tested at this node
  std::uint32_t e0 = 0;  // successor index in the next level when the variable is 0
  std::uint32_t e1 = 0;

  friend bool operator==(const BranchNode&, const BranchNode&) = default;
};

/// Leveled branching program. levels[t] holds the inner nodes of level t, and
/// edges of level t point into level t+1; the level after the last inner
/// level is the sink level, stored as `sinks`. With no inner levels the start
/// node is itself a sink.
struct GeneralBP {
  int num_inputs = 0;
  std::vector<std::vector<BranchNode>> levels;
  std::vector<std::uint8_t> sinks;
  std::uint32_t start = 0;

  /// Number of inner (non-sink) levels.
  std::size_t length() const noexcept { return levels.size(); }
  friend bool operator==(const GeneralBP&, const GeneralBP&) = default;
};

void validate(const GeneralBP& b);

bool eval_general_bp(const GeneralBP& b, BitView x);

/// Size of the largest level, sinks included.
std::size_t width(const GeneralBP& b);

/// Unrolls a permutation program into 5 nodes per level. Level t node s tests
/// instructions[t].var; the start node is state 1 of level 0 and sink s is
/// labeled 1 iff s == target(1).
GeneralBP perm_to_general(const PermProgram& p);

// File formats.
//
//   permbp n=<N> len=<L> target=<5 digits>
//   instr <var> <perm1> <perm0>          (L lines)
//
//   genbp n=<N> levels=<L+1> width=<W>
//   node <level>:<index> var=<v> e0=<idx> e1=<idx>
//   sink <L>:<index> label=<0|1>
//   start <index>
std::string to_text(const PermProgram& p);
PermProgram parse_perm_program(std::string_view text);
std::string to_text(const GeneralBP& b);
GeneralBP parse_general_bp(std::string_view text);

} // namespace advice5
