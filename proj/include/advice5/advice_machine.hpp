#pragma once

#include "advice5/branching_program.hpp"

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>

namespace advice5 {

/// Serialized width-5 program over the alphabet {B I u m 1-5 A a r E}:
///
///   B ( I <n slots of u/m, one m> <perm1 digits> <perm0 digits> )* A <5 of a/r> E
///
/// Slot i carries the mark when the instruction reads x_i. The accept block
/// holds 'a' at the state the target sends 1 to.
struct AdviceTape {
  std::string symbols;
  int num_inputs = 0;

  friend bool operator==(const AdviceTape&, const AdviceTape&) = default;
};

/// Length is 2 + L * (11 + n) + 6.
AdviceTape encode_advice(const PermProgram& p);

/// Validates the grammar of a raw tape (one trailing newline tolerated). The
/// input count comes from the variable blocks, or from `num_inputs` when the
/// tape has no instructions. Throws GrammarError with a symbol offset.
AdviceTape parse_advice(std::string_view raw, std::optional<int> num_inputs = std::nullopt);

/// Inverse of encode_advice up to the target: the target becomes the
/// lexicographically smallest 5-cycle sending 1 to the accepting state.
PermProgram decode_advice(const AdviceTape& t);

/// Finite control of the interpreter.
enum class Control : std::uint8_t {
  Start,
  Dispatch,
  Rewind,
  VarSeek,
  VarAfter,
  CheckEnd,
  Perm1Scan,
  Perm1Done,
  Perm0Scan,
  Perm0Done,
  AcceptScan,
  AcceptYes,
  AcceptNo,
  EndYes,
  EndNo,
  HaltAccept,
  HaltReject,
};
inline constexpr std::size_t kControlStates = 17;

/// Every piece of mutable state the machine owns. Head positions live on the
/// tapes and are not part of it.
struct Registers {
  Control control = Control::Start;
  std::uint8_t state = 1;  // current program state s in 1..5
  std::uint8_t bit = 0;    // input bit read for the current instruction
  std::uint8_t digit = 1;  // position counter inside a 5-symbol block

  /// Dense index in [0, kRegisterBound).
  std::uint32_t pack() const noexcept {
    return ((static_cast<std::uint32_t>(control) * 5 + (state - 1u)) * 2 + bit) * 5 + (digit - 1u);
  }
};

/// Number of distinct register valuations: control states x 5 x 2 x 5.
inline constexpr std::size_t kRegisterBound = kControlStates * 5 * 2 * 5;

struct TraceStats {
  std::uint64_t advice_head_moves_left = 0;
  std::uint64_t advice_head_moves_right = 0;
  std::uint64_t input_head_moves = 0;
  std::uint64_t steps = 0;
  bool advice_head_monotone = true;
  std::set<std::uint32_t> register_witness;  // packed Registers seen during the run
};

struct RunResult {
  bool accept = false;
  TraceStats stats;
};

/// Runs the constant-space interpreter: the input tape holds |- x1..xn -|
/// under a read-only two-way head, the advice tape sits under a read-only
/// one-way head, and there is no work tape. Decides the encoded program.
/// Throws GrammarError on malformed advice and ArityMismatch when the variable
/// blocks disagree with the input length.
RunResult run_tm(const AdviceTape& t, BitView x);

} // namespace advice5
