#pragma once

#include "advice5/branching_program.hpp"
#include "advice5/circuit.hpp"

#include <cstdint>
#include <vector>

namespace advice5 {

/// Entry of a level transition matrix: a constant, a literal, or a gate
/// already placed in the circuit under construction.
struct Lit {
  enum class Kind : std::uint8_t { Const0, Const1, Pos, Neg, Gate };
  Kind kind = Kind::Const0;
  std::uint32_t value = 0;  // variable index for Pos/Neg, node id for Gate

  static constexpr Lit zero() { return {Kind::Const0, 0}; }
  static constexpr Lit one() { return {Kind::Const1, 0}; }
  friend bool operator==(const Lit&, const Lit&) = default;
};

/// rows x cols matrix over Lit; entry (u, v) is true on x iff the program moves
/// from node u of one level to node v of a later level.
struct LiteralMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Lit> entries;

  LiteralMatrix() = default;
  LiteralMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), entries(r * c, Lit::zero()) {}

  Lit& at(std::size_t u, std::size_t v) { return entries[u * cols + v]; }
  const Lit& at(std::size_t u, std::size_t v) const { return entries[u * cols + v]; }
};

/// Transition relation from level t to level t+1 (the sink level for the last t).
LiteralMatrix level_matrix(const GeneralBP& b, std::size_t t);

/// Boolean product: (u, v) = OR_m a(u, m) AND b(m, v). Constant operands are
/// folded; the OR is a balanced fan-in-2 tree. Adds at most ceil(log2 m) + 1
/// AND/OR levels where m = a.cols.
LiteralMatrix bool_matrix_product(const LiteralMatrix& a, const LiteralMatrix& b, CircuitBuilder& builder);

/// Places `lit` in the circuit and returns its node.
NodeId materialize(const Lit& lit, CircuitBuilder& builder);

/// Balanced OR over `terms`, constant-folded.
Lit balanced_or(std::vector<Lit> terms, CircuitBuilder& builder);

int ceil_log2(std::uint64_t v) noexcept;

/// AND/OR depth guaranteed by bp_to_circuit:
/// (ceil(log2 w) + 1) * ceil(log2 L) + ceil(log2 w) + 1.
int bp_depth_bound(std::size_t width, std::size_t length) noexcept;

/// Divide-and-conquer conversion of a leveled program into a shallow circuit:
/// the level range is halved recursively (split at floor((lo+hi)/2)) and the
/// halves are joined by bool_matrix_product; the start row is then ORed over
/// the sinks labeled 1. Throws InvariantViolation if the depth bound fails.
Circuit bp_to_circuit(const GeneralBP& b);

} // namespace advice5
