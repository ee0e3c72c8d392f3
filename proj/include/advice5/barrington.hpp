#pragma once

#include "advice5/branching_program.hpp"
#include "advice5/circuit.hpp"
#include "advice5/perm5.hpp"

#include <cstdint>
#include <vector>

namespace advice5 {

// Circuit -> width-5 permutation program compiler.
//
// A program "alpha-computes" f when it yields alpha on f(x) = 1 and the
// identity on f(x) = 0. Literals are one instruction; negation folds the
// inverse target into the last instruction; AND concatenates P, Q, P^-1, Q^-1
// retargeted to a fixed pair of 5-cycles whose commutator is again a 5-cycle,
// which gives length 4^depth for a balanced tree.

/// (var=i, perm1=alpha, perm0=identity).
PermProgram compile_literal(int var, const Perm5& alpha, int num_inputs);

/// bit 0: the empty program. bit 1: (var=1, alpha, alpha), which needs num_inputs >= 1.
PermProgram compile_const(bool bit, const Perm5& alpha, int num_inputs);

/// Conjugates every instruction so the program computes the same function with target beta.
PermProgram retarget(const PermProgram& p, const Perm5& beta);

/// Reversed program with inverted permutations; yields the inverse of p's yield.
PermProgram invert_target(const PermProgram& p);

/// Computes the negation with the same target and length (length 1 for the empty program).
PermProgram compile_not(const PermProgram& p);

PermProgram compile_and(const PermProgram& p, const PermProgram& q, const Perm5& target = kDefaultTarget);
PermProgram compile_or(const PermProgram& p, const PermProgram& q, const Perm5& target = kDefaultTarget);

struct CompileLimits {
  std::uint64_t warn_length = 1'000'000;
  std::uint64_t max_length = 100'000'000;
};

/// Length of the program compile_circuit would emit, shared subcircuits
/// counted once per use. Saturates at UINT64_MAX.
std::uint64_t compiled_length(const Circuit& c);

/// 4^d, saturating.
std::uint64_t pow4(int d) noexcept;

/// Tree-expanding compilation from the output node. Throws ResourceError when
/// the result would exceed limits.max_length instructions and logs a warning
/// past limits.warn_length. The result length never exceeds 4^depth(c).
PermProgram compile_circuit(const Circuit& c, const Perm5& sigma = kDefaultTarget, const CompileLimits& limits = {});

/// The same program as compile_circuit, kept as a straight-line grammar over
/// instruction blocks so that programs far beyond memory can still be
/// measured and evaluated. expand() reproduces compile_circuit byte for byte.
class CompressedProgram {
public:
  enum class OpKind : std::uint8_t { Empty, Single, Concat, Conjugate, Invert, TailMultiply };

  struct Op {
    OpKind kind = OpKind::Empty;
    Instruction ins;                  // Single
    std::vector<std::uint32_t> args;  // children, earlier ops only
    Perm5 perm;                       // Conjugate: conjugator; TailMultiply: right factor
    std::uint64_t length = 0;
    std::uint8_t rank1 = 0, rank0 = 0, perm_rank = 0;  // cached Perm5::rank() values
  };

  int num_inputs() const noexcept { return num_inputs_; }
  const Perm5& target() const noexcept { return target_; }
  std::uint64_t length() const noexcept { return ops_.empty() ? 0 : ops_[root_].length; }
  std::size_t op_count() const noexcept { return ops_.size(); }

  Perm5 yield(BitView x) const;
  /// Throws IllFormedProgram like eval_perm_bp.
  bool eval(BitView x) const;
  /// Throws ResourceError if length() > max_length.
  PermProgram expand(std::uint64_t max_length = 100'000'000) const;

private:
  friend class CompressedBuilder;
  void expand_into(std::uint32_t id, std::vector<Instruction>& out) const;

  int num_inputs_ = 0;
  std::vector<Op> ops_;
  std::uint32_t root_ = 0;
  Perm5 target_ = kDefaultTarget;
};

CompressedProgram compile_circuit_compressed(const Circuit& c, const Perm5& sigma = kDefaultTarget);

} // namespace advice5
