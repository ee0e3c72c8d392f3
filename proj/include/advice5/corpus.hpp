#pragma once

#include "advice5/branching_program.hpp"
#include "advice5/circuit.hpp"

#include <array>
#include <cstdint>
#include <random>
#include <vector>

namespace advice5 {

using Rng = std::mt19937_64;

/// Every circuit over `num_inputs` variables of AND/OR depth <= 2, up to
/// operand order. Leaves are variables and constants; NOT appears directly
/// above a leaf or at the root.
std::vector<Circuit> enumerate_small_circuits(int num_inputs);

/// Random circuit with depth <= max_depth and at most max_gates gates.
Circuit random_circuit(Rng& rng, int num_inputs, int max_depth, int max_gates);

/// Random leveled program with `length` inner levels, each level (and the sink
/// level) holding between 1 and max_width nodes.
GeneralBP random_bp(Rng& rng, int num_inputs, std::size_t max_width, std::size_t length);

struct CorpusCounts {
  std::size_t random_circuits = 100;
  std::size_t random_bps = 100;
};

struct Corpus {
  std::vector<Circuit> circuits;  // enumerated first, then random
  std::vector<GeneralBP> bps;
};

/// Deterministic in (seed, counts): the full depth-2 enumeration over 1..3
/// variables, then random circuits (n <= 8, depth <= 6) and random programs
/// (w <= 5, L <= 64, n <= 10).
Corpus gen_corpus(std::uint64_t seed, const CorpusCounts& counts);

struct Coverage {
  std::array<std::size_t, 5> nodes_by_kind{};  // indexed by GateKind
  std::size_t const0 = 0;
  std::size_t const1 = 0;
};

Coverage coverage(const std::vector<Circuit>& circuits);

} // namespace advice5
