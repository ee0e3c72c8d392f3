#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

namespace advice5 {

using NodeId = std::uint32_t;
using Bits = std::vector<std::uint8_t>;
using BitView = std::span<const std::uint8_t>;

enum class GateKind : std::uint8_t { Input, Const, Not, And, Or };

/// One circuit node. For Input, `a` is the 1-based variable index; for Const,
/// `a` is the bit. Not uses `a`; And/Or use `a` and `b`.
struct Node {
  GateKind kind = GateKind::Const;
  NodeId a = 0;
  NodeId b = 0;

  friend bool operator==(const Node&, const Node&) = default;
};

/// Fan-in-2 AND/OR plus NOT over variables x1..xn and constants.
/// Nodes are stored in topological order: operands precede their gates.
struct Circuit {
  int num_inputs = 0;
  std::vector<Node> nodes;
  NodeId output = 0;

  friend bool operator==(const Circuit&, const Circuit&) = default;
};

/// Throws InvariantViolation when the circuit breaks acyclicity, arity or range rules.
void validate(const Circuit& c);

/// Parses the line-based netlist:
///
///     # comment
///     inputs 2
///     g1 = AND x1 x2
///     output g1
///
/// Leaves get a node on first reference. Throws ParseError with a line number.
Circuit parse_circuit(std::string_view text);

/// Writes the netlist form; gates are named g<node index>.
std::string to_netlist(const Circuit& c);

/// Throws ArityMismatch if x.size() != c.num_inputs.
bool eval_circuit(const Circuit& c, BitView x);

/// Number of AND/OR gates on the deepest leaf-to-output path. NOT gates are
/// free: negating a permutation program does not change its length, so the
/// 4^depth length bound of the width-5 compiler holds under this count.
int depth(const Circuit& c);

/// Per-node depth under the same convention.
std::vector<int> node_depths(const Circuit& c);

int gate_count(const Circuit& c);

/// Incremental construction with structural hashing: requesting the same
/// gate twice returns the same node.
class CircuitBuilder {
public:
  explicit CircuitBuilder(int num_inputs) : num_inputs_(num_inputs) {}

  NodeId input(int var);
  NodeId constant(bool bit);
  NodeId make_not(NodeId a);
  NodeId make_and(NodeId a, NodeId b);
  NodeId make_or(NodeId a, NodeId b);

  int num_inputs() const noexcept { return num_inputs_; }
  std::size_t size() const noexcept { return nodes_.size(); }

  Circuit finish(NodeId output) &&;

private:
  NodeId add(Node n);

  int num_inputs_;
  std::vector<Node> nodes_;
  std::map<std::tuple<GateKind, NodeId, NodeId>, NodeId> index_;
};

} // namespace advice5
