#include "advice5/circuit.hpp"

#include "advice5/error.hpp"
#include "text_util.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>

namespace advice5 {

void validate(const Circuit& c) {
  if (c.num_inputs < 0) throw InvariantViolation("negative input count");
  for (std::size_t i = 0; i < c.nodes.size(); ++i) {
    const Node& n = c.nodes[i];
    auto operand_ok = [&](NodeId id) { return id < i; };
    switch (n.kind) {
    case GateKind::Input:
      if (n.a < 1 || n.a > static_cast<NodeId>(c.num_inputs))
        throw InvariantViolation("node " + std::to_string(i) + ": input index out of range");
      break;
    case GateKind::Const:
      if (n.a > 1) throw InvariantViolation("node " + std::to_string(i) + ": constant must be 0 or 1");
      break;
    case GateKind::Not:
      if (!operand_ok(n.a)) throw InvariantViolation("node " + std::to_string(i) + ": operand not earlier in order");
      break;
    case GateKind::And:
    case GateKind::Or:
      if (!operand_ok(n.a) || !operand_ok(n.b))
        throw InvariantViolation("node " + std::to_string(i) + ": operand not earlier in order");
      break;
    }
  }
  if (c.output >= c.nodes.size()) throw InvariantViolation("output refers to a missing node");
}

namespace {

// "xK" with K a decimal number; returns K or -1.
long variable_index(std::string_view tok) {
  if (tok.size() < 2 || tok[0] != 'x') return -1;
  long v = 0;
  return detail::parse_number(tok.substr(1), v) ? v : -1;
}

bool valid_name(std::string_view tok) {
  if (tok.empty()) return false;
  auto head = [](char ch) { return (ch >= 'a' && ch <= 'z') || (ch >= 'A' && ch <= 'Z') || ch == '_'; };
  auto tail = [&](char ch) { return head(ch) || (ch >= '0' && ch <= '9'); };
  if (!head(tok[0])) return false;
  return std::all_of(tok.begin() + 1, tok.end(), tail);
}

bool reserved_name(std::string_view tok) {
  return tok == "inputs" || tok == "output" || variable_index(tok) >= 0;
}

class NetlistParser {
public:
  Circuit run(std::string_view text) {
    std::size_t line_no = 0;
    bool have_output = false;
    for (std::string_view line : detail::split_lines(text)) {
      ++line_no;
      auto toks = detail::split_ws(line);
      if (toks.empty() || toks[0].front() == '#') continue;
      if (have_output) throw ParseError(line_no, "content after output line");
      if (!have_inputs_) {
        parse_inputs(line_no, toks);
        continue;
      }
      if (toks[0] == "output") {
        if (toks.size() != 2) throw ParseError(line_no, "expected 'output ARG'");
        c_.output = resolve(line_no, toks[1]);
        have_output = true;
        continue;
      }
      parse_gate(line_no, toks);
    }
    if (!have_inputs_) throw ParseError(line_no, "missing 'inputs N' line");
    if (!have_output) throw ParseError(line_no, "missing output line");
    validate(c_);
    return std::move(c_);
  }

private:
  void parse_inputs(std::size_t line_no, const std::vector<std::string_view>& toks) {
    if (toks.size() != 2 || toks[0] != "inputs") throw ParseError(line_no, "expected 'inputs N'");
    c_.num_inputs = detail::expect_number<int>(line_no, toks[1], "input count");
    if (c_.num_inputs < 0) throw ParseError(line_no, "negative input count");
    have_inputs_ = true;
  }

  void parse_gate(std::size_t line_no, const std::vector<std::string_view>& toks) {
    if (toks.size() < 4 || toks[1] != "=") throw ParseError(line_no, "expected 'NAME = OP ARG [ARG]'");
    std::string_view name = toks[0];
    if (!valid_name(name) || reserved_name(name))
      throw ParseError(line_no, "invalid gate name '" + std::string(name) + "'");
    if (names_.count(std::string(name))) throw ParseError(line_no, "duplicate definition of '" + std::string(name) + "'");
    std::string_view op = toks[2];
    Node node;
    if (op == "NOT") {
      if (toks.size() != 4) throw ParseError(line_no, "NOT takes one argument");
      node = {GateKind::Not, resolve(line_no, toks[3]), 0};
    } else if (op == "AND" || op == "OR") {
      if (toks.size() != 5) throw ParseError(line_no, std::string(op) + " takes two arguments");
      NodeId a = resolve(line_no, toks[3]);
      NodeId b = resolve(line_no, toks[4]);
      node = {op == "AND" ? GateKind::And : GateKind::Or, a, b};
    } else {
      throw ParseError(line_no, "unknown operator '" + std::string(op) + "'");
    }
    names_.emplace(std::string(name), static_cast<NodeId>(c_.nodes.size()));
    c_.nodes.push_back(node);
  }

  NodeId resolve(std::size_t line_no, std::string_view tok) {
    if (tok == "0" || tok == "1") {
      int bit = tok == "1";
      if (consts_[bit] < 0) {
        consts_[bit] = static_cast<long>(c_.nodes.size());
        c_.nodes.push_back({GateKind::Const, static_cast<NodeId>(bit), 0});
      }
      return static_cast<NodeId>(consts_[bit]);
    }
    if (long v = variable_index(tok); v >= 0) {
      if (v < 1 || v > c_.num_inputs)
        throw ParseError(line_no, "input index out of range: " + std::string(tok));
      auto [it, fresh] = inputs_.try_emplace(v, static_cast<NodeId>(c_.nodes.size()));
      if (fresh) c_.nodes.push_back({GateKind::Input, static_cast<NodeId>(v), 0});
      return it->second;
    }
    auto it = names_.find(std::string(tok));
    if (it == names_.end()) throw ParseError(line_no, "undefined name '" + std::string(tok) + "'");
    return it->second;
  }

  Circuit c_;
  bool have_inputs_ = false;
  long consts_[2] = {-1, -1};
  std::unordered_map<long, NodeId> inputs_;
  std::unordered_map<std::string, NodeId> names_;
};

} // namespace

Circuit parse_circuit(std::string_view text) { return NetlistParser{}.run(text); }

std::string to_netlist(const Circuit& c) {
  std::ostringstream os;
  auto ref = [&](NodeId id) -> std::string {
    const Node& n = c.nodes[id];
    switch (n.kind) {
    case GateKind::Input: return "x" + std::to_string(n.a);
    case GateKind::Const: return std::to_string(n.a);
    default: return "g" + std::to_string(id);
    }
  };
  os << "inputs " << c.num_inputs << '\n';
  for (std::size_t i = 0; i < c.nodes.size(); ++i) {
    const Node& n = c.nodes[i];
    switch (n.kind) {
    case GateKind::Not: os << 'g' << i << " = NOT " << ref(n.a) << '\n'; break;
    case GateKind::And: os << 'g' << i << " = AND " << ref(n.a) << ' ' << ref(n.b) << '\n'; break;
    case GateKind::Or: os << 'g' << i << " = OR " << ref(n.a) << ' ' << ref(n.b) << '\n'; break;
    default: break;
    }
  }
  os << "output " << ref(c.output) << '\n';
  return os.str();
}

bool eval_circuit(const Circuit& c, BitView x) {
  if (x.size() != static_cast<std::size_t>(c.num_inputs))
    throw ArityMismatch("circuit expects " + std::to_string(c.num_inputs) + " inputs, got " +
                        std::to_string(x.size()));
  std::vector<std::uint8_t> val(c.nodes.size());
  for (std::size_t i = 0; i < c.nodes.size(); ++i) {
    const Node& n = c.nodes[i];
    switch (n.kind) {
    case GateKind::Input: val[i] = x[n.a - 1] & 1; break;
    case GateKind::Const: val[i] = static_cast<std::uint8_t>(n.a); break;
    case GateKind::Not: val[i] = !val[n.a]; break;
    case GateKind::And: val[i] = val[n.a] & val[n.b]; break;
    case GateKind::Or: val[i] = val[n.a] | val[n.b]; break;
    }
  }
  return val[c.output];
}

std::vector<int> node_depths(const Circuit& c) {
  std::vector<int> d(c.nodes.size(), 0);
  for (std::size_t i = 0; i < c.nodes.size(); ++i) {
    const Node& n = c.nodes[i];
    if (n.kind == GateKind::Not) d[i] = d[n.a];
    else if (n.kind == GateKind::And || n.kind == GateKind::Or) d[i] = 1 + std::max(d[n.a], d[n.b]);
  }
  return d;
}

int depth(const Circuit& c) {
  if (c.nodes.empty()) return 0;
  return node_depths(c)[c.output];
}

int gate_count(const Circuit& c) {
  return static_cast<int>(std::count_if(c.nodes.begin(), c.nodes.end(), [](const Node& n) {
    return n.kind == GateKind::Not || n.kind == GateKind::And || n.kind == GateKind::Or;
  }));
}

NodeId CircuitBuilder::add(Node n) {
  auto key = std::tuple{n.kind, n.a, n.b};
  if (auto it = index_.find(key); it != index_.end()) return it->second;
  auto id = static_cast<NodeId>(nodes_.size());
  nodes_.push_back(n);
  index_.emplace(key, id);
  return id;
}

NodeId CircuitBuilder::input(int var) {
  if (var < 1 || var > num_inputs_) throw InvariantViolation("input index out of range: x" + std::to_string(var));
  return add({GateKind::Input, static_cast<NodeId>(var), 0});
}

NodeId CircuitBuilder::constant(bool bit) { return add({GateKind::Const, bit ? 1u : 0u, 0}); }
NodeId CircuitBuilder::make_not(NodeId a) { return add({GateKind::Not, a, 0}); }
NodeId CircuitBuilder::make_and(NodeId a, NodeId b) { return add({GateKind::And, std::min(a, b), std::max(a, b)}); }
NodeId CircuitBuilder::make_or(NodeId a, NodeId b) { return add({GateKind::Or, std::min(a, b), std::max(a, b)}); }

Circuit CircuitBuilder::finish(NodeId output) && {
  Circuit c{num_inputs_, std::move(nodes_), output};
  validate(c);
  return c;
}

} // namespace advice5
