#include "advice5/barrington.hpp"

#include "advice5/error.hpp"

#include <algorithm>
#include <iostream>
#include <limits>
#include <map>

namespace advice5 {

namespace {

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) noexcept { return a > kSaturated - b ? kSaturated : a + b; }
std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) noexcept {
  if (a != 0 && b > kSaturated / a) return kSaturated;
  return a * b;
}

void require_five_cycle(const Perm5& p) {
  if (!is_five_cycle(p)) throw NotFiveCycle(p.to_string());
}

void require_same_arity(const PermProgram& p, const PermProgram& q) {
  if (p.num_inputs != q.num_inputs)
    throw ArityMismatch("operands have " + std::to_string(p.num_inputs) + " and " + std::to_string(q.num_inputs) +
                        " inputs");
}

} // namespace

std::uint64_t pow4(int d) noexcept {
  std::uint64_t r = 1;
  for (int i = 0; i < d; ++i) r = sat_mul(r, 4);
  return r;
}

PermProgram compile_literal(int var, const Perm5& alpha, int num_inputs) {
  require_five_cycle(alpha);
  if (var < 1 || var > num_inputs)
    throw InvariantViolation("literal x" + std::to_string(var) + " out of range for " + std::to_string(num_inputs) +
                             " inputs");
  return {num_inputs, {Instruction{var, alpha, Perm5::identity()}}, alpha};
}

PermProgram compile_const(bool bit, const Perm5& alpha, int num_inputs) {
  require_five_cycle(alpha);
  if (!bit) return {num_inputs, {}, alpha};
  if (num_inputs < 1) throw InvariantViolation("constant 1 needs at least one input variable to attach to");
  return {num_inputs, {Instruction{1, alpha, alpha}}, alpha};
}

PermProgram retarget(const PermProgram& p, const Perm5& beta) {
  require_five_cycle(beta);
  const Perm5 g = find_conjugator(p.target, beta);
  PermProgram out{p.num_inputs, p.instructions, beta};
  if (g.is_identity()) return out;
  for (auto& ins : out.instructions) {
    ins.perm1 = conjugate(ins.perm1, g);
    ins.perm0 = conjugate(ins.perm0, g);
  }
  return out;
}

PermProgram invert_target(const PermProgram& p) {
  PermProgram out{p.num_inputs, {}, inverse(p.target)};
  out.instructions.reserve(p.instructions.size());
  for (auto it = p.instructions.rbegin(); it != p.instructions.rend(); ++it)
    out.instructions.push_back({it->var, inverse(it->perm1), inverse(it->perm0)});
  return out;
}

PermProgram compile_not(const PermProgram& p) {
  if (p.instructions.empty()) return compile_const(true, p.target, p.num_inputs);
  // Right-multiplying the last step by target^-1 turns yields {target, id}
  // into {id, target^-1}: the program now target^-1-computes the negation.
  const Perm5 undo = inverse(p.target);
  PermProgram out{p.num_inputs, p.instructions, undo};
  auto& last = out.instructions.back();
  last.perm1 = compose(last.perm1, undo);
  last.perm0 = compose(last.perm0, undo);
  return retarget(out, p.target);
}

PermProgram compile_and(const PermProgram& p, const PermProgram& q, const Perm5& target) {
  require_same_arity(p, q);
  require_five_cycle(target);
  const auto& [s1, s2] = find_commutator_pair();
  PermProgram a = retarget(p, s1);
  PermProgram b = retarget(q, s2);
  PermProgram a_inv = invert_target(a);
  PermProgram b_inv = invert_target(b);

  PermProgram out{p.num_inputs, {}, commutator(s1, s2)};
  out.instructions.reserve(2 * (a.length() + b.length()));
  for (const auto* part : {&a, &b, &a_inv, &b_inv})
    out.instructions.insert(out.instructions.end(), part->instructions.begin(), part->instructions.end());
  return retarget(out, target);
}

PermProgram compile_or(const PermProgram& p, const PermProgram& q, const Perm5& target) {
  return compile_not(compile_and(compile_not(p), compile_not(q), target));
}

std::uint64_t compiled_length(const Circuit& c) {
  std::vector<std::uint64_t> len(c.nodes.size(), 0);
  auto at_least_one = [](std::uint64_t v) { return std::max<std::uint64_t>(v, 1); };
  for (std::size_t i = 0; i < c.nodes.size(); ++i) {
    const Node& n = c.nodes[i];
    switch (n.kind) {
    case GateKind::Input: len[i] = 1; break;
    case GateKind::Const: len[i] = n.a; break;
    case GateKind::Not: len[i] = at_least_one(len[n.a]); break;
    case GateKind::And: len[i] = sat_add(sat_mul(2, len[n.a]), sat_mul(2, len[n.b])); break;
    case GateKind::Or: len[i] = sat_add(sat_mul(2, at_least_one(len[n.a])), sat_mul(2, at_least_one(len[n.b]))); break;
    }
  }
  return c.nodes.empty() ? 0 : len[c.output];
}

namespace {

class FlatCompiler {
public:
  explicit FlatCompiler(const Circuit& c) : c_(c) {}

  PermProgram compile(NodeId id, const Perm5& target) {
    auto key = std::pair{id, target.rank()};
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    const Node& n = c_.nodes[id];
    const auto& [s1, s2] = find_commutator_pair();
    PermProgram out;
    switch (n.kind) {
    case GateKind::Input: out = compile_literal(static_cast<int>(n.a), target, c_.num_inputs); break;
    case GateKind::Const: out = compile_const(n.a != 0, target, c_.num_inputs); break;
    case GateKind::Not: out = compile_not(compile(n.a, target)); break;
    case GateKind::And: out = compile_and(compile(n.a, s1), compile(n.b, s2), target); break;
    case GateKind::Or: out = compile_or(compile(n.a, s1), compile(n.b, s2), target); break;
    }
    memo_.emplace(key, out);
    return out;
  }

private:
  const Circuit& c_;
  std::map<std::pair<NodeId, std::uint8_t>, PermProgram> memo_;
};

} // namespace

PermProgram compile_circuit(const Circuit& c, const Perm5& sigma, const CompileLimits& limits) {
  validate(c);
  require_five_cycle(sigma);
  const std::uint64_t expected = compiled_length(c);
  if (expected > limits.max_length)
    throw ResourceError("compiled program would have " + std::to_string(expected) + " instructions (limit " +
                        std::to_string(limits.max_length) + ")");
  if (expected > limits.warn_length)
    std::cerr << "warning: compiling " << expected << " instructions after tree expansion\n";

  PermProgram out = FlatCompiler(c).compile(c.output, sigma);
  if (out.length() != expected)
    throw InvariantViolation("compiled length " + std::to_string(out.length()) + " differs from predicted " +
                             std::to_string(expected));
  if (out.length() > pow4(depth(c)))
    throw InvariantViolation("compiled length " + std::to_string(out.length()) + " exceeds 4^" +
                             std::to_string(depth(c)));
  return out;
}

// Mirrors the flat operations above on CompressedProgram ops.
class CompressedBuilder {
public:
  struct Handle {
    std::uint32_t id;
    Perm5 target;
  };

  explicit CompressedBuilder(int num_inputs) { prog_.num_inputs_ = num_inputs; }

  Handle literal(int var, const Perm5& alpha) {
    require_five_cycle(alpha);
    if (var < 1 || var > prog_.num_inputs_) throw InvariantViolation("literal x" + std::to_string(var) + " out of range");
    return {single({var, alpha, Perm5::identity()}), alpha};
  }

  Handle constant(bool bit, const Perm5& alpha) {
    require_five_cycle(alpha);
    if (!bit) return {add({}), alpha};
    if (prog_.num_inputs_ < 1) throw InvariantViolation("constant 1 needs at least one input variable to attach to");
    return {single({1, alpha, alpha}), alpha};
  }

  Handle retarget(Handle h, const Perm5& beta) {
    const Perm5 g = find_conjugator(h.target, beta);
    if (g.is_identity()) return {h.id, beta};
    CompressedProgram::Op op;
    op.kind = CompressedProgram::OpKind::Conjugate;
    op.args = {h.id};
    op.perm = g;
    op.length = length(h);
    return {add(std::move(op)), beta};
  }

  Handle invert(Handle h) {
    CompressedProgram::Op op;
    op.kind = CompressedProgram::OpKind::Invert;
    op.args = {h.id};
    op.length = length(h);
    return {add(std::move(op)), inverse(h.target)};
  }

  Handle negate(Handle h) {
    if (length(h) == 0) return constant(true, h.target);
    const Perm5 undo = inverse(h.target);
    CompressedProgram::Op op;
    op.kind = CompressedProgram::OpKind::TailMultiply;
    op.args = {h.id};
    op.perm = undo;
    op.length = length(h);
    return retarget({add(std::move(op)), undo}, h.target);
  }

  Handle conjoin(Handle p, Handle q, const Perm5& target) {
    const auto& [s1, s2] = find_commutator_pair();
    Handle a = retarget(p, s1);
    Handle b = retarget(q, s2);
    Handle a_inv = invert(a);
    Handle b_inv = invert(b);
    CompressedProgram::Op op;
    op.kind = CompressedProgram::OpKind::Concat;
    op.args = {a.id, b.id, a_inv.id, b_inv.id};
    op.length = sat_add(sat_mul(2, length(a)), sat_mul(2, length(b)));
    return retarget({add(std::move(op)), commutator(s1, s2)}, target);
  }

  Handle disjoin(Handle p, Handle q, const Perm5& target) { return negate(conjoin(negate(p), negate(q), target)); }

  CompressedProgram finish(Handle root) && {
    prog_.root_ = root.id;
    prog_.target_ = root.target;
    return std::move(prog_);
  }

private:
  std::uint64_t length(Handle h) const { return prog_.ops_[h.id].length; }

  std::uint32_t single(const Instruction& ins) {
    CompressedProgram::Op op;
    op.kind = CompressedProgram::OpKind::Single;
    op.ins = ins;
    op.length = 1;
    return add(std::move(op));
  }

  std::uint32_t add(CompressedProgram::Op op) {
    op.rank1 = op.ins.perm1.rank();
    op.rank0 = op.ins.perm0.rank();
    op.perm_rank = op.perm.rank();
    prog_.ops_.push_back(std::move(op));
    return static_cast<std::uint32_t>(prog_.ops_.size() - 1);
  }

  CompressedProgram prog_;
};

CompressedProgram compile_circuit_compressed(const Circuit& c, const Perm5& sigma) {
  validate(c);
  require_five_cycle(sigma);
  CompressedBuilder builder(c.num_inputs);
  std::map<std::pair<NodeId, std::uint8_t>, CompressedBuilder::Handle> memo;
  const auto& [s1, s2] = find_commutator_pair();

  auto compile = [&](auto& self, NodeId id, const Perm5& target) -> CompressedBuilder::Handle {
    auto key = std::pair{id, target.rank()};
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    const Node& n = c.nodes[id];
    CompressedBuilder::Handle h{};
    switch (n.kind) {
    case GateKind::Input: h = builder.literal(static_cast<int>(n.a), target); break;
    case GateKind::Const: h = builder.constant(n.a != 0, target); break;
    case GateKind::Not: h = builder.negate(self(self, n.a, target)); break;
    case GateKind::And: h = builder.conjoin(self(self, n.a, s1), self(self, n.b, s2), target); break;
    case GateKind::Or: h = builder.disjoin(self(self, n.a, s1), self(self, n.b, s2), target); break;
    }
    memo.emplace(key, h);
    return h;
  };
  auto root = compile(compile, c.output, sigma);
  CompressedProgram out = std::move(builder).finish(root);
  if (out.length() > pow4(depth(c)))
    throw InvariantViolation("compiled length " + std::to_string(out.length()) + " exceeds 4^" +
                             std::to_string(depth(c)));
  return out;
}

Perm5 CompressedProgram::yield(BitView x) const {
  if (x.size() != static_cast<std::size_t>(num_inputs_))
    throw ArityMismatch("program expects " + std::to_string(num_inputs_) + " inputs, got " + std::to_string(x.size()));
  if (ops_.empty()) return Perm5::identity();
  // Ops are created children-first, so one forward sweep evaluates the grammar.
  std::vector<std::uint8_t> y(root_ + 1);
  for (std::uint32_t i = 0; i <= root_; ++i) {
    const Op& op = ops_[i];
    switch (op.kind) {
    case OpKind::Empty: y[i] = 0; break;
    case OpKind::Single: y[i] = x[op.ins.var - 1] ? op.rank1 : op.rank0; break;
    case OpKind::Concat: {
      std::uint8_t acc = 0;  // identity
      for (auto a : op.args) acc = compose_rank(acc, y[a]);
      y[i] = acc;
      break;
    }
    case OpKind::Conjugate: {
      std::uint8_t g = op.perm_rank;
      y[i] = compose_rank(compose_rank(inverse_rank(g), y[op.args[0]]), g);
      break;
    }
    case OpKind::Invert: y[i] = inverse_rank(y[op.args[0]]); break;
    case OpKind::TailMultiply: y[i] = compose_rank(y[op.args[0]], op.perm_rank); break;
    }
  }
  return Perm5::unrank(y[root_]);
}

bool CompressedProgram::eval(BitView x) const {
  Perm5 y = yield(x);
  if (y == target_) return true;
  if (y.is_identity()) return false;
  throw IllFormedProgram("yield " + y.to_string() + " is neither identity nor target " + target_.to_string());
}

void CompressedProgram::expand_into(std::uint32_t id, std::vector<Instruction>& out) const {
  const Op& op = ops_[id];
  const std::size_t begin = out.size();
  switch (op.kind) {
  case OpKind::Empty: break;
  case OpKind::Single: out.push_back(op.ins); break;
  case OpKind::Concat:
    for (auto a : op.args) expand_into(a, out);
    break;
  case OpKind::Conjugate:
    expand_into(op.args[0], out);
    for (std::size_t i = begin; i < out.size(); ++i) {
      out[i].perm1 = conjugate(out[i].perm1, op.perm);
      out[i].perm0 = conjugate(out[i].perm0, op.perm);
    }
    break;
  case OpKind::Invert:
    expand_into(op.args[0], out);
    std::reverse(out.begin() + static_cast<std::ptrdiff_t>(begin), out.end());
    for (std::size_t i = begin; i < out.size(); ++i) {
      out[i].perm1 = inverse(out[i].perm1);
      out[i].perm0 = inverse(out[i].perm0);
    }
    break;
  case OpKind::TailMultiply:
    expand_into(op.args[0], out);
    out.back().perm1 = compose(out.back().perm1, op.perm);
    out.back().perm0 = compose(out.back().perm0, op.perm);
    break;
  }
}

PermProgram CompressedProgram::expand(std::uint64_t max_length) const {
  if (length() > max_length)
    throw ResourceError("program has " + std::to_string(length()) + " instructions (limit " +
                        std::to_string(max_length) + ")");
  PermProgram out{num_inputs_, {}, target_};
  out.instructions.reserve(static_cast<std::size_t>(length()));
  if (!ops_.empty()) expand_into(root_, out.instructions);
  return out;
}

} // namespace advice5
