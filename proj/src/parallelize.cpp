#include "advice5/parallelize.hpp"

#include "advice5/error.hpp"

#include <algorithm>

namespace advice5 {

LiteralMatrix level_matrix(const GeneralBP& b, std::size_t t) {
  if (t >= b.levels.size())
    throw InvariantViolation("level " + std::to_string(t) + " out of range (" + std::to_string(b.levels.size()) +
                             " inner levels)");
  const auto& level = b.levels[t];
  const std::size_t next = t + 1 < b.levels.size() ? b.levels[t + 1].size() : b.sinks.size();
  LiteralMatrix m(level.size(), next);
  for (std::size_t u = 0; u < level.size(); ++u) {
    const auto& n = level[u];
    if (n.e0 >= next || n.e1 >= next) throw InvariantViolation("edge leaves the next level");
    const auto var = static_cast<std::uint32_t>(n.var);
    if (n.e0 == n.e1) {
      m.at(u, n.e0) = Lit::one();
    } else {
      m.at(u, n.e1) = {Lit::Kind::Pos, var};
      m.at(u, n.e0) = {Lit::Kind::Neg, var};
    }
  }
  return m;
}

NodeId materialize(const Lit& lit, CircuitBuilder& builder) {
  switch (lit.kind) {
  case Lit::Kind::Const0: return builder.constant(false);
  case Lit::Kind::Const1: return builder.constant(true);
  case Lit::Kind::Pos: return builder.input(static_cast<int>(lit.value));
  case Lit::Kind::Neg: return builder.make_not(builder.input(static_cast<int>(lit.value)));
  case Lit::Kind::Gate: return lit.value;
  }
  return 0;
}

namespace {

Lit fold_and(const Lit& a, const Lit& b, CircuitBuilder& builder) {
  if (a.kind == Lit::Kind::Const0 || b.kind == Lit::Kind::Const0) return Lit::zero();
  if (a.kind == Lit::Kind::Const1) return b;
  if (b.kind == Lit::Kind::Const1) return a;
  return {Lit::Kind::Gate, builder.make_and(materialize(a, builder), materialize(b, builder))};
}

Lit or_range(const std::vector<Lit>& terms, std::size_t lo, std::size_t hi, CircuitBuilder& builder) {
  if (hi - lo == 1) return terms[lo];
  std::size_t mid = lo + (hi - lo) / 2;
  Lit left = or_range(terms, lo, mid, builder);
  Lit right = or_range(terms, mid, hi, builder);
  return {Lit::Kind::Gate, builder.make_or(materialize(left, builder), materialize(right, builder))};
}

} // namespace

Lit balanced_or(std::vector<Lit> terms, CircuitBuilder& builder) {
  std::erase_if(terms, [](const Lit& l) { return l.kind == Lit::Kind::Const0; });
  if (std::any_of(terms.begin(), terms.end(), [](const Lit& l) { return l.kind == Lit::Kind::Const1; }))
    return Lit::one();
  if (terms.empty()) return Lit::zero();
  return or_range(terms, 0, terms.size(), builder);
}

LiteralMatrix bool_matrix_product(const LiteralMatrix& a, const LiteralMatrix& b, CircuitBuilder& builder) {
  if (a.cols != b.rows)
    throw InvariantViolation("matrix dimension mismatch: " + std::to_string(a.rows) + "x" + std::to_string(a.cols) +
                             " times " + std::to_string(b.rows) + "x" + std::to_string(b.cols));
  LiteralMatrix out(a.rows, b.cols);
  std::vector<Lit> terms;
  for (std::size_t u = 0; u < a.rows; ++u)
    for (std::size_t v = 0; v < b.cols; ++v) {
      terms.clear();
      for (std::size_t m = 0; m < a.cols; ++m) terms.push_back(fold_and(a.at(u, m), b.at(m, v), builder));
      out.at(u, v) = balanced_or(terms, builder);
    }
  return out;
}

int ceil_log2(std::uint64_t v) noexcept {
  int r = 0;
  while ((std::uint64_t{1} << r) < v) ++r;
  return r;
}

int bp_depth_bound(std::size_t width, std::size_t length) noexcept {
  const int lw = ceil_log2(width);
  return (lw + 1) * ceil_log2(length) + lw + 1;
}

namespace {

LiteralMatrix range_product(const GeneralBP& b, std::size_t lo, std::size_t hi, CircuitBuilder& builder) {
  if (hi - lo == 1) return level_matrix(b, lo);
  const std::size_t mid = (lo + hi) / 2;
  LiteralMatrix left = range_product(b, lo, mid, builder);
  LiteralMatrix right = range_product(b, mid, hi, builder);
  return bool_matrix_product(left, right, builder);
}

} // namespace

Circuit bp_to_circuit(const GeneralBP& b) {
  validate(b);
  CircuitBuilder builder(b.num_inputs);
  if (b.levels.empty()) {
    NodeId out = builder.constant(b.sinks[b.start] != 0);
    return std::move(builder).finish(out);
  }
  LiteralMatrix m = range_product(b, 0, b.levels.size(), builder);
  std::vector<Lit> accepting;
  for (std::size_t v = 0; v < b.sinks.size(); ++v)
    if (b.sinks[v]) accepting.push_back(m.at(b.start, v));
  NodeId out = materialize(balanced_or(std::move(accepting), builder), builder);
  Circuit c = std::move(builder).finish(out);

  const int bound = bp_depth_bound(width(b), b.levels.size());
  if (depth(c) > bound)
    throw InvariantViolation("converted circuit has depth " + std::to_string(depth(c)) + " above the bound " +
                             std::to_string(bound));
  return c;
}

} // namespace advice5
