#include "advice5/corpus.hpp"

#include <algorithm>

namespace advice5 {

namespace {

// Expression over a shared term pool; children index earlier terms.
struct Term {
  GateKind kind;
  std::uint32_t a = 0;
  std::uint32_t b = 0;
};

NodeId build(const std::vector<Term>& pool, std::uint32_t t, CircuitBuilder& cb) {
  const Term& term = pool[t];
  switch (term.kind) {
  case GateKind::Input: return cb.input(static_cast<int>(term.a));
  case GateKind::Const: return cb.constant(term.a != 0);
  case GateKind::Not: return cb.make_not(build(pool, term.a, cb));
  case GateKind::And: return cb.make_and(build(pool, term.a, cb), build(pool, term.b, cb));
  case GateKind::Or: return cb.make_or(build(pool, term.a, cb), build(pool, term.b, cb));
  }
  return 0;
}

std::uint64_t below(Rng& rng, std::uint64_t bound) { return rng() % bound; }

} // namespace

std::vector<Circuit> enumerate_small_circuits(int num_inputs) {
  std::vector<Term> pool;
  std::vector<std::uint32_t> atoms, gates1, gates2;
  auto add = [&](Term t) {
    pool.push_back(t);
    return static_cast<std::uint32_t>(pool.size() - 1);
  };

  std::vector<std::uint32_t> leaves;
  for (int i = 1; i <= num_inputs; ++i) leaves.push_back(add({GateKind::Input, static_cast<std::uint32_t>(i)}));
  leaves.push_back(add({GateKind::Const, 0}));
  leaves.push_back(add({GateKind::Const, 1}));
  atoms = leaves;
  for (auto l : leaves) atoms.push_back(add({GateKind::Not, l}));

  for (std::size_t i = 0; i < atoms.size(); ++i)
    for (std::size_t j = i; j < atoms.size(); ++j)
      for (auto op : {GateKind::And, GateKind::Or}) gates1.push_back(add({op, atoms[i], atoms[j]}));

  std::vector<std::uint32_t> shallow = atoms;
  shallow.insert(shallow.end(), gates1.begin(), gates1.end());
  for (std::size_t i = 0; i < shallow.size(); ++i)
    for (std::size_t j = i; j < shallow.size(); ++j) {
      if (i < atoms.size() && j < atoms.size()) continue;
      for (auto op : {GateKind::And, GateKind::Or}) gates2.push_back(add({op, shallow[i], shallow[j]}));
    }

  std::vector<std::uint32_t> roots = shallow;
  roots.insert(roots.end(), gates2.begin(), gates2.end());
  for (auto g : gates1) roots.push_back(add({GateKind::Not, g}));
  for (auto g : gates2) roots.push_back(add({GateKind::Not, g}));

  std::vector<Circuit> out;
  out.reserve(roots.size());
  for (auto r : roots) {
    CircuitBuilder cb(num_inputs);
    NodeId o = build(pool, r, cb);
    out.push_back(std::move(cb).finish(o));
  }
  return out;
}

Circuit random_circuit(Rng& rng, int num_inputs, int max_depth, int max_gates) {
  CircuitBuilder cb(num_inputs);
  std::vector<NodeId> nodes;
  std::vector<int> depth_of;
  auto push = [&](NodeId id, int d) {
    nodes.push_back(id);
    depth_of.push_back(d);
  };
  for (int i = 1; i <= num_inputs; ++i) push(cb.input(i), 0);
  if (below(rng, 4) == 0) push(cb.constant(below(rng, 2) != 0), 0);

  const int gates = 1 + static_cast<int>(below(rng, static_cast<std::uint64_t>(max_gates)));
  auto pick = [&](int max_d) -> std::size_t {
    // Prefer recent nodes so depth actually builds up.
    for (int attempt = 0; attempt < 16; ++attempt) {
      std::size_t i = below(rng, 2) == 0 ? nodes.size() - 1 - below(rng, std::min<std::size_t>(nodes.size(), 4))
                                         : below(rng, nodes.size());
      if (depth_of[i] <= max_d) return i;
    }
    return 0;  // a depth-0 leaf
  };
  for (int g = 0; g < gates; ++g) {
    const auto r = below(rng, 10);
    if (r < 2) {
      std::size_t a = pick(max_depth);
      push(cb.make_not(nodes[a]), depth_of[a]);
    } else {
      std::size_t a = pick(max_depth - 1);
      std::size_t b = pick(max_depth - 1);
      NodeId id = r < 6 ? cb.make_and(nodes[a], nodes[b]) : cb.make_or(nodes[a], nodes[b]);
      push(id, 1 + std::max(depth_of[a], depth_of[b]));
    }
  }
  NodeId out = nodes.back();
  return std::move(cb).finish(out);
}

GeneralBP random_bp(Rng& rng, int num_inputs, std::size_t max_width, std::size_t length) {
  GeneralBP b;
  b.num_inputs = num_inputs;
  std::vector<std::size_t> sizes(length + 1);
  for (auto& s : sizes) s = 1 + below(rng, max_width);
  for (std::size_t t = 0; t < length; ++t) {
    std::vector<BranchNode> level(sizes[t]);
    for (auto& n : level) {
      n.var = 1 + static_cast<int>(below(rng, static_cast<std::uint64_t>(num_inputs)));
      n.e0 = static_cast<std::uint32_t>(below(rng, sizes[t + 1]));
      n.e1 = static_cast<std::uint32_t>(below(rng, sizes[t + 1]));
    }
    b.levels.push_back(std::move(level));
  }
  b.sinks.resize(sizes[length]);
  for (auto& s : b.sinks) s = static_cast<std::uint8_t>(below(rng, 2));
  b.start = static_cast<std::uint32_t>(below(rng, sizes[0]));
  return b;
}

Corpus gen_corpus(std::uint64_t seed, const CorpusCounts& counts) {
  Corpus c;
  for (int n = 1; n <= 3; ++n) {
    auto small = enumerate_small_circuits(n);
    std::move(small.begin(), small.end(), std::back_inserter(c.circuits));
  }
  Rng rng(seed);
  for (std::size_t i = 0; i < counts.random_circuits; ++i) {
    int n = 1 + static_cast<int>(below(rng, 8));
    int depth = 1 + static_cast<int>(below(rng, 6));
    c.circuits.push_back(random_circuit(rng, n, depth, 24));
  }
  for (std::size_t i = 0; i < counts.random_bps; ++i) {
    int n = 1 + static_cast<int>(below(rng, 10));
    std::size_t w = 1 + below(rng, 5);
    std::size_t len = 1 + below(rng, 64);
    c.bps.push_back(random_bp(rng, n, w, len));
  }
  return c;
}

Coverage coverage(const std::vector<Circuit>& circuits) {
  Coverage cov;
  for (const auto& c : circuits)
    for (const auto& n : c.nodes) {
      ++cov.nodes_by_kind[static_cast<std::size_t>(n.kind)];
      if (n.kind == GateKind::Const) ++(n.a ? cov.const1 : cov.const0);
    }
  return cov;
}

} // namespace advice5
