#include "advice5/branching_program.hpp"

#include "advice5/error.hpp"
#include "text_util.hpp"

#include <algorithm>
#include <optional>
#include <sstream>

namespace advice5 {

namespace {

void check_arity(int expected, BitView x) {
  if (x.size() != static_cast<std::size_t>(expected))
    throw ArityMismatch("program expects " + std::to_string(expected) + " inputs, got " + std::to_string(x.size()));
}

} // namespace

void validate(const PermProgram& p) {
  if (p.num_inputs < 0) throw InvariantViolation("negative input count");
  if (!is_five_cycle(p.target)) throw NotFiveCycle(p.target.to_string());
  for (std::size_t t = 0; t < p.instructions.size(); ++t) {
    int v = p.instructions[t].var;
    if (v < 1 || v > p.num_inputs)
      throw InvariantViolation("instruction " + std::to_string(t) + ": variable x" + std::to_string(v) + " out of range");
  }
}

Perm5 yield_perm(const PermProgram& p, BitView x) {
  check_arity(p.num_inputs, x);
  Perm5 acc;
  for (const auto& ins : p.instructions) acc = compose(acc, x[ins.var - 1] ? ins.perm1 : ins.perm0);
  return acc;
}

bool eval_perm_bp(const PermProgram& p, BitView x) {
  Perm5 y = yield_perm(p, x);
  if (y == p.target) return true;
  if (y.is_identity()) return false;
  throw IllFormedProgram("yield " + y.to_string() + " is neither identity nor target " + p.target.to_string());
}

bool eval_state_one(const PermProgram& p, BitView x) { return yield_perm(p, x)(1) == p.target(1); }

void validate(const GeneralBP& b) {
  if (b.num_inputs < 0) throw InvariantViolation("negative input count");
  if (b.sinks.empty()) throw InvariantViolation("branching program has no sinks");
  for (auto label : b.sinks)
    if (label > 1) throw InvariantViolation("sink label must be 0 or 1");
  for (std::size_t t = 0; t < b.levels.size(); ++t) {
    if (b.levels[t].empty()) throw InvariantViolation("level " + std::to_string(t) + " is empty");
    std::size_t next = t + 1 < b.levels.size() ? b.levels[t + 1].size() : b.sinks.size();
    for (std::size_t i = 0; i < b.levels[t].size(); ++i) {
      const auto& n = b.levels[t][i];
      std::string where = "node " + std::to_string(t) + ":" + std::to_string(i);
      if (n.var < 1 || n.var > b.num_inputs) throw InvariantViolation(where + ": variable out of range");
      if (n.e0 >= next || n.e1 >= next) throw InvariantViolation(where + ": edge leaves the next level");
    }
  }
  std::size_t first = b.levels.empty() ? b.sinks.size() : b.levels.front().size();
  if (b.start >= first) throw InvariantViolation("start node out of range");
}

bool eval_general_bp(const GeneralBP& b, BitView x) {
  check_arity(b.num_inputs, x);
  std::uint32_t cur = b.start;
  for (const auto& level : b.levels) {
    const auto& n = level[cur];
    cur = x[n.var - 1] ? n.e1 : n.e0;
  }
  return b.sinks[cur] != 0;
}

std::size_t width(const GeneralBP& b) {
  std::size_t w = b.sinks.size();
  for (const auto& level : b.levels) w = std::max(w, level.size());
  return w;
}

GeneralBP perm_to_general(const PermProgram& p) {
  GeneralBP b;
  b.num_inputs = p.num_inputs;
  b.levels.reserve(p.instructions.size());
  for (const auto& ins : p.instructions) {
    std::vector<BranchNode> level(5);
    for (int s = 1; s <= 5; ++s)
      level[static_cast<std::size_t>(s - 1)] = {ins.var, static_cast<std::uint32_t>(ins.perm0(s) - 1),
                                                static_cast<std::uint32_t>(ins.perm1(s) - 1)};
    b.levels.push_back(std::move(level));
  }
  b.sinks.assign(5, 0);
  b.sinks[static_cast<std::size_t>(p.target(1) - 1)] = 1;
  b.start = 0;
  return b;
}

std::string to_text(const PermProgram& p) {
  std::ostringstream os;
  os << "permbp n=" << p.num_inputs << " len=" << p.instructions.size() << " target=" << p.target.to_string() << '\n';
  for (const auto& ins : p.instructions)
    os << "instr " << ins.var << ' ' << ins.perm1.to_string() << ' ' << ins.perm0.to_string() << '\n';
  return os.str();
}

namespace {

// Lines with content, paired with their 1-based line numbers; '#' lines are comments.
std::vector<std::pair<std::size_t, std::vector<std::string_view>>> content_lines(std::string_view text) {
  std::vector<std::pair<std::size_t, std::vector<std::string_view>>> out;
  std::size_t no = 0;
  for (auto line : detail::split_lines(text)) {
    ++no;
    auto toks = detail::split_ws(line);
    if (toks.empty() || toks[0].front() == '#') continue;
    out.emplace_back(no, std::move(toks));
  }
  return out;
}

Perm5 perm_field(std::size_t line, std::string_view tok) {
  try {
    return Perm5::parse(tok);
  } catch (const FormatError& e) {
    throw ParseError(line, e.what());
  }
}

// "<level>:<index>"
std::pair<std::size_t, std::size_t> node_ref(std::size_t line, std::string_view tok) {
  auto colon = tok.find(':');
  if (colon == std::string_view::npos) throw ParseError(line, "expected <level>:<index>, got '" + std::string(tok) + "'");
  return {detail::expect_number<std::size_t>(line, tok.substr(0, colon), "level"),
          detail::expect_number<std::size_t>(line, tok.substr(colon + 1), "index")};
}

} // namespace

PermProgram parse_perm_program(std::string_view text) {
  auto lines = content_lines(text);
  if (lines.empty()) throw ParseError(1, "empty permbp file");
  auto& [hline, head] = lines.front();
  if (head.size() != 4 || head[0] != "permbp") throw ParseError(hline, "expected 'permbp n=<N> len=<L> target=<perm>'");
  PermProgram p;
  p.num_inputs = detail::expect_number<int>(hline, detail::expect_field(hline, head[1], "n"), "n");
  auto len = detail::expect_number<std::size_t>(hline, detail::expect_field(hline, head[2], "len"), "len");
  p.target = perm_field(hline, detail::expect_field(hline, head[3], "target"));
  if (lines.size() - 1 != len)
    throw ParseError(lines.back().first, "header declares " + std::to_string(len) + " instructions, found " +
                                             std::to_string(lines.size() - 1));
  for (std::size_t i = 1; i < lines.size(); ++i) {
    auto& [no, toks] = lines[i];
    if (toks.size() != 4 || toks[0] != "instr") throw ParseError(no, "expected 'instr <var> <perm1> <perm0>'");
    Instruction ins{detail::expect_number<int>(no, toks[1], "variable"), perm_field(no, toks[2]), perm_field(no, toks[3])};
    if (ins.var < 1 || ins.var > p.num_inputs) throw ParseError(no, "variable index out of range");
    p.instructions.push_back(ins);
  }
  if (!is_five_cycle(p.target)) throw ParseError(hline, "target " + p.target.to_string() + " is not a 5-cycle");
  return p;
}

std::string to_text(const GeneralBP& b) {
  std::ostringstream os;
  os << "genbp n=" << b.num_inputs << " levels=" << b.levels.size() + 1 << " width=" << width(b) << '\n';
  for (std::size_t t = 0; t < b.levels.size(); ++t)
    for (std::size_t i = 0; i < b.levels[t].size(); ++i) {
      const auto& n = b.levels[t][i];
      os << "node " << t << ':' << i << " var=" << n.var << " e0=" << n.e0 << " e1=" << n.e1 << '\n';
    }
  for (std::size_t i = 0; i < b.sinks.size(); ++i)
    os << "sink " << b.levels.size() << ':' << i << " label=" << int(b.sinks[i]) << '\n';
  os << "start " << b.start << '\n';
  return os.str();
}

GeneralBP parse_general_bp(std::string_view text) {
  auto lines = content_lines(text);
  if (lines.empty()) throw ParseError(1, "empty genbp file");
  auto& [hline, head] = lines.front();
  if (head.size() != 4 || head[0] != "genbp") throw ParseError(hline, "expected 'genbp n=<N> levels=<L+1> width=<W>'");
  GeneralBP b;
  b.num_inputs = detail::expect_number<int>(hline, detail::expect_field(hline, head[1], "n"), "n");
  auto nlevels = detail::expect_number<std::size_t>(hline, detail::expect_field(hline, head[2], "levels"), "levels");
  auto declared_width = detail::expect_number<std::size_t>(hline, detail::expect_field(hline, head[3], "width"), "width");
  if (nlevels < 1) throw ParseError(hline, "need at least the sink level");
  const std::size_t sink_level = nlevels - 1;

  std::vector<std::vector<std::optional<BranchNode>>> inner(sink_level);
  std::vector<std::optional<std::uint8_t>> sinks;
  std::optional<std::uint32_t> start;
  auto slot = [](auto& vec, std::size_t idx) -> auto& {
    if (vec.size() <= idx) vec.resize(idx + 1);
    return vec[idx];
  };

  for (std::size_t i = 1; i < lines.size(); ++i) {
    auto& [no, toks] = lines[i];
    if (toks[0] == "node") {
      if (toks.size() != 5) throw ParseError(no, "expected 'node <level>:<index> var=<v> e0=<idx> e1=<idx>'");
      auto [lvl, idx] = node_ref(no, toks[1]);
      if (lvl >= sink_level) throw ParseError(no, "inner node outside the inner levels (level " + std::to_string(lvl) + ")");
      BranchNode n{detail::expect_number<int>(no, detail::expect_field(no, toks[2], "var"), "var"),
                   detail::expect_number<std::uint32_t>(no, detail::expect_field(no, toks[3], "e0"), "e0"),
                   detail::expect_number<std::uint32_t>(no, detail::expect_field(no, toks[4], "e1"), "e1")};
      auto& cell = slot(inner[lvl], idx);
      if (cell) throw ParseError(no, "duplicate node " + std::string(toks[1]));
      cell = n;
    } else if (toks[0] == "sink") {
      if (toks.size() != 3) throw ParseError(no, "expected 'sink <level>:<index> label=<0|1>'");
      auto [lvl, idx] = node_ref(no, toks[1]);
      if (lvl != sink_level) throw ParseError(no, "sink outside the final level");
      auto label = detail::expect_number<unsigned>(no, detail::expect_field(no, toks[2], "label"), "label");
      if (label > 1) throw ParseError(no, "sink label must be 0 or 1");
      auto& cell = slot(sinks, idx);
      if (cell) throw ParseError(no, "duplicate sink " + std::string(toks[1]));
      cell = static_cast<std::uint8_t>(label);
    } else if (toks[0] == "start") {
      if (toks.size() != 2 || start) throw ParseError(no, "expected a single 'start <index>' line");
      start = detail::expect_number<std::uint32_t>(no, toks[1], "start index");
    } else {
      throw ParseError(no, "unknown record '" + std::string(toks[0]) + "'");
    }
  }
  std::size_t last = lines.back().first;
  if (!start) throw ParseError(last, "missing start line");
  b.start = *start;
  for (std::size_t t = 0; t < sink_level; ++t) {
    if (inner[t].empty()) throw ParseError(last, "level " + std::to_string(t) + " has no nodes");
    std::vector<BranchNode> level;
    for (std::size_t i = 0; i < inner[t].size(); ++i) {
      if (!inner[t][i]) throw ParseError(last, "missing node " + std::to_string(t) + ":" + std::to_string(i));
      level.push_back(*inner[t][i]);
    }
    b.levels.push_back(std::move(level));
  }
  for (std::size_t i = 0; i < sinks.size(); ++i) {
    if (!sinks[i]) throw ParseError(last, "missing sink " + std::to_string(sink_level) + ":" + std::to_string(i));
    b.sinks.push_back(*sinks[i]);
  }
  try {
    validate(b);
  } catch (const InvariantViolation& e) {
    throw ParseError(last, e.what());
  }
  if (width(b) != declared_width)
    throw ParseError(hline, "declared width " + std::to_string(declared_width) + " but largest level has " +
                                std::to_string(width(b)) + " nodes");
  return b;
}

} // namespace advice5
