#include "advice5/advice_machine.hpp"

#include "advice5/error.hpp"

namespace advice5 {

AdviceTape encode_advice(const PermProgram& p) {
  validate(p);
  AdviceTape t;
  t.num_inputs = p.num_inputs;
  const auto n = static_cast<std::size_t>(p.num_inputs);
  t.symbols.reserve(2 + p.instructions.size() * (11 + n) + 6);
  t.symbols += 'B';
  for (const auto& ins : p.instructions) {
    t.symbols += 'I';
    for (std::size_t i = 1; i <= n; ++i) t.symbols += i == static_cast<std::size_t>(ins.var) ? 'm' : 'u';
    t.symbols += ins.perm1.to_string();
    t.symbols += ins.perm0.to_string();
  }
  t.symbols += 'A';
  for (int s = 1; s <= 5; ++s) t.symbols += s == p.target(1) ? 'a' : 'r';
  t.symbols += 'E';
  return t;
}

namespace {

// Recursive-descent reader over the tape grammar; shared by parse and decode.
class TapeReader {
public:
  explicit TapeReader(std::string_view s) : s_(s) {}

  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  std::size_t offset() const { return pos_; }

  void expect(char ch) {
    if (peek() != ch) fail(std::string("expected '") + ch + "'");
    ++pos_;
  }

  // Returns the 1-based marked slot and the number of slots.
  std::pair<int, int> var_block() {
    int marked = 0, slots = 0;
    const std::size_t begin = pos_;
    while (peek() == 'u' || peek() == 'm') {
      ++slots;
      if (peek() == 'm') {
        if (marked) fail("second marked slot in variable block");
        marked = slots;
      }
      ++pos_;
    }
    if (!marked) {
      pos_ = begin;
      fail("variable block has no marked slot");
    }
    return {marked, slots};
  }

  Perm5 perm_block() {
    const std::size_t begin = pos_;
    Perm5::Images img{};
    for (auto& v : img) {
      char ch = peek();
      if (ch < '1' || ch > '5') fail("expected a state digit 1-5");
      v = static_cast<std::uint8_t>(ch - '0');
      ++pos_;
    }
    try {
      return Perm5(img);
    } catch (const InvariantViolation&) {
      pos_ = begin;
      fail("permutation block is not a bijection");
    }
  }

  // Returns the accept block as 5 booleans.
  std::array<bool, 5> accept_block() {
    std::array<bool, 5> out{};
    for (auto& v : out) {
      char ch = peek();
      if (ch != 'a' && ch != 'r') fail("expected 'a' or 'r' in accept block");
      v = ch == 'a';
      ++pos_;
    }
    return out;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    if (pos_ >= s_.size()) throw GrammarError(pos_, msg + " (tape ends)");
    throw GrammarError(pos_, msg + ", found '" + std::string(1, s_[pos_]) + "'");
  }

private:
  std::string_view s_;
  std::size_t pos_ = 0;
};

struct ParsedTape {
  std::vector<Instruction> instructions;
  std::array<bool, 5> accept{};
  int num_inputs = -1;
};

ParsedTape read_tape(std::string_view symbols) {
  TapeReader r(symbols);
  ParsedTape out;
  r.expect('B');
  while (r.peek() == 'I') {
    r.expect('I');
    const std::size_t block_at = r.offset();
    auto [var, slots] = r.var_block();
    if (out.num_inputs >= 0 && slots != out.num_inputs)
      throw GrammarError(block_at, "variable block has " + std::to_string(slots) + " slots, expected " +
                                       std::to_string(out.num_inputs));
    out.num_inputs = slots;
    Perm5 p1 = r.perm_block();
    Perm5 p0 = r.perm_block();
    out.instructions.push_back({var, p1, p0});
  }
  r.expect('A');
  out.accept = r.accept_block();
  r.expect('E');
  if (r.offset() != symbols.size()) r.fail("trailing symbols after 'E'");
  return out;
}

} // namespace

AdviceTape parse_advice(std::string_view raw, std::optional<int> num_inputs) {
  if (raw.ends_with("\r\n")) raw.remove_suffix(2);
  else if (raw.ends_with('\n')) raw.remove_suffix(1);
  ParsedTape parsed = read_tape(raw);
  AdviceTape t{std::string(raw), 0};
  if (parsed.num_inputs >= 0) {
    if (num_inputs && *num_inputs != parsed.num_inputs)
      throw ArityMismatch("tape encodes " + std::to_string(parsed.num_inputs) + " inputs, expected " +
                          std::to_string(*num_inputs));
    t.num_inputs = parsed.num_inputs;
  } else {
    t.num_inputs = num_inputs.value_or(0);
  }
  return t;
}

PermProgram decode_advice(const AdviceTape& t) {
  ParsedTape parsed = read_tape(t.symbols);
  int accepting = 0;
  for (int s = 1; s <= 5; ++s) {
    if (!parsed.accept[static_cast<std::size_t>(s - 1)]) continue;
    if (accepting) throw GrammarError(t.symbols.size() - 7 + static_cast<std::size_t>(s), "more than one accepting state");
    accepting = s;
  }
  if (accepting == 0 || accepting == 1)
    throw GrammarError(t.symbols.size() - 6, "accept block must mark exactly one state other than 1");
  PermProgram p{parsed.num_inputs >= 0 ? parsed.num_inputs : t.num_inputs, std::move(parsed.instructions), {}};
  for (const auto& c : five_cycles())
    if (c(1) == accepting) {
      p.target = c;
      break;
    }
  return p;
}

namespace {

// Read-only input tape |- x1 .. xn -| with a two-way head.
class InputTape {
public:
  enum class Cell { LeftEnd, Zero, One, RightEnd };

  explicit InputTape(BitView x) : x_(x) {}

  Cell read() const {
    if (head_ == 0) return Cell::LeftEnd;
    if (head_ > x_.size()) return Cell::RightEnd;
    return x_[head_ - 1] ? Cell::One : Cell::Zero;
  }
  void left() {
    if (head_ == 0) throw InvariantViolation("input head moved past the left end marker");
    --head_;
    ++moves_;
  }
  void right() {
    if (head_ > x_.size()) throw InvariantViolation("input head moved past the right end marker");
    ++head_;
    ++moves_;
  }
  std::uint64_t moves() const { return moves_; }

private:
  BitView x_;
  std::size_t head_ = 0;
  std::uint64_t moves_ = 0;
};

// Read-only advice tape under a one-way head. There is no operation that moves
// the head left; the counter exists so the trace can state it.
class AdviceHead {
public:
  explicit AdviceHead(std::string_view s) : s_(s) {}

  char read() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  void advance() {
    ++pos_;
    ++moves_right_;
  }
  std::size_t position() const { return pos_; }
  std::uint64_t moves_right() const { return moves_right_; }
  std::uint64_t moves_left() const { return 0; }
  bool at_end() const { return pos_ >= s_.size(); }

  [[noreturn]] void fail(const std::string& msg) const {
    if (at_end()) throw GrammarError(pos_, msg + " (tape ends)");
    throw GrammarError(pos_, msg + ", found '" + std::string(1, s_[pos_]) + "'");
  }

private:
  std::string_view s_;
  std::size_t pos_ = 0;
  std::uint64_t moves_right_ = 0;
};

bool is_digit(char ch) { return ch >= '1' && ch <= '5'; }

} // namespace

RunResult run_tm(const AdviceTape& t, BitView x) {
  InputTape input(x);
  AdviceHead advice(t.symbols);
  Registers reg;
  RunResult result;
  std::size_t last_advice_pos = 0;

  auto mismatch = [&](const char* why) -> void {
    throw ArityMismatch(std::string("input length ") + std::to_string(x.size()) + " disagrees with the advice: " + why);
  };

  while (reg.control != Control::HaltAccept && reg.control != Control::HaltReject) {
    result.stats.register_witness.insert(reg.pack());
    ++result.stats.steps;
    const char sym = advice.read();

    switch (reg.control) {
    case Control::Start:
      if (sym != 'B') advice.fail("expected 'B'");
      advice.advance();
      reg.control = Control::Dispatch;
      break;

    case Control::Dispatch:
      if (sym == 'I') {
        advice.advance();
        reg.control = Control::Rewind;
      } else if (sym == 'A') {
        advice.advance();
        reg.digit = 1;
        reg.control = Control::AcceptScan;
      } else {
        advice.fail("expected 'I' or 'A'");
      }
      break;

    case Control::Rewind:
      if (input.read() == InputTape::Cell::LeftEnd) reg.control = Control::VarSeek;
      else input.left();
      break;

    case Control::VarSeek:
      // Slot j is read with the input head on x_j.
      if (sym != 'u' && sym != 'm') advice.fail("variable block has no marked slot");
      input.right();
      if (input.read() == InputTape::Cell::RightEnd) mismatch("more variable slots than inputs");
      if (sym == 'm') {
        reg.bit = input.read() == InputTape::Cell::One;
        reg.control = Control::VarAfter;
      }
      advice.advance();
      break;

    case Control::VarAfter:
      if (sym == 'u') {
        input.right();
        if (input.read() == InputTape::Cell::RightEnd) mismatch("more variable slots than inputs");
        advice.advance();
      } else if (sym == 'm') {
        advice.fail("second marked slot in variable block");
      } else if (is_digit(sym)) {
        reg.control = Control::CheckEnd;
      } else {
        advice.fail("expected a variable slot or state digit");
      }
      break;

    case Control::CheckEnd:
      input.right();
      if (input.read() != InputTape::Cell::RightEnd) mismatch("fewer variable slots than inputs");
      reg.digit = 1;
      reg.control = Control::Perm1Scan;
      break;

    case Control::Perm1Scan:
    case Control::Perm1Done:
    case Control::Perm0Scan:
    case Control::Perm0Done: {
      if (!is_digit(sym)) advice.fail("expected a state digit 1-5");
      const bool first_block = reg.control == Control::Perm1Scan || reg.control == Control::Perm1Done;
      const bool scanning = reg.control == Control::Perm1Scan || reg.control == Control::Perm0Scan;
      bool captured = false;
      if (scanning && reg.digit == reg.state && reg.bit == (first_block ? 1 : 0)) {
        reg.state = static_cast<std::uint8_t>(sym - '0');
        captured = true;
      }
      advice.advance();
      if (reg.digit == 5) {
        reg.digit = 1;
        if (first_block) reg.control = (reg.bit == 0) ? Control::Perm0Scan : Control::Perm0Done;
        else reg.control = Control::Dispatch;
      } else {
        ++reg.digit;
        if (captured) reg.control = first_block ? Control::Perm1Done : Control::Perm0Done;
      }
      break;
    }

    case Control::AcceptScan:
    case Control::AcceptYes:
    case Control::AcceptNo:
      if (sym != 'a' && sym != 'r') advice.fail("expected 'a' or 'r' in accept block");
      if (reg.control == Control::AcceptScan && reg.digit == reg.state)
        reg.control = sym == 'a' ? Control::AcceptYes : Control::AcceptNo;
      advice.advance();
      if (reg.digit == 5) {
        reg.digit = 1;
        reg.control = reg.control == Control::AcceptYes ? Control::EndYes : Control::EndNo;
      } else {
        ++reg.digit;
      }
      break;

    case Control::EndYes:
    case Control::EndNo:
      if (sym != 'E') advice.fail("expected 'E'");
      advice.advance();
      if (!advice.at_end()) advice.fail("trailing symbols after 'E'");
      reg.control = reg.control == Control::EndYes ? Control::HaltAccept : Control::HaltReject;
      break;

    case Control::HaltAccept:
    case Control::HaltReject:
      break;
    }

    if (advice.position() < last_advice_pos) result.stats.advice_head_monotone = false;
    last_advice_pos = advice.position();
  }
  result.stats.register_witness.insert(reg.pack());

  // A tape without instructions never consults the input, so only the declared
  // count can catch a wrong input length.
  if (x.size() != static_cast<std::size_t>(t.num_inputs))
    throw ArityMismatch("advice declares " + std::to_string(t.num_inputs) + " inputs, got " + std::to_string(x.size()));

  result.accept = reg.control == Control::HaltAccept;
  result.stats.advice_head_moves_left = advice.moves_left();
  result.stats.advice_head_moves_right = advice.moves_right();
  result.stats.input_head_moves = input.moves();
  return result;
}

} // namespace advice5
