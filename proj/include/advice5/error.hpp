#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace advice5 {

// Root of every error thrown by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class NotFiveCycle : public Error {
public:
  explicit NotFiveCycle(const std::string& what) : Error("not a 5-cycle: " + what) {}
};

// Text or binary input that does not follow its file format.
class FormatError : public Error {
public:
  using Error::Error;
};

// Netlist / program file error with a 1-based line number.
class ParseError : public FormatError {
public:
  ParseError(std::size_t line, const std::string& msg)
      : FormatError("line " + std::to_string(line) + ": " + msg), line_(line) {}
  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

// Advice tape symbol stream violates the tape grammar.
class GrammarError : public FormatError {
public:
  GrammarError(std::size_t offset, const std::string& msg)
      : FormatError("advice offset " + std::to_string(offset) + ": " + msg), offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

private:
  std::size_t offset_;
};

class ArityMismatch : public Error {
public:
  using Error::Error;
};

// A permutation program whose yield is neither identity nor its target.
class IllFormedProgram : public Error {
public:
  using Error::Error;
};

class ResourceError : public Error {
public:
  using Error::Error;
};

// Data that parses but breaks a structural invariant (bad table entry, dangling edge, ...).
class InvariantViolation : public Error {
public:
  using Error::Error;
};

} // namespace advice5
