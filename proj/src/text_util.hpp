#pragma once

#include "advice5/error.hpp"

#include <charconv>
#include <string>
#include <string_view>
#include <vector>

namespace advice5::detail {

inline std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

inline std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    out.push_back(line);
    pos = eol + 1;
  }
  return out;
}

template <class T>
bool parse_number(std::string_view tok, T& out) {
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
  return ec == std::errc{} && p == tok.data() + tok.size() && !tok.empty();
}

template <class T>
T expect_number(std::size_t line, std::string_view tok, const char* what) {
  T v{};
  if (!parse_number(tok, v)) throw ParseError(line, std::string("bad ") + what + " '" + std::string(tok) + "'");
  return v;
}

// "key=value" -> value, or ParseError.
inline std::string_view expect_field(std::size_t line, std::string_view tok, std::string_view key) {
  if (tok.size() <= key.size() || tok.substr(0, key.size()) != key || tok[key.size()] != '=')
    throw ParseError(line, "expected " + std::string(key) + "=..., got '" + std::string(tok) + "'");
  return tok.substr(key.size() + 1);
}

} // namespace advice5::detail
