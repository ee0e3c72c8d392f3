#include "advice5/perm5.hpp"

#include "advice5/error.hpp"

#include <algorithm>
#include <vector>

namespace advice5 {

namespace {

bool is_bijection(const Perm5::Images& images) {
  unsigned seen = 0;
  for (auto v : images) {
    if (v < 1 || v > 5) return false;
    seen |= 1u << v;
  }
  return seen == 0b111110u;
}

struct Tables {
  std::array<Perm5, 120> perms;
  std::array<Perm5, 24> cycles;
  std::array<std::array<std::uint8_t, 120>, 120> product{};
  std::array<std::uint8_t, 120> inverse{};

  Tables() {
    Perm5::Images img{1, 2, 3, 4, 5};
    std::size_t i = 0, c = 0;
    do {
      perms[i++] = Perm5(img);
    } while (std::next_permutation(img.begin(), img.end()));
    for (const auto& p : perms)
      if (is_five_cycle(p)) cycles[c++] = p;
    for (std::size_t a = 0; a < 120; ++a) {
      for (std::size_t b = 0; b < 120; ++b)
        product[a][b] = compose(perms[a], perms[b]).rank();
      inverse[a] = advice5::inverse(perms[a]).rank();
    }
  }
};

const Tables& tables() {
  static const Tables t;
  return t;
}

} // namespace

Perm5::Perm5(const Images& images) : images_(images) {
  if (!is_bijection(images)) {
    std::string s;
    for (auto v : images) s += std::to_string(v) + ' ';
    throw InvariantViolation("not a permutation of {1..5}: " + s);
  }
}

Perm5 Perm5::parse(std::string_view text) {
  if (text.size() != 5) throw FormatError("permutation must be 5 digits, got '" + std::string(text) + "'");
  Images img{};
  for (std::size_t i = 0; i < 5; ++i) {
    char ch = text[i];
    if (ch < '1' || ch > '5') throw FormatError("bad permutation digit in '" + std::string(text) + "'");
    img[i] = static_cast<std::uint8_t>(ch - '0');
  }
  if (!is_bijection(img)) throw FormatError("not a permutation: '" + std::string(text) + "'");
  return Perm5(img);
}

std::string Perm5::to_string() const {
  std::string s(5, '0');
  for (std::size_t i = 0; i < 5; ++i) s[i] = static_cast<char>('0' + images_[i]);
  return s;
}

std::uint8_t Perm5::rank() const noexcept {
  // Lehmer code, which matches lexicographic order of image sequences.
  static constexpr int kFact[5] = {24, 6, 2, 1, 1};
  int r = 0;
  for (std::size_t i = 0; i < 5; ++i) {
    int smaller = 0;
    for (std::size_t j = i + 1; j < 5; ++j)
      if (images_[j] < images_[i]) ++smaller;
    r += smaller * kFact[i];
  }
  return static_cast<std::uint8_t>(r);
}

Perm5 Perm5::unrank(std::uint8_t r) {
  if (r >= 120) throw InvariantViolation("perm rank out of range");
  return tables().perms[r];
}

Perm5 compose(const Perm5& p, const Perm5& q) noexcept {
  Perm5::Images img{};
  for (int s = 1; s <= 5; ++s) img[static_cast<std::size_t>(s - 1)] = static_cast<std::uint8_t>(q(p(s)));
  return Perm5(img);
}

Perm5 inverse(const Perm5& p) noexcept {
  Perm5::Images img{};
  for (int s = 1; s <= 5; ++s) img[static_cast<std::size_t>(p(s) - 1)] = static_cast<std::uint8_t>(s);
  return Perm5(img);
}

Perm5 conjugate(const Perm5& p, const Perm5& g) noexcept {
  return compose(compose(inverse(g), p), g);
}

Perm5 commutator(const Perm5& a, const Perm5& b) noexcept {
  return compose(compose(compose(a, b), inverse(a)), inverse(b));
}

bool is_five_cycle(const Perm5& p) noexcept {
  int s = 1, len = 0;
  do {
    s = p(s);
    ++len;
  } while (s != 1);
  return len == 5;
}

std::array<std::uint8_t, 5> cycle_type(const Perm5& p) noexcept {
  std::array<std::uint8_t, 5> out{};
  bool visited[6] = {};
  std::size_t k = 0;
  for (int start = 1; start <= 5; ++start) {
    if (visited[start]) continue;
    std::uint8_t len = 0;
    for (int s = start; !visited[s]; s = p(s)) {
      visited[s] = true;
      ++len;
    }
    out[k++] = len;
  }
  std::sort(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(k));
  return out;
}

Perm5 find_conjugator(const Perm5& alpha, const Perm5& beta) {
  if (!is_five_cycle(alpha)) throw NotFiveCycle(alpha.to_string());
  if (!is_five_cycle(beta)) throw NotFiveCycle(beta.to_string());
  for (const auto& g : all_perms())
    if (conjugate(alpha, g) == beta) return g;
  throw InvariantViolation("no conjugator between 5-cycles " + alpha.to_string() + " and " + beta.to_string());
}

const std::pair<Perm5, Perm5>& find_commutator_pair() {
  static const std::pair<Perm5, Perm5> pair = [] {
    for (const auto& a : five_cycles())
      for (const auto& b : five_cycles())
        if (is_five_cycle(commutator(a, b))) return std::pair{a, b};
    throw InvariantViolation("S5 has no pair of 5-cycles with a 5-cycle commutator");
  }();
  return pair;
}

std::span<const Perm5, 120> all_perms() noexcept { return tables().perms; }
std::span<const Perm5, 24> five_cycles() noexcept { return tables().cycles; }

std::uint8_t compose_rank(std::uint8_t a, std::uint8_t b) noexcept { return tables().product[a][b]; }
std::uint8_t inverse_rank(std::uint8_t a) noexcept { return tables().inverse[a]; }

} // namespace advice5
