#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>

namespace advice5 {

/// A permutation of the states {1,...,5}.
///
/// Products are read left to right: compose(p, q) applies p first and then q,
/// so compose(p, q)(s) == q(p(s)). This is the order in which instructions of a
/// permutation program are executed, and every module relies on it.
///
/// Ordering compares the image sequences lexicographically.
class Perm5 {
public:
  using Images = std::array<std::uint8_t, 5>;

  constexpr Perm5() noexcept : images_{1, 2, 3, 4, 5} {}

  /// Throws InvariantViolation unless `images` is a bijection on {1..5}.
  explicit Perm5(const Images& images);

  /// Parses the 5-digit text form, e.g. "23451".
  static Perm5 parse(std::string_view text);
  static constexpr Perm5 identity() noexcept { return Perm5{}; }

  /// Image of state s, 1 <= s <= 5.
  constexpr int operator()(int s) const noexcept { return images_[static_cast<std::size_t>(s - 1)]; }
  const Images& images() const noexcept { return images_; }
  std::string to_string() const;

  /// Position in the lexicographic enumeration of S5, 0..119.
  std::uint8_t rank() const noexcept;
  static Perm5 unrank(std::uint8_t r);

  bool is_identity() const noexcept { return *this == identity(); }

  friend constexpr bool operator==(const Perm5&, const Perm5&) = default;
  friend constexpr auto operator<=>(const Perm5&, const Perm5&) = default;

private:
  Images images_;
};

Perm5 compose(const Perm5& p, const Perm5& q) noexcept;
Perm5 inverse(const Perm5& p) noexcept;
/// g^-1 . p . g under the left-to-right convention.
Perm5 conjugate(const Perm5& p, const Perm5& g) noexcept;
/// a . b . a^-1 . b^-1 under the left-to-right convention.
Perm5 commutator(const Perm5& a, const Perm5& b) noexcept;

bool is_five_cycle(const Perm5& p) noexcept;

/// Cycle lengths sorted ascending, padded with zeros (fixed points count as 1-cycles).
std::array<std::uint8_t, 5> cycle_type(const Perm5& p) noexcept;

/// Lexicographically smallest g with conjugate(alpha, g) == beta.
/// Throws NotFiveCycle if either argument is not a 5-cycle.
Perm5 find_conjugator(const Perm5& alpha, const Perm5& beta);

/// Lexicographically first pair of 5-cycles whose commutator is a 5-cycle.
const std::pair<Perm5, Perm5>& find_commutator_pair();

/// All 120 elements in lexicographic order.
std::span<const Perm5, 120> all_perms() noexcept;
/// The 24 five-cycles in lexicographic order.
std::span<const Perm5, 24> five_cycles() noexcept;

/// Rank-indexed product tables for hot loops: compose_rank(a, b) == compose(unrank(a), unrank(b)).rank().
std::uint8_t compose_rank(std::uint8_t a, std::uint8_t b) noexcept;
std::uint8_t inverse_rank(std::uint8_t a) noexcept;

/// The default output cycle s -> s+1, written "23451".
inline const Perm5 kDefaultTarget{Perm5::Images{2, 3, 4, 5, 1}};

} // namespace advice5
