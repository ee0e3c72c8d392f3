#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace advice5 {

// Merge sort whose lower recursion levels are replaced by one lookup into a
// precomputed table holding the sorted form of every length-b block.

struct SortParams {
  std::uint32_t n = 1;  // input length, a power of two
  std::uint32_t k = 1;  // values lie in {0..k}, k <= 255
  std::uint32_t b = 1;  // block size, a power-of-two divisor of n

  std::uint32_t blocks() const noexcept { return n / b; }
  /// log2(n / b) pairwise merge passes after the lookup.
  std::uint32_t merge_levels() const noexcept;

  /// Block size max(1, n / ceil(log2 n)) rounded down to a power of two.
  static SortParams with_default_block(std::uint32_t n, std::uint32_t k);

  friend bool operator==(const SortParams&, const SortParams&) = default;
};

/// Throws InvariantViolation unless n and b are powers of two, b | n, k <= 255.
void validate(const SortParams& p);

/// One sorted block per key; keys are enumerated lexicographically (base k+1,
/// first element most significant) and are implicit in the record order.
struct SortTable {
  SortParams params;
  std::vector<std::uint8_t> records;  // (k+1)^b records of b bytes

  std::uint64_t entry_count() const noexcept;
  std::span<const std::uint8_t> entry(std::uint64_t index) const;
  std::span<const std::uint8_t> lookup(std::span<const std::uint8_t> key) const;

  friend bool operator==(const SortTable&, const SortTable&) = default;
};

inline constexpr std::uint64_t kDefaultTableLimit = std::uint64_t{1} << 24;

/// (k+1)^b, saturating.
std::uint64_t table_entries(const SortParams& p) noexcept;

/// Throws ResourceError if (k+1)^b exceeds max_entries.
SortTable build_table(const SortParams& p, std::uint64_t max_entries = kDefaultTableLimit);

struct SortResult {
  std::vector<std::uint8_t> values;
  std::uint64_t comparisons = 0;  // element-vs-element comparisons only
  std::uint64_t key_ops = 0;      // digit steps spent forming table keys
};

/// Lookup-then-merge sort. Throws on length mismatch, values above k, or a
/// table whose entry is not the sorted key. Stable.
SortResult advice_merge_sort(std::span<const std::uint8_t> x, const SortTable& table);

/// Top-down stable merge sort, split at floor(n/2).
SortResult reference_merge_sort(std::span<const std::uint8_t> x);

/// Binary form: "SADV1", n, k, b as u32 little-endian, then the records.
std::vector<std::uint8_t> serialize_table(const SortTable& t);
SortTable deserialize_table(std::span<const std::uint8_t> bytes);

void save_table(const SortTable& t, const std::filesystem::path& path);
SortTable load_table(const std::filesystem::path& path);

} // namespace advice5
