#include "advice5/advice_sort.hpp"

#include "advice5/error.hpp"

#include <algorithm>
#include <fstream>
#include <iterator>
#include <limits>

namespace advice5 {

namespace {

bool is_pow2(std::uint32_t v) { return v != 0 && (v & (v - 1)) == 0; }

std::uint32_t log2_exact(std::uint32_t v) {
  std::uint32_t r = 0;
  while ((1u << r) < v) ++r;
  return r;
}

constexpr char kMagic[5] = {'S', 'A', 'D', 'V', '1'};
constexpr std::size_t kHeaderSize = 5 + 3 * 4;

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

std::uint32_t get_u32(std::span<const std::uint8_t> in, std::size_t at) {
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= std::uint32_t{in[at + static_cast<std::size_t>(i)]} << (8 * i);
  return v;
}

// Stable merge of two adjacent sorted runs [lo, mid) and [mid, hi) of src into dst.
void merge_runs(const std::vector<std::uint8_t>& src, std::vector<std::uint8_t>& dst, std::size_t lo, std::size_t mid,
                std::size_t hi, std::uint64_t& comparisons) {
  std::size_t i = lo, j = mid, o = lo;
  while (i < mid && j < hi) {
    ++comparisons;
    dst[o++] = src[j] < src[i] ? src[j++] : src[i++];
  }
  while (i < mid) dst[o++] = src[i++];
  while (j < hi) dst[o++] = src[j++];
}

} // namespace

std::uint32_t SortParams::merge_levels() const noexcept { return log2_exact(n / b); }

SortParams SortParams::with_default_block(std::uint32_t n, std::uint32_t k) {
  if (!is_pow2(n)) throw InvariantViolation("n must be a power of two, got " + std::to_string(n));
  const std::uint32_t lg = log2_exact(n);
  std::uint32_t target = std::max<std::uint32_t>(1, lg == 0 ? n : n / lg);
  std::uint32_t b = 1;
  while (b * 2 <= target) b *= 2;
  SortParams p{n, k, b};
  validate(p);
  return p;
}

void validate(const SortParams& p) {
  if (!is_pow2(p.n)) throw InvariantViolation("n must be a power of two, got " + std::to_string(p.n));
  if (!is_pow2(p.b) || p.b > p.n) throw InvariantViolation("block size must be a power-of-two divisor of n");
  if (p.k > 255) throw InvariantViolation("values must fit a byte (k <= 255)");
}

std::uint64_t table_entries(const SortParams& p) noexcept {
  std::uint64_t r = 1;
  const std::uint64_t base = std::uint64_t{p.k} + 1;
  for (std::uint32_t i = 0; i < p.b; ++i) {
    if (r > std::numeric_limits<std::uint64_t>::max() / base) return std::numeric_limits<std::uint64_t>::max();
    r *= base;
  }
  return r;
}

std::uint64_t SortTable::entry_count() const noexcept { return table_entries(params); }

std::span<const std::uint8_t> SortTable::entry(std::uint64_t index) const {
  return std::span(records).subspan(static_cast<std::size_t>(index * params.b), params.b);
}

std::span<const std::uint8_t> SortTable::lookup(std::span<const std::uint8_t> key) const {
  std::uint64_t index = 0;
  for (auto v : key) index = index * (params.k + 1) + v;
  return entry(index);
}

SortTable build_table(const SortParams& p, std::uint64_t max_entries) {
  validate(p);
  const std::uint64_t count = table_entries(p);
  if (count > max_entries)
    throw ResourceError("table needs (k+1)^b = " + std::to_string(count) + " entries, limit is " +
                        std::to_string(max_entries) + "; choose a smaller b or k");
  SortTable t{p, {}};
  t.records.resize(static_cast<std::size_t>(count * p.b));
  std::vector<std::uint8_t> key(p.b, 0);
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    std::vector<std::uint8_t> sorted = key;
    std::stable_sort(sorted.begin(), sorted.end());
    std::copy(sorted.begin(), sorted.end(), t.records.begin() + static_cast<std::ptrdiff_t>(idx * p.b));
    // Odometer increment, last position fastest.
    for (std::size_t pos = p.b; pos-- > 0;) {
      if (key[pos] < p.k) {
        ++key[pos];
        break;
      }
      key[pos] = 0;
    }
  }
  return t;
}

SortResult advice_merge_sort(std::span<const std::uint8_t> x, const SortTable& table) {
  const SortParams& p = table.params;
  if (x.size() != p.n)
    throw ArityMismatch("table is for n = " + std::to_string(p.n) + ", got " + std::to_string(x.size()) + " values");
  if (table.records.size() != table.entry_count() * p.b) throw InvariantViolation("table is missing records");
  SortResult r;
  std::vector<std::uint8_t> cur(x.begin(), x.end());
  for (std::size_t i = 0; i < cur.size(); ++i)
    if (cur[i] > p.k) throw InvariantViolation("value " + std::to_string(cur[i]) + " exceeds k = " + std::to_string(p.k));

  for (std::size_t blk = 0; blk < p.blocks(); ++blk) {
    auto key = std::span(cur).subspan(blk * p.b, p.b);
    auto sorted = table.lookup(key);
    r.key_ops += p.b;
    if (!std::is_sorted(sorted.begin(), sorted.end()) || !std::is_permutation(sorted.begin(), sorted.end(), key.begin()))
      throw InvariantViolation("table entry for block " + std::to_string(blk) + " is not its sorted key");
    std::copy(sorted.begin(), sorted.end(), key.begin());
  }

  std::vector<std::uint8_t> next(cur.size());
  for (std::size_t run = p.b; run < p.n; run *= 2) {
    for (std::size_t lo = 0; lo < p.n; lo += 2 * run) merge_runs(cur, next, lo, lo + run, lo + 2 * run, r.comparisons);
    cur.swap(next);
  }
  if (r.comparisons > std::uint64_t{p.n} * p.merge_levels())
    throw InvariantViolation("merge passes used more than n * merge_levels comparisons");
  r.values = std::move(cur);
  return r;
}

namespace {

void top_down(std::vector<std::uint8_t>& a, std::vector<std::uint8_t>& tmp, std::size_t lo, std::size_t hi,
              std::uint64_t& comparisons) {
  if (hi - lo < 2) return;
  const std::size_t mid = lo + (hi - lo) / 2;
  top_down(a, tmp, lo, mid, comparisons);
  top_down(a, tmp, mid, hi, comparisons);
  merge_runs(a, tmp, lo, mid, hi, comparisons);
  std::copy(tmp.begin() + static_cast<std::ptrdiff_t>(lo), tmp.begin() + static_cast<std::ptrdiff_t>(hi),
            a.begin() + static_cast<std::ptrdiff_t>(lo));
}

} // namespace

SortResult reference_merge_sort(std::span<const std::uint8_t> x) {
  SortResult r;
  r.values.assign(x.begin(), x.end());
  std::vector<std::uint8_t> tmp(r.values.size());
  top_down(r.values, tmp, 0, r.values.size(), r.comparisons);
  return r;
}

std::vector<std::uint8_t> serialize_table(const SortTable& t) {
  std::vector<std::uint8_t> out(std::begin(kMagic), std::end(kMagic));
  put_u32(out, t.params.n);
  put_u32(out, t.params.k);
  put_u32(out, t.params.b);
  out.insert(out.end(), t.records.begin(), t.records.end());
  return out;
}

SortTable deserialize_table(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kHeaderSize) throw FormatError("table file shorter than its header");
  if (!std::equal(std::begin(kMagic), std::end(kMagic), bytes.begin())) throw FormatError("bad table magic");
  SortParams p{get_u32(bytes, 5), get_u32(bytes, 9), get_u32(bytes, 13)};
  try {
    validate(p);
  } catch (const InvariantViolation& e) {
    throw FormatError(std::string("bad table header: ") + e.what());
  }
  const std::uint64_t count = table_entries(p);
  if (count > (bytes.size() - kHeaderSize) / p.b || count * p.b != bytes.size() - kHeaderSize)
    throw FormatError("table body has " + std::to_string(bytes.size() - kHeaderSize) + " bytes, expected " +
                      std::to_string(count) + " records of " + std::to_string(p.b));
  SortTable t{p, std::vector<std::uint8_t>(bytes.begin() + kHeaderSize, bytes.end())};

  std::vector<std::uint8_t> key(p.b, 0), sorted(p.b);
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    sorted = key;
    std::sort(sorted.begin(), sorted.end());
    auto rec = t.entry(idx);
    if (!std::equal(rec.begin(), rec.end(), sorted.begin()))
      throw InvariantViolation("table record " + std::to_string(idx) + " is not the sorted form of its key");
    for (std::size_t pos = p.b; pos-- > 0;) {
      if (key[pos] < p.k) {
        ++key[pos];
        break;
      }
      key[pos] = 0;
    }
  }
  return t;
}

void save_table(const SortTable& t, const std::filesystem::path& path) {
  auto bytes = serialize_table(t);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error("write to " + path.string() + " failed");
}

SortTable load_table(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return deserialize_table(bytes);
}

} // namespace advice5
