// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any failure.
#include "advice5/advice_machine.hpp"
#include "advice5/advice_sort.hpp"
#include "advice5/barrington.hpp"
#include "advice5/corpus.hpp"
#include "advice5/equiv.hpp"
#include "advice5/error.hpp"
#include "advice5/parallelize.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

using namespace advice5;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Accumulates the first failure message; later ones are only counted.
struct Checker {
  bool ok = true;
  std::string first;
  std::size_t failures = 0;

  void require(bool cond, const std::string& what) {
    if (cond) return;
    if (ok) first = what;
    ok = false;
    ++failures;
  }
  Outcome done(std::string detail) const {
    if (ok) return {true, std::move(detail)};
    return {false, first + " (" + std::to_string(failures) + " failure(s))"};
  }
};

struct Shared {
  Corpus corpus;
  std::vector<PermProgram> programs;  // compiled corpus circuits, same order
};

Circuit balanced_and(int d) {
  int leaves = 1 << d;
  CircuitBuilder cb(leaves);
  std::vector<NodeId> layer;
  for (int i = 1; i <= leaves; ++i) layer.push_back(cb.input(i));
  while (layer.size() > 1) {
    std::vector<NodeId> next;
    for (std::size_t i = 0; i < layer.size(); i += 2) next.push_back(cb.make_and(layer[i], layer[i + 1]));
    layer = std::move(next);
  }
  return std::move(cb).finish(layer[0]);
}

bool disciplined(const PermProgram& p, BitView x) {
  Perm5 y = yield_perm(p, x);
  return y.is_identity() || y == p.target;
}

Outcome length_bound(Shared& s) {
  Checker ck;
  s.programs.clear();
  s.programs.reserve(s.corpus.circuits.size());
  for (std::size_t i = 0; i < s.corpus.circuits.size(); ++i) {
    const Circuit& c = s.corpus.circuits[i];
    s.programs.push_back(compile_circuit(c));
    ck.require(s.programs.back().length() <= pow4(depth(c)), "circuit " + std::to_string(i) + " exceeds 4^depth");
  }
  std::string trees;
  for (int d = 1; d <= 3; ++d) {
    std::size_t len = compile_circuit(balanced_and(d)).length();
    ck.require(len == pow4(d), "AND tree of depth " + std::to_string(d) + " has length " + std::to_string(len));
    trees += (d > 1 ? "/" : "") + std::to_string(len);
  }
  return ck.done(std::to_string(s.programs.size()) + " circuits within 4^depth; AND trees d=1..3 give " + trees);
}

Outcome compiler_correctness(const Shared& s) {
  Checker ck;
  std::size_t circuits = 0;
  std::uint64_t inputs = 0;
  for (std::size_t i = 0; i < s.corpus.circuits.size(); ++i) {
    const Circuit& c = s.corpus.circuits[i];
    if (c.num_inputs > 8) continue;
    Verdict v = equiv_exhaustive(evaluator(c), evaluator(s.programs[i]), c.num_inputs);
    ck.require(v.equal, "circuit " + std::to_string(i) + " disagrees with its program");
    ++circuits;
    inputs += v.inputs_checked;
  }
  ck.require(circuits >= 100, "only " + std::to_string(circuits) + " circuits with n <= 8");
  return ck.done(std::to_string(circuits) + " circuits, " + std::to_string(inputs) + " inputs, 0 counterexamples");
}

Outcome yield_discipline(const Shared& s) {
  Checker ck;
  std::uint64_t inputs = 0;
  for (std::size_t i = 0; i < s.programs.size(); ++i) {
    int n = s.programs[i].num_inputs;
    for (std::uint64_t idx = 0; idx < (std::uint64_t{1} << n); ++idx) {
      ck.require(disciplined(s.programs[i], input_from_index(idx, n)), "program " + std::to_string(i) + " strays");
      ++inputs;
    }
  }
  // Wider circuits: 10^4 sampled inputs each.
  Rng rng(3);
  std::size_t wide = 0;
  for (int n = 9; n <= 12; ++n) {
    for (int trial = 0; trial < 10; ++trial) {
      PermProgram p = compile_circuit(random_circuit(rng, n, 6, 30));
      Bits x(static_cast<std::size_t>(n));
      for (int k = 0; k < 10'000; ++k) {
        for (auto& b : x) b = rng() & 1;
        ck.require(disciplined(p, x), "wide program with n=" + std::to_string(n) + " strays");
      }
      ++wide;
      inputs += 10'000;
    }
  }
  return ck.done(std::to_string(s.programs.size()) + " corpus programs exhaustively, " + std::to_string(wide) +
                 " programs with n=9..12 sampled; " + std::to_string(inputs) + " yields checked");
}

Outcome simulation(const Shared& s) {
  Checker ck;
  std::uint64_t runs = 0;
  for (std::size_t i = 0; i < s.programs.size(); ++i) {
    const PermProgram& p = s.programs[i];
    AdviceTape t = encode_advice(p);
    for (std::uint64_t idx = 0; idx < (std::uint64_t{1} << p.num_inputs); ++idx) {
      Bits x = input_from_index(idx, p.num_inputs);
      RunResult r = run_tm(t, x);
      ck.require(r.accept == eval_perm_bp(p, x), "program " + std::to_string(i) + " mis-simulated");
      ck.require(r.stats.advice_head_moves_left == 0 && r.stats.advice_head_monotone,
                 "advice head moved left on program " + std::to_string(i));
      ++runs;
    }
  }

  // K(n): distinct register configurations over a fixed workload per n.
  std::vector<std::size_t> k_by_n;
  std::string ks;
  for (int n : {4, 8, 16, 32}) {
    Rng rng(static_cast<std::uint64_t>(n));
    std::set<std::uint32_t> seen;
    for (int trial = 0; trial < 40; ++trial) {
      Circuit c = random_circuit(rng, n, 4, 24);
      PermProgram p = compile_circuit(c, five_cycles()[rng() % 24]);
      AdviceTape t = encode_advice(p);
      Bits x(static_cast<std::size_t>(n));
      for (int k = 0; k < 40; ++k) {
        for (auto& b : x) b = rng() & 1;
        RunResult r = run_tm(t, x);
        ck.require(r.accept == eval_perm_bp(p, x), "n=" + std::to_string(n) + " program mis-simulated");
        ck.require(r.stats.advice_head_moves_left == 0, "advice head moved left at n=" + std::to_string(n));
        seen.insert(r.stats.register_witness.begin(), r.stats.register_witness.end());
        ++runs;
      }
    }
    for (auto w : seen) ck.require(w < kRegisterBound, "register value outside the declared space");
    k_by_n.push_back(seen.size());
    ks += (ks.empty() ? "" : "/") + std::to_string(seen.size());
  }
  for (auto k : k_by_n) ck.require(k == k_by_n.front(), "register witness count varies with n: " + ks);
  return ck.done(std::to_string(runs) + " runs agree, 0 left moves; K=" + ks + " for n=4/8/16/32 (space " +
                 std::to_string(kRegisterBound) + ")");
}

Outcome parallelization(const Shared& s) {
  Checker ck;
  int worst_depth = 0;
  for (std::size_t i = 0; i < s.corpus.bps.size(); ++i) {
    const GeneralBP& b = s.corpus.bps[i];
    Circuit c = bp_to_circuit(b);
    int bound = 4 * ceil_log2(b.length()) + 4;
    ck.require(depth(c) <= bound, "bp " + std::to_string(i) + " depth " + std::to_string(depth(c)) + " > " +
                                      std::to_string(bound));
    ck.require(equiv_exhaustive(evaluator(b), evaluator(c), b.num_inputs).equal,
               "bp " + std::to_string(i) + " disagrees with its circuit");
    worst_depth = std::max(worst_depth, depth(c));
  }
  ck.require(s.corpus.bps.size() >= 100, "fewer than 100 programs");
  return ck.done(std::to_string(s.corpus.bps.size()) + " programs equivalent; max depth " +
                 std::to_string(worst_depth));
}

Outcome round_trip(const Shared& s) {
  Checker ck;
  std::uint64_t longest = 0;
  for (std::size_t i = 0; i < s.corpus.bps.size(); ++i) {
    const GeneralBP& b = s.corpus.bps[i];
    CompressedProgram p = compile_circuit_compressed(bp_to_circuit(b));
    std::uint64_t bound = pow4(4 * ceil_log2(b.length()) + 4);
    ck.require(p.length() <= bound, "bp " + std::to_string(i) + " round trip too long");
    ck.require(equiv_exhaustive(evaluator(b), evaluator(std::move(p)), b.num_inputs).equal,
               "bp " + std::to_string(i) + " round trip disagrees");
    longest = std::max<std::uint64_t>(longest, compile_circuit_compressed(bp_to_circuit(b)).length());
  }
  return ck.done(std::to_string(s.corpus.bps.size()) + " programs round-trip exactly; longest width-5 program " +
                 std::to_string(longest));
}

Outcome advice_sort() {
  Checker ck;
  SortParams params{16, 3, 4};
  auto t0 = Clock::now();
  SortTable table = build_table(params);
  double build_s = std::chrono::duration<double>(Clock::now() - t0).count();
  ck.require(table.entry_count() == 256, "table has " + std::to_string(table.entry_count()) + " entries");
  ck.require(build_s < 5.0, "table build took " + std::to_string(build_s) + " s");

  std::uint64_t bound = std::uint64_t{params.n} * params.merge_levels();
  std::uint64_t total_a = 0, total_r = 0;
  std::mt19937_64 rng(0);
  std::vector<std::uint8_t> x(params.n);
  const int trials = 10'000;
  for (int i = 0; i < trials; ++i) {
    for (auto& v : x) v = static_cast<std::uint8_t>(rng() % (params.k + 1));
    SortResult a = advice_merge_sort(x, table);
    SortResult r = reference_merge_sort(x);
    ck.require(a.values == r.values, "n=16 output differs from the reference");
    ck.require(a.comparisons <= bound, "n=16 comparison bound exceeded");
    total_a += a.comparisons;
    total_r += r.comparisons;
  }
  double mean_a = static_cast<double>(total_a) / trials, mean_r = static_cast<double>(total_r) / trials;
  ck.require(mean_a < mean_r, "advice mean is not below the reference mean");

  SortTable small = build_table({8, 2, 2});
  std::vector<std::uint8_t> y(8, 0);
  std::size_t exhaustive = 0;
  for (;;) {
    SortResult a = advice_merge_sort(y, small);
    ck.require(a.values == reference_merge_sort(y).values, "n=8 output differs from the reference");
    ck.require(a.comparisons <= 8 * 2, "n=8 comparison bound exceeded");
    ++exhaustive;
    std::size_t pos = y.size();
    while (pos > 0 && y[pos - 1] == 2) y[--pos] = 0;
    if (pos == 0) break;
    ++y[pos - 1];
  }
  char buf[160];
  std::snprintf(buf, sizeof buf, "mean comparisons %.2f vs reference %.2f (bound %llu); %zu exhaustive n=8 inputs; "
                                 "build %.3f s", mean_a, mean_r, static_cast<unsigned long long>(bound), exhaustive,
                build_s);
  return ck.done(buf);
}

Outcome bit_exactness() {
  Checker ck;
  PermProgram lit = compile_circuit(parse_circuit("inputs 1\noutput x1"));
  std::string tape = encode_advice(lit).symbols;
  ck.require(tape == "BIm2345112345ArarrrE", "worked tape is " + tape);

  SortTable table = build_table({16, 3, 4});
  auto bytes = serialize_table(table);
  ck.require(serialize_table(deserialize_table(bytes)) == bytes, "in-memory table round trip differs");
  auto dir = std::filesystem::temp_directory_path();
  auto a = dir / "advice5_acceptance_a.tab", b = dir / "advice5_acceptance_b.tab";
  save_table(table, a);
  save_table(load_table(a), b);
  auto slurp = [](const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  std::string fa = slurp(a), fb = slurp(b);
  ck.require(!fa.empty() && fa == fb, "table file round trip differs");
  std::filesystem::remove(a);
  std::filesystem::remove(b);
  return ck.done("worked tape matches; " + std::to_string(fa.size()) + "-byte table file round-trips");
}

} // namespace

int main() {
  Shared shared;
  shared.corpus = gen_corpus(0, {});

  struct Criterion {
    int id;
    std::string name;
    double limit_s;  // 0 means no runtime limit
    std::function<Outcome()> run;
  };
  std::vector<Criterion> criteria{
      {1, "Barrington length bound", 10.0, [&] { return length_bound(shared); }},
      {2, "compiler correctness", 60.0, [&] { return compiler_correctness(shared); }},
      {3, "yield discipline", 0.0, [&] { return yield_discipline(shared); }},
      {4, "constant-space simulation", 0.0, [&] { return simulation(shared); }},
      {5, "parallelization depth", 0.0, [&] { return parallelization(shared); }},
      {6, "round trip", 0.0, [&] { return round_trip(shared); }},
      {7, "advice sorting", 60.0, [&] { return advice_sort(); }},
      {8, "bit-exactness", 0.0, [&] { return bit_exactness(); }},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    auto t0 = Clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    if (c.limit_s > 0 && secs >= c.limit_s) {
      out.pass = false;
      out.detail += "; over the " + std::to_string(static_cast<int>(c.limit_s)) + " s limit";
    }
    char timing[32];
    std::snprintf(timing, sizeof timing, "%.2f s", secs);
    std::cout << (out.pass ? "PASS" : "FAIL") << " [" << c.id << "] " << c.name << ": " << out.detail << " ("
              << timing << ")\n";
    failed += !out.pass;
  }
  std::cout << (failed ? "FAILED " : "ALL PASSED ") << (criteria.size() - failed) << "/" << criteria.size() << '\n';
  return failed ? 1 : 0;
}
