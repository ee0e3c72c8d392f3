#include "advice5/advice_machine.hpp"
#include "advice5/advice_sort.hpp"
#include "advice5/barrington.hpp"
#include "advice5/equiv.hpp"
#include "advice5/error.hpp"
#include "advice5/parallelize.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

using namespace advice5;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& data) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + path);
  out << data;
  if (!out) throw UsageError("write failed for " + path);
}

Bits parse_bits(const std::string& s) {
  Bits x;
  x.reserve(s.size());
  for (char ch : s) {
    if (ch != '0' && ch != '1') throw UsageError("--input must be a 0/1 string, got '" + s + "'");
    x.push_back(static_cast<std::uint8_t>(ch - '0'));
  }
  return x;
}

std::string bits_to_string(BitView x) {
  std::string s;
  for (auto b : x) s.push_back(b ? '1' : '0');
  return s;
}

std::vector<std::uint8_t> parse_values(const std::string& s) {
  std::vector<std::uint8_t> v;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    unsigned value = 0;
    try {
      std::size_t used = 0;
      value = std::stoul(item, &used);
      if (used != item.size() || value > 255) throw std::invalid_argument(item);
    } catch (const std::logic_error&) {
      throw UsageError("--input must be comma-separated integers in 0..255, got '" + item + "'");
    }
    v.push_back(static_cast<std::uint8_t>(value));
  }
  return v;
}

std::string join_values(std::span<const std::uint8_t> v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(v[i]);
  }
  return s;
}

// Sniffs the file kind from the first meaningful token. Anything that is not
// a netlist or a program file is read as an advice tape.
Evaluator load_any(const std::string& path, std::optional<int> arity_hint) {
  std::string text = read_file(path);
  std::istringstream in(text);
  std::string line;
  std::string first;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    if (ls >> first && first.front() != '#') break;
    first.clear();
  }
  if (first == "inputs") return evaluator(parse_circuit(text));
  if (first == "permbp") return evaluator(parse_perm_program(text));
  if (first == "genbp") return evaluator(parse_general_bp(text));
  AdviceTape t = parse_advice(text);
  if (t.num_inputs == 0 && arity_hint) t.num_inputs = *arity_hint;
  return evaluator(std::move(t));
}

int report(const Verdict& v, int n, bool exhaustive) {
  if (!v.equal) {
    std::cout << "counterexample " << bits_to_string(*v.counterexample) << '\n';
    return 1;
  }
  if (exhaustive) std::cout << "equal over 2^" << n << " inputs\n";
  else std::cout << "equal over " << v.inputs_checked << " sampled inputs\n";
  return 0;
}

Verdict compare(const Evaluator& a, const Evaluator& b, int n, int max_n, std::uint64_t samples, std::uint64_t seed,
                bool& exhaustive) {
  exhaustive = n <= max_n;
  if (exhaustive) return equiv_exhaustive(a, b, n);
  std::cerr << "n=" << n << " exceeds --max-n " << max_n << "; sampling " << samples << " inputs\n";
  std::cout << "seed=" << seed << '\n';
  return equiv_sampled(a, b, n, samples, seed);
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Width-5 branching programs, advice tapes and advice-assisted sorting"};
  app.require_subcommand(1);
  int rc = 0;

  std::string circuit_file, bp_file, genbp_file, out_file, target = kDefaultTarget.to_string();
  std::string advice_file, input, a_file, b_file, table_file;
  bool stats = false, count = false;
  int max_n = kMaxExhaustiveInputs;
  std::uint64_t samples = 10'000, seed = 0, trials = 1000;
  std::uint32_t sort_n = 0, sort_k = 0, sort_b = 0;

  auto* compile = app.add_subcommand("compile", "compile a circuit netlist to a width-5 permutation program");
  compile->add_option("--circuit", circuit_file)->required();
  compile->add_option("--out", out_file)->required();
  compile->add_option("--target", target, "five-cycle in one-line notation");
  compile->callback([&] {
    PermProgram p = compile_circuit(parse_circuit(read_file(circuit_file)), Perm5::parse(target));
    write_file(out_file, to_text(p));
    std::cout << "length=" << p.length() << '\n';
  });

  auto* bp2c = app.add_subcommand("bp2circuit", "convert a leveled branching program to a shallow circuit");
  bp2c->add_option("--bp", bp_file)->required();
  bp2c->add_option("--out", out_file)->required();
  bp2c->callback([&] {
    GeneralBP b = parse_general_bp(read_file(bp_file));
    Circuit c = bp_to_circuit(b);
    write_file(out_file, to_netlist(c));
    std::cout << "depth=" << depth(c) << "\nbound=" << bp_depth_bound(width(b), b.length()) << "\ngates=" << gate_count(c)
              << '\n';
  });

  auto* encode = app.add_subcommand("encode", "write a permutation program as an advice tape");
  encode->add_option("--bp", bp_file)->required();
  encode->add_option("--out", out_file)->required();
  encode->callback([&] {
    AdviceTape t = encode_advice(parse_perm_program(read_file(bp_file)));
    write_file(out_file, t.symbols);
    std::cout << "symbols=" << t.symbols.size() << '\n';
  });

  auto* simulate = app.add_subcommand("simulate", "run the constant-space interpreter on an advice tape");
  simulate->add_option("--advice", advice_file)->required();
  simulate->add_option("--input", input, "bit string, x1 first")->required();
  simulate->add_flag("--stats", stats, "print trace statistics as key=value lines");
  simulate->callback([&] {
    Bits x = parse_bits(input);
    AdviceTape t = parse_advice(read_file(advice_file));
    if (t.num_inputs == 0) t.num_inputs = static_cast<int>(x.size());
    RunResult r = run_tm(t, x);
    std::cout << (r.accept ? "accept" : "reject") << '\n';
    if (stats) {
      const TraceStats& s = r.stats;
      std::cout << "advice_head_moves_left=" << s.advice_head_moves_left << '\n'
                << "advice_head_moves_right=" << s.advice_head_moves_right << '\n'
                << "advice_head_monotone=" << (s.advice_head_monotone ? 1 : 0) << '\n'
                << "input_head_moves=" << s.input_head_moves << '\n'
                << "steps=" << s.steps << '\n'
                << "register_configs=" << s.register_witness.size() << '\n'
                << "register_bound=" << kRegisterBound << '\n';
    }
  });

  auto* eval = app.add_subcommand("eval", "evaluate a circuit or program on one input");
  auto* eval_kind = eval->add_option_group("source");
  eval_kind->add_option("--circuit", circuit_file);
  eval_kind->add_option("--bp", bp_file, "permutation program");
  eval_kind->add_option("--genbp", genbp_file, "general leveled program");
  eval_kind->require_option(1);
  eval->add_option("--input", input, "bit string, x1 first")->required();
  eval->callback([&] {
    Bits x = parse_bits(input);
    bool out = false;
    if (!circuit_file.empty()) out = eval_circuit(parse_circuit(read_file(circuit_file)), x);
    else if (!bp_file.empty()) out = eval_perm_bp(parse_perm_program(read_file(bp_file)), x);
    else out = eval_general_bp(parse_general_bp(read_file(genbp_file)), x);
    std::cout << (out ? 1 : 0) << '\n';
  });

  auto* equiv = app.add_subcommand("equiv", "compare two files of any supported kind");
  equiv->add_option("--a", a_file)->required();
  equiv->add_option("--b", b_file)->required();
  equiv->add_option("--max-n", max_n, "largest n checked exhaustively; wider inputs are sampled")
      ->check(CLI::Range(0, kMaxExhaustiveInputs));
  equiv->add_option("--samples", samples);
  equiv->add_option("--seed", seed);
  equiv->callback([&] {
    Evaluator a = load_any(a_file, std::nullopt);
    Evaluator b = load_any(b_file, a.num_inputs);
    if (a.num_inputs == 0 && b.num_inputs != 0) a = load_any(a_file, b.num_inputs);
    if (a.num_inputs != b.num_inputs)
      throw ArityMismatch(a_file + " takes " + std::to_string(a.num_inputs) + " inputs, " + b_file + " takes " +
                          std::to_string(b.num_inputs));
    bool exhaustive = false;
    Verdict v = compare(a, b, a.num_inputs, max_n, samples, seed, exhaustive);
    rc = report(v, a.num_inputs, exhaustive);
  });

  auto* roundtrip = app.add_subcommand("roundtrip", "program -> shallow circuit -> width-5 program, then compare");
  roundtrip->add_option("--genbp", genbp_file)->required();
  roundtrip->add_option("--max-n", max_n)->check(CLI::Range(0, kMaxExhaustiveInputs));
  roundtrip->add_option("--samples", samples);
  roundtrip->add_option("--seed", seed);
  roundtrip->callback([&] {
    GeneralBP b = parse_general_bp(read_file(genbp_file));
    Circuit c = bp_to_circuit(b);
    CompressedProgram p = compile_circuit_compressed(c);
    int bound = bp_depth_bound(width(b), b.length());
    std::cout << "width=" << width(b) << "\nlength=" << b.length() << "\ncircuit_depth=" << depth(c)
              << "\ndepth_bound=" << bound << "\nperm_length=" << p.length() << "\nlength_bound=4^" << bound << '\n';
    bool exhaustive = false;
    Verdict v = compare(evaluator(b), evaluator(std::move(p)), b.num_inputs, max_n, samples, seed, exhaustive);
    rc = report(v, b.num_inputs, exhaustive);
  });

  auto* sort_table = app.add_subcommand("sort-table", "precompute the block-sorting table");
  sort_table->add_option("--n", sort_n)->required();
  sort_table->add_option("--k", sort_k)->required();
  sort_table->add_option("--b", sort_b, "block size; defaults to n / ceil(log2 n) rounded down to a power of two");
  sort_table->add_option("--out", out_file)->required();
  sort_table->callback([&] {
    SortParams p = sort_b ? SortParams{sort_n, sort_k, sort_b} : SortParams::with_default_block(sort_n, sort_k);
    SortTable t = build_table(p);
    save_table(t, out_file);
    std::cout << "n=" << p.n << "\nk=" << p.k << "\nb=" << p.b << "\nentries=" << t.entry_count() << '\n';
  });

  auto* sort = app.add_subcommand("sort", "sort one input with a precomputed table");
  sort->add_option("--table", table_file)->required();
  sort->add_option("--input", input, "comma-separated values")->required();
  sort->add_flag("--count", count, "also print comparison counts");
  sort->callback([&] {
    SortTable t = load_table(table_file);
    auto x = parse_values(input);
    SortResult r = advice_merge_sort(x, t);
    std::cout << join_values(r.values) << '\n';
    if (count) {
      std::cout << "comparisons=" << r.comparisons << "\nreference_comparisons=" << reference_merge_sort(x).comparisons
                << "\nbound=" << std::uint64_t{t.params.n} * t.params.merge_levels() << '\n';
    }
  });

  auto* bench = app.add_subcommand("bench-sort", "compare advice sorting against plain merge sort on random inputs");
  bench->add_option("--table", table_file)->required();
  bench->add_option("--trials", trials);
  bench->add_option("--seed", seed);
  bench->callback([&] {
    SortTable t = load_table(table_file);
    std::mt19937_64 rng(seed);
    std::cout << "seed=" << seed << "\ntrial\tadvice\treference\n";
    std::uint64_t total_a = 0, total_r = 0, max_a = 0, max_r = 0;
    std::vector<std::uint8_t> x(t.params.n);
    for (std::uint64_t i = 0; i < trials; ++i) {
      for (auto& v : x) v = static_cast<std::uint8_t>(rng() % (t.params.k + 1));
      std::uint64_t a = advice_merge_sort(x, t).comparisons;
      std::uint64_t r = reference_merge_sort(x).comparisons;
      std::cout << i << '\t' << a << '\t' << r << '\n';
      total_a += a;
      total_r += r;
      max_a = std::max(max_a, a);
      max_r = std::max(max_r, r);
    }
    if (trials) {
      std::cout << "mean\t" << static_cast<double>(total_a) / trials << '\t' << static_cast<double>(total_r) / trials
                << '\n';
      std::cout << "max\t" << max_a << '\t' << max_r << '\n';
    }
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return rc;
}
