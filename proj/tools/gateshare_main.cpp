// Command-line front end: solve, verify, gen, reduce, extract-vc, bench.
// Reports are JSON with a fixed key order so identical inputs and seeds
// produce identical bytes. Exit codes: 0 success, 1 bad input, 2 violated
// circuit conditions or internal self-check failures.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gateshare/algo_general.hpp"
#include "gateshare/exact.hpp"
#include "gateshare/io.hpp"
#include "gateshare/reductions.hpp"
#include "gateshare/rng.hpp"
#include "gateshare/solve.hpp"

using namespace gateshare;
using ordered_json = nlohmann::ordered_json;

namespace {

struct SolveArgs {
  std::string input, out, dot;
  std::string algorithm = "auto";
  bool dedupe = false;
  long long budget = 20'000'000;
  int candidate_cap = 100000;
};

int cmd_solve(const SolveArgs& a) {
  Instance inst = load_instance_file(a.input);
  if (inst.merged_duplicates > 0)
    std::cerr << "note: merged " << inst.merged_duplicates << " duplicate tree(s)\n";

  SolveOptions opts;
  opts.algorithm = algorithm_from_name(a.algorithm);
  opts.exact_budget = a.budget;
  opts.candidate_cap = a.candidate_cap;
  opts.dedupe = a.dedupe;
  Solved solved = run_solver(inst, opts);

  if (!a.out.empty()) write_file(a.out, circuit_to_json(solved.circuit));
  if (!a.dot.empty()) write_file(a.dot, to_dot(solved.circuit));
  std::cout << report_to_json(solved.report);
  return 0;
}

int cmd_verify(const std::string& instance_path, const std::string& circuit_path) {
  Instance inst = load_instance_file(instance_path);
  Circuit c = load_circuit_file(circuit_path);
  ValidationReport rep = validate(c, inst, ValidateMode::Strict);

  ordered_json j;
  j["ok"] = rep.ok;
  j["size"] = rep.size;
  j["depth"] = rep.depth;
  j["errors"] = rep.errors;
  j["warnings"] = rep.warnings;

  bool eval_ok = true;
  if (rep.ok) {
    // Exhaustive against the operator fold when small, sampled above.
    int n = inst.num_vars;
    auto fold = [&](const VarSet& t, const std::vector<std::uint8_t>& bits) {
      bool acc = inst.op == Op::And;
      bool first = true;
      for (VarId v : t.vars()) {
        bool x = bits[static_cast<std::size_t>(v)] != 0;
        if (first) {
          acc = x;
          first = false;
          continue;
        }
        acc = inst.op == Op::And ? (acc && x) : inst.op == Op::Or ? (acc || x) : (acc != x);
      }
      return acc;
    };
    auto check = [&](const std::vector<std::uint8_t>& bits) {
      for (const auto& [tree, value] : evaluate(c, bits))
        if (value != fold(tree, bits)) return false;
      return true;
    };
    if (n <= 10) {
      for (std::uint64_t m = 0; m < (1ull << n) && eval_ok; ++m) {
        std::vector<std::uint8_t> bits(static_cast<std::size_t>(n));
        for (int v = 0; v < n; ++v) bits[static_cast<std::size_t>(v)] = (m >> v) & 1;
        eval_ok = check(bits);
      }
      j["evaluation"] = std::string("exhaustive");
    } else {
      Rng rng(12345);
      for (int s = 0; s < 256 && eval_ok; ++s) {
        std::vector<std::uint8_t> bits(static_cast<std::size_t>(n));
        for (int v = 0; v < n; ++v) bits[static_cast<std::size_t>(v)] = rng.next() & 1;
        eval_ok = check(bits);
      }
      j["evaluation"] = std::string("sampled");
    }
    if (!eval_ok) j["errors"].push_back("evaluation differs from the operator fold");
  }
  std::cout << j.dump(2) << "\n";
  return rep.ok && eval_ok ? 0 : 2;
}

struct GenArgs {
  int num_vars = 8, num_trees = 4, max_size = 4;
  double bias = 0.5;
  std::uint64_t seed = 1;
  std::string op = "and", out;
  bool text = false;
};

int cmd_gen(const GenArgs& a) {
  GenParams p;
  p.num_vars = a.num_vars;
  p.num_trees = a.num_trees;
  p.max_size = a.max_size;
  p.overlap_bias = a.bias;
  p.seed = a.seed;
  p.op = op_from_name(a.op);
  Instance inst = gen_random(p);
  std::string body = a.text ? serialize_instance_text(inst) : instance_to_json(inst);
  if (a.out.empty())
    std::cout << body;
  else
    write_file(a.out, body);
  return 0;
}

int cmd_reduce(const std::string& graph_path, const std::string& out) {
  VCGraph g = parse_graph_text(read_file(graph_path));
  std::string body = instance_to_json(vc_to_instance(g));
  if (out.empty())
    std::cout << body;
  else
    write_file(out, body);
  return 0;
}

int cmd_extract_vc(const std::string& graph_path, const std::string& circuit_path) {
  VCGraph g = parse_graph_text(read_file(graph_path));
  Circuit c = load_circuit_file(circuit_path);
  std::vector<int> cover = extract_vc(g, c);
  ordered_json j;
  j["cover"] = cover;
  j["size"] = cover.size();
  std::cout << j.dump(2) << "\n";
  return 0;
}

struct BenchArgs {
  std::string dir, out;
  std::string algorithms = "auto";
  int oracle_cap = 9;
  long long budget = 60'000'000;
  int gen_count = 0;
  int num_vars = 8, num_trees = 5, max_size = 4;
  double bias = 0.5;
  std::uint64_t seed = 1;
  bool timings = false;
};

int cmd_bench(const BenchArgs& a) {
  std::vector<std::pair<std::string, Instance>> instances;
  if (!a.dir.empty()) {
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(a.dir))
      if (entry.is_regular_file()) files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    for (const auto& f : files) {
      try {
        instances.emplace_back(f.filename().string(), load_instance_file(f.string()));
      } catch (const std::exception& e) {
        std::cerr << "warning: skipping " << f.string() << ": " << e.what() << "\n";
      }
    }
  }
  for (int i = 0; i < a.gen_count; ++i) {
    GenParams p;
    p.num_vars = a.num_vars;
    p.num_trees = a.num_trees;
    p.max_size = a.max_size;
    p.overlap_bias = a.bias;
    p.seed = a.seed + static_cast<std::uint64_t>(i);
    char name[32];
    std::snprintf(name, sizeof name, "gen-%04d", i);
    instances.emplace_back(name, gen_random(p));
  }
  if (instances.empty()) {
    std::cerr << "error: no usable instances\n";
    return 1;
  }

  std::vector<std::string> algos;
  {
    std::string cur;
    for (char ch : a.algorithms + ",") {
      if (ch == ',') {
        if (!cur.empty()) algos.push_back(cur);
        cur.clear();
      } else {
        cur += ch;
      }
    }
  }

  struct Row {
    std::string instance, algorithm;
    int size = 0;
    int opt = -1;
    double ratio = 0.0;
    double wall_ms = 0.0;
  };
  std::vector<Row> rows;
  struct Agg {
    int count = 0;
    double max_ratio = 0.0, sum_ratio = 0.0;
  };
  std::map<std::string, Agg> agg;

  for (const auto& [name, inst] : instances) {
    int opt = -1;
    if (inst.num_vars <= a.oracle_cap && inst.trees.size() <= 8) {
      ExactResult er = solve_exact(inst, a.budget);
      if (er.exact) opt = er.size;
    }
    for (const std::string& algo : algos) {
      Row row;
      row.instance = name;
      row.algorithm = algo;
      auto start = std::chrono::steady_clock::now();
      SolveOptions opts;
      opts.algorithm = algorithm_from_name(algo);
      opts.exact_budget = a.budget;
      try {
        Solved s = run_solver(inst, opts);
        row.size = s.report.size;
      } catch (const std::invalid_argument& e) {
        std::cerr << "warning: " << name << "/" << algo << ": " << e.what() << "\n";
        continue;
      }
      row.wall_ms = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - start)
                        .count();
      row.opt = opt;
      if (opt > 0) {
        row.ratio = static_cast<double>(row.size) / opt;
        Agg& g = agg[algo];
        ++g.count;
        g.max_ratio = std::max(g.max_ratio, row.ratio);
        g.sum_ratio += row.ratio;
      }
      rows.push_back(std::move(row));
    }
  }
  std::sort(rows.begin(), rows.end(), [](const Row& x, const Row& y) {
    return std::tie(x.instance, x.algorithm) < std::tie(y.instance, y.algorithm);
  });

  ordered_json j;
  j["rows"] = ordered_json::array();
  for (const Row& r : rows) {
    ordered_json row;
    row["instance"] = r.instance;
    row["algorithm"] = r.algorithm;
    row["size"] = r.size;
    if (r.opt >= 0) {
      row["opt"] = r.opt;
      row["ratio"] = r.ratio;
    }
    if (a.timings) row["wall_ms"] = r.wall_ms;
    j["rows"].push_back(std::move(row));
  }
  j["aggregate"] = ordered_json::object();
  for (const auto& [algo, g] : agg) {
    ordered_json e;
    e["count"] = g.count;
    e["max_ratio"] = g.max_ratio;
    e["mean_ratio"] = g.count ? g.sum_ratio / g.count : 0.0;
    j["aggregate"][algo] = std::move(e);
  }
  std::string body = j.dump(2) + "\n";
  if (!a.out.empty()) write_file(a.out, body);

  std::cout << "instance            algorithm  size  opt  ratio\n";
  for (const Row& r : rows) {
    char line[128];
    if (r.opt >= 0)
      std::snprintf(line, sizeof line, "%-18s  %-9s  %4d  %3d  %.4f", r.instance.c_str(),
                    r.algorithm.c_str(), r.size, r.opt, r.ratio);
    else
      std::snprintf(line, sizeof line, "%-18s  %-9s  %4d    -      -", r.instance.c_str(),
                    r.algorithm.c_str(), r.size);
    std::cout << line << "\n";
  }
  for (const auto& [algo, g] : agg) {
    char line[128];
    std::snprintf(line, sizeof line, "%s: %d oracle-checked, max ratio %.4f, mean %.4f",
                  algo.c_str(), g.count, g.max_ratio, g.count ? g.sum_ratio / g.count : 0.0);
    std::cout << line << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"shared-circuit synthesis for families of symmetric gate trees"};
  app.require_subcommand(1);

  SolveArgs sa;
  auto* solve = app.add_subcommand("solve", "synthesize a circuit for an instance");
  solve->add_option("--input,-i", sa.input, "instance file (JSON or text)")->required();
  solve->add_option("--algorithm,-a", sa.algorithm, "exact|k3|k4|general|auto");
  solve->add_option("--out,-o", sa.out, "write the circuit JSON here");
  solve->add_option("--dot", sa.dot, "write a DOT rendering here");
  solve->add_flag("--dedupe", sa.dedupe, "extra structural-hashing pass");
  solve->add_option("--budget", sa.budget, "exact-solver node budget");
  solve->add_option("--candidate-cap", sa.candidate_cap, "shared-subset closure cap");

  std::string vi, vc;
  auto* verify = app.add_subcommand("verify", "validate a circuit against an instance");
  verify->add_option("--instance", vi, "instance file")->required();
  verify->add_option("--circuit", vc, "circuit JSON file")->required();

  GenArgs ga;
  auto* gen = app.add_subcommand("gen", "generate a random instance");
  gen->add_option("--num-vars", ga.num_vars);
  gen->add_option("--num-trees", ga.num_trees);
  gen->add_option("--max-size", ga.max_size);
  gen->add_option("--overlap-bias", ga.bias);
  gen->add_option("--seed", ga.seed);
  gen->add_option("--operator", ga.op, "and|or|xor");
  gen->add_option("--out", ga.out);
  gen->add_flag("--text", ga.text, "emit the text format instead of JSON");

  std::string rg, ro;
  auto* reduce = app.add_subcommand("reduce", "turn a graph into a cover-style instance");
  reduce->add_option("--graph", rg, "graph file (n m header, one edge per line)")->required();
  reduce->add_option("--out", ro);

  std::string eg, ec;
  auto* evc = app.add_subcommand("extract-vc", "read a vertex cover off a solution circuit");
  evc->add_option("--graph", eg)->required();
  evc->add_option("--circuit", ec)->required();

  BenchArgs ba;
  auto* bench = app.add_subcommand("bench", "run solvers over instances and compare to the oracle");
  bench->add_option("--dir", ba.dir, "directory of instance files");
  bench->add_option("--algorithms", ba.algorithms, "comma-separated list");
  bench->add_option("--oracle-cap", ba.oracle_cap, "run the oracle up to this many variables");
  bench->add_option("--budget", ba.budget, "oracle node budget");
  bench->add_option("--out", ba.out, "write the JSON report here");
  bench->add_option("--gen-count", ba.gen_count, "additionally generate this many instances");
  bench->add_option("--num-vars", ba.num_vars);
  bench->add_option("--num-trees", ba.num_trees);
  bench->add_option("--max-size", ba.max_size);
  bench->add_option("--overlap-bias", ba.bias);
  bench->add_option("--seed", ba.seed);
  bench->add_flag("--timings", ba.timings, "include wall times in the report file");

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve->parsed()) return cmd_solve(sa);
    if (verify->parsed()) return cmd_verify(vi, vc);
    if (gen->parsed()) return cmd_gen(ga);
    if (reduce->parsed()) return cmd_reduce(rg, ro);
    if (evc->parsed()) return cmd_extract_vc(eg, ec);
    if (bench->parsed()) return cmd_bench(ba);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::logic_error& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  } catch (const CircuitError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
