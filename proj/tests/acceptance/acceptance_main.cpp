// Acceptance suite: one criterion per --criterion N (1..9), all when no
// argument is given. Prints one PASS/FAIL line per criterion and exits
// nonzero on any failure. Every tolerance, seed, and runtime budget is
// pinned here.

#include <chrono>
#include <cstdio>
#include <algorithm>
#include <cstring>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "gateshare/algo_general.hpp"
#include "gateshare/algo_k3.hpp"
#include "gateshare/algo_k4.hpp"
#include "gateshare/exact.hpp"
#include "gateshare/io.hpp"
#include "gateshare/matching.hpp"
#include "gateshare/reductions.hpp"
#include "gateshare/rng.hpp"
#include "gateshare/solve.hpp"

using namespace gateshare;

namespace {

struct Ctx {
  std::vector<std::string> failures;
  void check(bool ok, const std::string& what) {
    if (!ok && failures.size() < 20) failures.push_back(what);
    if (!ok && failures.size() == 20) failures.push_back("... further failures suppressed");
  }
};

std::string fixture(const std::string& name) {
  return std::string(GATESHARE_FIXTURE_DIR) + "/" + name;
}

constexpr long long kOracleBudget = 400'000'000;

int oracle_size(const Instance& inst, Ctx& ctx) {
  ExactResult r = solve_exact(inst, kOracleBudget);
  ctx.check(r.exact, "oracle budget exhausted on an acceptance instance");
  return r.size;
}

int scratch_bound(const Instance& inst) {
  int s = 0;
  for (const VarSet& t : inst.trees) s += t.count() - 1;
  return s;
}

bool fold_tree(const VarSet& tree, Op op, const std::vector<std::uint8_t>& bits) {
  bool acc = false, first = true;
  for (VarId v : tree.vars()) {
    bool x = bits[static_cast<std::size_t>(v)] != 0;
    if (first) {
      acc = x;
      first = false;
    } else {
      acc = op == Op::And ? (acc && x) : op == Op::Or ? (acc || x) : (acc != x);
    }
  }
  return acc;
}

bool evaluates_exhaustively(const Circuit& c) {
  for (std::uint64_t m = 0; m < (1ull << c.num_vars); ++m) {
    std::vector<std::uint8_t> bits(static_cast<std::size_t>(c.num_vars));
    for (int v = 0; v < c.num_vars; ++v) bits[static_cast<std::size_t>(v)] = (m >> v) & 1;
    for (const auto& [tree, value] : evaluate(c, bits))
      if (value != fold_tree(tree, c.op, bits)) return false;
  }
  return true;
}

bool same_evaluation(const Circuit& a, const Circuit& b) {
  for (std::uint64_t m = 0; m < (1ull << a.num_vars); ++m) {
    std::vector<std::uint8_t> bits(static_cast<std::size_t>(a.num_vars));
    for (int v = 0; v < a.num_vars; ++v) bits[static_cast<std::size_t>(v)] = (m >> v) & 1;
    if (evaluate(a, bits) != evaluate(b, bits)) return false;
  }
  return true;
}

// ---- seeded families shared by criteria 3-5, 8 and 9 ----------------------

std::vector<Instance> family_k3() {
  std::vector<Instance> out;
  Rng rng(30001);
  while (out.size() < 200) {
    if (out.size() % 2 == 0) {
      GenParams p;
      p.num_vars = rng.range(4, 8);
      p.num_trees = rng.range(2, 8);
      p.max_size = 3;
      p.overlap_bias = 0.3 * static_cast<double>(out.size() % 4);
      p.seed = rng.next();
      Instance inst = gen_random(p);
      if (max_tree_size(inst) != 3) continue;
      out.push_back(std::move(inst));
    } else {
      // Families of uniform size-3 trees keep the preprocessing idle, so the
      // residual-exactness clause gets exercised.
      int nv = rng.range(6, 8);
      int nt = rng.range(2, 6);
      std::vector<VarSet> trees;
      while (static_cast<int>(trees.size()) < nt) {
        VarSet t;
        while (t.count() < 3) t.add(static_cast<VarId>(rng.below(static_cast<std::uint64_t>(nv))));
        if (std::find(trees.begin(), trees.end(), t) == trees.end()) trees.push_back(std::move(t));
      }
      out.push_back(make_instance(nv, Op::And, std::move(trees)));
    }
  }
  return out;
}

std::vector<Instance> family_k4() {
  std::vector<Instance> out;
  Rng rng(40001);
  while (out.size() < 150) {
    GenParams p;
    p.num_vars = rng.range(5, 9);
    p.num_trees = rng.range(2, 7);
    p.max_size = 4;
    p.overlap_bias = 0.25 * static_cast<double>(out.size() % 4);
    p.seed = rng.next();
    out.push_back(gen_random(p));
  }
  return out;
}

std::vector<Instance> family_general() {
  std::vector<Instance> out;
  Rng rng(50001);
  while (out.size() < 150) {
    GenParams p;
    p.num_vars = rng.range(6, 10);
    p.max_size = std::min(rng.range(2, 7), p.num_vars);
    p.num_trees = rng.range(2, 6);
    p.overlap_bias = 0.2 + 0.7 * rng.unit();
    p.seed = rng.next();
    out.push_back(gen_random(p));
  }
  return out;
}

// ---- criteria --------------------------------------------------------------

void criterion_1(Ctx& ctx) {
  Instance fig1 = load_instance_file(fixture("fig1.instance"));
  Circuit c = load_circuit_file(fixture("fig1_circuit.json"));
  ValidationReport rep = validate(c, fig1);
  ctx.check(rep.ok, "figure circuit fails validation: " + rep.summary());
  ctx.check(rep.size == 9, "figure circuit size != 9");
  ctx.check(rep.depth == 3, "figure circuit depth != 3");

  Instance fig3 = load_instance_file(fixture("fig3.instance"));
  K3Result k3 = solve_k3(fig3);
  ctx.check(circuit_size(k3.circuit) == 13,
            "k3 trace produced " + std::to_string(circuit_size(k3.circuit)) + " gates, not 13");
  ctx.check(k3.phases.get("shared_pairs") == 8 && k3.phases.get("matching") == 3 &&
                k3.phases.get("scratch") == 2,
            "k3 trace phases differ from 8/3/2");

  PairHypergraph ph = build_hypergraph({}, {}, {VarSet{1, 2, 3, 4}});
  ctx.check(ph.vertex_sets.size() == 6, "pair hypergraph does not have 6 vertices");
  int triples = 0;
  for (const auto& e : ph.graph.edges()) triples += e.size() == 3;
  ctx.check(triples == 8, "pair hypergraph does not have 8 triple edges");
}

void criterion_2(Ctx& ctx) {
  Rng rng(20001);
  for (int it = 0; it < 50; ++it) {
    int n = rng.range(2, 8);
    std::vector<std::pair<int, int>> edges;
    for (int i = 1; i <= n; ++i)
      for (int j = i + 1; j <= n; ++j)
        if (rng.chance(0.35)) edges.emplace_back(i, j);
    VCGraph g = make_vc_graph(n, std::move(edges));
    Instance inst = vc_to_instance(g);
    int opt = oracle_size(inst, ctx);
    int cover = static_cast<int>(brute_min_vc(to_match_graph(g)).size());
    ctx.check(opt == cover + static_cast<int>(g.edges.size()),
              "graph " + std::to_string(it) + ": solved size " + std::to_string(opt) +
                  " != cover " + std::to_string(cover) + " + edges " +
                  std::to_string(g.edges.size()));
  }
}

void criterion_3(Ctx& ctx) {
  int pure_residual = 0;
  int idx = 0;
  for (const Instance& inst : family_k3()) {
    K3Result r = solve_k3(inst);
    int size = circuit_size(r.circuit);
    int opt = oracle_size(inst, ctx);
    ctx.check(3 * size <= 4 * opt, "instance " + std::to_string(idx) + ": 3*" +
                                       std::to_string(size) + " > 4*" + std::to_string(opt));
    bool pure = r.phases.get("pre2") == 0 && r.phases.get("pre3") == 0 &&
                r.phases.get("shared_pairs") == 0;
    if (pure) {
      ++pure_residual;
      ctx.check(size == opt, "pure residual instance " + std::to_string(idx) +
                                 " not solved exactly: " + std::to_string(size) + " vs " +
                                 std::to_string(opt));
    }
    ++idx;
  }
  ctx.check(pure_residual >= 20, "too few pure residual instances in the family: " +
                                     std::to_string(pure_residual));
}

void criterion_4(Ctx& ctx) {
  int core_only = 0;
  int idx = 0;
  for (const Instance& inst : family_k4()) {
    K4Result r = solve_k4(inst);
    int size = circuit_size(r.circuit);
    int opt = oracle_size(inst, ctx);
    ctx.check(10 * size <= 19 * opt, "instance " + std::to_string(idx) + ": 10*" +
                                         std::to_string(size) + " > 19*" + std::to_string(opt));
    const Partition4& p = r.partition;
    if (p.t4_sup3.empty() && p.intersect_groups.empty() && p.matched_pairs.empty()) {
      ++core_only;
      ctx.check(5 * size <= 9 * opt, "depth-2-core instance " + std::to_string(idx) + ": 5*" +
                                         std::to_string(size) + " > 9*" + std::to_string(opt));
    }
    ++idx;
  }
  ctx.check(core_only >= 10,
            "too few all-core instances in the family: " + std::to_string(core_only));
}

void criterion_5(Ctx& ctx) {
  int idx = 0;
  for (const Instance& inst : family_general()) {
    GeneralResult r = solve_general(inst);
    int size = circuit_size(r.circuit);
    int k = max_tree_size(inst);
    ctx.check(size <= scratch_bound(inst),
              "instance " + std::to_string(idx) + " exceeds the scratch bound");
    int opt = oracle_size(inst, ctx);
    ctx.check(3 * size <= 2 * k * opt, "instance " + std::to_string(idx) + ": 3*" +
                                           std::to_string(size) + " > 2*" + std::to_string(k) +
                                           "*" + std::to_string(opt));
    ++idx;
  }
}

void criterion_6(Ctx& ctx) {
  Rng rng(60001);
  int checked = 0;
  while (checked < 300) {
    int n = rng.range(2, 12);
    MatchGraph g(n);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (rng.chance(0.3)) g.add_edge(i, j);
    if (g.edges().size() > 24) continue;  // brute oracle precondition
    int exact_card = static_cast<int>(max_matching(g).size());
    ctx.check(exact_card == brute_matching(g),
              "graph " + std::to_string(checked) + ": matching cardinality mismatch");
    ++checked;
  }
}

void criterion_7(Ctx& ctx) {
  Rng rng(70001);
  for (int it = 0; it < 100; ++it) {
    int n = rng.range(3, 12);
    Hypergraph h(n);
    int m = rng.range(2, 12);
    for (int e = 0; e < m; ++e) {
      int arity = rng.range(1, 3);
      std::vector<int> vs;
      while (static_cast<int>(vs.size()) < arity) {
        int v = rng.range(0, n - 1);
        if (std::find(vs.begin(), vs.end(), v) == vs.end()) vs.push_back(v);
      }
      h.add_edge(std::move(vs));
    }

    auto cover = cover_from_matching(h, maximal_matching(h));
    std::vector<char> in(static_cast<std::size_t>(n), 0);
    for (int v : cover) in[static_cast<std::size_t>(v)] = 1;
    for (const auto& e : h.edges()) {
      bool cov = false;
      for (int v : e) cov = cov || in[static_cast<std::size_t>(v)];
      ctx.check(cov, "hypergraph " + std::to_string(it) + ": matched cover misses an edge");
    }

    auto pruned = prune_cover(h, cover);
    std::fill(in.begin(), in.end(), 0);
    for (int v : pruned) in[static_cast<std::size_t>(v)] = 1;
    for (int v : pruned) {
      in[static_cast<std::size_t>(v)] = 0;
      bool broke = false;
      for (const auto& e : h.edges()) {
        bool cov = false;
        for (int u : e) cov = cov || in[static_cast<std::size_t>(u)];
        if (!cov) broke = true;
      }
      in[static_cast<std::size_t>(v)] = 1;
      ctx.check(broke, "hypergraph " + std::to_string(it) + ": pruned cover is not minimal");
    }

    auto opt = brute_min_vc(h);
    ctx.check(pruned.size() <= 3 * opt.size(),
              "hypergraph " + std::to_string(it) + ": pruned cover exceeds 3x optimum");
  }
}

void rewrite_safety(const Circuit& base, const Instance& inst, const std::string& label,
                    Ctx& ctx) {
  for (Op op : {Op::And, Op::Or, Op::Xor}) {
    Circuit c = base;
    c.op = op;
    Instance i2 = make_instance(inst.num_vars, op, inst.trees);

    Circuit d = dedupe_gates(c);
    ctx.check(circuit_size(d) <= circuit_size(c), label + ": dedupe grew the circuit");
    ctx.check(validate(d, i2).ok, label + ": dedupe broke validation");
    ctx.check(same_evaluation(c, d), label + ": dedupe changed evaluation");

    Circuit norm = depth2_normalize(c, i2);
    ctx.check(circuit_size(norm) == circuit_size(c), label + ": normalize changed size");
    ctx.check(validate(norm, i2).ok, label + ": normalize broke validation");
    ctx.check(same_evaluation(c, norm), label + ": normalize changed evaluation");

    // Applicable cones end at depth 2: no 4-variable output may keep a
    // fanout-1 gate on 3 variables as an operand.
    auto sets = node_varsets(norm);
    std::vector<int> fanout(norm.gates.size(), 0);
    for (const Gate& g : norm.gates)
      for (NodeRef r : {g.a, g.b})
        if (r.is_gate()) ++fanout[static_cast<std::size_t>(r.gate_index())];
    for (const auto& [t, n] : norm.outputs)
      if (n.is_gate()) ++fanout[static_cast<std::size_t>(n.gate_index())];
    for (const auto& [t, n] : norm.outputs) {
      if (t.count() != 4 || !n.is_gate()) continue;
      const Gate& g = norm.gates[static_cast<std::size_t>(n.gate_index())];
      for (NodeRef r : {g.a, g.b}) {
        if (!r.is_gate()) continue;
        if (sets[static_cast<std::size_t>(r.gate_index())].count() == 3)
          ctx.check(fanout[static_cast<std::size_t>(r.gate_index())] >= 2,
                    label + ": a rebalanceable chain survived normalization");
      }
    }
  }
}

void criterion_8(Ctx& ctx) {
  Instance fig1 = load_instance_file(fixture("fig1.instance"));
  rewrite_safety(load_circuit_file(fixture("fig1_circuit.json")), fig1, "fig1", ctx);

  Instance fig3 = load_instance_file(fixture("fig3.instance"));
  rewrite_safety(solve_k3(fig3).circuit, fig3, "fig3-k3", ctx);

  Rng rng(20001);  // criterion 2's graphs, reduced and solved exactly
  for (int it = 0; it < 50; ++it) {
    int n = rng.range(2, 8);
    std::vector<std::pair<int, int>> edges;
    for (int i = 1; i <= n; ++i)
      for (int j = i + 1; j <= n; ++j)
        if (rng.chance(0.35)) edges.emplace_back(i, j);
    VCGraph g = make_vc_graph(n, std::move(edges));
    Instance inst = vc_to_instance(g);
    rewrite_safety(solve_exact(inst, kOracleBudget).circuit, inst,
                   "reduction-" + std::to_string(it), ctx);
  }

  int idx = 0;
  for (const Instance& inst : family_k3()) {
    rewrite_safety(solve_k3(inst).circuit, inst, "k3-" + std::to_string(idx), ctx);
    rewrite_safety(solve_exact(inst, kOracleBudget).circuit, inst, "k3opt-" + std::to_string(idx),
                   ctx);
    ++idx;
  }
  idx = 0;
  for (const Instance& inst : family_k4()) {
    rewrite_safety(solve_k4(inst).circuit, inst, "k4-" + std::to_string(idx), ctx);
    rewrite_safety(solve_exact(inst, kOracleBudget).circuit, inst, "k4opt-" + std::to_string(idx),
                   ctx);
    ++idx;
  }
  idx = 0;
  for (const Instance& inst : family_general()) {
    rewrite_safety(solve_general(inst).circuit, inst, "gen-" + std::to_string(idx), ctx);
    rewrite_safety(solve_exact(inst, kOracleBudget).circuit, inst,
                   "genopt-" + std::to_string(idx), ctx);
    ++idx;
  }
}

std::string mini_bench_report() {
  std::vector<Instance> family = family_k3();
  std::string body = "instance,algorithm,size,opt\n";
  for (int i = 0; i < 30; ++i) {
    const Instance& inst = family[static_cast<std::size_t>(i)];
    K3Result r = solve_k3(inst);
    ExactResult e = solve_exact(inst, kOracleBudget);
    body += std::to_string(i) + ",k3," + std::to_string(circuit_size(r.circuit)) + "," +
            std::to_string(e.size) + "\n";
  }
  return body;
}

void criterion_9(Ctx& ctx) {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "gateshare_acceptance";
  fs::create_directories(dir);

  Instance fig1 = load_instance_file(fixture("fig1.instance"));
  SolveOptions opts;
  opts.algorithm = Algorithm::General;
  Solved a = run_solver(fig1, opts);
  Solved b = run_solver(fig1, opts);
  ctx.check(circuit_to_json(a.circuit) == circuit_to_json(b.circuit),
            "solve artifacts differ between identical runs");
  ctx.check(report_to_json(a.report) == report_to_json(b.report),
            "solve reports differ between identical runs");

  std::string r1 = mini_bench_report();
  std::string r2 = mini_bench_report();
  fs::path f1 = dir / "report_a.csv";
  fs::path f2 = dir / "report_b.csv";
  write_file(f1.string(), r1);
  write_file(f2.string(), r2);
  ctx.check(read_file(f1.string()) == read_file(f2.string()),
            "seeded report files are not byte-identical");

  GenParams p;
  p.num_vars = 9;
  p.num_trees = 6;
  p.max_size = 5;
  p.overlap_bias = 0.5;
  p.seed = 99;
  ctx.check(serialize_instance_text(gen_random(p)) == serialize_instance_text(gen_random(p)),
            "generator output differs between identical runs");
}

struct Criterion {
  int id;
  const char* name;
  double budget_seconds;
  std::function<void(Ctx&)> run;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> cs = {
      {1, "fixture fidelity", 1.0, criterion_1},
      {2, "reduction identity: solved size equals cover plus edges", 120.0, criterion_2},
      {3, "k<=3 ratio within 4/3, residual solved exactly", 300.0, criterion_3},
      {4, "k<=4 ratio within 1.9, core within 1.8", 600.0, criterion_4},
      {5, "general ratio within 2k/3, never above scratch", 600.0, criterion_5},
      {6, "maximum matching equals brute force", 60.0, criterion_6},
      {7, "cover extraction, minimality, 3x bound", 60.0, criterion_7},
      {8, "rewrites preserve evaluation and size bounds", 300.0, criterion_8},
      {9, "byte-identical reruns", 120.0, criterion_9},
  };
  return cs;
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) only = std::atoi(argv[i + 1]);
  }

  bool all_ok = true;
  for (const Criterion& c : criteria()) {
    if (only != 0 && c.id != only) continue;
    Ctx ctx;
    auto start = std::chrono::steady_clock::now();
    try {
      c.run(ctx);
    } catch (const std::exception& e) {
      ctx.check(false, std::string("exception: ") + e.what());
    }
    double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (elapsed > c.budget_seconds)
      ctx.check(false, "runtime " + std::to_string(elapsed) + "s exceeds the " +
                           std::to_string(c.budget_seconds) + "s budget");
    if (ctx.failures.empty()) {
      std::printf("PASS  criterion %d: %s (%.2fs)\n", c.id, c.name, elapsed);
    } else {
      all_ok = false;
      std::printf("FAIL  criterion %d: %s (%.2fs)\n", c.id, c.name, elapsed);
      for (const std::string& f : ctx.failures) std::printf("      - %s\n", f.c_str());
    }
  }
  return all_ok ? 0 : 1;
}
