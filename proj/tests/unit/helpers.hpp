#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "gateshare/circuit.hpp"
#include "gateshare/instance.hpp"
#include "gateshare/io.hpp"
#include "gateshare/matching.hpp"
#include "gateshare/rng.hpp"

namespace testutil {

using namespace gateshare;

inline std::string fixture_path(const std::string& name) {
  return std::string(GATESHARE_FIXTURE_DIR) + "/" + name;
}

inline Instance load_fixture_instance(const std::string& name) {
  return load_instance_file(fixture_path(name));
}

inline bool fold_tree(const VarSet& tree, Op op, const std::vector<std::uint8_t>& bits) {
  bool acc = false;
  bool first = true;
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

// Exhaustive check (num_vars <= ~12) that every output equals the operator
// fold over its tree.
inline bool evaluates_correctly(const Circuit& c) {
  for (std::uint64_t m = 0; m < (1ull << c.num_vars); ++m) {
    std::vector<std::uint8_t> bits(static_cast<std::size_t>(c.num_vars));
    for (int v = 0; v < c.num_vars; ++v) bits[static_cast<std::size_t>(v)] = (m >> v) & 1;
    for (const auto& [tree, value] : evaluate(c, bits))
      if (value != fold_tree(tree, c.op, bits)) return false;
  }
  return true;
}

inline bool same_evaluation(const Circuit& a, const Circuit& b) {
  if (a.num_vars != b.num_vars) return false;
  for (std::uint64_t m = 0; m < (1ull << a.num_vars); ++m) {
    std::vector<std::uint8_t> bits(static_cast<std::size_t>(a.num_vars));
    for (int v = 0; v < a.num_vars; ++v) bits[static_cast<std::size_t>(v)] = (m >> v) & 1;
    if (evaluate(a, bits) != evaluate(b, bits)) return false;
  }
  return true;
}

// Independent exact optimum for tiny instances: plain exhaustive enumeration
// of built-set families in increasing mask order, memo-free, with candidates
// drawn from ALL variable sets (no subset pruning) and only the elementary
// one-output-per-missing-tree bound. Deliberately naive; keep num_vars <= 6.
inline int enumerate_opt(const Instance& inst) {
  std::vector<std::uint64_t> trees;
  int scratch = 0;
  for (const VarSet& t : inst.trees) {
    if (t.count() < 2) continue;
    trees.push_back(t.low_mask());
    scratch += t.count() - 1;
  }
  if (trees.empty()) return 0;

  std::vector<std::uint64_t> pool;
  for (std::uint64_t m = 3; m < (1ull << inst.num_vars); ++m)
    if (std::popcount(m) >= 2) pool.push_back(m);

  int best = scratch;
  std::vector<std::uint64_t> family;
  auto in_family = [&](std::uint64_t x) {
    return std::find(family.begin(), family.end(), x) != family.end();
  };
  auto splittable = [&](std::uint64_t m) {
    std::uint64_t low = m & (~m + 1);
    for (std::uint64_t a = (m - 1) & m; a; a = (a - 1) & m) {
      if (!(a & low)) continue;
      std::uint64_t b = m ^ a;
      bool oka = std::popcount(a) == 1 || in_family(a);
      bool okb = std::popcount(b) == 1 || in_family(b);
      if (oka && okb) return true;
    }
    return false;
  };
  std::function<void(std::size_t, int)> rec = [&](std::size_t start, int g) {
    int missing = 0;
    for (std::uint64_t t : trees)
      if (!in_family(t)) ++missing;
    if (missing == 0) {
      best = std::min(best, g);
      return;
    }
    if (g + missing >= best) return;
    for (std::size_t i = start; i < pool.size(); ++i) {
      if (!splittable(pool[i])) continue;
      family.push_back(pool[i]);
      rec(i + 1, g + 1);
      family.pop_back();
    }
  };
  rec(0, 0);
  return best;
}

inline MatchGraph random_graph(int n, double edge_prob, Rng& rng) {
  MatchGraph g(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (rng.chance(edge_prob)) g.add_edge(i, j);
  return g;
}

inline Hypergraph random_hypergraph(int n, int num_edges, Rng& rng) {
  Hypergraph h(n);
  for (int e = 0; e < num_edges; ++e) {
    int arity = rng.range(1, 3);
    std::vector<int> vs;
    while (static_cast<int>(vs.size()) < arity) {
      int v = rng.range(0, n - 1);
      if (std::find(vs.begin(), vs.end(), v) == vs.end()) vs.push_back(v);
    }
    h.add_edge(std::move(vs));
  }
  return h;
}

}  // namespace testutil
