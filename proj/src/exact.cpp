#include "gateshare/exact.hpp"

#include <algorithm>
#include <bit>
#include <unordered_map>

namespace gateshare {

namespace {

constexpr int kInf = 1 << 28;

struct TreeState {
  std::uint64_t mask = 0;
  int size = 0;
  std::vector<VarId> vars;
  std::vector<char> avail_rel;  // indexed by relative mask; built sets only
  int pieces = 0;               // current c(T): min #available parts tiling T
  bool done = false;
};

struct Split {
  int ia, ib;  // universe ids of the parts, -1 for singletons
  std::uint64_t am, bm;
};

// Search over families of built variable sets, represented as indices into a
// fixed universe of candidate masks. Families are enumerated in strictly
// increasing index order; every member splits into two smaller masks, so any
// family admits exactly one such ordering and no state repeats within one
// deepening iteration.
struct Searcher {
  std::vector<std::uint64_t> uni;                      // ascending candidate masks
  std::vector<std::vector<Split>> splits;              // per id, part-a mask ascending
  std::vector<std::vector<std::pair<int, std::uint32_t>>> containing;  // id -> (tree, rel mask)
  std::vector<char> built;
  std::vector<TreeState> trees;
  int missing = 0;

  long long nodes = 0;
  long long budget = 0;
  bool aborted = false;
  int limit = 0;
  std::vector<int> trace, best;
  bool found = false;

  std::vector<int> dp;  // scratch for the pieces DP

  int recompute_pieces(TreeState& t) {
    int full = (1 << t.size) - 1;
    dp.assign(static_cast<std::size_t>(full) + 1, kInf);
    dp[0] = 0;
    for (int m = 1; m <= full; ++m) {
      int low = m & -m;
      int best_m = dp[static_cast<std::size_t>(m ^ low)] + 1;  // single variable piece
      for (int s = m; s; s = (s - 1) & m) {
        if (!(s & low) || s == low) continue;
        if (t.avail_rel[static_cast<std::size_t>(s)])
          best_m = std::min(best_m, dp[static_cast<std::size_t>(m ^ s)] + 1);
      }
      dp[static_cast<std::size_t>(m)] = best_m;
    }
    return dp[static_cast<std::size_t>(full)];
  }

  // Admissible bound: for the best single tree, any completion needs
  // pieces-1 new gates inside its cone, and every other missing tree whose
  // set is not contained in it needs a distinct output gate.
  int lower_bound() const {
    int lb = missing;
    for (std::size_t i = 0; i < trees.size(); ++i) {
      if (trees[i].done) continue;
      int extra = 0;
      for (std::size_t j = 0; j < trees.size(); ++j) {
        if (j == i || trees[j].done) continue;
        if ((trees[j].mask & ~trees[i].mask) != 0) ++extra;
      }
      lb = std::max(lb, trees[i].pieces - 1 + extra);
    }
    return lb;
  }

  bool splittable(int id) const {
    for (const Split& sp : splits[static_cast<std::size_t>(id)]) {
      bool oa = sp.ia < 0 || built[static_cast<std::size_t>(sp.ia)];
      bool ob = sp.ib < 0 || built[static_cast<std::size_t>(sp.ib)];
      if (oa && ob) return true;
    }
    return false;
  }

  struct Undo {
    int tree;
    int old_pieces;
    bool was_done;
  };

  void build(int id, std::vector<Undo>& undo) {
    built[static_cast<std::size_t>(id)] = 1;
    for (auto [ti, rel] : containing[static_cast<std::size_t>(id)]) {
      TreeState& t = trees[static_cast<std::size_t>(ti)];
      undo.push_back({ti, t.pieces, t.done});
      t.avail_rel[static_cast<std::size_t>(rel)] = 1;
      t.pieces = recompute_pieces(t);
      if (!t.done && t.pieces == 1) {
        t.done = true;
        --missing;
      }
    }
  }

  void unbuild(int id, const std::vector<Undo>& undo) {
    built[static_cast<std::size_t>(id)] = 0;
    for (auto [ti, rel] : containing[static_cast<std::size_t>(id)]) {
      TreeState& t = trees[static_cast<std::size_t>(ti)];
      t.avail_rel[static_cast<std::size_t>(rel)] = 0;
    }
    for (auto it = undo.rbegin(); it != undo.rend(); ++it) {
      TreeState& t = trees[static_cast<std::size_t>(it->tree)];
      if (t.done && !it->was_done) ++missing;
      t.done = it->was_done;
      t.pieces = it->old_pieces;
    }
  }

  bool dfs(int last, int g) {
    if (aborted) return false;
    if (missing == 0) {
      best = trace;
      found = true;
      return true;
    }
    if (g + lower_bound() > limit) return false;
    if (++nodes > budget) {
      aborted = true;
      return false;
    }
    for (int id = last + 1; id < static_cast<int>(uni.size()); ++id) {
      if (built[static_cast<std::size_t>(id)] || !splittable(id)) continue;
      std::vector<Undo> undo;
      build(id, undo);
      trace.push_back(id);
      if (dfs(id, g + 1)) return true;
      trace.pop_back();
      unbuild(id, undo);
    }
    return false;
  }
};

std::uint32_t relative_mask(std::uint64_t sub, const std::vector<VarId>& tree_vars) {
  std::uint32_t rel = 0;
  for (std::size_t i = 0; i < tree_vars.size(); ++i)
    if (sub & (1ull << tree_vars[i])) rel |= 1u << i;
  return rel;
}

Circuit scratch_circuit(const Instance& inst) {
  CircuitBuilder b(inst.num_vars, inst.op);
  for (const VarSet& t : inst.trees) b.set_output(t, b.build_scratch(t));
  return b.take();
}

}  // namespace

ExactResult solve_exact(const Instance& inst, long long node_budget) {
  ExactOptions o;
  o.node_budget = node_budget;
  return solve_exact(inst, o);
}

ExactResult solve_exact(const Instance& inst, const ExactOptions& opts) {
  if (inst.num_vars > 64)
    throw InstanceError("solve_exact: more than 64 variables is unsupported");

  std::vector<std::uint64_t> tree_masks;
  int scratch_size = 0;
  for (const VarSet& t : inst.trees) {
    if (t.count() < 2) continue;
    if (t.count() > 20)
      throw InstanceError("solve_exact: trees larger than 20 variables are unsupported");
    tree_masks.push_back(t.low_mask());
    scratch_size += t.count() - 1;
  }

  ExactResult res;
  if (tree_masks.empty()) {
    CircuitBuilder b(inst.num_vars, inst.op);
    for (const VarSet& t : inst.trees) b.set_output(t, NodeRef::input(t.min_var()));
    res.circuit = b.take();
    res.size = 0;
    return res;
  }

  Searcher s;
  s.budget = opts.node_budget;

  // Universe: every subset (size >= 2) of some tree.
  {
    std::vector<std::uint64_t> all;
    for (std::uint64_t tm : tree_masks) {
      for (std::uint64_t sub = tm; sub; sub = (sub - 1) & tm)
        if (std::popcount(sub) >= 2) all.push_back(sub);
    }
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    s.uni = std::move(all);
  }
  std::unordered_map<std::uint64_t, int> id_of;
  id_of.reserve(s.uni.size() * 2);
  for (int i = 0; i < static_cast<int>(s.uni.size()); ++i) id_of.emplace(s.uni[static_cast<std::size_t>(i)], i);

  s.splits.resize(s.uni.size());
  for (int i = 0; i < static_cast<int>(s.uni.size()); ++i) {
    std::uint64_t m = s.uni[static_cast<std::size_t>(i)];
    std::uint64_t low = m & (~m + 1);
    std::vector<std::pair<std::uint64_t, std::uint64_t>> raw;
    for (std::uint64_t a = m; a; a = (a - 1) & m) {
      if (!(a & low) || a == m) continue;  // the part holding the lowest bit, proper
      raw.emplace_back(a, m ^ a);
    }
    std::sort(raw.begin(), raw.end());
    for (auto [a, b] : raw) {
      int ia = std::popcount(a) == 1 ? -1 : id_of.at(a);
      int ib = std::popcount(b) == 1 ? -1 : id_of.at(b);
      s.splits[static_cast<std::size_t>(i)].push_back(Split{ia, ib, a, b});
    }
  }

  s.built.assign(s.uni.size(), 0);
  s.containing.resize(s.uni.size());
  for (std::uint64_t tm : tree_masks) {
    TreeState t;
    t.mask = tm;
    t.size = std::popcount(tm);
    for (int v = 0; v < 64; ++v)
      if (tm & (1ull << v)) t.vars.push_back(v);
    t.avail_rel.assign(1u << t.size, 0);
    s.trees.push_back(std::move(t));
  }
  for (int i = 0; i < static_cast<int>(s.uni.size()); ++i) {
    std::uint64_t m = s.uni[static_cast<std::size_t>(i)];
    for (int ti = 0; ti < static_cast<int>(s.trees.size()); ++ti) {
      const TreeState& t = s.trees[static_cast<std::size_t>(ti)];
      if ((m & ~t.mask) == 0)
        s.containing[static_cast<std::size_t>(i)].emplace_back(ti, relative_mask(m, t.vars));
    }
  }
  for (TreeState& t : s.trees) t.pieces = s.recompute_pieces(t);
  s.missing = static_cast<int>(s.trees.size());

  int lb0 = s.lower_bound();
  for (s.limit = lb0; s.limit < scratch_size && !s.found && !s.aborted; ++s.limit)
    s.dfs(-1, 0);

  res.nodes_explored = s.nodes;
  if (s.found) {
    CircuitBuilder b(inst.num_vars, inst.op);
    std::unordered_map<std::uint64_t, NodeRef> node_of;
    auto node_for = [&](std::uint64_t m) {
      if (std::popcount(m) == 1) return NodeRef::input(std::countr_zero(m));
      return node_of.at(m);
    };
    for (int id : s.best) {
      std::uint64_t m = s.uni[static_cast<std::size_t>(id)];
      for (const Split& sp : s.splits[static_cast<std::size_t>(id)]) {
        bool oa = sp.ia < 0 || node_of.count(sp.am);
        bool ob = sp.ib < 0 || node_of.count(sp.bm);
        if (!oa || !ob) continue;
        node_of[m] = b.add_gate(node_for(sp.am), node_for(sp.bm));
        break;
      }
    }
    for (const VarSet& t : inst.trees) {
      if (t.count() == 1)
        b.set_output(t, NodeRef::input(t.min_var()));
      else
        b.set_output(t, node_of.at(t.low_mask()));
    }
    res.circuit = b.take();
    res.size = static_cast<int>(s.best.size());
    res.exact = true;
  } else {
    // Limits below the scratch bound are exhausted (or the budget ran out);
    // per-tree chains are the best known solution either way.
    res.circuit = scratch_circuit(inst);
    res.size = scratch_size;
    res.exact = !s.aborted;
  }
  return res;
}

namespace {

struct VcSearch {
  const std::vector<std::vector<int>>* edges;
  std::vector<char> in_cover;
  std::vector<int> cover, best;

  bool covered(const std::vector<int>& e) const {
    return std::any_of(e.begin(), e.end(),
                       [&](int v) { return in_cover[static_cast<std::size_t>(v)]; });
  }

  void rec() {
    const std::vector<int>* open = nullptr;
    for (const auto& e : *edges) {
      if (!covered(e)) {
        open = &e;
        break;
      }
    }
    if (!open) {
      if (cover.size() < best.size()) best = cover;
      return;
    }
    if (cover.size() + 1 >= best.size()) return;
    for (int v : *open) {
      in_cover[static_cast<std::size_t>(v)] = 1;
      cover.push_back(v);
      rec();
      cover.pop_back();
      in_cover[static_cast<std::size_t>(v)] = 0;
    }
  }
};

}  // namespace

std::vector<int> brute_min_vc(const Hypergraph& h) {
  VcSearch s;
  s.edges = &h.edges();
  s.in_cover.assign(static_cast<std::size_t>(h.num_vertices()), 0);
  std::vector<char> touched(static_cast<std::size_t>(h.num_vertices()), 0);
  for (const auto& e : h.edges())
    for (int v : e) touched[static_cast<std::size_t>(v)] = 1;
  for (int v = 0; v < h.num_vertices(); ++v)
    if (touched[static_cast<std::size_t>(v)]) s.best.push_back(v);
  s.rec();
  std::sort(s.best.begin(), s.best.end());
  return s.best;
}

std::vector<int> brute_min_vc(const MatchGraph& g) {
  Hypergraph h(g.num_vertices());
  for (auto [u, v] : g.edges()) h.add_edge({u, v});
  return brute_min_vc(h);
}

}  // namespace gateshare
