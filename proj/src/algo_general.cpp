#include "gateshare/algo_general.hpp"

#include <algorithm>
#include <set>

namespace gateshare {

std::pair<std::vector<SupEntry>, std::vector<VarSet>> preprocess_sup(const Instance& inst) {
  int k = max_tree_size(inst);
  std::vector<SupEntry> sup;
  std::vector<VarSet> rest;
  for (const VarSet& t : inst.trees) {
    const VarSet* parent = nullptr;
    for (const VarSet& cand : inst.trees) {
      if (!cand.strict_subset_of(t)) continue;
      if (3 * cand.count() < k) continue;
      if (!parent || cand.count() > parent->count()) parent = &cand;  // ties: first in lex order
    }
    if (parent)
      sup.push_back({t, *parent});
    else
      rest.push_back(t);
  }
  return {std::move(sup), std::move(rest)};
}

namespace {

// All closed intersections of the family with at least min_size variables.
// Returns nullopt when more than cap closures appear.
std::optional<std::vector<VarSet>> closed_intersections(const std::vector<VarSet>& trees,
                                                        int min_size, int cap) {
  std::set<VarSet> seen;
  std::vector<VarSet> work;
  auto push = [&](const VarSet& s) {
    if (s.count() < min_size) return true;
    if (!seen.insert(s).second) return true;
    if (static_cast<int>(seen.size()) > cap) return false;
    work.push_back(s);
    return true;
  };
  for (const VarSet& t : trees)
    if (!push(t)) return std::nullopt;
  for (std::size_t head = 0; head < work.size(); ++head) {
    VarSet cur = work[head];
    for (const VarSet& t : trees)
      if (!push(cur.intersect(t))) return std::nullopt;
  }
  return std::vector<VarSet>(seen.begin(), seen.end());
}

}  // namespace

std::optional<SharedSubset> find_shared_subset(const std::vector<VarSet>& trees, int i, int k,
                                               int candidate_cap, bool* capped) {
  if (i < 2) throw std::invalid_argument("find_shared_subset: i must be at least 2");
  // |S| >= i*k/(3*(i-1)), checked in integers.
  auto meets_threshold = [&](int size) { return 3 * (i - 1) * size >= i * k; };
  int min_size = 1;
  while (!meets_threshold(min_size)) ++min_size;

  std::vector<VarSet> cands;
  auto closures = closed_intersections(trees, min_size, candidate_cap);
  if (closures) {
    cands = std::move(*closures);
  } else {
    if (capped) *capped = true;
    std::set<VarSet> fallback;  // pairwise intersections only
    for (std::size_t a = 0; a < trees.size(); ++a) {
      if (trees[a].count() >= min_size) fallback.insert(trees[a]);
      for (std::size_t b = a + 1; b < trees.size(); ++b) {
        VarSet s = trees[a].intersect(trees[b]);
        if (s.count() >= min_size) fallback.insert(s);
      }
    }
    cands.assign(fallback.begin(), fallback.end());
  }

  std::optional<SharedSubset> best;
  for (const VarSet& s : cands) {
    if (!meets_threshold(s.count())) continue;
    std::vector<VarSet> owners;
    for (const VarSet& t : trees)
      if (s.subset_of(t)) owners.push_back(t);
    if (static_cast<int>(owners.size()) < i) continue;
    bool better = false;
    if (!best) {
      better = true;
    } else if (owners.size() != best->owners.size()) {
      better = owners.size() > best->owners.size();
    } else if (s.count() != best->shared.count()) {
      better = s.count() > best->shared.count();
    } else {
      better = s < best->shared;
    }
    if (better) best = SharedSubset{s, std::move(owners)};
  }
  return best;
}

GeneralResult solve_general(const Instance& inst, const GeneralOptions& opts) {
  GeneralResult res;
  res.k = max_tree_size(inst);
  auto [sup, remaining] = preprocess_sup(inst);
  res.sup = std::move(sup);

  CircuitBuilder b(inst.num_vars, inst.op);
  for (const VarSet& t : inst.trees)
    if (t.count() == 1) b.set_output(t, NodeRef::input(t.min_var()));
  std::erase_if(remaining, [](const VarSet& t) { return t.count() == 1; });

  // Shared-subset loop. The threshold decreases with i, so sets skipped at
  // small i can qualify later with more owners required.
  int mark = b.gate_count();
  int initial_m = static_cast<int>(remaining.size());
  for (int i = 2; i <= initial_m; ++i) {
    while (true) {
      bool capped = false;
      auto found = find_shared_subset(remaining, i, res.k, opts.candidate_cap, &capped);
      if (capped) res.guarantee_unverified = true;
      if (!found) break;
      SharedGroup grp;
      grp.shared = found->shared;
      grp.owners = found->owners;
      grp.threshold_i = i;
      int before = b.gate_count();
      NodeRef shared = b.build_scratch(grp.shared);
      for (const VarSet& t : grp.owners) b.set_output(t, b.add_chain(shared, t.minus(grp.shared)));
      grp.gates = b.gate_count() - before;
      res.groups.push_back(std::move(grp));
      std::erase_if(remaining, [&](const VarSet& t) { return found->shared.subset_of(t); });
    }
  }
  res.phases.add("shared", b.gate_count() - mark);

  mark = b.gate_count();
  res.scratch_trees = remaining;
  for (const VarSet& t : remaining) b.set_output(t, b.build_scratch(t));
  res.phases.add("scratch", b.gate_count() - mark);

  // Supersets last, smallest first so nested parents already exist.
  mark = b.gate_count();
  std::vector<SupEntry> order = res.sup;
  std::stable_sort(order.begin(), order.end(), [](const SupEntry& a, const SupEntry& b2) {
    return a.tree.count() < b2.tree.count();
  });
  for (const SupEntry& e : order) {
    auto n = b.find(e.parent);
    if (!n) throw std::logic_error("superset parent " + e.parent.str() + " was never built");
    b.set_output(e.tree, b.add_chain(*n, e.tree.minus(e.parent)));
  }
  res.phases.add("sup_completion", b.gate_count() - mark);

  Circuit raw = b.take();
  res.size_before_dedupe = circuit_size(raw);
  res.circuit = dedupe_gates(raw);
  return res;
}

}  // namespace gateshare
