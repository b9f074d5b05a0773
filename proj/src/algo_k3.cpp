#include "gateshare/algo_k3.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "gateshare/matching.hpp"

namespace gateshare {

namespace {

std::vector<VarSet> pairs_of(const VarSet& t) {
  std::vector<VarId> vs = t.vars();
  std::vector<VarSet> out;
  for (std::size_t i = 0; i < vs.size(); ++i)
    for (std::size_t j = i + 1; j < vs.size(); ++j)
      out.push_back(VarSet{vs[i], vs[j]});
  return out;
}

}  // namespace

K3Result solve_k3(const Instance& inst) {
  if (max_tree_size(inst) > 3)
    throw std::invalid_argument("solve_k3 requires trees of at most 3 variables (k = " +
                                std::to_string(max_tree_size(inst)) + ")");

  K3Result res;
  CircuitBuilder b(inst.num_vars, inst.op);

  std::vector<VarSet> two_trees, three_trees;
  for (const VarSet& t : inst.trees) {
    if (t.count() == 1)
      b.set_output(t, NodeRef::input(t.min_var()));
    else if (t.count() == 2)
      two_trees.push_back(t);
    else
      three_trees.push_back(t);
  }

  // Size-2 trees cost one gate each, unavoidably.
  int mark = b.gate_count();
  for (const VarSet& t : two_trees) b.set_output(t, b.build_scratch(t));
  res.phases.add("pre2", b.gate_count() - mark);

  // A 3-tree containing a built 2-tree takes one more gate, also optimal.
  mark = b.gate_count();
  std::vector<VarSet> remaining;
  for (const VarSet& t : three_trees) {
    const VarSet* sub = nullptr;
    for (const VarSet& p : two_trees) {
      if (p.strict_subset_of(t)) {
        sub = &p;
        break;  // two_trees is sorted, first hit is the smallest
      }
    }
    if (sub) {
      b.set_output(t, b.add_chain(*b.find(*sub), t.minus(*sub)));
    } else {
      remaining.push_back(t);
    }
  }
  res.phases.add("pre3", b.gate_count() - mark);

  // While some pair lies in >= 3 remaining trees, build the pair and every
  // tree around it. Selection: largest tree count, ties by smallest pair.
  mark = b.gate_count();
  while (true) {
    std::map<VarSet, int> count;
    for (const VarSet& t : remaining)
      for (const VarSet& p : pairs_of(t)) ++count[p];
    const VarSet* pick = nullptr;
    int best = 2;
    for (const auto& [p, c] : count) {
      if (c > best) {
        best = c;
        pick = &p;
      }
    }
    if (!pick) break;
    NodeRef shared = b.build_scratch(*pick);
    std::vector<VarSet> kept;
    for (const VarSet& t : remaining) {
      if (pick->strict_subset_of(t))
        b.set_output(t, b.add_chain(shared, t.minus(*pick)));
      else
        kept.push_back(t);
    }
    remaining = std::move(kept);
  }
  res.phases.add("shared_pairs", b.gate_count() - mark);

  // Residual instance: every pair lies in at most two trees, so reusable
  // pairs correspond to a matching on trees sharing two variables, and a
  // maximum matching gives the exact optimum here.
  mark = b.gate_count();
  MatchGraph g(static_cast<int>(remaining.size()));
  for (int i = 0; i < static_cast<int>(remaining.size()); ++i)
    for (int j = i + 1; j < static_cast<int>(remaining.size()); ++j)
      if (remaining[static_cast<std::size_t>(i)]
              .intersect(remaining[static_cast<std::size_t>(j)])
              .count() == 2)
        g.add_edge(i, j);
  std::vector<char> matched(remaining.size(), 0);
  for (auto [i, j] : max_matching(g)) {
    const VarSet& ti = remaining[static_cast<std::size_t>(i)];
    const VarSet& tj = remaining[static_cast<std::size_t>(j)];
    NodeRef shared = b.build_scratch(ti.intersect(tj));
    b.set_output(ti, b.add_chain(shared, ti.minus(tj)));
    b.set_output(tj, b.add_chain(shared, tj.minus(ti)));
    matched[static_cast<std::size_t>(i)] = matched[static_cast<std::size_t>(j)] = 1;
  }
  res.phases.add("matching", b.gate_count() - mark);

  mark = b.gate_count();
  for (std::size_t i = 0; i < remaining.size(); ++i)
    if (!matched[i]) b.set_output(remaining[i], b.build_scratch(remaining[i]));
  res.phases.add("scratch", b.gate_count() - mark);

  res.circuit = b.take();
  return res;
}

}  // namespace gateshare
