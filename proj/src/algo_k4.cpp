#include "gateshare/algo_k4.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace gateshare {

namespace {

std::vector<VarSet> two_subsets(const VarSet& t) {
  std::vector<VarId> vs = t.vars();
  std::vector<VarSet> out;
  for (std::size_t i = 0; i < vs.size(); ++i)
    for (std::size_t j = i + 1; j < vs.size(); ++j)
      out.push_back(VarSet{vs[i], vs[j]});
  return out;
}

std::vector<VarSet> three_subsets(const VarSet& t) {
  std::vector<VarId> vs = t.vars();
  std::vector<VarSet> out;
  for (std::size_t drop = 0; drop < vs.size(); ++drop) {
    VarSet s;
    for (std::size_t i = 0; i < vs.size(); ++i)
      if (i != drop) s.add(vs[i]);
    out.push_back(s);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// The three complementary pairs of 2-subsets of a 4-variable set, as listed
// next to the hypergraph definition: for sorted variables v1<v2<v3<v4 the
// pairs are ({v1,v2},{v3,v4}), ({v1,v3},{v2,v4}), ({v1,v4},{v2,v3}).
std::vector<std::pair<VarSet, VarSet>> complement_pairs(const VarSet& t) {
  std::vector<VarId> v = t.vars();
  return {
      {VarSet{v[0], v[1]}, VarSet{v[2], v[3]}},
      {VarSet{v[0], v[2]}, VarSet{v[1], v[3]}},
      {VarSet{v[0], v[3]}, VarSet{v[1], v[2]}},
  };
}

}  // namespace

std::vector<VarSet> Partition4::t4_intersect() const {
  std::vector<VarSet> out;
  for (const IntersectGroup& g : intersect_groups)
    out.insert(out.end(), g.trees.begin(), g.trees.end());
  return out;
}

std::vector<VarSet> Partition4::t4_matching() const {
  std::vector<VarSet> out;
  for (const auto& [a, c] : matched_pairs) {
    out.push_back(a);
    out.push_back(c);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<VarSet> Partition4::t_easy() const {
  std::vector<VarSet> out = t4_sup3;
  for (const VarSet& t : t4_matching()) out.push_back(t);
  std::sort(out.begin(), out.end());
  return out;
}

Partition4 partition_k4(const Instance& inst) {
  if (max_tree_size(inst) > 4)
    throw std::invalid_argument("partition_k4 requires trees of at most 4 variables (k = " +
                                std::to_string(max_tree_size(inst)) + ")");
  Partition4 p;
  std::vector<VarSet> t4;
  for (const VarSet& t : inst.trees) {
    switch (t.count()) {
      case 1: p.t1.push_back(t); break;
      case 2: p.t2.push_back(t); break;
      case 3: p.t3.push_back(t); break;
      default: t4.push_back(t); break;
    }
  }

  // 4-trees strictly containing an instance 3-tree get finished for one gate
  // each at the very end.
  std::vector<VarSet> pool;
  for (const VarSet& t : t4) {
    bool has_sub = std::any_of(p.t3.begin(), p.t3.end(),
                               [&](const VarSet& s) { return s.strict_subset_of(t); });
    (has_sub ? p.t4_sup3 : pool).push_back(t);
  }

  // Greedy groups of >= 3 trees sharing a 3-subset: biggest group first,
  // ties by smallest shared set.
  while (true) {
    std::map<VarSet, int> count;
    for (const VarSet& t : pool)
      for (const VarSet& s : three_subsets(t)) ++count[s];
    VarSet pick;
    int best = 2;
    for (const auto& [s, c] : count) {
      if (c > best) {
        best = c;
        pick = s;
      }
    }
    if (best <= 2) break;
    IntersectGroup grp;
    grp.shared = pick;
    std::vector<VarSet> kept;
    for (const VarSet& t : pool)
      (pick.strict_subset_of(t) ? grp.trees : kept).push_back(t);
    p.intersect_groups.push_back(std::move(grp));
    pool = std::move(kept);
  }

  // Pair up the rest along 3-variable intersections via maximum matching.
  MatchGraph g(static_cast<int>(pool.size()));
  for (int i = 0; i < static_cast<int>(pool.size()); ++i)
    for (int j = i + 1; j < static_cast<int>(pool.size()); ++j)
      if (pool[static_cast<std::size_t>(i)]
              .intersect(pool[static_cast<std::size_t>(j)])
              .count() == 3)
        g.add_edge(i, j);
  std::vector<char> matched(pool.size(), 0);
  for (auto [i, j] : max_matching(g)) {
    p.matched_pairs.emplace_back(pool[static_cast<std::size_t>(i)],
                                 pool[static_cast<std::size_t>(j)]);
    matched[static_cast<std::size_t>(i)] = matched[static_cast<std::size_t>(j)] = 1;
  }
  std::sort(p.matched_pairs.begin(), p.matched_pairs.end());
  for (std::size_t i = 0; i < pool.size(); ++i)
    if (!matched[i]) p.t4_depth2.push_back(pool[i]);

  p.t3_prime = p.t3;
  for (const auto& [a, c] : p.matched_pairs) p.t3_prime.push_back(a.intersect(c));
  std::sort(p.t3_prime.begin(), p.t3_prime.end());
  p.t3_prime.erase(std::unique(p.t3_prime.begin(), p.t3_prime.end()), p.t3_prime.end());
  return p;
}

PairHypergraph build_hypergraph(const std::vector<VarSet>& t2,
                                const std::vector<VarSet>& t3_prime,
                                const std::vector<VarSet>& t4_depth2) {
  for (const VarSet& t : t2)
    if (t.count() != 2) throw std::invalid_argument("build_hypergraph: t2 entry " + t.str());
  for (const VarSet& t : t3_prime)
    if (t.count() != 3) throw std::invalid_argument("build_hypergraph: t3' entry " + t.str());
  for (const VarSet& t : t4_depth2)
    if (t.count() != 4) throw std::invalid_argument("build_hypergraph: t4 entry " + t.str());

  PairHypergraph out;
  std::vector<VarSet>& verts = out.vertex_sets;
  for (const VarSet& t : t2) verts.push_back(t);
  for (const VarSet& t : t3_prime)
    for (const VarSet& u : two_subsets(t)) verts.push_back(u);
  for (const VarSet& t : t4_depth2)
    for (const VarSet& u : two_subsets(t)) verts.push_back(u);
  std::sort(verts.begin(), verts.end());
  verts.erase(std::unique(verts.begin(), verts.end()), verts.end());

  std::map<VarSet, int> id;
  for (int i = 0; i < static_cast<int>(verts.size()); ++i)
    id.emplace(verts[static_cast<std::size_t>(i)], i);

  Hypergraph h(static_cast<int>(verts.size()));
  for (const VarSet& t : t4_depth2) {
    auto pairs = complement_pairs(t);
    for (int alpha = 0; alpha < 8; ++alpha) {
      std::vector<int> edge;
      for (int i = 0; i < 3; ++i) {
        const auto& [u, ubar] = pairs[static_cast<std::size_t>(i)];
        edge.push_back(id.at((alpha >> i) & 1 ? ubar : u));
      }
      h.add_edge(std::move(edge));
    }
  }
  for (const VarSet& t : t3_prime) {
    std::vector<int> edge;
    for (const VarSet& u : two_subsets(t)) edge.push_back(id.at(u));
    h.add_edge(std::move(edge));
  }
  for (const VarSet& t : t2) h.add_edge({id.at(t)});
  out.graph = std::move(h);
  return out;
}

K4Result solve_k4(const Instance& inst) {
  K4Result res;
  res.partition = partition_k4(inst);
  const Partition4& p = res.partition;
  CircuitBuilder b(inst.num_vars, inst.op);

  for (const VarSet& t : p.t1) b.set_output(t, NodeRef::input(t.min_var()));

  // Groups around a shared 3-subset: 2 gates for the subset, 1 per tree.
  int mark = b.gate_count();
  for (const IntersectGroup& g : p.intersect_groups) {
    NodeRef shared = b.build_scratch(g.shared);
    for (const VarSet& t : g.trees) b.set_output(t, b.add_chain(shared, t.minus(g.shared)));
  }
  res.phases.add("intersect", b.gate_count() - mark);

  // Depth-2 core: one gate per cover vertex, one combining gate per tree of
  // size >= 3, unless per-tree builds are cheaper.
  PairHypergraph ph = build_hypergraph(p.t2, p.t3_prime, p.t4_depth2);
  std::vector<int> cover =
      prune_cover(ph.graph, cover_from_matching(ph.graph, maximal_matching(ph.graph)));
  res.cover_size = static_cast<int>(cover.size());
  int per_tree_cost = static_cast<int>(p.t2.size() + p.t3_prime.size()) +
                      2 * static_cast<int>(p.t4_depth2.size());
  res.fallback_used = static_cast<int>(cover.size()) > per_tree_cost;

  mark = b.gate_count();
  auto is_instance_tree = [&](const VarSet& t) {
    return std::binary_search(inst.trees.begin(), inst.trees.end(), t);
  };
  if (res.fallback_used) {
    for (const VarSet& t : p.t2) b.set_output(t, b.build_scratch(t));
    for (const VarSet& t : p.t3_prime) {
      NodeRef n = b.build_scratch(t);
      if (is_instance_tree(t)) b.set_output(t, n);
    }
    for (const VarSet& t : p.t4_depth2) b.set_output(t, b.build_scratch(t));
    res.phases.add("core_scratch", b.gate_count() - mark);
  } else {
    std::vector<char> in_cover(ph.vertex_sets.size(), 0);
    std::map<VarSet, NodeRef> cover_node;
    for (int v : cover) {
      in_cover[static_cast<std::size_t>(v)] = 1;
      cover_node.emplace(ph.vertex_sets[static_cast<std::size_t>(v)],
                         b.build_scratch(ph.vertex_sets[static_cast<std::size_t>(v)]));
    }
    for (const VarSet& t : p.t2) b.set_output(t, cover_node.at(t));
    for (const VarSet& t : p.t3_prime) {
      NodeRef part{};
      bool found_part = false;
      for (const VarSet& u : two_subsets(t)) {
        auto it = cover_node.find(u);
        if (it != cover_node.end()) {
          part = it->second;
          found_part = true;
          break;  // two_subsets is in lex order, smallest covered subset wins
        }
      }
      if (!found_part) throw std::logic_error("cover misses every 2-subset of " + t.str());
      NodeRef n = b.add_chain(part, t.minus(b.varset(part)));
      if (is_instance_tree(t)) b.set_output(t, n);
    }
    for (const VarSet& t : p.t4_depth2) {
      NodeRef na{}, nb{};
      bool found_pair = false;
      for (const auto& [u, ubar] : complement_pairs(t)) {
        auto iu = cover_node.find(u);
        auto iv = cover_node.find(ubar);
        if (iu != cover_node.end() && iv != cover_node.end()) {
          na = iu->second;
          nb = iv->second;
          found_pair = true;
          break;
        }
      }
      // Any cover of the eight tree edges contains a complementary pair.
      if (!found_pair)
        throw std::logic_error("pruned cover lacks a complementary pair for " + t.str());
      b.set_output(t, b.add_gate(na, nb));
    }
    res.phases.add("core_cover", b.gate_count() - mark);
  }

  // Easy trees: one gate on top of an already built subtree.
  mark = b.gate_count();
  std::map<VarSet, VarSet> easy_source;
  for (const VarSet& t : p.t4_sup3) {
    for (const VarSet& s : p.t3) {
      if (s.strict_subset_of(t)) {
        easy_source.emplace(t, s);
        break;  // p.t3 sorted, smallest wins
      }
    }
  }
  for (const auto& [a, c] : p.matched_pairs) {
    easy_source.emplace(a, a.intersect(c));
    easy_source.emplace(c, a.intersect(c));
  }
  for (const auto& [t, src] : easy_source) {
    auto n = b.find(src);
    if (!n) throw std::logic_error("prerequisite " + src.str() + " missing for " + t.str());
    b.set_output(t, b.add_chain(*n, t.minus(src)));
  }
  res.phases.add("completion", b.gate_count() - mark);

  Circuit raw = b.take();
  res.size_before_dedupe = circuit_size(raw);
  res.circuit = dedupe_gates(raw);
  return res;
}

}  // namespace gateshare
