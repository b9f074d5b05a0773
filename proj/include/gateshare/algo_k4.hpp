#pragma once

#include <utility>
#include <vector>

#include "gateshare/circuit.hpp"
#include "gateshare/instance.hpp"
#include "gateshare/matching.hpp"
#include "gateshare/report.hpp"

namespace gateshare {

struct IntersectGroup {
  VarSet shared;               // 3-variable set contained in every member
  std::vector<VarSet> trees;  // at least 3 members
};

// How an instance with k <= 4 decomposes before the depth-2 core solve.
// The parts t2/t3/t4_sup3/t4_intersect/t4_matching/t4_depth2 partition the
// trees of size >= 2; t3_prime is t3 plus the matched-pair intersections;
// t_easy (sup3 plus matched trees) is completed with one gate each at the
// end.
struct Partition4 {
  std::vector<VarSet> t1, t2, t3, t4_sup3, t4_depth2;
  std::vector<IntersectGroup> intersect_groups;
  std::vector<std::pair<VarSet, VarSet>> matched_pairs;  // lex-ordered pairs, sorted
  std::vector<VarSet> t3_prime;

  std::vector<VarSet> t4_intersect() const;
  std::vector<VarSet> t4_matching() const;
  std::vector<VarSet> t_easy() const;
};

// Throws std::invalid_argument when some tree has more than 4 variables.
Partition4 partition_k4(const Instance& inst);

// The pair-vertex hypergraph of the depth-2 core: one vertex per 2-subset of
// a listed tree; per 4-tree the eight triples choosing one subset from each
// complementary pair, per 3-tree one edge with its three 2-subsets, per
// 2-tree a singleton edge.
struct PairHypergraph {
  Hypergraph graph = Hypergraph(0);
  std::vector<VarSet> vertex_sets;  // vertex id -> 2-subset, ascending
};

PairHypergraph build_hypergraph(const std::vector<VarSet>& t2,
                                const std::vector<VarSet>& t3_prime,
                                const std::vector<VarSet>& t4_depth2);

struct K4Result {
  Circuit circuit;
  PhaseReport phases;  // intersect, core_cover or core_scratch, completion
  Partition4 partition;
  bool fallback_used = false;
  int cover_size = 0;          // pruned cover, when the cover route was taken
  int size_before_dedupe = 0;
};

// 1.9-approximation for instances whose trees have at most 4 variables.
// Intersect groups cost |group|+2 gates; the depth-2 core is solved through
// a pruned vertex cover of the pair hypergraph (falling back to per-tree
// builds when the cover is larger than one gate per tree plus one per
// 4-tree); matched and superset trees are completed with one gate each. A
// final structural-hashing pass reclaims duplicates across phases.
K4Result solve_k4(const Instance& inst);

}  // namespace gateshare
