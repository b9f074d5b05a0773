#pragma once

#include <cstdint>
#include <vector>

#include "gateshare/circuit.hpp"
#include "gateshare/instance.hpp"
#include "gateshare/matching.hpp"

namespace gateshare {

struct ExactOptions {
  // Cap on explored search states across all deepening iterations. On
  // exhaustion the solver returns its best known solution flagged inexact.
  long long node_budget = 20'000'000;
};

struct ExactResult {
  Circuit circuit;
  int size = 0;
  bool exact = true;
  long long nodes_explored = 0;
};

// Minimum-size circuit for the instance. Iterative deepening over the gate
// count; states are the sets of built variable sets, enumerated in a
// canonical increasing order so each state is produced exactly once per
// iteration. Candidate gates are pruned to variable sets contained in some
// tree, which never changes the optimum in a non-redundant circuit.
// Intended for desk scale (num_vars <= 10, a handful of trees).
ExactResult solve_exact(const Instance& inst, const ExactOptions& opts = {});
ExactResult solve_exact(const Instance& inst, long long node_budget);

// Exact minimum vertex cover by branch and bound; fine up to ~20 vertices.
std::vector<int> brute_min_vc(const Hypergraph& h);
std::vector<int> brute_min_vc(const MatchGraph& g);

}  // namespace gateshare
