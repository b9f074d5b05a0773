#pragma once

#include "gateshare/circuit.hpp"
#include "gateshare/instance.hpp"
#include "gateshare/report.hpp"

namespace gateshare {

struct K3Result {
  Circuit circuit;
  PhaseReport phases;  // pre2, pre3, shared_pairs, matching, scratch
};

// 4/3-approximation for instances whose trees have at most 3 variables.
//
// Phase order: size-2 trees are built directly and size-3 trees containing a
// built 2-tree follow with one gate each; then, while some variable pair
// lies in at least three remaining trees, the pair plus all its trees are
// built (the pair with the most trees first, ties by smallest pair); the
// residue is solved exactly via maximum matching on trees sharing a pair,
// and leftovers are built from scratch.
//
// Throws std::invalid_argument when the instance has a tree of more than 3
// variables.
K3Result solve_k3(const Instance& inst);

}  // namespace gateshare
