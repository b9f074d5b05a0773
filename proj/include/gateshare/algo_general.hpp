#pragma once

#include <optional>
#include <vector>

#include "gateshare/circuit.hpp"
#include "gateshare/instance.hpp"
#include "gateshare/report.hpp"

namespace gateshare {

struct SupEntry {
  VarSet tree;
  VarSet parent;  // largest instance tree strictly contained, ties by order
};

// Trees strictly containing another instance tree of size >= k/3, paired
// with their chosen parent; the remainder stays in the main instance. The
// test is made against the original family with the global k.
std::pair<std::vector<SupEntry>, std::vector<VarSet>> preprocess_sup(const Instance& inst);

struct SharedSubset {
  VarSet shared;
  std::vector<VarSet> owners;  // every given tree containing shared
};

// A set S with |S| >= i*k/(3*(i-1)) contained in at least i of the given
// trees, together with all trees containing it, or nullopt. Candidates are
// the closed intersections of the family (every qualifying S extends to one
// with the same owners), pruned below the size threshold. Selection: most
// owners, then largest cardinality, then lexicographically smallest. When
// the closure count exceeds candidate_cap the search falls back to pairwise
// intersections only and sets *capped.
std::optional<SharedSubset> find_shared_subset(const std::vector<VarSet>& trees, int i, int k,
                                               int candidate_cap = 100000,
                                               bool* capped = nullptr);

struct SharedGroup {
  VarSet shared;
  std::vector<VarSet> owners;
  int gates = 0;
  int threshold_i = 0;  // the i whose threshold admitted the group
};

struct GeneralOptions {
  int candidate_cap = 100000;
};

struct GeneralResult {
  Circuit circuit;
  PhaseReport phases;  // shared, scratch, sup_completion
  std::vector<SupEntry> sup;
  std::vector<SharedGroup> groups;
  std::vector<VarSet> scratch_trees;
  int k = 0;
  bool guarantee_unverified = false;  // candidate cap hit during subset search
  int size_before_dedupe = 0;
};

// (2/3)k-approximation for arbitrary tree sizes: supersets of large instance
// trees are set aside and completed last; for growing group sizes i, shared
// subsets above the i-dependent threshold are built once and extended per
// owner; whatever remains is built from scratch. Ends with a structural
// hashing pass.
GeneralResult solve_general(const Instance& inst, const GeneralOptions& opts = {});

}  // namespace gateshare
