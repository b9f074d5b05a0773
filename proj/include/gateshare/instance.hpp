#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "gateshare/varset.hpp"

namespace gateshare {

enum class Op { And, Or, Xor };

std::string op_name(Op op);
Op op_from_name(std::string_view name);  // accepts any case; throws ParseError

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InstanceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A family of variable-index sets ("trees"), each of which must appear as a
// circuit output computing the operator folded over its variables. Canonical
// form: trees sorted ascending, duplicates merged. Instances are immutable
// after construction and safe to share across threads.
struct Instance {
  int num_vars = 0;
  Op op = Op::And;
  std::vector<VarSet> trees;

  // Bookkeeping only; not part of equality.
  int merged_duplicates = 0;

  bool operator==(const Instance& o) const {
    return num_vars == o.num_vars && op == o.op && trees == o.trees;
  }
};

// Canonicalizes and validates. Throws InstanceError on out-of-range
// variables or empty trees.
Instance make_instance(int num_vars, Op op, std::vector<VarSet> trees);

// k: the largest tree cardinality; 0 for an empty instance.
int max_tree_size(const Instance& inst);

// Text format: header "num_vars num_trees [one_indexed]", one tree per line
// as space-separated indices, '#' starts a comment.
Instance parse_instance_text(std::string_view text);
std::string serialize_instance_text(const Instance& inst);

struct GenParams {
  int num_vars = 0;
  int num_trees = 0;
  int max_size = 0;
  double overlap_bias = 0.0;  // in [0,1]; skews sampling toward reusing earlier trees' variables
  std::uint64_t seed = 0;
  Op op = Op::And;
};

// Deterministic for fixed parameters. Every tree has size in [2, max_size]
// and all trees are distinct. Throws InstanceError when more distinct trees
// are requested than exist.
Instance gen_random(const GenParams& p);

}  // namespace gateshare
