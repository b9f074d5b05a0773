#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gateshare/instance.hpp"
#include "gateshare/varset.hpp"

namespace gateshare {

struct CircuitError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Reference to a circuit node: a primary input (variable) or a gate by its
// position in the topologically ordered gate list.
struct NodeRef {
  int code = 0;  // >= 0: gate index, < 0: input with var = -1 - code

  static NodeRef input(VarId v) { return NodeRef{-1 - v}; }
  static NodeRef gate(int idx) { return NodeRef{idx}; }

  bool is_input() const { return code < 0; }
  bool is_gate() const { return code >= 0; }
  VarId var() const { return -1 - code; }
  int gate_index() const { return code; }

  bool operator==(const NodeRef&) const = default;

  // Canonical node order: inputs by variable, then gates by index.
  static bool before(NodeRef a, NodeRef b) {
    if (a.is_input() != b.is_input()) return a.is_input();
    if (a.is_input()) return a.var() < b.var();
    return a.gate_index() < b.gate_index();
  }

  std::string str() const {
    return is_input() ? "x" + std::to_string(var()) : "g" + std::to_string(gate_index());
  }
};

// Operands are stored canonically (NodeRef::before(a, b)) so structurally
// equal gates compare equal.
struct Gate {
  NodeRef a, b;
  bool operator==(const Gate&) const = default;
};

// A DAG of 2-input gates over num_vars inputs, all computing the same
// associative symmetric operator. Gates are listed in topological order.
// outputs maps each requested tree to the node computing it (possibly an
// input for single-variable trees). Circuits are immutable values; the
// rewrites below return new circuits.
struct Circuit {
  int num_vars = 0;
  Op op = Op::And;
  std::vector<Gate> gates;
  std::vector<std::pair<VarSet, NodeRef>> outputs;  // sorted by tree

  std::optional<NodeRef> output_for(const VarSet& tree) const;
  bool operator==(const Circuit&) const = default;
};

enum class ValidateMode { Lenient, Strict };

struct ValidationReport {
  bool ok = false;
  std::vector<std::string> errors;
  std::vector<std::string> warnings;
  int size = 0;
  int depth = 0;

  std::string summary() const;
};

// Checks (a) well-formed, topologically ordered references, (b) disjoint
// operand variable sets on every gate, (c) one output per instance tree with
// exactly the tree's variable set. Strict mode additionally reports global
// undirected cycles through shared gates as warnings.
ValidationReport validate(const Circuit& c, const Instance& inst,
                          ValidateMode mode = ValidateMode::Lenient);

int circuit_size(const Circuit& c);
int circuit_depth(const Circuit& c);

// Per-gate variable sets (union of operand cones). Throws CircuitError if
// references are malformed; does not require non-redundancy.
std::vector<VarSet> node_varsets(const Circuit& c);

// Evaluates all outputs under the given assignment (one byte per variable,
// nonzero = true). Result is aligned with c.outputs.
std::vector<std::pair<VarSet, bool>> evaluate(const Circuit& c,
                                              const std::vector<std::uint8_t>& assignment);

// Structural hashing: merges gates with identical operand pairs, re-points
// outputs, drops unreferenced gates. Never increases size; evaluation is
// unchanged on every assignment.
Circuit dedupe_gates(const Circuit& c);

// Rebalances the output cone of each 4-variable tree built as a chain whose
// 3-variable intermediate has fanout 1: ((a.b).c).d becomes (a.b).(c.d).
// Size is unchanged and the rewritten cone has depth 2.
Circuit depth2_normalize(const Circuit& c, const Instance& inst);

// Incremental construction helper used by all solvers. Tracks per-node
// variable sets, enforces operand disjointness, and keeps a first-wins
// registry from variable set to node for deliberate reuse.
class CircuitBuilder {
public:
  CircuitBuilder(int num_vars, Op op) : num_vars_(num_vars), op_(op) {}

  NodeRef input(VarId v) const;
  NodeRef add_gate(NodeRef a, NodeRef b);

  // Extends base with the given extra variables in ascending order; one gate
  // per variable. Returns base when extra is empty.
  NodeRef add_chain(NodeRef base, const VarSet& extra);

  // Left-deep chain over the set's variables in ascending order. A singleton
  // costs no gates (the input itself is returned).
  NodeRef build_scratch(const VarSet& set);

  std::optional<NodeRef> find(const VarSet& set) const;
  VarSet varset(NodeRef n) const;
  void set_output(const VarSet& tree, NodeRef n);
  int gate_count() const { return static_cast<int>(gates_.size()); }

  Circuit take();

private:
  int num_vars_;
  Op op_;
  std::vector<Gate> gates_;
  std::vector<VarSet> gate_sets_;
  std::map<VarSet, NodeRef> registry_;
  std::vector<std::pair<VarSet, NodeRef>> outputs_;
};

std::string to_dot(const Circuit& c);

}  // namespace gateshare
