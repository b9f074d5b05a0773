#include "gateshare/circuit.hpp"

#include <algorithm>
#include <numeric>

namespace gateshare {

std::optional<NodeRef> Circuit::output_for(const VarSet& tree) const {
  for (const auto& [t, n] : outputs)
    if (t == tree) return n;
  return std::nullopt;
}

std::string ValidationReport::summary() const {
  if (ok && warnings.empty()) return "ok";
  std::string s = ok ? "ok" : "invalid";
  for (const std::string& e : errors) s += "; error: " + e;
  for (const std::string& w : warnings) s += "; warning: " + w;
  return s;
}

namespace {

bool ref_ok(const Circuit& c, NodeRef r, int gate_pos) {
  if (r.is_input()) return r.var() >= 0 && r.var() < c.num_vars;
  return r.gate_index() >= 0 && r.gate_index() < gate_pos;
}

// Union of operand cones, ignoring overlap; nullopt when a reference is
// malformed. Shared by validate and node_varsets.
std::optional<std::vector<VarSet>> try_varsets(const Circuit& c) {
  std::vector<VarSet> sets;
  sets.reserve(c.gates.size());
  for (int i = 0; i < static_cast<int>(c.gates.size()); ++i) {
    const Gate& g = c.gates[static_cast<std::size_t>(i)];
    if (!ref_ok(c, g.a, i) || !ref_ok(c, g.b, i)) return std::nullopt;
    auto side = [&](NodeRef r) {
      return r.is_input() ? VarSet::single(r.var())
                          : sets[static_cast<std::size_t>(r.gate_index())];
    };
    sets.push_back(side(g.a).unite(side(g.b)));
  }
  return sets;
}

struct Dsu {
  std::vector<int> parent;
  explicit Dsu(int n) : parent(static_cast<std::size_t>(n)) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] =
          parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  }
  // Returns false if already connected (adding the edge closes a cycle).
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[static_cast<std::size_t>(a)] = b;
    return true;
  }
};

}  // namespace

ValidationReport validate(const Circuit& c, const Instance& inst, ValidateMode mode) {
  ValidationReport rep;
  if (c.num_vars != inst.num_vars)
    rep.errors.push_back("circuit num_vars " + std::to_string(c.num_vars) +
                         " differs from instance num_vars " + std::to_string(inst.num_vars));
  if (c.op != inst.op)
    rep.errors.push_back("circuit operator " + op_name(c.op) +
                         " differs from instance operator " + op_name(inst.op));

  for (int i = 0; i < static_cast<int>(c.gates.size()); ++i) {
    const Gate& g = c.gates[static_cast<std::size_t>(i)];
    for (NodeRef r : {g.a, g.b}) {
      if (r.is_input()) {
        if (r.var() < 0 || r.var() >= c.num_vars)
          rep.errors.push_back("gate g" + std::to_string(i) + " reads undefined input " + r.str());
      } else if (r.gate_index() >= i) {
        rep.errors.push_back("gate g" + std::to_string(i) +
                             " references gate g" + std::to_string(r.gate_index()) +
                             " that does not precede it");
      } else if (r.gate_index() < 0) {
        rep.errors.push_back("gate g" + std::to_string(i) + " has a negative gate reference");
      }
    }
  }
  if (!rep.errors.empty()) return rep;  // varsets are meaningless past this point

  auto sets = try_varsets(c);
  for (int i = 0; i < static_cast<int>(c.gates.size()); ++i) {
    const Gate& g = c.gates[static_cast<std::size_t>(i)];
    auto side = [&](NodeRef r) {
      return r.is_input() ? VarSet::single(r.var())
                          : (*sets)[static_cast<std::size_t>(r.gate_index())];
    };
    VarSet a = side(g.a), b = side(g.b);
    if (!a.disjoint_with(b))
      rep.errors.push_back("non-redundancy violation at gate g" + std::to_string(i) +
                           ": operands share variables " + a.intersect(b).str());
  }

  auto node_set = [&](NodeRef r) {
    return r.is_input() ? VarSet::single(r.var())
                        : (*sets)[static_cast<std::size_t>(r.gate_index())];
  };
  for (const VarSet& t : inst.trees) {
    auto out = c.output_for(t);
    if (!out) {
      rep.errors.push_back("missing output for tree " + t.str());
      continue;
    }
    if (!ref_ok(c, *out, static_cast<int>(c.gates.size()))) {
      rep.errors.push_back("output for tree " + t.str() + " references undefined node");
      continue;
    }
    VarSet got = node_set(*out);
    if (got != t)
      rep.errors.push_back("output mismatch for tree " + t.str() + ": node " + out->str() +
                           " computes " + got.str());
  }
  for (const auto& [t, n] : c.outputs) {
    (void)n;
    if (std::find(inst.trees.begin(), inst.trees.end(), t) == inst.trees.end())
      rep.warnings.push_back("output for " + t.str() + " does not correspond to an instance tree");
  }

  if (mode == ValidateMode::Strict) {
    // Whole-DAG undirected acyclicity. Shared intermediate gates routinely
    // create undirected cycles; that is reported as a warning, the enforced
    // invariant being per-gate operand disjointness.
    Dsu dsu(c.num_vars + static_cast<int>(c.gates.size()));
    auto id = [&](NodeRef r) {
      return r.is_input() ? r.var() : c.num_vars + r.gate_index();
    };
    for (int i = 0; i < static_cast<int>(c.gates.size()); ++i) {
      const Gate& g = c.gates[static_cast<std::size_t>(i)];
      NodeRef self = NodeRef::gate(i);
      for (NodeRef r : {g.a, g.b})
        if (!dsu.unite(id(r), id(self)))
          rep.warnings.push_back("undirected cycle through gate g" + std::to_string(i) +
                                 " and node " + r.str());
    }
  }

  rep.ok = rep.errors.empty();
  if (rep.ok) {
    rep.size = circuit_size(c);
    rep.depth = circuit_depth(c);
  }
  return rep;
}

int circuit_size(const Circuit& c) { return static_cast<int>(c.gates.size()); }

int circuit_depth(const Circuit& c) {
  std::vector<int> depth(c.gates.size(), 0);
  int best = 0;
  for (std::size_t i = 0; i < c.gates.size(); ++i) {
    auto d = [&](NodeRef r) {
      return r.is_input() ? 0 : depth[static_cast<std::size_t>(r.gate_index())];
    };
    depth[i] = 1 + std::max(d(c.gates[i].a), d(c.gates[i].b));
    best = std::max(best, depth[i]);
  }
  return best;
}

std::vector<VarSet> node_varsets(const Circuit& c) {
  auto sets = try_varsets(c);
  if (!sets) throw CircuitError("node_varsets: malformed node reference");
  return *sets;
}

std::vector<std::pair<VarSet, bool>> evaluate(const Circuit& c,
                                              const std::vector<std::uint8_t>& assignment) {
  if (static_cast<int>(assignment.size()) != c.num_vars)
    throw CircuitError("evaluate: assignment has " + std::to_string(assignment.size()) +
                       " bits, circuit has " + std::to_string(c.num_vars) + " variables");
  std::vector<std::uint8_t> val(c.gates.size(), 0);
  auto bit = [&](NodeRef r) -> std::uint8_t {
    if (r.is_input()) {
      if (r.var() < 0 || r.var() >= c.num_vars) throw CircuitError("evaluate: bad input reference");
      return assignment[static_cast<std::size_t>(r.var())] ? 1 : 0;
    }
    if (r.gate_index() < 0 || r.gate_index() >= static_cast<int>(c.gates.size()))
      throw CircuitError("evaluate: bad gate reference");
    return val[static_cast<std::size_t>(r.gate_index())];
  };
  for (std::size_t i = 0; i < c.gates.size(); ++i) {
    std::uint8_t a = bit(c.gates[i].a), b = bit(c.gates[i].b);
    switch (c.op) {
      case Op::And: val[i] = a & b; break;
      case Op::Or: val[i] = a | b; break;
      case Op::Xor: val[i] = a ^ b; break;
    }
  }
  std::vector<std::pair<VarSet, bool>> out;
  out.reserve(c.outputs.size());
  for (const auto& [t, n] : c.outputs) out.emplace_back(t, bit(n) != 0);
  return out;
}

namespace {

Gate canonical(NodeRef a, NodeRef b) {
  return NodeRef::before(a, b) ? Gate{a, b} : Gate{b, a};
}

}  // namespace

Circuit dedupe_gates(const Circuit& c) {
  // One topological pass; remapping operands first makes duplicate collapse
  // transitive, so a single pass reaches the fixpoint.
  std::vector<NodeRef> remap(c.gates.size());
  std::map<std::pair<int, int>, NodeRef> seen;  // canonical (a.code, b.code) -> node
  std::vector<Gate> kept;
  auto resolve = [&](NodeRef r) {
    return r.is_gate() ? remap[static_cast<std::size_t>(r.gate_index())] : r;
  };
  for (std::size_t i = 0; i < c.gates.size(); ++i) {
    Gate g = canonical(resolve(c.gates[i].a), resolve(c.gates[i].b));
    auto key = std::make_pair(g.a.code, g.b.code);
    auto it = seen.find(key);
    if (it != seen.end()) {
      remap[i] = it->second;
    } else {
      kept.push_back(g);
      remap[i] = NodeRef::gate(static_cast<int>(kept.size()) - 1);
      seen.emplace(key, remap[i]);
    }
  }

  Circuit out;
  out.num_vars = c.num_vars;
  out.op = c.op;
  out.gates = std::move(kept);
  out.outputs = c.outputs;
  for (auto& [t, n] : out.outputs) {
    (void)t;
    n = resolve(n);
  }

  // Drop gates no longer reachable from any output.
  std::vector<char> live(out.gates.size(), 0);
  for (const auto& [t, n] : out.outputs) {
    (void)t;
    if (n.is_gate()) live[static_cast<std::size_t>(n.gate_index())] = 1;
  }
  for (std::size_t i = out.gates.size(); i-- > 0;) {
    if (!live[i]) continue;
    for (NodeRef r : {out.gates[i].a, out.gates[i].b})
      if (r.is_gate()) live[static_cast<std::size_t>(r.gate_index())] = 1;
  }
  std::vector<NodeRef> shift(out.gates.size());
  std::vector<Gate> packed;
  for (std::size_t i = 0; i < out.gates.size(); ++i) {
    if (!live[i]) continue;
    auto fix = [&](NodeRef r) {
      return r.is_gate() ? shift[static_cast<std::size_t>(r.gate_index())] : r;
    };
    packed.push_back(canonical(fix(out.gates[i].a), fix(out.gates[i].b)));
    shift[i] = NodeRef::gate(static_cast<int>(packed.size()) - 1);
  }
  for (auto& [t, n] : out.outputs) {
    (void)t;
    if (n.is_gate()) n = shift[static_cast<std::size_t>(n.gate_index())];
  }
  out.gates = std::move(packed);
  return out;
}

Circuit depth2_normalize(const Circuit& c, const Instance& inst) {
  Circuit out = c;
  auto sets = node_varsets(out);

  // Fanout: operand uses plus output-map uses.
  std::vector<int> fanout(out.gates.size(), 0);
  for (const Gate& g : out.gates)
    for (NodeRef r : {g.a, g.b})
      if (r.is_gate()) ++fanout[static_cast<std::size_t>(r.gate_index())];
  for (const auto& [t, n] : out.outputs) {
    (void)t;
    if (n.is_gate()) ++fanout[static_cast<std::size_t>(n.gate_index())];
  }

  for (const VarSet& tree : inst.trees) {
    if (tree.count() != 4) continue;
    auto top = out.output_for(tree);
    if (!top || !top->is_gate()) continue;
    Gate u = out.gates[static_cast<std::size_t>(top->gate_index())];

    // Pattern: top = v . d with v a fanout-1 gate on 3 variables and d an
    // input; v = w . e with w a 2-variable node and e an input.
    NodeRef v{}, d{};
    auto setsize = [&](NodeRef r) {
      return r.is_input() ? 1 : sets[static_cast<std::size_t>(r.gate_index())].count();
    };
    if (u.a.is_gate() && setsize(u.a) == 3 && u.b.is_input()) {
      v = u.a;
      d = u.b;
    } else if (u.b.is_gate() && setsize(u.b) == 3 && u.a.is_input()) {
      v = u.b;
      d = u.a;
    } else {
      continue;
    }
    if (fanout[static_cast<std::size_t>(v.gate_index())] != 1) continue;

    Gate vg = out.gates[static_cast<std::size_t>(v.gate_index())];
    NodeRef w{}, e{};
    if (setsize(vg.a) == 2 && vg.b.is_input()) {
      w = vg.a;
      e = vg.b;
    } else if (setsize(vg.b) == 2 && vg.a.is_input()) {
      w = vg.b;
      e = vg.a;
    } else {
      continue;
    }

    // Reuse v's slot for the new pair e.d; both operands are inputs so the
    // topological order is preserved.
    out.gates[static_cast<std::size_t>(v.gate_index())] = canonical(e, d);
    sets[static_cast<std::size_t>(v.gate_index())] =
        VarSet::single(e.var()).unite(VarSet::single(d.var()));
    out.gates[static_cast<std::size_t>(top->gate_index())] = canonical(w, v);
  }
  return out;
}

NodeRef CircuitBuilder::input(VarId v) const {
  if (v < 0 || v >= num_vars_)
    throw CircuitError("input variable " + std::to_string(v) + " out of range");
  return NodeRef::input(v);
}

VarSet CircuitBuilder::varset(NodeRef n) const {
  if (n.is_input()) return VarSet::single(n.var());
  if (n.gate_index() < 0 || n.gate_index() >= static_cast<int>(gates_.size()))
    throw CircuitError("varset: unknown gate reference");
  return gate_sets_[static_cast<std::size_t>(n.gate_index())];
}

NodeRef CircuitBuilder::add_gate(NodeRef a, NodeRef b) {
  VarSet sa = varset(a), sb = varset(b);
  if (!sa.disjoint_with(sb))
    throw CircuitError("add_gate: operands " + sa.str() + " and " + sb.str() + " overlap");
  gates_.push_back(canonical(a, b));
  gate_sets_.push_back(sa.unite(sb));
  NodeRef n = NodeRef::gate(static_cast<int>(gates_.size()) - 1);
  registry_.emplace(gate_sets_.back(), n);  // first wins
  return n;
}

NodeRef CircuitBuilder::add_chain(NodeRef base, const VarSet& extra) {
  NodeRef cur = base;
  for (VarId v : extra.vars()) cur = add_gate(cur, input(v));
  return cur;
}

NodeRef CircuitBuilder::build_scratch(const VarSet& set) {
  if (set.empty()) throw CircuitError("build_scratch: empty set");
  std::vector<VarId> vs = set.vars();
  NodeRef cur = input(vs[0]);
  for (std::size_t i = 1; i < vs.size(); ++i) cur = add_gate(cur, input(vs[i]));
  return cur;
}

std::optional<NodeRef> CircuitBuilder::find(const VarSet& set) const {
  if (set.count() == 1) return NodeRef::input(set.min_var());
  auto it = registry_.find(set);
  if (it == registry_.end()) return std::nullopt;
  return it->second;
}

void CircuitBuilder::set_output(const VarSet& tree, NodeRef n) {
  outputs_.emplace_back(tree, n);
}

Circuit CircuitBuilder::take() {
  Circuit c;
  c.num_vars = num_vars_;
  c.op = op_;
  c.gates = std::move(gates_);
  c.outputs = std::move(outputs_);
  std::sort(c.outputs.begin(), c.outputs.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  gates_.clear();
  gate_sets_.clear();
  registry_.clear();
  outputs_.clear();
  return c;
}

std::string to_dot(const Circuit& c) {
  std::string s = "digraph circuit {\n  rankdir=TB;\n";
  VarSet used;
  for (const Gate& g : c.gates)
    for (NodeRef r : {g.a, g.b})
      if (r.is_input()) used.add(r.var());
  for (const auto& [t, n] : c.outputs) {
    (void)t;
    if (n.is_input()) used.add(n.var());
  }
  for (VarId v : used.vars())
    s += "  x" + std::to_string(v) + " [shape=box,label=\"x" + std::to_string(v) + "\"];\n";
  for (std::size_t i = 0; i < c.gates.size(); ++i)
    s += "  g" + std::to_string(i) + " [shape=circle,label=\"" + op_name(c.op) + "\"];\n";
  for (std::size_t i = 0; i < c.gates.size(); ++i)
    for (NodeRef r : {c.gates[i].a, c.gates[i].b})
      s += "  " + r.str() + " -> g" + std::to_string(i) + ";\n";
  int t_id = 0;
  for (const auto& [t, n] : c.outputs) {
    std::string label = "out" + std::to_string(t_id++);
    s += "  " + label + " [shape=none,label=\"" + t.str() + "\"];\n";
    s += "  " + n.str() + " -> " + label + " [style=bold];\n";
  }
  s += "}\n";
  return s;
}

}  // namespace gateshare
