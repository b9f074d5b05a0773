#include "gateshare/instance.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "gateshare/rng.hpp"

namespace gateshare {

std::string op_name(Op op) {
  switch (op) {
    case Op::And: return "and";
    case Op::Or: return "or";
    case Op::Xor: return "xor";
  }
  return "and";
}

Op op_from_name(std::string_view name) {
  std::string s;
  for (char c : name) s += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (s == "and") return Op::And;
  if (s == "or") return Op::Or;
  if (s == "xor") return Op::Xor;
  throw ParseError("unknown operator '" + std::string(name) + "' (expected and/or/xor)");
}

Instance make_instance(int num_vars, Op op, std::vector<VarSet> trees) {
  if (num_vars < 0) throw InstanceError("num_vars must be non-negative");
  for (const VarSet& t : trees) {
    if (t.empty()) throw InstanceError("empty tree");
    if (t.min_var() < 0 || t.max_var() >= num_vars)
      throw InstanceError("tree " + t.str() + " has a variable index outside [0, " +
                          std::to_string(num_vars) + ")");
  }
  std::sort(trees.begin(), trees.end());
  std::size_t before = trees.size();
  trees.erase(std::unique(trees.begin(), trees.end()), trees.end());

  Instance inst;
  inst.num_vars = num_vars;
  inst.op = op;
  inst.trees = std::move(trees);
  inst.merged_duplicates = static_cast<int>(before - inst.trees.size());
  return inst;
}

int max_tree_size(const Instance& inst) {
  int k = 0;
  for (const VarSet& t : inst.trees) k = std::max(k, t.count());
  return k;
}

namespace {

std::string strip_comment(const std::string& line) {
  std::size_t pos = line.find('#');
  return pos == std::string::npos ? line : line.substr(0, pos);
}

bool blank(const std::string& s) {
  return std::all_of(s.begin(), s.end(),
                     [](unsigned char c) { return std::isspace(c); });
}

}  // namespace

Instance parse_instance_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::vector<std::string> lines;
  while (std::getline(in, line)) {
    std::string body = strip_comment(line);
    if (!blank(body)) lines.push_back(body);
  }
  if (lines.empty()) throw ParseError("empty instance file");

  std::istringstream header(lines[0]);
  int num_vars = 0, num_trees = 0;
  if (!(header >> num_vars >> num_trees))
    throw ParseError("malformed header line: '" + lines[0] + "'");
  bool one_indexed = false;
  std::string flag;
  if (header >> flag) {
    if (flag == "one_indexed")
      one_indexed = true;
    else
      throw ParseError("unknown header flag '" + flag + "'");
  }
  if (num_vars < 0 || num_trees < 0) throw ParseError("negative header counts");
  if (static_cast<int>(lines.size()) - 1 != num_trees)
    throw ParseError("header announces " + std::to_string(num_trees) + " trees but " +
                     std::to_string(lines.size() - 1) + " tree lines follow");

  std::vector<VarSet> trees;
  for (int i = 1; i <= num_trees; ++i) {
    std::istringstream ls(lines[static_cast<std::size_t>(i)]);
    VarSet t;
    long long raw;
    while (ls >> raw) {
      long long v = one_indexed ? raw - 1 : raw;
      if (v < 0 || v >= num_vars)
        throw ParseError("line " + std::to_string(i + 1) + ": variable index " +
                         std::to_string(raw) + " out of range for num_vars=" +
                         std::to_string(num_vars));
      t.add(static_cast<VarId>(v));
    }
    if (!ls.eof()) throw ParseError("line " + std::to_string(i + 1) + ": malformed token");
    if (t.empty()) throw ParseError("line " + std::to_string(i + 1) + ": empty tree");
    trees.push_back(std::move(t));
  }
  return make_instance(num_vars, Op::And, std::move(trees));
}

std::string serialize_instance_text(const Instance& inst) {
  std::string out = std::to_string(inst.num_vars) + " " + std::to_string(inst.trees.size()) + "\n";
  for (const VarSet& t : inst.trees) {
    bool first = true;
    for (VarId v : t.vars()) {
      if (!first) out += " ";
      out += std::to_string(v);
      first = false;
    }
    out += "\n";
  }
  return out;
}

namespace {

// Count of distinct trees with size in [2, max_size], saturating.
long long count_possible_trees(int num_vars, int max_size) {
  const long long cap = 1ll << 40;
  long long total = 0;
  for (int s = 2; s <= max_size; ++s) {
    long long c = 1;
    for (int i = 0; i < s; ++i) {
      c = c * (num_vars - i) / (i + 1);
      if (c > cap) return cap;
    }
    total += c;
    if (total > cap) return cap;
  }
  return total;
}

// Lexicographically next candidate generator used as a deterministic
// fallback when rejection sampling keeps hitting duplicates.
VarSet first_unused_tree(int num_vars, int max_size, const std::vector<VarSet>& used) {
  for (int s = 2; s <= max_size; ++s) {
    std::vector<VarId> idx(static_cast<std::size_t>(s));
    for (int i = 0; i < s; ++i) idx[static_cast<std::size_t>(i)] = i;
    while (true) {
      VarSet cand = VarSet::from_vars(idx);
      if (std::find(used.begin(), used.end(), cand) == used.end()) return cand;
      // next s-combination of [0, num_vars)
      int i = s - 1;
      while (i >= 0 && idx[static_cast<std::size_t>(i)] == num_vars - s + i) --i;
      if (i < 0) break;
      ++idx[static_cast<std::size_t>(i)];
      for (int j = i + 1; j < s; ++j)
        idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
    }
  }
  throw InstanceError("internal: feasibility check admitted an infeasible request");
}

}  // namespace

Instance gen_random(const GenParams& p) {
  if (p.num_trees < 1) throw InstanceError("gen_random: num_trees must be >= 1");
  if (p.max_size < 2) throw InstanceError("gen_random: max_size must be >= 2");
  if (p.max_size > p.num_vars)
    throw InstanceError("gen_random: max_size exceeds num_vars");
  if (p.overlap_bias < 0.0 || p.overlap_bias > 1.0)
    throw InstanceError("gen_random: overlap_bias must lie in [0,1]");
  if (count_possible_trees(p.num_vars, p.max_size) < p.num_trees)
    throw InstanceError("gen_random: only " +
                        std::to_string(count_possible_trees(p.num_vars, p.max_size)) +
                        " distinct trees of size <= " + std::to_string(p.max_size) +
                        " exist over " + std::to_string(p.num_vars) + " variables");

  Rng rng(p.seed);
  std::vector<VarSet> trees;
  VarSet pool;  // variables appearing in earlier trees
  for (int t = 0; t < p.num_trees; ++t) {
    int size = rng.range(2, p.max_size);
    VarSet tree;
    bool ok = false;
    for (int attempt = 0; attempt < 200 && !ok; ++attempt) {
      tree = VarSet{};
      while (tree.count() < size) {
        std::vector<VarId> cands;
        bool from_pool = p.overlap_bias > 0.0 && rng.chance(p.overlap_bias);
        if (from_pool) {
          for (VarId v : pool.vars())
            if (!tree.contains(v)) cands.push_back(v);
        }
        if (cands.empty()) {
          for (VarId v = 0; v < p.num_vars; ++v)
            if (!tree.contains(v)) cands.push_back(v);
        }
        tree.add(cands[rng.below(cands.size())]);
      }
      ok = std::find(trees.begin(), trees.end(), tree) == trees.end();
    }
    if (!ok) tree = first_unused_tree(p.num_vars, p.max_size, trees);
    pool = pool.unite(tree);
    trees.push_back(std::move(tree));
  }
  return make_instance(p.num_vars, p.op, std::move(trees));
}

}  // namespace gateshare
