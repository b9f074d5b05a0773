#include "gateshare/reductions.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

namespace gateshare {

VCGraph make_vc_graph(int num_vertices, std::vector<std::pair<int, int>> edges) {
  if (num_vertices < 0) throw ParseError("graph vertex count must be non-negative");
  for (auto& [u, v] : edges) {
    if (u < 1 || v < 1 || u > num_vertices || v > num_vertices)
      throw ParseError("edge endpoint outside [1, " + std::to_string(num_vertices) + "]");
    if (u == v) throw ParseError("self-loop at vertex " + std::to_string(u));
    if (u > v) std::swap(u, v);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return VCGraph{num_vertices, std::move(edges)};
}

VCGraph parse_graph_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::vector<std::string> lines;
  while (std::getline(in, line)) {
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    if (std::all_of(line.begin(), line.end(),
                    [](unsigned char c) { return std::isspace(c); }))
      continue;
    lines.push_back(line);
  }
  if (lines.empty()) throw ParseError("empty graph file");
  std::istringstream header(lines[0]);
  int n = 0, m = 0;
  if (!(header >> n >> m)) throw ParseError("malformed graph header: '" + lines[0] + "'");
  if (static_cast<int>(lines.size()) - 1 != m)
    throw ParseError("header announces " + std::to_string(m) + " edges but " +
                     std::to_string(lines.size() - 1) + " follow");
  std::vector<std::pair<int, int>> edges;
  for (int i = 1; i <= m; ++i) {
    std::istringstream ls(lines[static_cast<std::size_t>(i)]);
    int u = 0, v = 0;
    if (!(ls >> u >> v)) throw ParseError("malformed edge line: '" + lines[static_cast<std::size_t>(i)] + "'");
    edges.emplace_back(u, v);
  }
  return make_vc_graph(n, std::move(edges));
}

std::string serialize_graph_text(const VCGraph& g) {
  std::string out = std::to_string(g.num_vertices) + " " + std::to_string(g.edges.size()) + "\n";
  for (auto [u, v] : g.edges) out += std::to_string(u) + " " + std::to_string(v) + "\n";
  return out;
}

Instance vc_to_instance(const VCGraph& g) {
  std::vector<VarSet> trees;
  for (auto [u, v] : g.edges) trees.push_back(VarSet{0, u, v});
  return make_instance(g.num_vertices + 1, Op::And, std::move(trees));
}

std::vector<int> extract_vc(const VCGraph& g, const Circuit& c) {
  Instance inst = vc_to_instance(g);
  ValidationReport rep = validate(c, inst);
  if (!rep.ok)
    throw CircuitError("extract_vc: circuit is not a valid solution: " + rep.summary());

  std::set<int> cover;
  for (const VarSet& s : node_varsets(c)) {
    if (s.count() != 2) continue;
    std::vector<VarId> v = s.vars();
    cover.insert(v[0] == 0 ? v[1] : v[0]);
  }
  for (auto [u, v] : g.edges) {
    if (!cover.count(u) && !cover.count(v))
      throw CircuitError("extract_vc: edge {" + std::to_string(u) + "," + std::to_string(v) +
                         "} is left uncovered");
  }
  return std::vector<int>(cover.begin(), cover.end());
}

Circuit vc_from_cover_circuit(const VCGraph& g, const std::vector<int>& cover) {
  std::set<int> in_cover(cover.begin(), cover.end());
  for (int v : in_cover)
    if (v < 1 || v > g.num_vertices)
      throw InstanceError("cover vertex " + std::to_string(v) + " out of range");
  for (auto [u, v] : g.edges)
    if (!in_cover.count(u) && !in_cover.count(v))
      throw InstanceError("cover misses edge {" + std::to_string(u) + "," + std::to_string(v) + "}");

  CircuitBuilder b(g.num_vertices + 1, Op::And);
  std::map<int, NodeRef> hub;  // vertex -> node computing x0 . x_vertex
  for (int v : in_cover) hub.emplace(v, b.add_gate(b.input(0), b.input(v)));
  for (auto [u, v] : g.edges) {
    int pick = in_cover.count(u) ? u : v;  // u < v, so ties choose the smaller
    int other = pick == u ? v : u;
    b.set_output(VarSet{0, u, v}, b.add_gate(hub.at(pick), b.input(other)));
  }
  return b.take();
}

MatchGraph to_match_graph(const VCGraph& g) {
  MatchGraph m(g.num_vertices + 1);
  for (auto [u, v] : g.edges) m.add_edge(u, v);
  return m;
}

}  // namespace gateshare
