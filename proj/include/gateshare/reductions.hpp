#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gateshare/circuit.hpp"
#include "gateshare/instance.hpp"
#include "gateshare/matching.hpp"

namespace gateshare {

// Simple undirected graph with vertices 1..num_vertices (variable 0 is the
// shared hub in the derived instances, so vertex ids start at 1).
struct VCGraph {
  int num_vertices = 0;
  std::vector<std::pair<int, int>> edges;  // sorted, deduplicated, u < v
};

VCGraph make_vc_graph(int num_vertices, std::vector<std::pair<int, int>> edges);

// Text format: header "n m", then one "i j" line per edge, '#' comments.
VCGraph parse_graph_text(std::string_view text);
std::string serialize_graph_text(const VCGraph& g);

// One tree {0, i, j} per edge {i, j}, over variables x0..xn, operator AND.
// A vertex cover of size N corresponds exactly to a solution with N + |E|
// gates.
Instance vc_to_instance(const VCGraph& g);

// Reads a cover off a solution circuit for vc_to_instance(g): each 2-variable
// gate x_i.x_j is normalized to x_0.x_min(i,j), and the cover is every i
// with an x_0.x_i gate. Throws CircuitError when the circuit is not a valid
// solution or the result fails to cover some edge.
std::vector<int> extract_vc(const VCGraph& g, const Circuit& c);

// The canonical circuit for a given cover: one x_0.x_i gate per cover
// vertex, one output gate per edge. Size is |cover| + |E|. Throws
// InstanceError when the cover misses an edge.
Circuit vc_from_cover_circuit(const VCGraph& g, const std::vector<int>& cover);

// Vertex ids are used as-is (vertex 0 stays isolated).
MatchGraph to_match_graph(const VCGraph& g);

}  // namespace gateshare
