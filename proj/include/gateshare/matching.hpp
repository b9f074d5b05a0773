#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

namespace gateshare {

struct GraphError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Simple undirected graph on vertices 0..n-1: no loops, no parallel edges.
class MatchGraph {
public:
  explicit MatchGraph(int n);

  void add_edge(int u, int v);  // duplicates ignored
  int num_vertices() const { return n_; }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }  // sorted
  std::vector<std::vector<int>> adjacency() const;

private:
  int n_;
  std::vector<std::pair<int, int>> edges_;
};

// Maximum-cardinality matching in a general graph (Edmonds' blossom
// algorithm, O(V^3)). Exactness matters: the residual solves in the
// approximation algorithms rely on true maximum matchings, odd cycles
// included. Deterministic: vertices and neighbours are processed in
// ascending order. Returned pairs have first < second and are sorted.
std::vector<std::pair<int, int>> max_matching(const MatchGraph& g);

// Exhaustive maximum-matching cardinality, used as the test oracle.
// Throws GraphError when the graph has more than 24 edges.
int brute_matching(const MatchGraph& g);

// Hypergraph with edges of 1 to 3 vertices, deduplicated and kept in
// canonical (sorted) order.
class Hypergraph {
public:
  explicit Hypergraph(int n);

  void add_edge(std::vector<int> vertices);
  int num_vertices() const { return n_; }
  const std::vector<std::vector<int>>& edges() const { return edges_; }

private:
  int n_;
  std::vector<std::vector<int>> edges_;
};

// Greedy maximal matching over edges in canonical order: an edge is taken
// when it is vertex-disjoint from everything taken so far.
std::vector<std::vector<int>> maximal_matching(const Hypergraph& h);

// All vertices of the matched edges. When the matching is maximal this is a
// vertex cover. Throws GraphError if the input is not a matching of h.
std::vector<int> cover_from_matching(const Hypergraph& h,
                                     const std::vector<std::vector<int>>& matching);

// Inclusion-minimal subset of the cover, removing candidates in ascending
// order. Throws GraphError if the input does not cover every edge.
std::vector<int> prune_cover(const Hypergraph& h, std::vector<int> cover);

}  // namespace gateshare
