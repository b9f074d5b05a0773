#include "gateshare/matching.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <string>

namespace gateshare {

MatchGraph::MatchGraph(int n) : n_(n) {
  if (n < 0) throw GraphError("vertex count must be non-negative");
}

void MatchGraph::add_edge(int u, int v) {
  if (u < 0 || v < 0 || u >= n_ || v >= n_)
    throw GraphError("edge endpoint out of range");
  if (u == v) throw GraphError("self-loops are not allowed");
  if (u > v) std::swap(u, v);
  auto e = std::make_pair(u, v);
  auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
  if (it == edges_.end() || *it != e) edges_.insert(it, e);
}

std::vector<std::vector<int>> MatchGraph::adjacency() const {
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(n_));
  for (auto [u, v] : edges_) {
    adj[static_cast<std::size_t>(u)].push_back(v);
    adj[static_cast<std::size_t>(v)].push_back(u);
  }
  return adj;  // already ascending: edges_ is sorted
}

namespace {

// Edmonds' blossom algorithm for maximum cardinality matching, following the
// usual base[]/contract formulation.
struct Blossom {
  int n;
  std::vector<std::vector<int>> adj;
  std::vector<int> match, parent, base;
  std::vector<char> used, flower;

  explicit Blossom(const MatchGraph& g)
      : n(g.num_vertices()),
        adj(g.adjacency()),
        match(static_cast<std::size_t>(n), -1),
        parent(static_cast<std::size_t>(n), -1),
        base(static_cast<std::size_t>(n)),
        used(static_cast<std::size_t>(n), 0),
        flower(static_cast<std::size_t>(n), 0) {}

  int lca(int a, int b) {
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    for (int v = base[static_cast<std::size_t>(a)];; v = base[static_cast<std::size_t>(
             parent[static_cast<std::size_t>(match[static_cast<std::size_t>(v)])])]) {
      seen[static_cast<std::size_t>(v)] = 1;
      if (match[static_cast<std::size_t>(v)] < 0) break;
    }
    for (int v = base[static_cast<std::size_t>(b)];; v = base[static_cast<std::size_t>(
             parent[static_cast<std::size_t>(match[static_cast<std::size_t>(v)])])]) {
      if (seen[static_cast<std::size_t>(v)]) return v;
    }
  }

  void mark_path(int v, int b, int child) {
    while (base[static_cast<std::size_t>(v)] != b) {
      int mv = match[static_cast<std::size_t>(v)];
      flower[static_cast<std::size_t>(base[static_cast<std::size_t>(v)])] = 1;
      flower[static_cast<std::size_t>(base[static_cast<std::size_t>(mv)])] = 1;
      parent[static_cast<std::size_t>(v)] = child;
      child = mv;
      v = parent[static_cast<std::size_t>(mv)];
    }
  }

  // BFS for an augmenting path from root; returns its free endpoint or -1.
  int find_path(int root) {
    std::fill(used.begin(), used.end(), 0);
    std::fill(parent.begin(), parent.end(), -1);
    std::iota(base.begin(), base.end(), 0);
    used[static_cast<std::size_t>(root)] = 1;
    std::queue<int> q;
    q.push(root);
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (int u : adj[static_cast<std::size_t>(v)]) {
        if (base[static_cast<std::size_t>(v)] == base[static_cast<std::size_t>(u)] ||
            match[static_cast<std::size_t>(v)] == u)
          continue;
        if (u == root ||
            (match[static_cast<std::size_t>(u)] >= 0 &&
             parent[static_cast<std::size_t>(match[static_cast<std::size_t>(u)])] >= 0)) {
          // Odd cycle: contract the blossom with base at the LCA.
          int b = lca(v, u);
          std::fill(flower.begin(), flower.end(), 0);
          mark_path(v, b, u);
          mark_path(u, b, v);
          for (int i = 0; i < n; ++i) {
            if (!flower[static_cast<std::size_t>(base[static_cast<std::size_t>(i)])]) continue;
            base[static_cast<std::size_t>(i)] = b;
            if (!used[static_cast<std::size_t>(i)]) {
              used[static_cast<std::size_t>(i)] = 1;
              q.push(i);
            }
          }
        } else if (parent[static_cast<std::size_t>(u)] < 0) {
          parent[static_cast<std::size_t>(u)] = v;
          if (match[static_cast<std::size_t>(u)] < 0) return u;
          int mu = match[static_cast<std::size_t>(u)];
          used[static_cast<std::size_t>(mu)] = 1;
          q.push(mu);
        }
      }
    }
    return -1;
  }

  void run() {
    // Greedy seed keeps the number of augmenting searches small.
    for (int v = 0; v < n; ++v) {
      if (match[static_cast<std::size_t>(v)] >= 0) continue;
      for (int u : adj[static_cast<std::size_t>(v)]) {
        if (match[static_cast<std::size_t>(u)] < 0) {
          match[static_cast<std::size_t>(v)] = u;
          match[static_cast<std::size_t>(u)] = v;
          break;
        }
      }
    }
    for (int v = 0; v < n; ++v) {
      if (match[static_cast<std::size_t>(v)] >= 0) continue;
      int end = find_path(v);
      while (end >= 0) {  // augment along parent links
        int pv = parent[static_cast<std::size_t>(end)];
        int next = match[static_cast<std::size_t>(pv)];
        match[static_cast<std::size_t>(end)] = pv;
        match[static_cast<std::size_t>(pv)] = end;
        end = next;
      }
    }
  }
};

}  // namespace

std::vector<std::pair<int, int>> max_matching(const MatchGraph& g) {
  Blossom b(g);
  b.run();
  std::vector<std::pair<int, int>> out;
  for (int v = 0; v < g.num_vertices(); ++v)
    if (b.match[static_cast<std::size_t>(v)] > v)
      out.emplace_back(v, b.match[static_cast<std::size_t>(v)]);
  return out;
}

namespace {

int brute_rec(const std::vector<std::pair<int, int>>& edges, std::size_t idx,
              std::vector<char>& taken, int depth) {
  if (idx == edges.size()) return depth;
  int best = brute_rec(edges, idx + 1, taken, depth);
  auto [u, v] = edges[idx];
  if (!taken[static_cast<std::size_t>(u)] && !taken[static_cast<std::size_t>(v)]) {
    taken[static_cast<std::size_t>(u)] = taken[static_cast<std::size_t>(v)] = 1;
    best = std::max(best, brute_rec(edges, idx + 1, taken, depth + 1));
    taken[static_cast<std::size_t>(u)] = taken[static_cast<std::size_t>(v)] = 0;
  }
  return best;
}

}  // namespace

int brute_matching(const MatchGraph& g) {
  if (g.edges().size() > 24)
    throw GraphError("brute_matching: instance too large (" +
                     std::to_string(g.edges().size()) + " edges)");
  std::vector<char> taken(static_cast<std::size_t>(g.num_vertices()), 0);
  return brute_rec(g.edges(), 0, taken, 0);
}

Hypergraph::Hypergraph(int n) : n_(n) {
  if (n < 0) throw GraphError("vertex count must be non-negative");
}

void Hypergraph::add_edge(std::vector<int> vertices) {
  std::sort(vertices.begin(), vertices.end());
  vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
  if (vertices.empty()) throw GraphError("hyperedge must be nonempty");
  if (vertices.size() > 3) throw GraphError("hyperedge has more than 3 vertices");
  for (int v : vertices)
    if (v < 0 || v >= n_) throw GraphError("hyperedge vertex out of range");
  auto it = std::lower_bound(edges_.begin(), edges_.end(), vertices);
  if (it == edges_.end() || *it != vertices) edges_.insert(it, std::move(vertices));
}

std::vector<std::vector<int>> maximal_matching(const Hypergraph& h) {
  std::vector<char> hit(static_cast<std::size_t>(h.num_vertices()), 0);
  std::vector<std::vector<int>> chosen;
  for (const auto& e : h.edges()) {
    bool free = std::none_of(e.begin(), e.end(),
                             [&](int v) { return hit[static_cast<std::size_t>(v)]; });
    if (!free) continue;
    for (int v : e) hit[static_cast<std::size_t>(v)] = 1;
    chosen.push_back(e);
  }
  return chosen;
}

std::vector<int> cover_from_matching(const Hypergraph& h,
                                     const std::vector<std::vector<int>>& matching) {
  std::vector<char> seen(static_cast<std::size_t>(h.num_vertices()), 0);
  std::vector<int> cover;
  for (const auto& e : matching) {
    for (int v : e) {
      if (v < 0 || v >= h.num_vertices()) throw GraphError("matching vertex out of range");
      if (seen[static_cast<std::size_t>(v)])
        throw GraphError("edges of the matching are not pairwise disjoint");
    }
    for (int v : e) {
      seen[static_cast<std::size_t>(v)] = 1;
      cover.push_back(v);
    }
  }
  std::sort(cover.begin(), cover.end());
  return cover;
}

std::vector<int> prune_cover(const Hypergraph& h, std::vector<int> cover) {
  std::sort(cover.begin(), cover.end());
  cover.erase(std::unique(cover.begin(), cover.end()), cover.end());
  std::vector<char> in(static_cast<std::size_t>(h.num_vertices()), 0);
  for (int v : cover) {
    if (v < 0 || v >= h.num_vertices()) throw GraphError("cover vertex out of range");
    in[static_cast<std::size_t>(v)] = 1;
  }
  auto covered = [&](const std::vector<int>& e) {
    return std::any_of(e.begin(), e.end(),
                       [&](int v) { return in[static_cast<std::size_t>(v)]; });
  };
  for (const auto& e : h.edges())
    if (!covered(e)) throw GraphError("input does not cover every edge");

  for (int v : cover) {
    in[static_cast<std::size_t>(v)] = 0;
    bool still = std::all_of(h.edges().begin(), h.edges().end(), covered);
    if (!still) in[static_cast<std::size_t>(v)] = 1;
  }
  std::vector<int> out;
  for (int v : cover)
    if (in[static_cast<std::size_t>(v)]) out.push_back(v);
  return out;
}

}  // namespace gateshare
