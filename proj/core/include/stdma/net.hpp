#pragma once

#include <compare>
#include <vector>

#include "stdma/rf.hpp"
#include "stdma/rng.hpp"

namespace stdma {

// Node ids are 1-based throughout the public surface.
struct Network {
  std::vector<Vec2> nodes;  // nodes[i-1] is node i
  RadioParams params;

  int size() const { return static_cast<int>(nodes.size()); }
  Vec2 pos(int id) const { return nodes[static_cast<size_t>(id) - 1]; }
};

// Throws std::invalid_argument unless >= 2 nodes and params validate.
void validate(const Network& net);

struct Link {
  int tx = 0;
  int rx = 0;
  auto operator<=>(const Link&) const = default;
};

struct CommGraph {
  int n = 0;
  std::vector<Link> edges;  // directed, lexicographically sorted
  std::vector<std::vector<int>> out;  // out[id] = receivers, ascending
  std::vector<std::vector<int>> in;   // in[id] = transmitters, ascending

  bool has_edge(int a, int b) const { return adj_[idx(a, b)] != 0; }

  // Rebuilds adjacency from `edges` (call after hand-constructing a graph).
  void index();

 private:
  std::vector<unsigned char> adj_;
  size_t idx(int a, int b) const {
    return static_cast<size_t>(a - 1) * n + (b - 1);
  }
};

struct TwoTierGraph {
  CommGraph comm;
  std::vector<Link> intf_edges;  // directed, sorted; disjoint from comm
  bool has_intf(int a, int b) const { return intf_[idx(a, b)] != 0; }
  // True if a->b is either a communication or an interference edge.
  bool has_any(int a, int b) const { return comm.has_edge(a, b) || has_intf(a, b); }
  void index();

 private:
  std::vector<unsigned char> intf_;
  size_t idx(int a, int b) const {
    return static_cast<size_t>(a - 1) * comm.n + (b - 1);
  }
};

// Complete weighted digraph on communication links: vertex j is links[j], and
// w[i][j] scales transmission i's interference at link j's receiver so that
// link j decodes within a set S iff sum_{i in S\{j}} w[i][j] + noise[j] <= 1.
// Links sharing an endpoint get w = 1 (never co-schedulable). wp = max(0, 1-w).
struct SinrGraph {
  std::vector<Link> links;   // sorted lexicographically
  std::vector<double> w;     // row-major e*e; w(i,j) = weight of i onto j
  std::vector<double> wp;
  std::vector<double> noise;  // normalized noise at each link's receiver

  int size() const { return static_cast<int>(links.size()); }
  double weight(int i, int j) const { return w[static_cast<size_t>(i) * links.size() + j]; }
  double weight_p(int i, int j) const { return wp[static_cast<size_t>(i) * links.size() + j]; }
  int link_index(Link l) const;  // -1 if absent
};

// Edge a->b iff a lone transmission from a is decodable at b (equivalent to
// dist <= comm_range to within 1e-9 relative).
CommGraph build_comm_graph(const Network& net);

// Adds interference edges: not decodable but above the interference threshold.
// Without an intf_thresh the interference set is empty.
TwoTierGraph build_two_tier(const Network& net);

SinrGraph build_sinr_graph(const Network& net, const CommGraph& cg);

// Uniform node placement: disk of radius R about the origin (area-uniform),
// or axis-aligned square [0,L]^2.
Network gen_uniform_disk(Rng& rng, int n, double radius, const RadioParams& p);
Network gen_uniform_square(Rng& rng, int n, double side, const RadioParams& p);

// Undirected view used by the labeling and forest machinery.
struct UndirectedGraph {
  int n = 0;
  std::vector<std::vector<int>> adj;  // adj[id] ascending
};
UndirectedGraph undirected_of(const CommGraph& cg);

// Iterative min-degree peeling; ties to the lowest id. The first vertex
// peeled gets the highest label, the last gets label 1 (bijection 1..n).
std::vector<int> labeler(const UndirectedGraph& g);  // labels[id], labels[0] unused

// One BFS-forest pass of the undirected view, oriented both ways.
struct OrientedGraph {
  bool away_from_root = true;
  std::vector<Link> edges;  // directed communication edges, sorted
};

// Successive BFS forests (roots at the lowest-index vertex of each unvisited
// component, repeated until no undirected edges remain); each forest yields an
// away-from-root and a toward-root oriented graph. Every directed
// communication edge lands in exactly one output graph.
std::vector<OrientedGraph> decompose_oriented(const CommGraph& cg);

}  // namespace stdma
