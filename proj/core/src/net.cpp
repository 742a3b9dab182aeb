#include "stdma/net.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>

namespace stdma {

void validate(const Network& net) {
  if (net.size() < 2) throw std::invalid_argument("network needs at least 2 nodes");
  validate(net.params);
}

void CommGraph::index() {
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  out.assign(n + 1, {});
  in.assign(n + 1, {});
  adj_.assign(static_cast<size_t>(n) * n, 0);
  for (const Link& e : edges) {
    out[e.tx].push_back(e.rx);
    in[e.rx].push_back(e.tx);
    adj_[idx(e.tx, e.rx)] = 1;
  }
}

void TwoTierGraph::index() {
  std::sort(intf_edges.begin(), intf_edges.end());
  intf_.assign(static_cast<size_t>(comm.n) * comm.n, 0);
  for (const Link& e : intf_edges) intf_[idx(e.tx, e.rx)] = 1;
}

int SinrGraph::link_index(Link l) const {
  auto it = std::lower_bound(links.begin(), links.end(), l);
  if (it == links.end() || !(*it == l)) return -1;
  return static_cast<int>(it - links.begin());
}

namespace {

// Lone-transmission decodability at the given threshold; distance-vs-range
// comparison done in SINR space so exact-boundary placements stay inclusive.
bool lone_tx_meets(const Network& net, int a, int b, double thresh) {
  double d = dist(net.pos(a), net.pos(b));
  if (d <= 0.0) return false;
  const RadioParams& p = net.params;
  double sinr = p.tx_power_mw / (p.noise_mw * std::pow(d, p.path_loss_exp));
  return meets_threshold(sinr, thresh);
}

}  // namespace

CommGraph build_comm_graph(const Network& net) {
  validate(net);
  CommGraph g;
  g.n = net.size();
  for (int a = 1; a <= g.n; ++a)
    for (int b = 1; b <= g.n; ++b)
      if (a != b && lone_tx_meets(net, a, b, net.params.comm_thresh))
        g.edges.push_back({a, b});
  g.index();
  return g;
}

TwoTierGraph build_two_tier(const Network& net) {
  TwoTierGraph t;
  t.comm = build_comm_graph(net);
  if (net.params.intf_thresh) {
    for (int a = 1; a <= t.comm.n; ++a)
      for (int b = 1; b <= t.comm.n; ++b)
        if (a != b && !t.comm.has_edge(a, b) &&
            lone_tx_meets(net, a, b, *net.params.intf_thresh))
          t.intf_edges.push_back({a, b});
  }
  t.index();
  return t;
}

SinrGraph build_sinr_graph(const Network& net, const CommGraph& cg) {
  validate(net);
  SinrGraph sg;
  sg.links = cg.edges;  // already sorted
  const size_t e = sg.links.size();
  sg.w.assign(e * e, 0.0);
  sg.wp.assign(e * e, 0.0);
  sg.noise.assign(e, 0.0);
  const RadioParams& p = net.params;
  for (size_t j = 0; j < e; ++j) {
    double dj = dist(net.pos(sg.links[j].tx), net.pos(sg.links[j].rx));
    sg.noise[j] = p.noise_mw * p.comm_thresh / p.tx_power_mw *
                  std::pow(dj, p.path_loss_exp);
    for (size_t i = 0; i < e; ++i) {
      if (i == j) continue;
      const Link& a = sg.links[i];
      const Link& b = sg.links[j];
      double wij;
      if (a.tx == b.tx || a.tx == b.rx || a.rx == b.tx || a.rx == b.rx) {
        wij = 1.0;  // shared endpoint: never the same slot
      } else {
        double cross = dist(net.pos(a.tx), net.pos(b.rx));
        wij = p.comm_thresh * std::pow(dj, p.path_loss_exp) /
              std::pow(cross, p.path_loss_exp);
      }
      sg.w[i * e + j] = wij;
      sg.wp[i * e + j] = std::max(0.0, 1.0 - wij);
    }
  }
  return sg;
}

Network gen_uniform_disk(Rng& rng, int n, double radius, const RadioParams& p) {
  Network net;
  net.params = p;
  net.nodes.reserve(n);
  for (int i = 0; i < n; ++i) {
    double r = radius * std::sqrt(uniform01(rng));
    double th = uniform(rng, 0.0, 2.0 * 3.141592653589793238463);
    net.nodes.push_back({r * std::cos(th), r * std::sin(th)});
  }
  return net;
}

Network gen_uniform_square(Rng& rng, int n, double side, const RadioParams& p) {
  Network net;
  net.params = p;
  net.nodes.reserve(n);
  for (int i = 0; i < n; ++i) {
    double x = uniform(rng, 0.0, side);
    double y = uniform(rng, 0.0, side);
    net.nodes.push_back({x, y});
  }
  return net;
}

UndirectedGraph undirected_of(const CommGraph& cg) {
  UndirectedGraph u;
  u.n = cg.n;
  u.adj.assign(cg.n + 1, {});
  for (const Link& e : cg.edges) {
    if (!std::binary_search(u.adj[e.tx].begin(), u.adj[e.tx].end(), e.rx)) {
      u.adj[e.tx].insert(
          std::upper_bound(u.adj[e.tx].begin(), u.adj[e.tx].end(), e.rx), e.rx);
      u.adj[e.rx].insert(
          std::upper_bound(u.adj[e.rx].begin(), u.adj[e.rx].end(), e.tx), e.tx);
    }
  }
  return u;
}

std::vector<int> labeler(const UndirectedGraph& g) {
  std::vector<int> degree(g.n + 1, 0);
  std::vector<unsigned char> gone(g.n + 1, 0);
  for (int v = 1; v <= g.n; ++v) degree[v] = static_cast<int>(g.adj[v].size());
  std::vector<int> labels(g.n + 1, 0);
  for (int step = 0; step < g.n; ++step) {
    int pick = -1;
    for (int v = 1; v <= g.n; ++v)
      if (!gone[v] && (pick == -1 || degree[v] < degree[pick])) pick = v;
    labels[pick] = g.n - step;  // peeled first -> highest label
    gone[pick] = 1;
    for (int nb : g.adj[pick])
      if (!gone[nb]) --degree[nb];
  }
  return labels;
}

std::vector<OrientedGraph> decompose_oriented(const CommGraph& cg) {
  UndirectedGraph u = undirected_of(cg);
  // remaining undirected edges, symmetric adjacency matrix
  std::vector<unsigned char> rem(static_cast<size_t>(u.n + 1) * (u.n + 1), 0);
  auto at = [&](int a, int b) -> unsigned char& {
    return rem[static_cast<size_t>(a) * (u.n + 1) + b];
  };
  size_t left = 0;
  for (int v = 1; v <= u.n; ++v)
    for (int nb : u.adj[v])
      if (v < nb) { at(v, nb) = at(nb, v) = 1; ++left; }

  std::vector<OrientedGraph> result;
  std::vector<unsigned char> visited(u.n + 1, 0);
  std::deque<int> queue;
  while (left > 0) {
    std::fill(visited.begin(), visited.end(), 0);
    std::vector<std::pair<int, int>> tree;  // (parent, child), parent near root
    for (int root = 1; root <= u.n; ++root) {
      if (visited[root]) continue;
      visited[root] = 1;
      queue.clear();
      queue.push_back(root);
      while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        for (int nb : u.adj[v]) {
          if (visited[nb] || !at(v, nb)) continue;
          visited[nb] = 1;
          tree.emplace_back(v, nb);
          queue.push_back(nb);
        }
      }
    }
    OrientedGraph away{true, {}}, toward{false, {}};
    for (auto [p, c] : tree) {
      at(p, c) = at(c, p) = 0;
      --left;
      if (cg.has_edge(p, c)) away.edges.push_back({p, c});
      if (cg.has_edge(c, p)) toward.edges.push_back({c, p});
    }
    std::sort(away.edges.begin(), away.edges.end());
    std::sort(toward.edges.begin(), toward.edges.end());
    if (!away.edges.empty()) result.push_back(std::move(away));
    if (!toward.edges.empty()) result.push_back(std::move(toward));
  }
  return result;
}

}  // namespace stdma
