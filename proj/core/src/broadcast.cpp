#include "stdma/broadcast.hpp"

#include <algorithm>
#include <numeric>

namespace stdma {

namespace {

bool adjacent(const CommGraph& cg, int u, int v) { return cg.has_edge(u, v); }

bool share_neighbor(const CommGraph& cg, int u, int v) {
  const auto& a = cg.out[static_cast<size_t>(u)];
  const auto& b = cg.out[static_cast<size_t>(v)];
  size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) return true;
    a[i] < b[j] ? ++i : ++j;
  }
  return false;
}

bool structural_clash(const CommGraph& cg, int u, std::span<const int> slot) {
  for (int v : slot)
    if (adjacent(cg, u, v) || share_neighbor(cg, u, v)) return true;
  return false;
}

std::vector<int> ascending_label_ids(std::span<const int> labels, int n) {
  std::vector<int> order(static_cast<size_t>(n));
  for (int v = 1; v <= n; ++v)
    order[static_cast<size_t>(labels[static_cast<size_t>(v)]) - 1] = v;
  return order;
}

// Mean SINR of u's transmission across its neighbors, with `slot` members
// interfering.
double mean_neighbor_sinr(const Network& net, const CommGraph& cg,
                          std::span<const int> slot, int u, bool in_db) {
  const auto& nbrs = cg.out[static_cast<size_t>(u)];
  std::vector<Vec2> interferers;
  interferers.reserve(slot.size());
  for (int v : slot) interferers.push_back(net.pos(v));
  double acc = 0.0;
  for (int w : nbrs) {
    double s = sinr_at(net.pos(w), net.pos(u), interferers, net.params);
    acc += in_db ? linear_to_db(s) : s;
  }
  acc /= static_cast<double>(nbrs.size());
  return in_db ? db_to_linear(acc) : acc;
}

}  // namespace

NodeScheduleReport validate_node_schedule(const CommGraph& cg,
                                          const NodeSchedule& s) {
  NodeScheduleReport rep;
  std::vector<int> count(static_cast<size_t>(cg.n) + 1, 0);
  for (size_t k = 0; k < s.slots.size(); ++k) {
    const auto& slot = s.slots[k];
    for (size_t i = 0; i < slot.size(); ++i) {
      int u = slot[i];
      if (u < 1 || u > cg.n) {
        rep.problems.push_back("slot " + std::to_string(k + 1) +
                               ": unknown node " + std::to_string(u));
        continue;
      }
      ++count[static_cast<size_t>(u)];
      for (size_t j = 0; j < i; ++j) {
        int v = slot[j];
        if (v < 1 || v > cg.n) continue;
        if (adjacent(cg, u, v))
          rep.problems.push_back("slot " + std::to_string(k + 1) + ": " +
                                 std::to_string(u) + " and " +
                                 std::to_string(v) + " are adjacent");
        else if (share_neighbor(cg, u, v))
          rep.problems.push_back("slot " + std::to_string(k + 1) + ": " +
                                 std::to_string(u) + " and " +
                                 std::to_string(v) + " share a neighbor");
      }
    }
  }
  for (int v = 1; v <= cg.n; ++v) {
    if (count[static_cast<size_t>(v)] == 0)
      rep.problems.push_back("node " + std::to_string(v) + " never scheduled");
    else if (count[static_cast<size_t>(v)] > 1)
      rep.problems.push_back("node " + std::to_string(v) +
                             " scheduled more than once");
  }
  rep.structurally_valid = rep.problems.empty();
  return rep;
}

double node_goodput(const Network& net, const CommGraph& cg,
                    std::span<const int> slot, int v) {
  const auto& nbrs = cg.out[static_cast<size_t>(v)];
  if (nbrs.empty()) return 0.0;
  std::vector<Vec2> others;
  others.reserve(slot.size());
  for (int u : slot)
    if (u != v) others.push_back(net.pos(u));
  int good = 0;
  for (int w : nbrs) {
    double s = sinr_at(net.pos(w), net.pos(v), others, net.params);
    if (meets_threshold(s, net.params.comm_thresh)) ++good;
  }
  return static_cast<double>(good) / static_cast<double>(nbrs.size());
}

double slot_goodput(const Network& net, const CommGraph& cg,
                    std::span<const int> slot) {
  double acc = 0.0;
  for (int v : slot) acc += node_goodput(net, cg, slot, v);
  return acc;
}

double broadcast_reuse(const Network& net, const CommGraph& cg,
                       const NodeSchedule& s) {
  if (s.slots.empty()) return 0.0;
  double acc = 0.0;
  for (const auto& slot : s.slots) acc += slot_goodput(net, cg, slot);
  return acc / static_cast<double>(s.slots.size());
}

NodeSchedule broadcast_schedule(const CommGraph& cg) {
  auto labels = labeler(undirected_of(cg));
  NodeSchedule out;
  for (int u : ascending_label_ids(labels, cg.n)) {
    size_t c = 0;
    for (; c < out.slots.size(); ++c)
      if (!structural_clash(cg, u, out.slots[c])) break;
    if (c == out.slots.size()) out.slots.emplace_back();
    out.slots[c].push_back(u);
  }
  return out;
}

NodeSchedule mass(const Network& net, const CommGraph& cg, Rng& rng,
                  const MassOptions& opts) {
  std::vector<int> perm(static_cast<size_t>(cg.n));
  std::iota(perm.begin(), perm.end(), 1);
  for (int i = cg.n - 1; i > 0; --i) {
    auto j = bounded(rng, static_cast<std::uint64_t>(i) + 1);
    std::swap(perm[static_cast<size_t>(i)], perm[j]);
  }
  NodeSchedule out;
  for (int u : perm) {
    if (cg.out[static_cast<size_t>(u)].empty()) {
      if (out.slots.empty()) out.slots.emplace_back();
      out.slots[0].push_back(u);
      continue;
    }
    double best = 0.0;
    size_t chosen = out.slots.size();
    for (size_t c = 0; c < out.slots.size(); ++c) {
      if (structural_clash(cg, u, out.slots[c])) continue;
      double m = mean_neighbor_sinr(net, cg, out.slots[c], u, opts.mean_in_db);
      if (chosen == out.slots.size() || m > best) {
        best = m;
        chosen = c;
      }
    }
    if (chosen == out.slots.size() ||
        !meets_threshold(best, net.params.comm_thresh)) {
      out.slots.emplace_back();
      out.slots.back().push_back(u);
    } else {
      out.slots[chosen].push_back(u);
    }
  }
  return out;
}

}  // namespace stdma
