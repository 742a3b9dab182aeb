#include "stdma/linksched.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>
#include <stdexcept>

namespace stdma {

namespace {

bool touches(Link x, Link y) {
  return x.tx == y.tx || x.tx == y.rx || x.rx == y.tx || x.rx == y.rx;
}

double link_sinr(const Network& net, std::span<const Link> slot, size_t i) {
  std::vector<Vec2> others;
  others.reserve(slot.size() - 1);
  for (size_t k = 0; k < slot.size(); ++k)
    if (k != i) others.push_back(net.pos(slot[k].tx));
  return sinr_at(net.pos(slot[i].rx), net.pos(slot[i].tx), others, net.params);
}

bool slot_decodes_all(const Network& net, std::span<const Link> slot) {
  for (size_t i = 0; i < slot.size(); ++i)
    if (!meets_threshold(link_sinr(net, slot, i), net.params.comm_thresh))
      return false;
  return true;
}

// Min-degree labels (random ones for cfls), then each oriented graph's edges
// in increasing label of the vertex the orientation keys on: the receiver
// when edges point away from the root, the transmitter otherwise.
std::vector<Link> label_order(const OrientedGraph& t,
                              std::span<const int> labels) {
  std::vector<std::pair<int, Link>> keyed;
  keyed.reserve(t.edges.size());
  for (Link e : t.edges)
    keyed.push_back({labels[t.away_from_root ? e.rx : e.tx], e});
  std::sort(keyed.begin(), keyed.end());
  std::vector<Link> out;
  out.reserve(keyed.size());
  for (auto& [lab, e] : keyed) out.push_back(e);
  return out;
}

std::vector<int> random_labels(Rng& rng, int n) {
  std::vector<int> perm(static_cast<size_t>(n));
  std::iota(perm.begin(), perm.end(), 1);
  for (int i = n - 1; i > 0; --i) {
    auto j = bounded(rng, static_cast<std::uint64_t>(i) + 1);
    std::swap(perm[static_cast<size_t>(i)], perm[j]);
  }
  std::vector<int> labels(static_cast<size_t>(n) + 1, 0);
  for (int j = 0; j < n; ++j) labels[static_cast<size_t>(perm[j])] = j + 1;
  return labels;
}

LinkSchedule arborical(const TwoTierGraph& g, bool reuse) {
  auto labels = labeler(undirected_of(g.comm));
  auto parts = decompose_oriented(g.comm);
  std::vector<std::vector<Link>> slots;
  for (const auto& t : parts) {
    size_t base = reuse ? 0 : slots.size();
    for (Link x : label_order(t, labels)) {
      size_t c = base;
      for (; c < slots.size(); ++c) {
        bool clash = false;
        for (Link y : slots[c])
          if (graph_conflict(g, x, y)) {
            clash = true;
            break;
          }
        if (!clash) break;
      }
      if (c == slots.size()) slots.emplace_back();
      slots[c].push_back(x);
    }
  }
  return {std::move(slots)};
}

}  // namespace

std::vector<double> slot_sinrs(const Network& net, std::span<const Link> slot) {
  std::vector<double> out(slot.size());
  for (size_t i = 0; i < slot.size(); ++i)
    out[i] = link_sinr(net, slot, i);
  return out;
}

ScheduleReport validate_schedule(const Network& net, const CommGraph& cg,
                                 const LinkSchedule& sched) {
  ScheduleReport rep;
  std::map<Link, int> seen;
  size_t scheduled = 0;
  for (size_t s = 0; s < sched.slots.size(); ++s) {
    const auto& slot = sched.slots[s];
    scheduled += slot.size();
    bool geometry_ok = true;  // SINR is only meaningful on clash-free slots
    for (size_t i = 0; i < slot.size(); ++i) {
      Link x = slot[i];
      if (x.tx < 1 || x.tx > cg.n || x.rx < 1 || x.rx > cg.n || x.tx == x.rx)
        geometry_ok = false;
      if (!std::binary_search(cg.edges.begin(), cg.edges.end(), x))
        rep.violations.push_back({ViolationKind::not_comm_edge, s, x});
      if (++seen[x] == 2)
        rep.violations.push_back({ViolationKind::duplicate_link, s, x});
      for (size_t j = 0; j < i; ++j)
        if (touches(x, slot[j])) {
          rep.violations.push_back({ViolationKind::endpoint_clash, s, x});
          geometry_ok = false;
          break;
        }
    }
    rep.slot_sinr_db.emplace_back();
    if (!geometry_ok) {
      rep.slot_sinr_db.back().assign(slot.size(),
                                     std::numeric_limits<double>::quiet_NaN());
      continue;
    }
    auto sinrs = slot_sinrs(net, slot);
    for (size_t i = 0; i < slot.size(); ++i) {
      rep.slot_sinr_db.back().push_back(linear_to_db(sinrs[i]));
      if (!meets_threshold(sinrs[i], net.params.comm_thresh))
        rep.violations.push_back({ViolationKind::sinr_below_threshold, s, slot[i]});
    }
  }
  for (Link e : cg.edges)
    if (!seen.count(e))
      rep.violations.push_back({ViolationKind::missing_link, 0, e});
  rep.conflict_free = rep.violations.empty();
  rep.spatial_reuse = sched.slots.empty()
                          ? 0.0
                          : static_cast<double>(scheduled) /
                                static_cast<double>(sched.slots.size());
  return rep;
}

bool graph_conflict(const TwoTierGraph& g, Link x, Link y) {
  if (touches(x, y)) return true;
  return g.has_any(x.tx, y.rx) || g.has_any(y.tx, x.rx);
}

LinkSchedule als(const TwoTierGraph& g) { return arborical(g, false); }

LinkSchedule als_reuse_colors(const TwoTierGraph& g) {
  return arborical(g, true);
}

LinkSchedule cfls(const Network& net, const CommGraph& cg, Rng& rng) {
  auto labels = random_labels(rng, cg.n);
  auto parts = decompose_oriented(cg);
  std::vector<std::vector<Link>> slots;
  for (const auto& t : parts) {
    for (Link x : label_order(t, labels)) {
      size_t chosen = slots.size();
      for (size_t c = 0; c < slots.size(); ++c) {
        bool primary = false;
        for (Link y : slots[c])
          if (touches(x, y)) {
            primary = true;
            break;
          }
        if (primary) continue;
        slots[c].push_back(x);
        bool ok = slot_decodes_all(net, slots[c]);
        slots[c].pop_back();
        if (ok) {
          chosen = c;
          break;
        }
      }
      if (chosen == slots.size()) slots.emplace_back();
      slots[chosen].push_back(x);
    }
  }
  return {std::move(slots)};
}

LinkSchedule sgls(const SinrGraph& sg, Rng& rng, const SglsOptions& opts) {
  const int e = sg.size();
  std::vector<char> colored(static_cast<size_t>(e), 0);
  int remaining = e;
  size_t cursor = 0;
  LinkSchedule out;
  while (remaining > 0) {
    int seed = -1;
    while (cursor < opts.pick_order.size()) {
      int k = sg.link_index(opts.pick_order[cursor++]);
      if (k >= 0 && !colored[static_cast<size_t>(k)]) {
        seed = k;
        break;
      }
    }
    if (seed < 0) {
      std::vector<int> unc;
      unc.reserve(static_cast<size_t>(remaining));
      for (int i = 0; i < e; ++i)
        if (!colored[static_cast<size_t>(i)]) unc.push_back(i);
      seed = unc[bounded(rng, unc.size())];
    }
    colored[static_cast<size_t>(seed)] = 1;
    --remaining;
    std::vector<int> set{seed};
    bool admitted = true;
    while (admitted) {
      admitted = false;
      for (int u = 0; u < e; ++u) {
        if (colored[static_cast<size_t>(u)]) continue;
        double coupling = 0.0;
        for (int x : set) coupling += sg.weight_p(x, u) + sg.weight_p(u, x);
        if (!(coupling > 0.0)) continue;
        const double m = static_cast<double>(set.size());
        bool ok = true;
        for (int vc : set) {
          double margin = sg.weight_p(u, vc);
          for (int v1 : set)
            if (v1 != vc) margin += sg.weight_p(v1, vc);
          if (!(margin > m + sg.noise[static_cast<size_t>(vc)] - 1.0)) {
            ok = false;
            break;
          }
        }
        if (ok) {
          double margin = 0.0;
          for (int v2 : set) margin += sg.weight_p(v2, u);
          if (!(margin > m + sg.noise[static_cast<size_t>(u)] - 1.0)) ok = false;
        }
        if (ok) {
          set.push_back(u);
          colored[static_cast<size_t>(u)] = 1;
          --remaining;
          admitted = true;
        }
      }
    }
    out.slots.emplace_back();
    for (int i : set) out.slots.back().push_back(sg.links[static_cast<size_t>(i)]);
  }
  return out;
}

BruteForceResult brute_force_min_schedule(const Network& net,
                                          const CommGraph& cg) {
  const int e = static_cast<int>(cg.edges.size());
  if (e > 10)
    throw std::invalid_argument("exhaustive schedule search capped at 10 edges");
  BruteForceResult res;
  if (e == 0) {
    res.partitions_checked = 1;
    return res;
  }
  // Restricted-growth strings enumerate every set partition exactly once.
  std::vector<int> a(static_cast<size_t>(e), 0);
  std::vector<int> mx(static_cast<size_t>(e), 0);
  size_t best = static_cast<size_t>(e) + 1;
  LinkSchedule best_sched;
  std::vector<std::vector<Link>> blocks;
  for (;;) {
    ++res.partitions_checked;
    size_t nb = static_cast<size_t>(mx[static_cast<size_t>(e) - 1]) + 1;
    if (nb < best) {
      blocks.assign(nb, {});
      for (int i = 0; i < e; ++i)
        blocks[static_cast<size_t>(a[static_cast<size_t>(i)])].push_back(
            cg.edges[static_cast<size_t>(i)]);
      bool feasible = true;
      for (const auto& b : blocks) {
        for (size_t i = 0; i < b.size() && feasible; ++i)
          for (size_t j = 0; j < i; ++j)
            if (touches(b[i], b[j])) {
              feasible = false;
              break;
            }
        if (feasible && !slot_decodes_all(net, b)) feasible = false;
        if (!feasible) break;
      }
      if (feasible) {
        best = nb;
        best_sched.slots = blocks;
      }
    }
    int i = e - 1;
    while (i > 0 && a[static_cast<size_t>(i)] == mx[static_cast<size_t>(i) - 1] + 1)
      --i;
    if (i == 0) break;
    ++a[static_cast<size_t>(i)];
    mx[static_cast<size_t>(i)] =
        std::max(mx[static_cast<size_t>(i) - 1], a[static_cast<size_t>(i)]);
    for (int j = i + 1; j < e; ++j) {
      a[static_cast<size_t>(j)] = 0;
      mx[static_cast<size_t>(j)] = mx[static_cast<size_t>(j) - 1];
    }
  }
  res.best = std::move(best_sched);
  res.min_slots = best;
  return res;
}

}  // namespace stdma
