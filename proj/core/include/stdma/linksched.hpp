#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "stdma/net.hpp"
#include "stdma/rng.hpp"

namespace stdma {

struct LinkSchedule {
  std::vector<std::vector<Link>> slots;
  std::size_t length() const { return slots.size(); }
};

enum class ViolationKind {
  endpoint_clash,
  not_comm_edge,
  duplicate_link,
  missing_link,
  sinr_below_threshold,
};

struct Violation {
  ViolationKind kind{};
  std::size_t slot = 0;  // unused for missing_link
  Link link;
};

struct ScheduleReport {
  bool conflict_free = false;
  double spatial_reuse = 0.0;  // scheduled transmissions per slot
  std::vector<std::vector<double>> slot_sinr_db;  // NaN on slots with endpoint clashes
  std::vector<Violation> violations;
};

// SINR at each link's receiver with the other links' transmitters active.
std::vector<double> slot_sinrs(const Network& net, std::span<const Link> slot);

// Conflict-free means: every communication edge exactly once, slots are
// endpoint-disjoint, and every receiver decodes against its co-slotted
// transmitters.
ScheduleReport validate_schedule(const Network& net, const CommGraph& cg,
                                 const LinkSchedule& sched);

// Graph-model exclusion: the links touch a common node, or either transmitter
// has an edge (communication or interference) onto the other receiver.
bool graph_conflict(const TwoTierGraph& g, Link x, Link y);

// Forest-by-forest greedy colorings in min-degree label order. `als` opens a
// fresh color block per oriented graph; the reuse variant scans every color
// allocated so far and appends only when all of them clash.
LinkSchedule als(const TwoTierGraph& g);
LinkSchedule als_reuse_colors(const TwoTierGraph& g);

// Random vertex labels; colors holding a link that touches x are skipped and
// the first remaining color that keeps every receiver decodable wins.
LinkSchedule cfls(const Network& net, const CommGraph& cg, Rng& rng);

struct SglsOptions {
  // Seeds consumed in order when opening colors (already-colored entries are
  // skipped); once exhausted, seeds are drawn uniformly from the uncolored.
  std::vector<Link> pick_order;
};

// Greedy color growth on the weighted link graph: a link joins the current
// color only while the truncated-weight margin certifies every member.
LinkSchedule sgls(const SinrGraph& sg, Rng& rng, const SglsOptions& opts = {});

struct BruteForceResult {
  LinkSchedule best;
  std::size_t min_slots = 0;
  std::uint64_t partitions_checked = 0;
};

// Minimum-length schedule by checking every set partition of the edge list
// against exact per-slot SINR. Throws std::invalid_argument above 10 edges.
BruteForceResult brute_force_min_schedule(const Network& net,
                                          const CommGraph& cg);

}  // namespace stdma
