#pragma once

#include <span>
#include <string>
#include <vector>

#include "stdma/net.hpp"
#include "stdma/rng.hpp"

namespace stdma {

struct NodeSchedule {
  std::vector<std::vector<int>> slots;  // transmitting node ids per slot
  std::size_t length() const { return slots.size(); }
};

struct NodeScheduleReport {
  bool structurally_valid = false;
  std::vector<std::string> problems;
};

// Structural rules: every node exactly once; co-slotted transmitters are
// neither adjacent nor one-hop from a shared neighbor.
NodeScheduleReport validate_node_schedule(const CommGraph& cg,
                                          const NodeSchedule& s);

// Fraction of v's neighbors that decode v against the slot's other
// transmitters; slot_goodput sums it over the slot (neighborless
// transmitters contribute nothing).
double node_goodput(const Network& net, const CommGraph& cg,
                    std::span<const int> slot, int v);
double slot_goodput(const Network& net, const CommGraph& cg,
                    std::span<const int> slot);

// Mean slot goodput over the whole schedule.
double broadcast_reuse(const Network& net, const CommGraph& cg,
                       const NodeSchedule& s);

// Deterministic two-hop coloring in min-degree label order: lowest color
// with no adjacent and no shared-neighbor member, else a new one.
NodeSchedule broadcast_schedule(const CommGraph& cg);

struct MassOptions {
  bool mean_in_db = false;  // average candidate SINRs in dB instead of linear
};

// Random labels; colors with a structural clash are discarded, the survivor
// with the best mean neighborhood SINR is kept when that mean still decodes,
// otherwise a new color opens. Neighborless nodes land in the first slot.
NodeSchedule mass(const Network& net, const CommGraph& cg, Rng& rng,
                  const MassOptions& opts = {});

}  // namespace stdma
