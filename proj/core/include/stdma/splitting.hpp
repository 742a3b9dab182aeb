#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "stdma/rng.hpp"

namespace stdma {

// One slot of the arrival-interval splitting service. `tag` marks whether the
// allocated interval is a left or right sibling; feedback is one of
// '0' idle, '1' success, 'c' capture, 'e' unresolved collision.
struct SlotTrace {
  std::uint64_t slot = 0;
  double alloc_start = 0.0;
  double alloc_width = 0.0;
  char tag = 'R';
  int n_left = 0;
  int n_right = 0;
  char feedback = '0';
};

struct SplitParams {
  double phi0 = 2.54;        // fresh allocation width, slots
  bool two_power = true;     // high power on the left half (off: single level)
  double decode_thresh = std::pow(10.0, 0.7);  // linear SINR threshold
  double noise_mw = 1e-9;
  double path_loss_exp = 4.0;
  double range_m = 100.0;    // common transmitter-receiver distance
};

// Lowest power that decodes alone, and the level that still decodes over one
// low-power interferer (their ratio is exactly 1 + decode_thresh).
double low_power_mw(const SplitParams& p);
double high_power_mw(const SplitParams& p);

// Physical feedback for simultaneous transmissions at the common receiver;
// *winner is set to the decoded index on capture.
char slot_feedback(std::span<const double> powers_mw, const SplitParams& p,
                   int* winner = nullptr);

struct SplitStats {
  std::uint64_t slots = 0;
  std::uint64_t departures = 0;   // after the warmup window
  double throughput = 0.0;        // departures per post-warmup slot
  double avg_delay_slots = 0.0;
  double avg_power_mw = 0.0;      // total transmit energy per departed packet
  bool fcfs_order = true;         // departures followed arrival order
  std::vector<SlotTrace> trace;   // filled when keep_trace
};

// Runs tau slots over the given sorted arrival times. Packet power counts
// every transmission attempt, including those before the warmup window ends.
SplitStats run_splitting(std::span<const double> arrivals, std::uint64_t tau,
                         const SplitParams& p, std::uint64_t warmup = 1000,
                         bool keep_trace = false);

// Poisson process of the given rate on [0, horizon).
std::vector<double> poisson_arrivals(Rng& rng, double rate, double horizon);

}  // namespace stdma
