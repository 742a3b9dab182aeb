#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "stdma/rng.hpp"

namespace stdma {

// Poisson(x) occupancy tails used throughout the resolution chain.
// prob_collision switches to its alternating series below 0.5, where the
// direct form loses digits to cancellation.
double prob_collision(double x);             // P(N >= 2)
double prob_collision_no_capture(double x);  // above minus the 1+1 split mass
double prob_busy(double x);                  // P(N >= 1)

// Stages of one interval-resolution walk. `depth` halves the interval each
// level; primed stages are the re-split of a left sub-collision.
struct CrpStage {
  enum Kind : unsigned char {
    root,
    left,
    right,
    left_primed,
    right_primed,
    capture,
  };
  Kind kind = root;
  int depth = 0;
  bool operator==(const CrpStage&) const = default;
};

// Successor distribution for one stage at root load g0 (conditional
// probabilities; each row sums to 1).
std::vector<std::pair<CrpStage, double>> crp_transitions(const CrpStage& s,
                                                         double g0);

struct CrpExpectations {
  double slots = 0.0;     // mean slots per resolution period
  double returned = 0.0;  // mean fraction of the interval handed back
};
CrpExpectations crp_expectations(double g0, int max_depth = 60);

// zeta = g0 (1 - returned) / slots, the sustainable arrival rate.
double crp_throughput(double g0, int max_depth = 60);

// Negative drift certifies stability at allocation width `alloc`.
double crp_drift(double g0, double alloc, int max_depth = 60);

struct ThroughputOpt {
  double g0 = 0.0;
  double zeta = 0.0;
  double alloc = 0.0;  // g0 / zeta, the matching fresh-allocation width
};
// 1e-3 grid over (0,4] refined by golden section to 1e-6.
ThroughputOpt maximize_throughput();

struct CrpSample {
  double mean_slots = 0.0;
  double se_slots = 0.0;
  double mean_returned = 0.0;
  double se_returned = 0.0;
};
// Direct Monte-Carlo of n resolution periods at load g0.
CrpSample simulate_crps(Rng& rng, double g0, std::uint64_t n);

}  // namespace stdma
