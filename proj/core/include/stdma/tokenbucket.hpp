#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace stdma {

// Exact count of distinguishable burst sequences for a token bucket: slot k
// may send any l in [0, u + refill[k]] tokens, and the carry is capped at
// cap[k] (no cap after the final slot). g[k][u] = 2^{h_k(u)} is an integer,
// kept exactly in 128 bits.
struct TokenDp {
  std::vector<int> refill;                         // size S
  std::vector<int> cap;                            // size S-1
  std::vector<int> reach;                          // highest carry entering slot k
  std::vector<std::vector<unsigned __int128>> g;   // g[k][u], u <= reach[k]
  double h(int k, int u) const;                    // log2 g[k][u]
  double entropy() const { return h(0, 0); }
};

TokenDp token_dp(std::vector<int> refill, std::vector<int> cap);

// Entropy-optimal send distribution for slot k at carry u:
// p[l] proportional to 2^l * g[k+1][capped carry].
std::vector<double> token_policy(const TokenDp& dp, int k, int u);

// Entropy of the constant-(refill, cap) bucket over `slots` slots.
double uniform_entropy(int slots, int refill, int cap);

struct ShapingTies {
  double best_bits = 0.0;
  // (refill sequence, caps normalized to reachable prefix sums), sorted.
  std::vector<std::pair<std::vector<int>, std::vector<int>>> ties;
  std::uint64_t dp_count = 0;  // distinct programs evaluated
  // Best over cap budgets strictly below (slots-1)*cap, when requested.
  double slack_best_bits = 0.0;
  std::vector<std::pair<std::vector<int>, std::vector<int>>> slack_ties;
};

// Best shaping at fixed budgets: refills sum to slots*refill with every part
// <= cap; caps sum to (slots-1)*cap. Ties are exact (equal counts). The
// strictly-smaller cap-budget sweep is limited to slots <= 4.
ShapingTies best_shaping(int slots, int refill, int cap, int threads = 0,
                         bool include_slack = false);

}  // namespace stdma
