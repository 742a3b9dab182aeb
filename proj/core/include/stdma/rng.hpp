#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace stdma {

using Rng = std::mt19937_64;

// SplitMix64 step; also the documented per-trial seed derivation:
// trial i runs on Rng(trial_seed(global_seed, i)).
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t trial_seed(std::uint64_t global_seed, std::uint64_t trial) {
  return splitmix64(global_seed + 0x9e3779b97f4a7c15ULL * (trial + 1));
}

// Distribution transforms are hand-rolled so that a seed pins the exact
// stream regardless of standard-library version.

inline double uniform01(Rng& g) { return (g() >> 11) * 0x1.0p-53; }  // [0,1)

// Uniform integer in [0, n) by 128-bit multiply-shift.
inline std::uint64_t bounded(Rng& g, std::uint64_t n) {
  return static_cast<std::uint64_t>(
      (static_cast<unsigned __int128>(g()) * n) >> 64);
}

inline double uniform(Rng& g, double a, double b) {
  return a + (b - a) * uniform01(g);
}

inline double exponential(Rng& g, double mean) {
  return -mean * std::log1p(-uniform01(g));
}

inline double normal01(Rng& g) {
  double u1 = 1.0 - uniform01(g);  // (0,1]
  double u2 = uniform01(g);
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(6.283185307179586476925287 * u2);
}

inline int poisson(Rng& g, double mean) {
  double limit = std::exp(-mean);
  double prod = uniform01(g);
  int n = 0;
  while (prod > limit) {
    prod *= uniform01(g);
    ++n;
  }
  return n;
}

}  // namespace stdma
