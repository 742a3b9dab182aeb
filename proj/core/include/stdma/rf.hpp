#pragma once

#include <optional>
#include <span>

#include "stdma/rng.hpp"

namespace stdma {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

inline double dist(Vec2 a, Vec2 b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

// All powers in linear milliwatts, distances in meters, thresholds linear.
struct RadioParams {
  double tx_power_mw = 0.0;
  double noise_mw = 0.0;
  double path_loss_exp = 0.0;
  double comm_thresh = 0.0;                 // SINR needed to decode
  std::optional<double> intf_thresh = {};   // lower, non-decodable-but-harmful
};

// Throws std::invalid_argument on non-positive fields or
// comm_thresh <= intf_thresh.
void validate(const RadioParams& p);

double db_to_linear(double db);       // 10^(db/10); any real db
double linear_to_db(double linear);   // inverse; throws std::domain_error if <= 0

// Decode threshold comparisons tolerate 1e-9 relative slack so boundary
// geometry (a link at exactly the decodable range) counts as decodable.
inline bool meets_threshold(double sinr, double thresh) {
  return sinr >= thresh * (1.0 - 1e-9);
}

// Largest distance at which a lone transmission is decodable / still harmful.
double comm_range(const RadioParams& p);
double intf_range(const RadioParams& p);  // throws std::logic_error if no intf_thresh

// SINR at `rx` for a signal from `tx` with every `interferer` transmitting at
// the common power. Pure function of geometry + params. Throws
// std::invalid_argument if rx coincides with tx or any interferer
// (degenerate geometry).
double sinr_at(Vec2 rx, Vec2 tx, std::span<const Vec2> interferers,
               const RadioParams& p);

// Multiplicative channel gain: a heavy-tailed fade times a log-normal shadow.
struct ChannelGain {
  double fading = 1.0;       // V >= 0
  double shadow_bels = 0.0;  // W; multiplier contribution is 10^W
  double gain() const { return fading * std::pow(10.0, shadow_bels); }
};

// V ~ Exp(mean var_fading), W ~ N(0, var_shadow). Deterministic per rng state.
ChannelGain draw_gain(Rng& rng, double var_fading, double var_shadow);

}  // namespace stdma
