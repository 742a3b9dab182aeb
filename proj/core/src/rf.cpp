#include "stdma/rf.hpp"

#include <cmath>
#include <stdexcept>

namespace stdma {

void validate(const RadioParams& p) {
  if (!(p.tx_power_mw > 0.0)) throw std::invalid_argument("tx_power_mw must be positive");
  if (!(p.noise_mw > 0.0)) throw std::invalid_argument("noise_mw must be positive");
  if (!(p.path_loss_exp > 0.0)) throw std::invalid_argument("path_loss_exp must be positive");
  if (!(p.comm_thresh > 0.0)) throw std::invalid_argument("comm_thresh must be positive");
  if (p.intf_thresh) {
    if (!(*p.intf_thresh > 0.0)) throw std::invalid_argument("intf_thresh must be positive");
    if (!(p.comm_thresh > *p.intf_thresh))
      throw std::invalid_argument("comm_thresh must exceed intf_thresh");
  }
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

double linear_to_db(double linear) {
  if (!(linear > 0.0)) throw std::domain_error("linear_to_db requires a positive value");
  return 10.0 * std::log10(linear);
}

double comm_range(const RadioParams& p) {
  validate(p);
  return std::pow(p.tx_power_mw / (p.noise_mw * p.comm_thresh), 1.0 / p.path_loss_exp);
}

double intf_range(const RadioParams& p) {
  validate(p);
  if (!p.intf_thresh) throw std::logic_error("intf_range requires intf_thresh");
  return std::pow(p.tx_power_mw / (p.noise_mw * *p.intf_thresh), 1.0 / p.path_loss_exp);
}

double sinr_at(Vec2 rx, Vec2 tx, std::span<const Vec2> interferers,
               const RadioParams& p) {
  double d = dist(rx, tx);
  if (d <= 0.0) throw std::invalid_argument("receiver coincides with its transmitter");
  double signal = p.tx_power_mw / std::pow(d, p.path_loss_exp);
  double denom = p.noise_mw;
  for (const Vec2& i : interferers) {
    double di = dist(rx, i);
    if (di <= 0.0) throw std::invalid_argument("receiver coincides with an interferer");
    denom += p.tx_power_mw / std::pow(di, p.path_loss_exp);
  }
  return signal / denom;
}

ChannelGain draw_gain(Rng& rng, double var_fading, double var_shadow) {
  ChannelGain g;
  g.fading = exponential(rng, var_fading);
  g.shadow_bels = std::sqrt(var_shadow) * normal01(rng);
  return g;
}

}  // namespace stdma
