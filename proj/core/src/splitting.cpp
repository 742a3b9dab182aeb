#include "stdma/splitting.hpp"

#include <algorithm>

namespace stdma {

namespace {

double path_gain(const SplitParams& p) {
  return std::pow(p.range_m, -p.path_loss_exp);
}

}  // namespace

double low_power_mw(const SplitParams& p) {
  return p.decode_thresh * p.noise_mw * std::pow(p.range_m, p.path_loss_exp);
}

double high_power_mw(const SplitParams& p) {
  return (1.0 + p.decode_thresh) * low_power_mw(p);
}

char slot_feedback(std::span<const double> powers_mw, const SplitParams& p,
                   int* winner) {
  if (winner) *winner = -1;
  if (powers_mw.empty()) return '0';
  if (powers_mw.size() == 1) {
    if (winner) *winner = 0;
    return '1';
  }
  const double g = path_gain(p);
  double total = 0.0;
  for (double pw : powers_mw) total += pw * g;
  int decoded = -1;
  for (size_t i = 0; i < powers_mw.size(); ++i) {
    double sig = powers_mw[i] * g;
    double sinr = sig / (p.noise_mw + (total - sig));
    if (sinr >= p.decode_thresh * (1.0 - 1e-9)) {
      decoded = static_cast<int>(i);
      break;  // at most one level can clear the threshold
    }
  }
  if (decoded >= 0) {
    if (winner) *winner = decoded;
    return 'c';
  }
  return 'e';
}

SplitStats run_splitting(std::span<const double> arrivals, std::uint64_t tau,
                         const SplitParams& p, std::uint64_t warmup,
                         bool keep_trace) {
  const double p1 = low_power_mw(p);
  const double p2 = high_power_mw(p);
  SplitStats st;
  st.slots = tau;
  std::vector<double> pkt_power(arrivals.size(), 0.0);
  double T = 0.0;
  double phi = std::min(p.phi0, 1.0);
  char tag = 'R';
  bool postcap = false;
  size_t head = 0;  // first unserved packet
  std::uint64_t departed = 0;
  double delay_sum = 0.0;
  double power_sum = 0.0;
  std::vector<double> powers;
  for (std::uint64_t k = 1; k <= tau; ++k) {
    auto lo = std::lower_bound(arrivals.begin() + static_cast<long>(head),
                               arrivals.end(), T);
    auto hi = std::lower_bound(lo, arrivals.end(), T + phi);
    const size_t first = static_cast<size_t>(lo - arrivals.begin());
    const size_t last = static_cast<size_t>(hi - arrivals.begin());
    const double mid = T + phi / 2.0;
    powers.clear();
    int n_left = 0;
    for (size_t i = first; i < last; ++i) {
      bool left = arrivals[i] < mid;
      n_left += left ? 1 : 0;
      double pw = (p.two_power && left && !postcap) ? p2 : p1;
      powers.push_back(pw);
      pkt_power[i] += pw;
    }
    int winner = -1;
    char fb = slot_feedback(powers, p, &winner);
    if (keep_trace)
      st.trace.push_back({k, T, phi, tag, n_left,
                          static_cast<int>(last - first) - n_left, fb});
    if (fb == '1' || fb == 'c') {
      size_t i = first + static_cast<size_t>(winner);
      if (i != head) st.fcfs_order = false;
      if (k > warmup) {
        ++departed;
        delay_sum += static_cast<double>(k) - arrivals[i];
        power_sum += pkt_power[i];
      }
      head = i + 1;
    }
    bool postcap_next = false;
    if (fb == 'e') {
      phi /= 2.0;
      tag = 'L';
    } else if (fb == 'c') {
      T += phi / 2.0;
      phi /= 2.0;
      tag = 'R';
      postcap_next = true;
    } else if (fb == '1' && tag == 'L') {
      T += phi;
      tag = 'R';
    } else if (fb == '0' && tag == 'L') {
      T += phi;
      phi /= 2.0;
      tag = 'L';
    } else {  // resolution complete: open a fresh interval, never past k+1
      T += phi;
      phi = std::min(p.phi0, static_cast<double>(k + 1) - T);
      tag = 'R';
    }
    postcap = postcap_next;
  }
  st.departures = departed;
  if (tau > warmup)
    st.throughput =
        static_cast<double>(departed) / static_cast<double>(tau - warmup);
  if (departed > 0) {
    st.avg_delay_slots = delay_sum / static_cast<double>(departed);
    st.avg_power_mw = power_sum / static_cast<double>(departed);
  }
  return st;
}

std::vector<double> poisson_arrivals(Rng& rng, double rate, double horizon) {
  std::vector<double> out;
  double t = 0.0;
  for (;;) {
    t += exponential(rng, 1.0 / rate);
    if (t >= horizon) break;
    out.push_back(t);
  }
  return out;
}

}  // namespace stdma
