#include "stdma/crp.hpp"

#include <algorithm>
#include <cmath>

namespace stdma {

namespace {

double g_at(double g0, int depth) { return std::ldexp(g0, -depth); }

}  // namespace

double prob_collision(double x) {
  if (x <= 0.0) return 0.0;
  if (x < 0.5) {
    // sum_{n>=2} (-1)^n (n-1) x^n / n!
    double term = x * x / 2.0;
    double sum = term;
    for (int n = 2; std::fabs(term) >= 1e-17 * std::fabs(sum); ++n) {
      term *= -x * n / (static_cast<double>(n + 1) * (n - 1));
      sum += term;
    }
    return sum;
  }
  return 1.0 - (1.0 + x) * std::exp(-x);
}

double prob_collision_no_capture(double x) {
  return prob_collision(x) - (x * x / 4.0) * std::exp(-x);
}

double prob_busy(double x) { return -std::expm1(-x); }

std::vector<std::pair<CrpStage, double>> crp_transitions(const CrpStage& s,
                                                         double g0) {
  using K = CrpStage::Kind;
  std::vector<std::pair<CrpStage, double>> out;
  const int i = s.depth;
  switch (s.kind) {
    case K::root: {
      const double g = g_at(g0, 0);
      out.push_back({{K::root, 0}, (1.0 + g) * std::exp(-g)});
      out.push_back({{K::capture, 1}, (g * g / 4.0) * std::exp(-g)});
      out.push_back({{K::left, 1}, prob_collision_no_capture(g)});
      break;
    }
    case K::left: {
      const double gi = g_at(g0, i);
      const double e = std::exp(-gi);
      const double den = prob_collision_no_capture(g_at(g0, i - 1));
      out.push_back({{K::right, i}, prob_collision(gi) * gi * e / den});
      out.push_back({{K::left_primed, i + 1}, prob_collision(gi) * e / den});
      out.push_back({{K::capture, i + 1}, (gi * gi / 4.0) * e / den});
      out.push_back({{K::left, i + 1}, prob_collision_no_capture(gi) / den});
      break;
    }
    case K::right: {
      const double gi = g_at(g0, i);
      const double e = std::exp(-gi);
      const double den = prob_collision(gi);
      out.push_back({{K::capture, i + 1}, (gi * gi / 4.0) * e / den});
      out.push_back({{K::left, i + 1}, prob_collision_no_capture(gi) / den});
      break;
    }
    case K::left_primed: {
      const double gi = g_at(g0, i);
      const double e = std::exp(-gi);
      const double den = prob_collision(g_at(g0, i - 1));
      out.push_back({{K::right_primed, i}, prob_busy(gi) * gi * e / den});
      out.push_back({{K::left_primed, i + 1}, prob_collision(gi) * e / den});
      out.push_back({{K::capture, i + 1}, (gi * gi / 4.0) * e / den});
      out.push_back({{K::left, i + 1}, prob_collision_no_capture(gi) / den});
      break;
    }
    case K::right_primed: {
      const double gi = g_at(g0, i);
      const double e = std::exp(-gi);
      const double den = prob_busy(gi);
      out.push_back({{K::root, 0}, gi * e / den});
      out.push_back({{K::capture, i + 1}, (gi * gi / 4.0) * e / den});
      out.push_back({{K::left, i + 1}, prob_collision_no_capture(gi) / den});
      break;
    }
    case K::capture:
      out.push_back({{K::root, 0}, 1.0});
      break;
  }
  return out;
}

CrpExpectations crp_expectations(double g0, int max_depth) {
  const size_t n = static_cast<size_t>(max_depth) + 2;
  std::vector<double> G(n), E(n);
  for (size_t i = 0; i < n; ++i) {
    G[i] = g_at(g0, static_cast<int>(i));
    E[i] = std::exp(-G[i]);
  }
  auto A = [](double x) { return prob_collision(x); };
  auto B = [](double x) { return prob_collision_no_capture(x); };
  auto C = [](double x) { return prob_busy(x); };
  std::vector<double> QL(n, 0.0), QLp(n, 0.0), QR(n, 0.0), QRp(n, 0.0),
      QC(n, 0.0);
  QC[1] = (G[0] * G[0] / 4.0) * E[0];
  QL[1] = B(G[0]);
  QR[1] = QL[1] * (A(G[1]) * G[1] * E[1] / B(G[0]));
  for (int i = 2; i <= max_depth; ++i) {
    const double gp = G[i - 1];
    const double ep = E[i - 1];
    const double p_l_l = B(gp) / B(G[i - 2]);
    const double p_l_lp = A(gp) * ep / B(G[i - 2]);
    const double p_l_c = (gp * gp / 4.0) * ep / B(G[i - 2]);
    const double p_r_l = B(gp) / A(gp);
    const double p_r_c = (gp * gp / 4.0) * ep / A(gp);
    double p_lp_l = 0.0, p_lp_lp = 0.0, p_lp_c = 0.0, p_rp_l = 0.0,
           p_rp_c = 0.0;
    if (i - 1 >= 2) {
      p_lp_l = B(gp) / A(G[i - 2]);
      p_lp_lp = A(gp) * ep / A(G[i - 2]);
      p_lp_c = (gp * gp / 4.0) * ep / A(G[i - 2]);
      p_rp_l = B(gp) / C(gp);
      p_rp_c = (gp * gp / 4.0) * ep / C(gp);
    }
    QL[static_cast<size_t>(i)] = QLp[static_cast<size_t>(i) - 1] * p_lp_l +
                                 QL[static_cast<size_t>(i) - 1] * p_l_l +
                                 QR[static_cast<size_t>(i) - 1] * p_r_l +
                                 QRp[static_cast<size_t>(i) - 1] * p_rp_l;
    QLp[static_cast<size_t>(i)] = QLp[static_cast<size_t>(i) - 1] * p_lp_lp +
                                  QL[static_cast<size_t>(i) - 1] * p_l_lp;
    QC[static_cast<size_t>(i)] = QLp[static_cast<size_t>(i) - 1] * p_lp_c +
                                 QL[static_cast<size_t>(i) - 1] * p_l_c +
                                 QR[static_cast<size_t>(i) - 1] * p_r_c +
                                 QRp[static_cast<size_t>(i) - 1] * p_rp_c;
    QR[static_cast<size_t>(i)] =
        QL[static_cast<size_t>(i)] *
        (A(G[static_cast<size_t>(i)]) * G[static_cast<size_t>(i)] *
         E[static_cast<size_t>(i)] / B(G[static_cast<size_t>(i) - 1]));
    QRp[static_cast<size_t>(i)] =
        QLp[static_cast<size_t>(i)] *
        (C(G[static_cast<size_t>(i)]) * G[static_cast<size_t>(i)] *
         E[static_cast<size_t>(i)] / A(G[static_cast<size_t>(i) - 1]));
  }
  CrpExpectations ex;
  ex.slots = 1.0;
  for (int i = 1; i <= max_depth; ++i) {
    const size_t k = static_cast<size_t>(i);
    ex.slots += QL[k] + QLp[k] + QR[k] + QRp[k] + QC[k];
    const double ul = A(G[k]) / B(G[k - 1]);
    const double ulp = i >= 2 ? A(G[k]) / A(G[k - 1]) : 0.0;
    ex.returned += (QL[k] * ul + QLp[k] * ulp) * std::ldexp(1.0, -i);
  }
  return ex;
}

double crp_throughput(double g0, int max_depth) {
  auto ex = crp_expectations(g0, max_depth);
  return g0 * (1.0 - ex.returned) / ex.slots;
}

double crp_drift(double g0, double alloc, int max_depth) {
  auto ex = crp_expectations(g0, max_depth);
  return ex.slots - alloc * (1.0 - ex.returned);
}

ThroughputOpt maximize_throughput() {
  double best_g = 0.001, best_z = 0.0;
  for (int k = 1; k <= 4000; ++k) {
    double g = 0.001 * k;
    double z = crp_throughput(g);
    if (z > best_z) {
      best_z = z;
      best_g = g;
    }
  }
  double a = std::max(1e-6, best_g - 0.002), b = std::min(4.0, best_g + 0.002);
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - gr * (b - a), d = a + gr * (b - a);
  double fc = crp_throughput(c), fd = crp_throughput(d);
  while (b - a > 1e-9) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - gr * (b - a);
      fc = crp_throughput(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + gr * (b - a);
      fd = crp_throughput(d);
    }
  }
  ThroughputOpt opt;
  opt.g0 = (a + b) / 2.0;
  opt.zeta = crp_throughput(opt.g0);
  opt.alloc = opt.g0 / opt.zeta;
  return opt;
}

CrpSample simulate_crps(Rng& rng, double g0, std::uint64_t n) {
  double sk = 0.0, sk2 = 0.0, sf = 0.0, sf2 = 0.0;
  std::vector<double> xs;
  std::vector<double> pend;
  for (std::uint64_t it = 0; it < n; ++it) {
    int npkt = poisson(rng, g0);
    xs.resize(static_cast<size_t>(npkt));
    for (auto& x : xs) x = uniform01(rng);
    std::sort(xs.begin(), xs.end());
    pend.assign(xs.begin(), xs.end());
    double t = 0.0, phi = 1.0;
    char tag = 'R';
    bool postcap = false;
    double k_slots = 0.0, returned = 0.0;
    for (;;) {
      k_slots += 1.0;
      auto lo = std::lower_bound(pend.begin(), pend.end(), t);
      auto hi = std::lower_bound(lo, pend.end(), t + phi);
      const double mid = t + phi / 2.0;
      int nl = 0, nr = 0;
      for (auto it2 = lo; it2 != hi; ++it2) (*it2 < mid ? nl : nr) += 1;
      const int tot = nl + nr;
      char fb;
      if (postcap)
        fb = tot >= 2 ? 'e' : (tot == 1 ? '1' : '0');
      else if (tot == 0)
        fb = '0';
      else if (tot == 1)
        fb = '1';
      else if (nl == 1 && nr == 1)
        fb = 'c';
      else
        fb = 'e';
      if (fb == '1')
        pend.erase(lo);
      else if (fb == 'c')
        pend.erase(lo);  // the left occupant is the first in range
      postcap = false;
      if (fb == 'e') {
        phi /= 2.0;
        tag = 'L';
      } else if (fb == 'c') {
        t += phi / 2.0;
        phi /= 2.0;
        tag = 'R';
        postcap = true;
      } else if (fb == '1' && tag == 'L') {
        t += phi;
        tag = 'R';
      } else if (fb == '0' && tag == 'L') {
        t += phi;
        phi /= 2.0;
        tag = 'L';
      } else {
        returned = std::max(0.0, 1.0 - (t + phi));
        break;
      }
    }
    sk += k_slots;
    sk2 += k_slots * k_slots;
    sf += returned;
    sf2 += returned * returned;
  }
  const double dn = static_cast<double>(n);
  CrpSample s;
  s.mean_slots = sk / dn;
  s.mean_returned = sf / dn;
  if (n > 1) {
    s.se_slots =
        std::sqrt(std::max(0.0, (sk2 / dn - s.mean_slots * s.mean_slots)) /
                  (dn - 1.0));
    s.se_returned = std::sqrt(
        std::max(0.0, (sf2 / dn - s.mean_returned * s.mean_returned)) /
        (dn - 1.0));
  }
  return s;
}

}  // namespace stdma
