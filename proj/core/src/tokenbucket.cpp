#include "stdma/tokenbucket.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <span>
#include <stdexcept>
#include <thread>
#include <unordered_set>

namespace stdma {

namespace {

using u128 = unsigned __int128;

void check_shape(const std::vector<int>& refill, const std::vector<int>& cap) {
  if (refill.empty()) throw std::invalid_argument("need at least one slot");
  if (cap.size() + 1 != refill.size())
    throw std::invalid_argument("need one cap per slot but the last");
  for (int r : refill)
    if (r < 0) throw std::invalid_argument("negative refill");
  for (int b : cap)
    if (b < 0) throw std::invalid_argument("negative cap");
}

// Streamlined g_0(0): per stage, prefix sums P[m] = sum_j 2^{m-j} g[j] turn
// the send-size sum into O(1) per carry level.
struct DpKernel {
  std::vector<u128> cur, nxt, pref;
  int reach[8] = {};

  u128 eval(std::span<const int> r, std::span<const int> cb) {
    const int S = static_cast<int>(r.size());
    reach[0] = 0;
    for (int i = 1; i < S; ++i)
      reach[i] = std::min(reach[i - 1] + r[i - 1], cb[i - 1]);
    cur.resize(static_cast<size_t>(reach[S - 1]) + 1);
    for (int u = 0; u <= reach[S - 1]; ++u)
      cur[static_cast<size_t>(u)] = (u128(1) << (u + r[S - 1] + 1)) - 1;
    for (int k = S - 2; k >= 0; --k) {
      const int m_hi = reach[k + 1];
      pref.resize(static_cast<size_t>(m_hi) + 1);
      pref[0] = cur[0];
      for (int m = 1; m <= m_hi; ++m)
        pref[static_cast<size_t>(m)] =
            (pref[static_cast<size_t>(m) - 1] << 1) + cur[static_cast<size_t>(m)];
      nxt.resize(static_cast<size_t>(reach[k]) + 1);
      for (int u = 0; u <= reach[k]; ++u) {
        const int tot = u + r[k];
        if (tot >= cb[k]) {
          const u128 w = u128(1) << (tot - cb[k] + 1);
          nxt[static_cast<size_t>(u)] =
              (w - 1) * cur[static_cast<size_t>(cb[k])] +
              (cb[k] > 0 ? w * pref[static_cast<size_t>(cb[k]) - 1] : u128(0));
        } else {
          nxt[static_cast<size_t>(u)] = pref[static_cast<size_t>(tot)];
        }
      }
      std::swap(cur, nxt);
    }
    return cur[0];
  }
};

void refill_comps(int parts, int total, int cap, std::vector<int>& cur,
                  std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == parts - 1) {
    if (total <= cap) {
      cur.push_back(total);
      out.push_back(cur);
      cur.pop_back();
    }
    return;
  }
  for (int v = 0; v <= std::min(cap, total); ++v) {
    cur.push_back(v);
    refill_comps(parts, total - v, cap, cur, out);
    cur.pop_back();
  }
}

void cap_comps(int parts, int total, std::vector<int>& cur,
               std::vector<std::vector<int>>& out) {
  if (parts == 0) {
    if (total == 0) out.push_back(cur);
    return;
  }
  if (parts == 1) {
    cur.push_back(total);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (int v = 0; v <= total; ++v) {
    cur.push_back(v);
    cap_comps(parts - 1, total - v, cur, out);
    cur.pop_back();
  }
}

}  // namespace

double TokenDp::h(int k, int u) const {
  return static_cast<double>(
      std::log2(static_cast<long double>(g[static_cast<size_t>(k)][static_cast<size_t>(u)])));
}

TokenDp token_dp(std::vector<int> refill, std::vector<int> cap) {
  check_shape(refill, cap);
  TokenDp dp;
  dp.refill = std::move(refill);
  dp.cap = std::move(cap);
  const int S = static_cast<int>(dp.refill.size());
  dp.reach.assign(static_cast<size_t>(S), 0);
  for (int i = 1; i < S; ++i)
    dp.reach[static_cast<size_t>(i)] =
        std::min(dp.reach[static_cast<size_t>(i) - 1] + dp.refill[static_cast<size_t>(i) - 1],
                 dp.cap[static_cast<size_t>(i) - 1]);
  dp.g.assign(static_cast<size_t>(S), {});
  for (int k = S - 1; k >= 0; --k) {
    auto& gk = dp.g[static_cast<size_t>(k)];
    gk.resize(static_cast<size_t>(dp.reach[static_cast<size_t>(k)]) + 1);
    for (int u = 0; u <= dp.reach[static_cast<size_t>(k)]; ++u) {
      const int tot = u + dp.refill[static_cast<size_t>(k)];
      if (k == S - 1) {
        gk[static_cast<size_t>(u)] = (u128(1) << (tot + 1)) - 1;
        continue;
      }
      u128 acc = 0;
      for (int l = 0; l <= tot; ++l) {
        const int carry = std::min(tot - l, dp.cap[static_cast<size_t>(k)]);
        acc += (u128(1) << l) * dp.g[static_cast<size_t>(k) + 1][static_cast<size_t>(carry)];
      }
      gk[static_cast<size_t>(u)] = acc;
    }
  }
  return dp;
}

std::vector<double> token_policy(const TokenDp& dp, int k, int u) {
  const int S = static_cast<int>(dp.refill.size());
  if (k < 0 || k >= S || u < 0 || u > dp.reach[static_cast<size_t>(k)])
    throw std::invalid_argument("state outside the reachable table");
  const int tot = u + dp.refill[static_cast<size_t>(k)];
  std::vector<double> p(static_cast<size_t>(tot) + 1);
  const long double denom =
      static_cast<long double>(dp.g[static_cast<size_t>(k)][static_cast<size_t>(u)]);
  for (int l = 0; l <= tot; ++l) {
    u128 num;
    if (k == S - 1) {
      num = u128(1) << l;
    } else {
      const int carry = std::min(tot - l, dp.cap[static_cast<size_t>(k)]);
      num = (u128(1) << l) *
            dp.g[static_cast<size_t>(k) + 1][static_cast<size_t>(carry)];
    }
    p[static_cast<size_t>(l)] =
        static_cast<double>(static_cast<long double>(num) / denom);
  }
  return p;
}

double uniform_entropy(int slots, int refill, int cap) {
  std::vector<int> r(static_cast<size_t>(slots), refill);
  std::vector<int> b(static_cast<size_t>(slots) - 1, cap);
  return token_dp(std::move(r), std::move(b)).entropy();
}

ShapingTies best_shaping(int slots, int refill, int cap, int threads,
                         bool include_slack) {
  if (slots < 1 || refill < 0 || cap < 0)
    throw std::invalid_argument("bad shaping budgets");
  if (slots > 8 || slots * refill > 255)
    throw std::invalid_argument("shaping search supports up to 8 slots and a refill budget of 255");
  if (include_slack && slots > 4)
    throw std::invalid_argument("slack sweep is limited to 4 slots");
  std::vector<std::vector<int>> rseqs;
  {
    std::vector<int> cur;
    refill_comps(slots, slots * refill, cap, cur, rseqs);
  }
  const int budget = (slots - 1) * cap;
  std::vector<std::vector<int>> bseqs, slack_bseqs;
  {
    std::vector<int> cur;
    cap_comps(slots - 1, budget, cur, bseqs);
    if (include_slack)
      for (int t = 0; t < budget; ++t) cap_comps(slots - 1, t, cur, slack_bseqs);
  }

  struct Local {
    u128 best = 0;
    std::vector<std::pair<std::vector<int>, std::vector<int>>> ties;
    u128 slack_best = 0;
    std::vector<std::pair<std::vector<int>, std::vector<int>>> slack_ties;
    std::uint64_t count = 0;
  };
  int nthreads = threads > 0 ? threads
                             : static_cast<int>(std::thread::hardware_concurrency());
  nthreads = std::clamp(nthreads, 1, std::max(1, static_cast<int>(rseqs.size())));
  std::vector<Local> locals(static_cast<size_t>(nthreads));
  std::atomic<size_t> cursor{0};

  auto worker = [&](Local& loc) {
    DpKernel kern;
    std::unordered_set<std::uint64_t> seen, slack_seen;
    std::vector<int> cb(static_cast<size_t>(std::max(1, slots - 1)));
    int prefix[8];
    auto consider = [&](const std::vector<int>& r,
                        const std::vector<int>& bs,
                        std::unordered_set<std::uint64_t>& dedupe, u128& best,
                        auto& ties) {
      std::uint64_t key = 0;
      for (size_t i = 0; i < bs.size(); ++i) {
        cb[i] = std::min(bs[i], prefix[i]);  // caps above the prefix are inert
        key = key << 8 | static_cast<std::uint64_t>(cb[i]);
      }
      if (!dedupe.insert(key).second) return;
      ++loc.count;
      u128 g = kern.eval(std::span<const int>(r),
                         std::span<const int>(cb.data(), bs.size()));
      if (g > best) {
        best = g;
        ties.clear();
        ties.push_back({r, std::vector<int>(cb.begin(), cb.begin() + static_cast<long>(bs.size()))});
      } else if (g == best) {
        ties.push_back({r, std::vector<int>(cb.begin(), cb.begin() + static_cast<long>(bs.size()))});
      }
    };
    for (;;) {
      const size_t ri = cursor.fetch_add(1);
      if (ri >= rseqs.size()) break;
      const auto& r = rseqs[ri];
      int acc = 0;
      for (size_t i = 0; i + 1 < r.size(); ++i) {
        acc += r[i];
        prefix[i] = acc;
      }
      seen.clear();
      for (const auto& bs : bseqs) consider(r, bs, seen, loc.best, loc.ties);
      if (include_slack) {
        slack_seen.clear();
        for (const auto& bs : slack_bseqs)
          consider(r, bs, slack_seen, loc.slack_best, loc.slack_ties);
      }
    }
  };
  {
    std::vector<std::thread> pool;
    for (int t = 1; t < nthreads; ++t)
      pool.emplace_back(worker, std::ref(locals[static_cast<size_t>(t)]));
    worker(locals[0]);
    for (auto& th : pool) th.join();
  }

  ShapingTies out;
  u128 best = 0, slack_best = 0;
  for (const auto& loc : locals) {
    out.dp_count += loc.count;
    best = std::max(best, loc.best);
    slack_best = std::max(slack_best, loc.slack_best);
  }
  for (auto& loc : locals) {
    if (loc.best == best)
      out.ties.insert(out.ties.end(), loc.ties.begin(), loc.ties.end());
    if (include_slack && loc.slack_best == slack_best)
      out.slack_ties.insert(out.slack_ties.end(), loc.slack_ties.begin(),
                            loc.slack_ties.end());
  }
  std::sort(out.ties.begin(), out.ties.end());
  std::sort(out.slack_ties.begin(), out.slack_ties.end());
  if (best > 0)
    out.best_bits =
        static_cast<double>(std::log2(static_cast<long double>(best)));
  if (slack_best > 0)
    out.slack_best_bits =
        static_cast<double>(std::log2(static_cast<long double>(slack_best)));
  return out;
}

}  // namespace stdma
