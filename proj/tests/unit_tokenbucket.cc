#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "stdma/tokenbucket.hpp"

using namespace stdma;
using Tie = std::pair<std::vector<int>, std::vector<int>>;

namespace {

double shannon(const std::vector<double>& p) {
  double h = 0.0;
  for (double q : p)
    if (q > 0.0) h -= q * std::log2(q);
  return h;
}

double mean_index(const std::vector<double>& p) {
  double m = 0.0;
  for (size_t l = 0; l < p.size(); ++l) m += static_cast<double>(l) * p[l];
  return m;
}

bool has_tie(const ShapingTies& s, const Tie& t) {
  return std::find(s.ties.begin(), s.ties.end(), t) != s.ties.end();
}

}  // namespace

TEST_CASE("single-slot count is exact") {
  auto dp = token_dp({2}, {});
  REQUIRE(dp.g.size() == 1);
  REQUIRE(dp.g[0].size() == 1);
  CHECK(dp.g[0][0] == 7);  // send 0, 1, or 2 tokens: 1 + 2 + 4 sequences
  CHECK(dp.entropy() == doctest::Approx(std::log2(7.0)).epsilon(1e-13));
}

TEST_CASE("two-slot count is exact") {
  auto dp = token_dp({1, 1}, {1});
  CHECK(dp.reach == std::vector<int>{0, 1});
  REQUIRE(dp.g[1].size() == 2);
  CHECK(dp.g[1][0] == 3);
  CHECK(dp.g[1][1] == 7);
  CHECK(dp.g[0][0] == 13);  // hold: 7 continuations, send: 2*3
  CHECK(dp.entropy() == doctest::Approx(std::log2(13.0)).epsilon(1e-13));

  auto p0 = token_policy(dp, 0, 0);
  REQUIRE(p0.size() == 2);
  CHECK(p0[0] == doctest::Approx(7.0 / 13.0).epsilon(1e-13));
  CHECK(p0[1] == doctest::Approx(6.0 / 13.0).epsilon(1e-13));
  auto p1 = token_policy(dp, 1, 1);
  REQUIRE(p1.size() == 3);
  CHECK(p1[0] == doctest::Approx(1.0 / 7.0).epsilon(1e-13));
  CHECK(p1[1] == doctest::Approx(2.0 / 7.0).epsilon(1e-13));
  CHECK(p1[2] == doctest::Approx(4.0 / 7.0).epsilon(1e-13));
}

TEST_CASE("reach table and carry monotonicity") {
  auto dp = token_dp({3, 3, 3, 3}, {6, 6, 6});
  CHECK(dp.reach == std::vector<int>{0, 3, 6, 6});
  REQUIRE(dp.g[0].size() == 1);
  REQUIRE(dp.g[1].size() == 4);
  REQUIRE(dp.g[2].size() == 7);
  REQUIRE(dp.g[3].size() == 7);
  for (size_t k = 0; k < dp.g.size(); ++k)
    for (size_t u = 0; u + 1 < dp.g[k].size(); ++u) {
      CAPTURE(k);
      CAPTURE(u);
      CHECK(dp.g[k][u] < dp.g[k][u + 1]);  // extra carry strictly helps
    }
}

TEST_CASE("uniform-shape entropies match the hand table") {
  CHECK(std::fabs(uniform_entropy(4, 3, 6) - 20.04) < 0.005);
  CHECK(std::fabs(uniform_entropy(4, 4, 8) - 25.08) < 0.005);
  CHECK(std::fabs(uniform_entropy(5, 3, 6) - 25.68) < 0.005);
  CHECK(std::fabs(uniform_entropy(6, 2, 4) - 23.00) < 0.005);
  CHECK(std::fabs(uniform_entropy(6, 3, 6) - 31.33) < 0.005);

  auto dp = token_dp({3, 3, 3, 3}, {6, 6, 6});
  CHECK(uniform_entropy(4, 3, 6) == dp.entropy());
}

TEST_CASE("policies are distributions and satisfy the entropy recursion") {
  const auto check_shape_identity = [](const TokenDp& dp) {
    const int S = static_cast<int>(dp.refill.size());
    for (int k = 0; k < S; ++k) {
      for (int u = 0; u <= dp.reach[static_cast<size_t>(k)]; ++u) {
        CAPTURE(k);
        CAPTURE(u);
        auto p = token_policy(dp, k, u);
        const int tot = u + dp.refill[static_cast<size_t>(k)];
        REQUIRE(static_cast<int>(p.size()) == tot + 1);
        double sum = 0.0;
        for (double q : p) {
          CHECK(q >= 0.0);
          sum += q;
        }
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));

        // H_k(u) = H(send) + E[sent bits] + E[H_{k+1}(carry)]
        double rhs = shannon(p) + mean_index(p);
        if (k + 1 < S)
          for (int l = 0; l <= tot; ++l) {
            const int carry = std::min(tot - l, dp.cap[static_cast<size_t>(k)]);
            rhs += p[static_cast<size_t>(l)] * dp.h(k + 1, carry);
          }
        CHECK(dp.h(k, u) == doctest::Approx(rhs).epsilon(1e-9));
      }
    }
  };
  check_shape_identity(token_dp({3, 3, 3, 3}, {6, 6, 6}));
  check_shape_identity(token_dp({6, 4, 2, 0}, {6, 8, 7}));
  check_shape_identity(token_dp({1, 1}, {1}));
}

TEST_CASE("policy rejects states outside the table") {
  auto dp = token_dp({1, 1}, {1});
  CHECK_THROWS_AS((void)token_policy(dp, 2, 0), std::invalid_argument);
  CHECK_THROWS_AS((void)token_policy(dp, -1, 0), std::invalid_argument);
  CHECK_THROWS_AS((void)token_policy(dp, 1, 2), std::invalid_argument);
  CHECK_THROWS_AS((void)token_policy(dp, 0, 1), std::invalid_argument);
}

TEST_CASE("shape validation") {
  CHECK_THROWS_AS((void)token_dp({}, {}), std::invalid_argument);
  CHECK_THROWS_AS((void)token_dp({2, 2}, {}), std::invalid_argument);
  CHECK_THROWS_AS((void)token_dp({2}, {3}), std::invalid_argument);
  CHECK_THROWS_AS((void)token_dp({-1}, {}), std::invalid_argument);
  CHECK_THROWS_AS((void)token_dp({1, 1}, {-1}), std::invalid_argument);
  CHECK_THROWS_AS((void)best_shaping(0, 3, 6), std::invalid_argument);
  CHECK_THROWS_AS((void)best_shaping(9, 3, 6), std::invalid_argument);
  CHECK_THROWS_AS((void)best_shaping(8, 32, 8), std::invalid_argument);
  CHECK_THROWS_AS((void)best_shaping(5, 3, 6, 0, true), std::invalid_argument);
}

TEST_CASE("tiny shaping search solved by hand") {
  // refills sum to 2 with parts <= 3; the single cap budget is 3, clamped to
  // the reachable prefix. Counts: (0,2)->7, (1,1)->13, (2,0)->17.
  auto s = best_shaping(2, 1, 3);
  CHECK(s.best_bits == doctest::Approx(std::log2(17.0)).epsilon(1e-13));
  REQUIRE(s.ties.size() == 1);
  CHECK(s.ties[0] == Tie{{2, 0}, {2}});  // cap stored clamped, not 3
  CHECK(s.dp_count == 3);
}

TEST_CASE("tiny slack sweep solved by hand") {
  // only refill (2,2); cap 2 gives 89 sequences, the sub-budget caps 0 and 1
  // give 49 and 73.
  auto s = best_shaping(2, 2, 2, 1, true);
  CHECK(s.best_bits == doctest::Approx(std::log2(89.0)).epsilon(1e-13));
  REQUIRE(s.ties.size() == 1);
  CHECK(s.ties[0] == Tie{{2, 2}, {2}});
  CHECK(s.slack_best_bits == doctest::Approx(std::log2(73.0)).epsilon(1e-13));
  REQUIRE(s.slack_ties.size() == 1);
  CHECK(s.slack_ties[0] == Tie{{2, 2}, {1}});
  CHECK(s.dp_count == 3);
}

TEST_CASE("shaping search matches the reference table") {
  auto s6 = best_shaping(4, 3, 6);
  CHECK(std::fabs(s6.best_bits - 20.92) < 0.005);
  CHECK(has_tie(s6, Tie{{6, 3, 3, 0}, {6, 6, 6}}));

  auto s7 = best_shaping(4, 3, 7);
  CHECK(std::fabs(s7.best_bits - 21.16) < 0.005);
  CHECK(has_tie(s7, Tie{{6, 4, 2, 0}, {6, 8, 7}}));
  CHECK(has_tie(s7, Tie{{7, 3, 2, 0}, {7, 8, 6}}));
  CHECK(std::is_sorted(s7.ties.begin(), s7.ties.end()));
  CHECK(s7.dp_count > 1000);

  // every tie realizes the winning count exactly
  for (const auto& [r, cb] : s7.ties) {
    auto dp = token_dp(r, cb);
    CHECK(dp.entropy() == doctest::Approx(s7.best_bits).epsilon(1e-10));
  }
  auto first = token_dp(s7.ties[0].first, s7.ties[0].second).g[0][0];
  for (const auto& [r, cb] : s7.ties)
    CHECK(token_dp(r, cb).g[0][0] == first);

  // shaping can only help
  CHECK(s6.best_bits >= uniform_entropy(4, 3, 6) - 1e-9);
  CHECK(s7.best_bits >= uniform_entropy(4, 3, 7) - 1e-9);
}
