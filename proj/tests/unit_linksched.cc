#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>

#include "fixtures.hpp"
#include "stdma/linksched.hpp"

using namespace stdma;

namespace {

bool has_violation(const ScheduleReport& rep, ViolationKind k) {
  return std::any_of(rep.violations.begin(), rep.violations.end(),
                     [&](const Violation& v) { return v.kind == k; });
}

// every communication edge exactly once, no conflicts under the graph model
void check_graph_valid(const TwoTierGraph& tg, const LinkSchedule& s) {
  std::vector<Link> seen;
  for (const auto& slot : s.slots) {
    for (size_t i = 0; i < slot.size(); ++i) {
      seen.push_back(slot[i]);
      for (size_t j = 0; j < i; ++j)
        CHECK_FALSE(graph_conflict(tg, slot[i], slot[j]));
    }
  }
  std::sort(seen.begin(), seen.end());
  CHECK(seen == tg.comm.edges);
}

Network random_net(std::uint64_t seed, int n, double extent) {
  Rng rng(seed);
  return gen_uniform_disk(rng, n, extent,
                          fixtures::make_params(10.0, -90.0, 20.0));
}

}  // namespace

TEST_CASE("schedule validation catches each defect") {
  auto net = fixtures::four_node_chain();
  auto cg = build_comm_graph(net);

  LinkSchedule good;
  good.slots = {{{1, 2}, {4, 3}}, {{2, 3}}, {{3, 4}, {2, 1}}, {{3, 2}}};
  auto rep = validate_schedule(net, cg, good);
  CHECK(rep.conflict_free);
  CHECK(rep.violations.empty());
  CHECK(rep.spatial_reuse == doctest::Approx(1.5));

  LinkSchedule clash = good;
  clash.slots[1] = {{2, 3}, {3, 4}};  // shares node 3
  clash.slots[2] = {{2, 1}};
  rep = validate_schedule(net, cg, clash);
  CHECK_FALSE(rep.conflict_free);
  CHECK(has_violation(rep, ViolationKind::endpoint_clash));

  LinkSchedule alien = good;
  alien.slots.push_back({{1, 3}});  // not a communication edge
  rep = validate_schedule(net, cg, alien);
  CHECK(has_violation(rep, ViolationKind::not_comm_edge));

  LinkSchedule dup = good;
  dup.slots.push_back({{1, 2}});
  rep = validate_schedule(net, cg, dup);
  CHECK(has_violation(rep, ViolationKind::duplicate_link));

  LinkSchedule missing = good;
  missing.slots.pop_back();
  rep = validate_schedule(net, cg, missing);
  CHECK(has_violation(rep, ViolationKind::missing_link));

  // (3,4) jams (1,2): its weight onto that receiver exceeds 1
  LinkSchedule jam;
  jam.slots = {{{1, 2}, {3, 4}}, {{2, 1}, {4, 3}}, {{2, 3}}, {{3, 2}}};
  rep = validate_schedule(net, cg, jam);
  CHECK(has_violation(rep, ViolationKind::sinr_below_threshold));
}

TEST_CASE("graph-model exclusion") {
  auto tg = build_two_tier(fixtures::six_node_mesh());
  CHECK(graph_conflict(tg, {1, 2}, {2, 3}));   // shared node
  CHECK(graph_conflict(tg, {1, 2}, {3, 4}));   // 1 interferes at 4
  CHECK(graph_conflict(tg, {5, 1}, {3, 4}));   // 3 interferes at 1
  // same links, interference tier dropped: only the shared-node rule is left
  auto bare = build_two_tier(fixtures::six_node_mesh(false));
  CHECK_FALSE(graph_conflict(bare, {5, 1}, {3, 4}));
}

TEST_CASE("forest colorings cover the mesh") {
  auto tg = build_two_tier(fixtures::six_node_mesh());
  auto plain = als(tg);
  auto reuse = als_reuse_colors(tg);
  check_graph_valid(tg, plain);
  check_graph_valid(tg, reuse);
  CHECK(reuse.length() <= plain.length());

  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto net = random_net(seed, 40, 300.0);
    auto g = build_two_tier(net);
    auto a = als(g);
    auto r = als_reuse_colors(g);
    check_graph_valid(g, a);
    check_graph_valid(g, r);
    CHECK(r.length() <= a.length());
  }
}

TEST_CASE("random-label coloring keeps every receiver decodable") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    auto net = random_net(seed + 100, 25, 250.0);
    auto cg = build_comm_graph(net);
    Rng rng(seed);
    auto s = cfls(net, cg, rng);
    auto rep = validate_schedule(net, cg, s);
    CHECK(rep.conflict_free);
  }
}

TEST_CASE("weighted greedy growth reproduces the chain schedule") {
  auto net = fixtures::four_node_chain();
  auto cg = build_comm_graph(net);
  auto sg = build_sinr_graph(net, cg);

  SglsOptions opts;
  opts.pick_order = {{1, 2}, {2, 3}, {3, 4}, {3, 2}};
  Rng rng(1);
  auto s = sgls(sg, rng, opts);
  REQUIRE(s.length() == 4);
  CHECK(s.slots[0] == std::vector<Link>{{1, 2}, {4, 3}});
  CHECK(s.slots[1] == std::vector<Link>{{2, 3}});
  CHECK(s.slots[2] == std::vector<Link>{{3, 4}, {2, 1}});
  CHECK(s.slots[3] == std::vector<Link>{{3, 2}});

  auto rep = validate_schedule(net, cg, s);
  CHECK(rep.conflict_free);
  CHECK(rep.spatial_reuse == doctest::Approx(1.5));
  CHECK(rep.slot_sinr_db[0][0] == doctest::Approx(20.854).epsilon(5e-4));
  CHECK(rep.slot_sinr_db[0][1] == doctest::Approx(21.000).epsilon(5e-4));
  CHECK(rep.slot_sinr_db[2][0] == doctest::Approx(20.989).epsilon(5e-4));
  CHECK(rep.slot_sinr_db[2][1] == doctest::Approx(20.866).epsilon(5e-4));
}

TEST_CASE("weighted greedy growth is conflict-free from any seed") {
  auto net = fixtures::four_node_chain();
  auto cg = build_comm_graph(net);
  auto sg = build_sinr_graph(net, cg);
  auto opt = brute_force_min_schedule(net, cg);
  CHECK(opt.min_slots == 4);
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    Rng rng(seed);
    auto s = sgls(sg, rng);
    auto rep = validate_schedule(net, cg, s);
    CHECK(rep.conflict_free);
    CHECK(s.length() >= opt.min_slots);
    CHECK(s.length() <= cg.edges.size());
  }
}

TEST_CASE("exhaustive minimum on the chain") {
  auto net = fixtures::four_node_chain();
  auto cg = build_comm_graph(net);
  auto res = brute_force_min_schedule(net, cg);
  CHECK(res.min_slots == 4);
  CHECK(res.partitions_checked == 203);  // Bell number of 6 edges
  auto rep = validate_schedule(net, cg, res.best);
  CHECK(rep.conflict_free);

  Network big;
  big.params = fixtures::make_params(10.0, -90.0, 20.0);
  for (int i = 0; i < 8; ++i)
    big.nodes.push_back({static_cast<double>(40 * i), 0.0});
  auto bg = build_comm_graph(big);
  REQUIRE(bg.edges.size() > 10);
  CHECK_THROWS_AS(brute_force_min_schedule(big, bg), std::invalid_argument);
}
