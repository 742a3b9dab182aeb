#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>

#include "fixtures.hpp"
#include "stdma/broadcast.hpp"

using namespace stdma;

namespace {

void check_structure(const CommGraph& cg, const NodeSchedule& s) {
  auto rep = validate_node_schedule(cg, s);
  for (const auto& p : rep.problems) INFO(p);
  CHECK(rep.structurally_valid);
}

}  // namespace

TEST_CASE("two-cluster slot goodput") {
  auto net = fixtures::two_cluster_net();
  auto cg = build_comm_graph(net);
  REQUIRE(cg.out[1] == std::vector<int>{2, 3});
  REQUIRE(cg.out[4] == std::vector<int>{5, 6});

  std::vector<Vec2> from4{net.pos(4)};
  std::vector<Vec2> from1{net.pos(1)};
  CHECK(linear_to_db(sinr_at(net.pos(2), net.pos(1), from4, net.params)) ==
        doctest::Approx(21.848).epsilon(5e-4));
  CHECK(linear_to_db(sinr_at(net.pos(3), net.pos(1), from4, net.params)) ==
        doctest::Approx(12.448).epsilon(5e-4));
  CHECK(linear_to_db(sinr_at(net.pos(5), net.pos(4), from1, net.params)) ==
        doctest::Approx(15.273).epsilon(5e-4));
  CHECK(linear_to_db(sinr_at(net.pos(6), net.pos(4), from1, net.params)) ==
        doctest::Approx(19.973).epsilon(5e-4));

  std::vector<int> both{1, 4};
  CHECK(node_goodput(net, cg, both, 1) == doctest::Approx(0.5));
  CHECK(node_goodput(net, cg, both, 4) == doctest::Approx(0.0));
  CHECK(slot_goodput(net, cg, both) == doctest::Approx(0.5));

  std::vector<int> alone1{1}, alone4{4};
  CHECK(slot_goodput(net, cg, alone1) == doctest::Approx(1.0));
  CHECK(slot_goodput(net, cg, alone4) == doctest::Approx(1.0));
}

TEST_CASE("broadcast reuse arithmetic") {
  auto net = fixtures::two_cluster_net();
  auto cg = build_comm_graph(net);
  NodeSchedule s;
  s.slots = {{1, 4}};
  CHECK(broadcast_reuse(net, cg, s) == doctest::Approx(0.5));
  s.slots = {{1}, {4}};
  CHECK(broadcast_reuse(net, cg, s) == doctest::Approx(1.0));
  NodeSchedule empty;
  CHECK(broadcast_reuse(net, cg, empty) == 0.0);
}

TEST_CASE("node schedule validation catches each defect") {
  auto cg = build_comm_graph(fixtures::six_node_mesh());

  NodeSchedule good;
  good.slots = {{6, 4}, {2}, {1}, {5}, {3}};
  check_structure(cg, good);

  NodeSchedule adj;
  adj.slots = {{1, 2}, {3}, {4}, {5}, {6}};  // 1 and 2 are adjacent
  CHECK_FALSE(validate_node_schedule(cg, adj).structurally_valid);

  NodeSchedule shared;
  shared.slots = {{5, 6}, {1}, {2}, {3}, {4}};  // both hear 1 and 2
  CHECK_FALSE(validate_node_schedule(cg, shared).structurally_valid);

  NodeSchedule unknown;
  unknown.slots = {{7}, {1}, {2}, {3}, {4}, {5}, {6}};
  CHECK_FALSE(validate_node_schedule(cg, unknown).structurally_valid);

  NodeSchedule missing;
  missing.slots = {{1}, {2}, {3}, {4}, {5}};  // 6 never transmits
  CHECK_FALSE(validate_node_schedule(cg, missing).structurally_valid);

  NodeSchedule twice;
  twice.slots = {{1}, {2}, {3}, {4}, {5}, {6}, {1}};
  CHECK_FALSE(validate_node_schedule(cg, twice).structurally_valid);
}

TEST_CASE("deterministic two-hop coloring of the mesh") {
  auto cg = build_comm_graph(fixtures::six_node_mesh());
  auto s = broadcast_schedule(cg);
  REQUIRE(s.length() == 5);
  CHECK(s.slots[0] == std::vector<int>{6, 4});
  CHECK(s.slots[1] == std::vector<int>{2});
  CHECK(s.slots[2] == std::vector<int>{1});
  CHECK(s.slots[3] == std::vector<int>{5});
  CHECK(s.slots[4] == std::vector<int>{3});
  check_structure(cg, s);
}

TEST_CASE("sinr-guided node coloring is structurally sound") {
  auto p = fixtures::dense_params();
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    Rng gen(seed);
    auto net = gen_uniform_disk(gen, 30, 400.0, p);
    auto cg = build_comm_graph(net);
    Rng rng(seed + 1000);
    check_structure(cg, mass(net, cg, rng));
    check_structure(cg, broadcast_schedule(cg));
  }
}

TEST_CASE("neighborless nodes ride the first slot") {
  Network net;
  net.nodes = {{0, 0}, {50, 0}, {5000, 5000}};
  net.params = fixtures::make_params(10.0, -90.0, 20.0);
  auto cg = build_comm_graph(net);
  REQUIRE(cg.out[3].empty());
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Rng rng(seed);
    auto s = mass(net, cg, rng);
    check_structure(cg, s);
    CHECK(std::find(s.slots[0].begin(), s.slots[0].end(), 3) !=
          s.slots[0].end());
    CHECK(node_goodput(net, cg, s.slots[0], 3) == 0.0);
  }
}
