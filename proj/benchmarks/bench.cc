#include <benchmark/benchmark.h>

#include "stdma/broadcast.hpp"
#include "stdma/crp.hpp"
#include "stdma/linksched.hpp"
#include "stdma/net.hpp"
#include "stdma/rng.hpp"
#include "stdma/splitting.hpp"
#include "stdma/tokenbucket.hpp"

using namespace stdma;

namespace {

RadioParams dense() {
  RadioParams p;
  p.tx_power_mw = 10;
  p.noise_mw = 1e-9;
  p.path_loss_exp = 4;
  p.comm_thresh = 100;
  p.intf_thresh = 10;
  return p;
}

Network square_net(int n, std::uint64_t seed) {
  Rng rng(seed);
  return gen_uniform_square(rng, n, 750, dense());
}

void BM_CommGraph(benchmark::State& state) {
  auto net = square_net((int)state.range(0), 1);
  for (auto _ : state) benchmark::DoNotOptimize(build_comm_graph(net));
}
BENCHMARK(BM_CommGraph)->Arg(100)->Arg(200);

void BM_Labeler(benchmark::State& state) {
  auto net = square_net((int)state.range(0), 2);
  auto ug = undirected_of(build_comm_graph(net));
  for (auto _ : state) benchmark::DoNotOptimize(labeler(ug));
}
BENCHMARK(BM_Labeler)->Arg(200);

void BM_AlsReuse(benchmark::State& state) {
  auto net = square_net((int)state.range(0), 3);
  auto tg = build_two_tier(net);
  for (auto _ : state) benchmark::DoNotOptimize(als_reuse_colors(tg));
}
BENCHMARK(BM_AlsReuse)->Arg(100)->Arg(200);

void BM_Cfls(benchmark::State& state) {
  auto net = square_net((int)state.range(0), 4);
  auto cg = build_comm_graph(net);
  Rng rng(5);
  for (auto _ : state) benchmark::DoNotOptimize(cfls(net, cg, rng));
}
BENCHMARK(BM_Cfls)->Arg(100);

void BM_Sgls(benchmark::State& state) {
  Rng gen(6);
  auto net = gen_uniform_disk(gen, (int)state.range(0), 500, dense());
  auto sg = build_sinr_graph(net, build_comm_graph(net));
  Rng rng(7);
  for (auto _ : state) benchmark::DoNotOptimize(sgls(sg, rng));
}
BENCHMARK(BM_Sgls)->Arg(30)->Arg(60);

void BM_BroadcastSchedule(benchmark::State& state) {
  Rng gen(8);
  auto net = gen_uniform_disk(gen, 90, 500, dense());
  auto cg = build_comm_graph(net);
  for (auto _ : state) benchmark::DoNotOptimize(broadcast_schedule(cg));
}
BENCHMARK(BM_BroadcastSchedule);

void BM_Mass(benchmark::State& state) {
  Rng gen(9);
  auto net = gen_uniform_disk(gen, 90, 500, dense());
  auto cg = build_comm_graph(net);
  Rng rng(10);
  for (auto _ : state) benchmark::DoNotOptimize(mass(net, cg, rng));
}
BENCHMARK(BM_Mass);

void BM_CrpExpectations(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(crp_expectations(1.4));
}
BENCHMARK(BM_CrpExpectations);

void BM_MaximizeThroughput(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(maximize_throughput());
}
BENCHMARK(BM_MaximizeThroughput);

void BM_Splitting(benchmark::State& state) {
  Rng rng(11);
  auto arr = poisson_arrivals(rng, 0.5, 20000.0);
  SplitParams p;
  for (auto _ : state)
    benchmark::DoNotOptimize(run_splitting(arr, 20000, p, 1000));
}
BENCHMARK(BM_Splitting);

void BM_TokenDp(benchmark::State& state) {
  std::vector<int> refill((size_t)state.range(0), 3);
  std::vector<int> cap((size_t)state.range(0) - 1, 6);
  for (auto _ : state) benchmark::DoNotOptimize(token_dp(refill, cap));
}
BENCHMARK(BM_TokenDp)->Arg(4)->Arg(6);

void BM_BestShaping(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(best_shaping(3, 3, 6));
}
BENCHMARK(BM_BestShaping);

}  // namespace

BENCHMARK_MAIN();
