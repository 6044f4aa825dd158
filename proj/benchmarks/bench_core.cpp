/*
   Copyright (c) 2026 The dgalab authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include <benchmark/benchmark.h>

#include "dgalab/algorithms.hpp"
#include "dgalab/graph.hpp"
#include "dgalab/message.hpp"
#include "dgalab/runtime.hpp"
#include "dgalab/simnet.hpp"

namespace {

using namespace dgalab;

void BM_KroneckerGenerate(benchmark::State& state) {
  const unsigned scale = static_cast<unsigned>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(generate_kronecker(scale, 16, 100, 1));
  state.SetItemsProcessed(state.iterations() * (1ll << scale) * 16);
}
BENCHMARK(BM_KroneckerGenerate)->Arg(10)->Arg(14);

void BM_Partition1D(benchmark::State& state) {
  const EdgeList graph = generate_kronecker(12, 16, 100, 1);
  for (auto _ : state)
    benchmark::DoNotOptimize(partition_1d(graph, static_cast<RankId>(state.range(0))));
  state.SetItemsProcessed(state.iterations() * graph.edges.size());
}
BENCHMARK(BM_Partition1D)->Arg(1)->Arg(8);

void BM_WireRoundTrip(benchmark::State& state) {
  std::vector<DistanceMessage> msgs(state.range(0));
  for (std::size_t i = 0; i < msgs.size(); ++i)
    msgs[i] = {i, static_cast<Dist>(i)};
  for (auto _ : state) {
    const auto bytes = encode_messages(msgs);
    benchmark::DoNotOptimize(decode_messages(bytes));
  }
  state.SetBytesProcessed(state.iterations() * msgs.size() * kWireRecordBytes);
}
BENCHMARK(BM_WireRoundTrip)->Arg(100)->Arg(43000);

void BM_DeliveryDelay(benchmark::State& state) {
  simnet::NetConfig cfg;
  cfg.byte_cost = 1;
  std::uint64_t bytes = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(simnet::delivery_delay(bytes, cfg));
    bytes = bytes % 1048576 + 997;
  }
}
BENCHMARK(BM_DeliveryDelay);

void BM_ReductionCache(benchmark::State& state) {
  ReductionCache cache(static_cast<std::uint64_t>(state.range(0)));
  std::uint64_t v = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(cache.admit({v % 4096, static_cast<Dist>(v % 97)}));
    ++v;
  }
}
BENCHMARK(BM_ReductionCache)->Arg(64)->Arg(4096);

void BM_DcSssp(benchmark::State& state) {
  const EdgeList graph = generate_kronecker(10, 16, 100, 7);
  const auto parts = partition_1d(graph, static_cast<RankId>(state.range(0)));
  RuntimeConfig cfg;
  cfg.num_ranks = static_cast<RankId>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(dc_sssp(parts, 1, cfg));
  state.SetItemsProcessed(state.iterations() * graph.edges.size());
}
BENCHMARK(BM_DcSssp)->Arg(1)->Arg(4);

void BM_DeltaStepping(benchmark::State& state) {
  const EdgeList graph = generate_kronecker(10, 16, 100, 7);
  const auto parts = partition_1d(graph, 4);
  RuntimeConfig cfg;
  cfg.num_ranks = 4;
  cfg.delta = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(delta_stepping(parts, 1, cfg));
  state.SetItemsProcessed(state.iterations() * graph.edges.size());
}
BENCHMARK(BM_DeltaStepping)->Arg(1)->Arg(10)->Arg(100);

}  // namespace

BENCHMARK_MAIN();
