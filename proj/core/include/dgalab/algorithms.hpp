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

#ifndef DGALAB_ALGORITHMS_HPP
#define DGALAB_ALGORITHMS_HPP

#include <span>
#include <vector>

#include "dgalab/graph.hpp"
#include "dgalab/metrics.hpp"
#include "dgalab/runtime.hpp"
#include "dgalab/types.hpp"

namespace dgalab {

struct RunResult {
  std::vector<Dist> distances;  // global, kInfDist when unreachable
  WorkStats stats;
};

// Distributed-control SSSP: each rank pops from a local (distance, vertex)
// min-queue, relaxes, and ships updates as active messages; the handler
// re-queues improvements and rejects the rest. Exact distances for any
// runtime configuration.
RunResult dc_sssp(const std::vector<LocalGraph>& parts, Vertex source,
                  const RuntimeConfig& cfg);

// dc_sssp with every weight forced to 1; distances are hop counts.
RunResult dc_bfs(const std::vector<LocalGraph>& parts, Vertex source,
                 const RuntimeConfig& cfg);

// Bucketed SSSP: per globally-minimal non-empty bucket (agreed by a
// reduction, then a barrier), light edges (w < Δ) are relaxed to a fixpoint
// and heavy edges once. stats.buckets_processed counts rounds that
// processed at least one live task.
RunResult delta_stepping(const std::vector<LocalGraph>& parts, Vertex source,
                         const RuntimeConfig& cfg);

// Sequential binary-heap Dijkstra on the unpartitioned edge list.
std::vector<Dist> dijkstra_reference(const EdgeList& edges, Vertex source);

// Exact elementwise equality, infinities included.
bool validate(std::span<const Dist> distances, std::span<const Dist> oracle);

// Directed edges whose source vertex was reached (the TEPS numerator).
std::uint64_t reachable_edge_count(const std::vector<LocalGraph>& parts,
                                   std::span<const Dist> distances);

}  // namespace dgalab

#endif  // DGALAB_ALGORITHMS_HPP
