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

#ifndef DGALAB_METRICS_HPP
#define DGALAB_METRICS_HPP

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dgalab/types.hpp"

namespace dgalab {

struct ProcessedTask {
  Vertex vertex = 0;
  Dist distance = 0;
};

// Work-accounting counters for one run. rejected counts deliveries that do
// not improve the recorded distance; invalidated counts popped tasks whose
// distance had expired in the queue; useful/useless classify processed
// tasks against the final distances after the run.
struct WorkStats {
  std::uint64_t useful = 0;
  std::uint64_t useless = 0;
  std::uint64_t rejected = 0;
  std::uint64_t invalidated = 0;
  std::vector<ProcessedTask> processed_log;

  std::uint64_t full_buffers_sent = 0;
  std::uint64_t partial_buffers_sent = 0;
  std::uint64_t messages_sent = 0;
  std::uint64_t messages_received = 0;
  std::uint64_t partial_buffer_messages = 0;  // carried by partial flushes
  std::uint64_t local_deliveries = 0;         // handler ran without transport
  std::uint64_t cache_hits = 0;

  VTime completion_time = 0;
  double teps = 0.0;
  std::uint64_t buckets_processed = 0;  // Δ-stepping rounds with live work

  // Commutative merge of per-rank shards.
  WorkStats& merge(const WorkStats& other);
};

// Splits the processed log into (useful, useless) against the final
// distances. A processed task below its final distance is impossible and
// faults.
std::pair<std::uint64_t, std::uint64_t> classify_work(
    std::span<const ProcessedTask> processed_log, std::span<const Dist> final_distances);

// Reachable edges per virtual-time unit; 0 on a zero denominator.
double teps(std::uint64_t edge_count_reachable, VTime completion_time);

// One CSV row of the experiment output. Column order is fixed.
struct CsvRow {
  std::uint32_t scale = 0;
  std::uint32_t edgefactor = 0;
  std::uint32_t max_weight = 0;
  std::uint32_t num_ranks = 0;
  std::string algorithm;
  std::uint64_t delta = 0;
  std::uint64_t coalescing_size = 0;
  std::uint64_t ee = 0;
  std::uint64_t el = 0;
  std::uint64_t flush_period = 0;
  std::uint64_t cache_capacity = 0;
  bool priority_messages = false;
  std::uint64_t seed = 0;
  Vertex source = 0;
  VTime completion_time = 0;
  double teps = 0.0;
  std::uint64_t useful = 0;
  std::uint64_t useless = 0;
  std::uint64_t rejected = 0;
  std::uint64_t invalidated = 0;
  std::uint64_t messages_sent = 0;
  std::uint64_t messages_received = 0;
  std::uint64_t full_buffers = 0;
  std::uint64_t partial_buffers = 0;
};

std::string csv_header();
std::string to_csv(const CsvRow& row);

}  // namespace dgalab

#endif  // DGALAB_METRICS_HPP
