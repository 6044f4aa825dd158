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

#include "dgalab/metrics.hpp"

#include <cstdio>
#include <stdexcept>

namespace dgalab {

WorkStats& WorkStats::merge(const WorkStats& other) {
  useful += other.useful;
  useless += other.useless;
  rejected += other.rejected;
  invalidated += other.invalidated;
  processed_log.insert(processed_log.end(), other.processed_log.begin(),
                       other.processed_log.end());
  full_buffers_sent += other.full_buffers_sent;
  partial_buffers_sent += other.partial_buffers_sent;
  messages_sent += other.messages_sent;
  messages_received += other.messages_received;
  partial_buffer_messages += other.partial_buffer_messages;
  local_deliveries += other.local_deliveries;
  cache_hits += other.cache_hits;
  return *this;
}

std::pair<std::uint64_t, std::uint64_t> classify_work(
    std::span<const ProcessedTask> processed_log,
    std::span<const Dist> final_distances) {
  std::uint64_t useful = 0, useless = 0;
  for (const ProcessedTask& t : processed_log) {
    const Dist final_d = final_distances[t.vertex];
    if (t.distance == final_d) {
      ++useful;
    } else if (t.distance > final_d) {
      ++useless;
    } else {
      throw std::logic_error(
          "classify_work: processed task below final distance (vertex " +
          std::to_string(t.vertex) + ", " + std::to_string(t.distance) + " < " +
          std::to_string(final_d) + ")");
    }
  }
  return {useful, useless};
}

double teps(std::uint64_t edge_count_reachable, VTime completion_time) {
  if (completion_time == 0) return 0.0;
  return static_cast<double>(edge_count_reachable) /
         static_cast<double>(completion_time);
}

std::string csv_header() {
  return "scale,edgefactor,max_weight,num_ranks,algorithm,delta,"
         "coalescing_size,ee,el,flush_period,cache_capacity,priority_messages,"
         "seed,source,completion_time,teps,useful,useless,rejected,"
         "invalidated,messages_sent,messages_received,full_buffers,"
         "partial_buffers";
}

std::string to_csv(const CsvRow& r) {
  char teps_buf[64];
  std::snprintf(teps_buf, sizeof(teps_buf), "%.9g", r.teps);
  std::string out;
  out += std::to_string(r.scale) + ',';
  out += std::to_string(r.edgefactor) + ',';
  out += std::to_string(r.max_weight) + ',';
  out += std::to_string(r.num_ranks) + ',';
  out += r.algorithm + ',';
  out += std::to_string(r.delta) + ',';
  out += std::to_string(r.coalescing_size) + ',';
  out += std::to_string(r.ee) + ',';
  out += std::to_string(r.el) + ',';
  out += std::to_string(r.flush_period) + ',';
  out += std::to_string(r.cache_capacity) + ',';
  out += std::string(r.priority_messages ? "1" : "0") + ',';
  out += std::to_string(r.seed) + ',';
  out += std::to_string(r.source) + ',';
  out += std::to_string(r.completion_time) + ',';
  out += std::string(teps_buf) + ',';
  out += std::to_string(r.useful) + ',';
  out += std::to_string(r.useless) + ',';
  out += std::to_string(r.rejected) + ',';
  out += std::to_string(r.invalidated) + ',';
  out += std::to_string(r.messages_sent) + ',';
  out += std::to_string(r.messages_received) + ',';
  out += std::to_string(r.full_buffers) + ',';
  out += std::to_string(r.partial_buffers);
  return out;
}

}  // namespace dgalab
