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

#ifndef DGALAB_SIMNET_HPP
#define DGALAB_SIMNET_HPP

#include <cstdint>
#include <optional>
#include <queue>
#include <vector>

#include "dgalab/types.hpp"

namespace dgalab::simnet {

// Additive-latency transport cost model. Payloads above
// eager_threshold_bytes pay a rendezvous round trip plus a per-chunk
// penalty for every additional threshold-sized chunk.
struct NetConfig {
  VTime base_latency = 100;
  VTime byte_cost = 0;
  VTime send_overhead = 10;
  std::uint64_t eager_threshold_bytes = 524288;
  VTime rendezvous_rtt = 200;
  VTime chunk_penalty = 50;
  VTime barrier_latency = 200;
};

VTime delivery_delay(std::uint64_t bytes, const NetConfig& cfg);

struct Envelope {
  RankId src = 0;
  RankId dst = 0;
  std::vector<std::uint8_t> payload;
  VTime inject_time = 0;
  VTime deliver_time = 0;
  bool priority = false;
  std::uint64_t seq = 0;
};

// Deterministic event-queue transport between ranks. All state is owned by
// the single simulation driver; the virtual clock only moves forward.
//
// Delivery order is (deliver_time, seq); per-(src,dst) delivery times are
// clamped non-decreasing so each pair is strictly FIFO. Priority envelopes
// are handed out ahead of normal ones among those already deliverable.
class Network {
 public:
  Network(RankId num_ranks, const NetConfig& cfg);

  RankId num_ranks() const { return num_ranks_; }
  const NetConfig& config() const { return cfg_; }

  VTime now() const { return now_; }
  void advance_to(VTime t);

  void submit_send(RankId src, RankId dst, std::vector<std::uint8_t> payload,
                   bool priority = false);

  // Pops the earliest pending envelope and advances the clock to its
  // deliver_time. Empty queue: reports idle, or faults on a partial
  // barrier (deadlock).
  std::optional<Envelope> step();

  // Pops the earliest envelope for dst with deliver_time <= now; priority
  // envelopes first. Does not advance the clock.
  std::optional<Envelope> poll(RankId dst);
  bool has_deliverable(RankId dst) const;

  std::uint64_t in_flight() const { return in_flight_; }
  std::uint64_t submitted_total() const { return submitted_total_; }
  std::uint64_t delivered_total() const { return delivered_total_; }
  std::optional<VTime> next_event_time() const;

  // Barrier: entries are stamped with the current clock; once every rank
  // has entered, release happens at max(entry) + barrier_latency.
  void barrier_enter(RankId r);
  bool barrier_pending() const { return barrier_waiting_ > 0 && !barrier_release_time_; }
  std::optional<VTime> barrier_release_time() const { return barrier_release_time_; }
  bool barrier_complete() const;
  // Enters all ranks at once and advances the clock past the release.
  void barrier_all();

 private:
  struct QueueEntry {
    VTime deliver_time;
    std::uint64_t seq;
    bool operator>(const QueueEntry& o) const {
      return deliver_time != o.deliver_time ? deliver_time > o.deliver_time
                                            : seq > o.seq;
    }
  };
  using Heap =
      std::priority_queue<QueueEntry, std::vector<QueueEntry>, std::greater<>>;

  std::optional<Envelope> take(RankId dst, bool priority);

  RankId num_ranks_;
  NetConfig cfg_;
  VTime now_ = 0;
  std::uint64_t next_seq_ = 0;
  std::uint64_t in_flight_ = 0;
  std::uint64_t submitted_total_ = 0;
  std::uint64_t delivered_total_ = 0;

  // Envelope bodies keyed by seq, heaps per (dst, lane).
  std::vector<std::optional<Envelope>> bodies_;
  std::vector<Heap> normal_;
  std::vector<Heap> priority_;
  std::vector<std::vector<VTime>> last_deliver_;  // [src][dst]

  std::uint64_t barrier_waiting_ = 0;
  std::vector<bool> barrier_entered_;
  VTime barrier_max_entry_ = 0;
  std::optional<VTime> barrier_release_time_;
};

}  // namespace dgalab::simnet

#endif  // DGALAB_SIMNET_HPP
