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

#ifndef DGALAB_RUNTIME_HPP
#define DGALAB_RUNTIME_HPP

#include <algorithm>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "dgalab/message.hpp"
#include "dgalab/simnet.hpp"
#include "dgalab/types.hpp"

namespace dgalab {

// The tunable parameter space of the runtime. Times are in virtual-time
// units; one worker loop iteration costs exactly one unit.
struct RuntimeConfig {
  std::uint64_t coalescing_size = 1024;  // messages per coalescing buffer
  VTime flush_period = 16;               // between partial-buffer flush sweeps
  std::uint64_t ee = 22;                 // loop iterations between progress calls
  std::uint64_t el = 8;                  // queue-size threshold for eager progress
  std::uint64_t cache_capacity = 0;      // reduction-cache slots, 0 disables
  bool priority_messages = false;
  bool self_send_check = true;
  std::uint64_t delta = 10;              // Δ-stepping bucket width
  VTime horizon = 50'000'000;            // livelock guard
  simnet::NetConfig net;
  std::uint64_t seed = 1;
  RankId num_ranks = 1;

  std::uint64_t priority_capacity() const {
    return std::max<std::uint64_t>(1, coalescing_size / 16);
  }
  void check() const;  // faults on out-of-range values
};

// Send-side write-through filter, direct-mapped by vertex id. A message is
// dropped iff its slot already holds the same vertex at a distance no
// larger than the message's; every passed message updates the slot.
class ReductionCache {
 public:
  explicit ReductionCache(std::uint64_t capacity);

  bool enabled() const { return !slots_.empty(); }
  // true = pass (slot updated), false = drop.
  bool admit(const DistanceMessage& msg);
  void reset();

 private:
  struct Slot {
    Vertex vertex = 0;
    Dist distance = 0;
    bool used = false;
  };
  std::vector<Slot> slots_;
};

// Per-rank termination-detection input: cumulative transported-message
// counters plus the last globally observed pair.
struct EpochState {
  std::uint64_t observed_sent = 0;
  std::uint64_t observed_received = 0;
  std::uint64_t rounds = 0;
};

// Cooperative per-rank task source driven by run_epoch. step() performs one
// loop iteration and must only be called while has_work(); pending() is the
// local queue size the eager-progress limit is tested against.
class Worker {
 public:
  virtual ~Worker() = default;
  virtual bool has_work() const = 0;
  virtual void step() = 0;
  virtual std::uint64_t pending() const = 0;
};

// Per-rank runtime counters, merged into WorkStats after a run.
struct RankCounters {
  std::uint64_t messages_sent = 0;      // transported, incl. buffered self-sends
  std::uint64_t messages_received = 0;  // transported, handled by progress
  std::uint64_t full_buffers = 0;
  std::uint64_t partial_buffers = 0;
  std::uint64_t partial_buffer_messages = 0;
  std::uint64_t local_deliveries = 0;   // handler ran without transport
  std::uint64_t cache_hits = 0;         // messages dropped by the cache
  std::uint64_t progress_calls = 0;
};

// Active-message runtime: per-destination coalescing with a dedicated
// small priority lane, optional reduction cache, explicit progress, and
// epochs closed by counting-based termination detection.
class AmRuntime {
 public:
  using Handler = std::function<void(RankId rank, const DistanceMessage& msg)>;

  AmRuntime(const RuntimeConfig& cfg, simnet::Network& net);

  const RuntimeConfig& config() const { return cfg_; }
  simnet::Network& net() { return net_; }
  RankId num_ranks() const { return net_.num_ranks(); }

  void set_handler(Handler handler) { handler_ = std::move(handler); }

  // Appends to the destination's coalescing buffer; a buffer that reaches
  // capacity is serialized and submitted at once. With self_send_check on,
  // messages to the caller's own rank run the handler directly and touch
  // no transport counters. Faults outside an open epoch.
  void am_send(RankId src, const DistanceMessage& msg, RankId dst,
               bool priority = false);

  // Runs the handler on this rank without any transport (seeding,
  // self-send short cut).
  void deliver_local(RankId rank, const DistanceMessage& msg);

  // Submits every non-empty buffer on this rank as a partial flush.
  void flush_partials(RankId rank);

  // Drains everything currently deliverable to this rank, faulting on a
  // payload that is not whole 12-byte records. Returns messages handled.
  std::size_t progress(RankId rank);

  // Drives all ranks cooperatively until termination is detected: one loop
  // iteration per rank per virtual-time unit, progress every ee-th
  // iteration or whenever pending() < el, partial flushes every
  // flush_period, draining ranks flush+progress every unit. Faults if the
  // clock passes the horizon.
  void run_epoch(std::span<Worker* const> workers);

  // One counting round: true when two consecutive rounds observe the same
  // (Σsent, Σreceived) with the sums equal and no rank holding local work.
  bool detect_termination(std::span<Worker* const> workers);

  void barrier() { net_.barrier_all(); }
  std::uint64_t allreduce_min(std::span<const std::uint64_t> values);

  // Epoch scope. run_epoch opens and closes its own; manual control is for
  // drivers that interleave sends and progress themselves.
  void open_epoch();
  void close_epoch();

  const RankCounters& counters(RankId rank) const { return state_[rank].counters; }
  const EpochState& epoch_state() const { return epoch_; }
  bool epoch_open() const { return epoch_open_; }
  bool buffers_empty(RankId rank) const;

 private:
  struct RankState {
    std::vector<std::vector<DistanceMessage>> normal;    // per destination
    std::vector<std::vector<DistanceMessage>> priority;  // per destination
    ReductionCache cache{0};
    RankCounters counters;
  };

  void submit_buffer(RankId src, RankId dst, std::vector<DistanceMessage>& buf,
                     bool priority, bool full);

  RuntimeConfig cfg_;
  simnet::Network& net_;
  Handler handler_;
  std::vector<RankState> state_;
  EpochState epoch_;
  bool epoch_open_ = false;
};

}  // namespace dgalab

#endif  // DGALAB_RUNTIME_HPP
