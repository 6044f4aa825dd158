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

#include "dgalab/runtime.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace dgalab {

void RuntimeConfig::check() const {
  if (coalescing_size < 1)
    throw std::invalid_argument("rt.coalescing_size must be >= 1");
  if (ee < 1) throw std::invalid_argument("rt.ee must be >= 1");
  if (delta < 1) throw std::invalid_argument("rt.delta must be >= 1");
  if (horizon < 1) throw std::invalid_argument("rt.horizon must be >= 1");
  if (num_ranks < 1) throw std::invalid_argument("num_ranks must be >= 1");
  if (net.eager_threshold_bytes == 0)
    throw std::invalid_argument("net.eager_threshold_bytes must be positive");
}

ReductionCache::ReductionCache(std::uint64_t capacity) : slots_(capacity) {}

bool ReductionCache::admit(const DistanceMessage& msg) {
  Slot& slot = slots_[msg.vertex % slots_.size()];
  if (slot.used && slot.vertex == msg.vertex && slot.distance <= msg.distance)
    return false;
  slot = {msg.vertex, msg.distance, true};
  return true;
}

void ReductionCache::reset() {
  for (Slot& s : slots_) s.used = false;
}

AmRuntime::AmRuntime(const RuntimeConfig& cfg, simnet::Network& net)
    : cfg_(cfg), net_(net) {
  cfg_.check();
  if (cfg_.num_ranks != net.num_ranks())
    throw std::invalid_argument("AmRuntime: config and network disagree on rank count");
  state_.resize(net.num_ranks());
  for (RankState& s : state_) {
    s.normal.resize(net.num_ranks());
    s.priority.resize(net.num_ranks());
    s.cache = ReductionCache(cfg_.cache_capacity);
  }
}

void AmRuntime::am_send(RankId src, const DistanceMessage& msg, RankId dst,
                        bool priority) {
  if (!epoch_open_) throw std::logic_error("am_send: epoch is closed");
  if (src >= num_ranks() || dst >= num_ranks())
    throw std::out_of_range("am_send: rank out of range");

  RankState& s = state_[src];
  if (cfg_.self_send_check && dst == src) {
    deliver_local(src, msg);
    return;
  }
  if (s.cache.enabled() && !s.cache.admit(msg)) {
    ++s.counters.cache_hits;
    return;
  }
  const bool pri = priority && cfg_.priority_messages;
  std::vector<DistanceMessage>& buf = (pri ? s.priority : s.normal)[dst];
  buf.push_back(msg);
  const std::uint64_t cap = pri ? cfg_.priority_capacity() : cfg_.coalescing_size;
  if (buf.size() >= cap) submit_buffer(src, dst, buf, pri, /*full=*/!pri);
}

void AmRuntime::deliver_local(RankId rank, const DistanceMessage& msg) {
  if (!handler_) throw std::logic_error("deliver_local: no handler registered");
  ++state_[rank].counters.local_deliveries;
  handler_(rank, msg);
}

void AmRuntime::submit_buffer(RankId src, RankId dst,
                              std::vector<DistanceMessage>& buf, bool priority,
                              bool full) {
  if (buf.empty()) return;
  net_.submit_send(src, dst, encode_messages(buf), priority);
  RankCounters& c = state_[src].counters;
  c.messages_sent += buf.size();
  if (full) {
    ++c.full_buffers;
  } else {
    ++c.partial_buffers;
    c.partial_buffer_messages += buf.size();
  }
  buf.clear();
}

void AmRuntime::flush_partials(RankId rank) {
  RankState& s = state_[rank];
  for (RankId dst = 0; dst < num_ranks(); ++dst) {
    submit_buffer(rank, dst, s.priority[dst], /*priority=*/true, /*full=*/false);
    submit_buffer(rank, dst, s.normal[dst], /*priority=*/false, /*full=*/false);
  }
}

std::size_t AmRuntime::progress(RankId rank) {
  if (!handler_) throw std::logic_error("progress: no handler registered");
  RankCounters& c = state_[rank].counters;
  ++c.progress_calls;
  std::size_t handled = 0;
  while (std::optional<simnet::Envelope> env = net_.poll(rank)) {
    for (const DistanceMessage& m : decode_messages(env->payload)) {
      ++c.messages_received;
      ++handled;
      handler_(rank, m);
    }
  }
  return handled;
}

bool AmRuntime::buffers_empty(RankId rank) const {
  const RankState& s = state_[rank];
  for (RankId dst = 0; dst < num_ranks(); ++dst)
    if (!s.normal[dst].empty() || !s.priority[dst].empty()) return false;
  return true;
}

void AmRuntime::open_epoch() {
  std::uint64_t sent = 0, received = 0;
  for (const RankState& s : state_) {
    sent += s.counters.messages_sent;
    received += s.counters.messages_received;
  }
  epoch_ = EpochState{sent, received, 0};
  epoch_open_ = true;
}

void AmRuntime::close_epoch() { epoch_open_ = false; }

bool AmRuntime::detect_termination(std::span<Worker* const> workers) {
  std::uint64_t sent = 0, received = 0;
  bool any_work = false;
  for (RankId r = 0; r < num_ranks(); ++r) {
    sent += state_[r].counters.messages_sent;
    received += state_[r].counters.messages_received;
    if (r < workers.size() && workers[r]->has_work()) any_work = true;
    if (!buffers_empty(r)) any_work = true;
  }
  const bool stable =
      sent == epoch_.observed_sent && received == epoch_.observed_received;
  epoch_.observed_sent = sent;
  epoch_.observed_received = received;
  ++epoch_.rounds;
  return stable && sent == received && !any_work;
}

void AmRuntime::run_epoch(std::span<Worker* const> workers) {
  if (workers.size() != num_ranks())
    throw std::invalid_argument("run_epoch: one worker per rank required");
  if (!handler_) throw std::logic_error("run_epoch: no handler registered");

  open_epoch();
  const RankId p = num_ranks();
  const VTime start = net_.now();
  std::vector<std::uint64_t> iters(p, 0);
  VTime next_flush = start + cfg_.flush_period;

  while (true) {
    if (net_.now() - start > cfg_.horizon) {
      std::string diag = "run_epoch: livelock guard tripped at t=" +
                         std::to_string(net_.now()) +
                         " (epoch start " + std::to_string(start) + ");";
      diag += " in_flight=" + std::to_string(net_.in_flight());
      for (RankId r = 0; r < p; ++r)
        diag += " rank" + std::to_string(r) +
                (workers[r]->has_work() ? "=busy" : "=idle");
      close_epoch();
      throw std::runtime_error(diag);
    }

    bool worked = false;
    for (RankId r = 0; r < p; ++r) {
      Worker& w = *workers[r];
      if (w.has_work()) {
        worked = true;
        w.step();
        ++iters[r];
        if (iters[r] % cfg_.ee == 0 || w.pending() < cfg_.el) progress(r);
      } else {
        // end-of-epoch draining
        flush_partials(r);
        progress(r);
      }
    }
    if (net_.now() >= next_flush) {
      for (RankId r = 0; r < p; ++r) flush_partials(r);
      next_flush = net_.now() + cfg_.flush_period;
    }
    if (worked) {
      net_.advance_to(net_.now() + 1);
      continue;
    }

    bool any_work = false;
    for (RankId r = 0; r < p; ++r) any_work = any_work || workers[r]->has_work();
    if (any_work) continue;  // a drain-pass progress revived someone

    if (detect_termination(workers)) break;
    if (net_.in_flight() > 0) {
      const std::optional<VTime> t = net_.next_event_time();
      if (t && *t > net_.now()) net_.advance_to(*t);
      // Anything already deliverable is consumed by the next drain pass.
    }
  }
  close_epoch();
}

std::uint64_t AmRuntime::allreduce_min(std::span<const std::uint64_t> values) {
  if (values.size() != num_ranks())
    throw std::invalid_argument("allreduce_min: one value per rank required");
  net_.barrier_all();
  return *std::min_element(values.begin(), values.end());
}

}  // namespace dgalab
