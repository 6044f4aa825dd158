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

#include "dgalab/simnet.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>

namespace dgalab::simnet {

VTime delivery_delay(std::uint64_t bytes, const NetConfig& cfg) {
  if (bytes < 1) throw std::invalid_argument("delivery_delay: empty payload");
  VTime delay = cfg.base_latency + cfg.send_overhead + bytes * cfg.byte_cost;
  if (bytes > cfg.eager_threshold_bytes) {
    const std::uint64_t chunks =
        (bytes + cfg.eager_threshold_bytes - 1) / cfg.eager_threshold_bytes;
    delay += cfg.rendezvous_rtt + (chunks - 1) * cfg.chunk_penalty;
  }
  return delay;
}

Network::Network(RankId num_ranks, const NetConfig& cfg)
    : num_ranks_(num_ranks), cfg_(cfg) {
  if (num_ranks < 1) throw std::invalid_argument("Network: need at least one rank");
  if (cfg.eager_threshold_bytes == 0)
    throw std::invalid_argument("Network: eager_threshold_bytes must be positive");
  normal_.resize(num_ranks);
  priority_.resize(num_ranks);
  last_deliver_.assign(num_ranks, std::vector<VTime>(num_ranks, 0));
  barrier_entered_.assign(num_ranks, false);
}

void Network::advance_to(VTime t) {
  if (t < now_) throw std::logic_error("Network: clock may not move backwards");
  now_ = t;
}

void Network::submit_send(RankId src, RankId dst,
                          std::vector<std::uint8_t> payload, bool priority) {
  if (src >= num_ranks_ || dst >= num_ranks_)
    throw std::out_of_range("submit_send: rank out of range");
  if (payload.empty()) throw std::invalid_argument("submit_send: empty payload");

  Envelope env;
  env.src = src;
  env.dst = dst;
  env.inject_time = now_;
  env.deliver_time = std::max(now_ + delivery_delay(payload.size(), cfg_),
                              last_deliver_[src][dst]);
  env.priority = priority;
  env.seq = next_seq_++;
  env.payload = std::move(payload);
  last_deliver_[src][dst] = env.deliver_time;

  (priority ? priority_ : normal_)[dst].push({env.deliver_time, env.seq});
  bodies_.emplace_back(std::move(env));
  ++in_flight_;
  ++submitted_total_;
}

std::optional<Envelope> Network::step() {
  const QueueEntry* best = nullptr;
  RankId best_dst = 0;
  bool best_priority = false;
  for (RankId dst = 0; dst < num_ranks_; ++dst) {
    for (const bool pri : {true, false}) {
      const Heap& heap = (pri ? priority_ : normal_)[dst];
      if (heap.empty()) continue;
      if (best == nullptr || *best > heap.top()) {
        best = &heap.top();
        best_dst = dst;
        best_priority = pri;
      }
    }
  }
  if (best == nullptr) {
    if (barrier_pending()) {
      std::string waiting;
      for (RankId r = 0; r < num_ranks_; ++r)
        if (!barrier_entered_[r]) waiting += " " + std::to_string(r);
      throw std::runtime_error(
          "simnet: event queue idle with a partial barrier; missing ranks:" +
          waiting);
    }
    return std::nullopt;
  }
  advance_to(best->deliver_time);
  return take(best_dst, best_priority);
}

std::optional<Envelope> Network::take(RankId dst, bool priority) {
  Heap& heap = (priority ? priority_ : normal_)[dst];
  const std::uint64_t seq = heap.top().seq;
  heap.pop();
  Envelope env = std::move(*bodies_[seq]);
  bodies_[seq].reset();
  --in_flight_;
  ++delivered_total_;
  return env;
}

std::optional<Envelope> Network::poll(RankId dst) {
  if (dst >= num_ranks_) throw std::out_of_range("poll: rank out of range");
  for (const bool pri : {true, false}) {
    Heap& heap = (pri ? priority_ : normal_)[dst];
    if (!heap.empty() && heap.top().deliver_time <= now_) return take(dst, pri);
  }
  return std::nullopt;
}

bool Network::has_deliverable(RankId dst) const {
  for (const bool pri : {true, false}) {
    const Heap& heap = (pri ? priority_ : normal_)[dst];
    if (!heap.empty() && heap.top().deliver_time <= now_) return true;
  }
  return false;
}

std::optional<VTime> Network::next_event_time() const {
  std::optional<VTime> t;
  for (RankId dst = 0; dst < num_ranks_; ++dst) {
    for (const bool pri : {true, false}) {
      const Heap& heap = (pri ? priority_ : normal_)[dst];
      if (!heap.empty() && (!t || heap.top().deliver_time < *t))
        t = heap.top().deliver_time;
    }
  }
  return t;
}

void Network::barrier_enter(RankId r) {
  if (r >= num_ranks_) throw std::out_of_range("barrier_enter: rank out of range");
  if (barrier_release_time_) {
    // Previous barrier finished; this entry opens a new one.
    if (now_ < *barrier_release_time_)
      throw std::logic_error("barrier_enter: previous barrier not yet released");
    barrier_release_time_.reset();
    std::fill(barrier_entered_.begin(), barrier_entered_.end(), false);
    barrier_waiting_ = 0;
    barrier_max_entry_ = 0;
  }
  if (barrier_entered_[r]) throw std::logic_error("barrier_enter: duplicate entry");
  barrier_entered_[r] = true;
  ++barrier_waiting_;
  barrier_max_entry_ = std::max(barrier_max_entry_, now_);
  if (barrier_waiting_ == num_ranks_)
    barrier_release_time_ = barrier_max_entry_ + cfg_.barrier_latency;
}

bool Network::barrier_complete() const {
  return barrier_release_time_ && now_ >= *barrier_release_time_;
}

void Network::barrier_all() {
  for (RankId r = 0; r < num_ranks_; ++r) barrier_enter(r);
  advance_to(std::max(now_, *barrier_release_time_));
}

}  // namespace dgalab::simnet
