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

#include "dgalab/algorithms.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>
#include <tuple>

namespace dgalab {

namespace {

struct Task {
  Dist distance = 0;
  Vertex vertex = 0;
};

struct TaskGreater {
  bool operator()(const Task& a, const Task& b) const {
    return std::tie(a.distance, a.vertex) > std::tie(b.distance, b.vertex);
  }
};

using TaskQueue = std::priority_queue<Task, std::vector<Task>, TaskGreater>;

void check_source(const std::vector<LocalGraph>& parts, Vertex source) {
  if (parts.empty()) throw std::invalid_argument("run: no graph fragments");
  if (source >= parts.front().n)
    throw std::invalid_argument("run: source vertex out of range");
}

void fold_runtime_counters(const AmRuntime& rt, WorkStats& stats) {
  for (RankId r = 0; r < rt.num_ranks(); ++r) {
    const RankCounters& c = rt.counters(r);
    stats.messages_sent += c.messages_sent;
    stats.messages_received += c.messages_received;
    stats.full_buffers_sent += c.full_buffers;
    stats.partial_buffers_sent += c.partial_buffers;
    stats.partial_buffer_messages += c.partial_buffer_messages;
    stats.local_deliveries += c.local_deliveries;
    stats.cache_hits += c.cache_hits;
  }
}

std::vector<Dist> gather_distances(const std::vector<LocalGraph>& parts,
                                   const std::vector<std::vector<Dist>>& tentative) {
  std::vector<Dist> out(parts.front().n, kInfDist);
  for (std::size_t r = 0; r < parts.size(); ++r)
    std::copy(tentative[r].begin(), tentative[r].end(), out.begin() + parts[r].lo);
  return out;
}

void finish_stats(const std::vector<LocalGraph>& parts, const AmRuntime& rt,
                  VTime end_time, RunResult& result) {
  fold_runtime_counters(rt, result.stats);
  const auto [useful, useless] =
      classify_work(result.stats.processed_log, result.distances);
  result.stats.useful = useful;
  result.stats.useless = useless;
  result.stats.completion_time = end_time;
  result.stats.teps =
      teps(reachable_edge_count(parts, result.distances), end_time);
}

// ---------------------------------------------------------------------------
// Distributed control

struct DcRankState {
  const LocalGraph* graph = nullptr;
  std::vector<Dist> tentative;
  TaskQueue queue;
  WorkStats stats;
};

class DcWorker final : public Worker {
 public:
  DcWorker(AmRuntime& rt, RankId rank, DcRankState& st, RankId num_ranks)
      : rt_(rt), rank_(rank), st_(st), num_ranks_(num_ranks) {}

  bool has_work() const override { return !st_.queue.empty(); }
  std::uint64_t pending() const override { return st_.queue.size(); }

  void step() override {
    const Task task = st_.queue.top();
    st_.queue.pop();
    const LocalGraph& g = *st_.graph;
    if (task.distance > st_.tentative[task.vertex - g.lo]) {
      ++st_.stats.invalidated;
      return;
    }
    st_.stats.processed_log.push_back({task.vertex, task.distance});
    const auto targets = g.neighbors(task.vertex);
    const auto weights = g.edge_weights(task.vertex);
    for (std::size_t i = 0; i < targets.size(); ++i) {
      const std::uint64_t nd =
          static_cast<std::uint64_t>(task.distance) + weights[i];
      if (nd >= kInfDist) continue;
      // A candidate beating everything still queued locally is flagged as
      // priority traffic.
      const bool pri = rt_.config().priority_messages &&
                       (st_.queue.empty() || nd < st_.queue.top().distance);
      rt_.am_send(rank_, {targets[i], static_cast<Dist>(nd)},
                  owner(targets[i], g.n, num_ranks_), pri);
    }
  }

 private:
  AmRuntime& rt_;
  RankId rank_;
  DcRankState& st_;
  RankId num_ranks_;
};

}  // namespace

RunResult dc_sssp(const std::vector<LocalGraph>& parts, Vertex source,
                  const RuntimeConfig& cfg) {
  check_source(parts, source);
  const RankId p = static_cast<RankId>(parts.size());
  if (cfg.num_ranks != p)
    throw std::invalid_argument("dc_sssp: cfg.num_ranks does not match fragments");

  simnet::Network net(p, cfg.net);
  AmRuntime rt(cfg, net);

  std::vector<DcRankState> states(p);
  for (RankId r = 0; r < p; ++r) {
    states[r].graph = &parts[r];
    states[r].tentative.assign(parts[r].num_owned(), kInfDist);
  }

  rt.set_handler([&](RankId rank, const DistanceMessage& msg) {
    DcRankState& st = states[rank];
    Dist& tent = st.tentative[msg.vertex - st.graph->lo];
    if (msg.distance < tent) {
      tent = msg.distance;
      st.queue.push({msg.distance, msg.vertex});
    } else {
      ++st.stats.rejected;
    }
  });

  std::vector<DcWorker> workers;
  workers.reserve(p);
  for (RankId r = 0; r < p; ++r) workers.emplace_back(rt, r, states[r], p);
  std::vector<Worker*> worker_ptrs;
  for (DcWorker& w : workers) worker_ptrs.push_back(&w);

  rt.deliver_local(owner(source, parts.front().n, p), {source, 0});
  rt.run_epoch(worker_ptrs);

  RunResult result;
  std::vector<std::vector<Dist>> tentative;
  for (RankId r = 0; r < p; ++r) tentative.push_back(std::move(states[r].tentative));
  result.distances = gather_distances(parts, tentative);
  for (RankId r = 0; r < p; ++r) result.stats.merge(states[r].stats);
  finish_stats(parts, rt, net.now(), result);
  return result;
}

RunResult dc_bfs(const std::vector<LocalGraph>& parts, Vertex source,
                 const RuntimeConfig& cfg) {
  return dc_sssp(with_unit_weights(parts), source, cfg);
}

// ---------------------------------------------------------------------------
// Δ-stepping

namespace {

constexpr std::uint64_t kNoBucket = std::numeric_limits<std::uint64_t>::max();

struct DeltaRankState {
  const LocalGraph* graph = nullptr;
  std::vector<Dist> tentative;
  std::vector<std::vector<Task>> buckets;
  std::uint64_t current_bucket = kNoBucket;
  std::size_t read_idx = 0;
  std::vector<Vertex> settled;  // removed during the light phase, deduplicated
  std::vector<bool> in_settled;
  std::size_t heavy_idx = 0;
  std::uint64_t processed_this_round = 0;
  WorkStats stats;

  void push_task(Dist distance, Vertex v, std::uint64_t delta) {
    const std::uint64_t b = distance / delta;
    if (buckets.size() <= b) buckets.resize(b + 1);
    buckets[b].push_back({distance, v});
  }

  std::uint64_t min_nonempty_bucket() const {
    for (std::size_t b = 0; b < buckets.size(); ++b)
      if (!buckets[b].empty()) return b;
    return kNoBucket;
  }
};

class DeltaLightWorker final : public Worker {
 public:
  DeltaLightWorker(AmRuntime& rt, RankId rank, DeltaRankState& st, RankId num_ranks)
      : rt_(rt), rank_(rank), st_(st), num_ranks_(num_ranks) {}

  bool has_work() const override {
    return st_.current_bucket != kNoBucket &&
           st_.current_bucket < st_.buckets.size() &&
           st_.read_idx < st_.buckets[st_.current_bucket].size();
  }
  std::uint64_t pending() const override {
    if (!has_work()) return 0;
    return st_.buckets[st_.current_bucket].size() - st_.read_idx;
  }

  void step() override {
    const Task task = st_.buckets[st_.current_bucket][st_.read_idx++];
    const LocalGraph& g = *st_.graph;
    if (task.distance > st_.tentative[task.vertex - g.lo]) {
      ++st_.stats.invalidated;
      return;
    }
    st_.stats.processed_log.push_back({task.vertex, task.distance});
    ++st_.processed_this_round;
    if (!st_.in_settled[task.vertex - g.lo]) {
      st_.in_settled[task.vertex - g.lo] = true;
      st_.settled.push_back(task.vertex);
    }
    const std::uint64_t delta = rt_.config().delta;
    const auto targets = g.neighbors(task.vertex);
    const auto weights = g.edge_weights(task.vertex);
    for (std::size_t i = 0; i < targets.size(); ++i) {
      if (weights[i] >= delta) continue;  // heavy edges handled once, later
      const std::uint64_t nd =
          static_cast<std::uint64_t>(task.distance) + weights[i];
      if (nd >= kInfDist) continue;
      rt_.am_send(rank_, {targets[i], static_cast<Dist>(nd)},
                  owner(targets[i], g.n, num_ranks_));
    }
  }

 private:
  AmRuntime& rt_;
  RankId rank_;
  DeltaRankState& st_;
  RankId num_ranks_;
};

class DeltaHeavyWorker final : public Worker {
 public:
  DeltaHeavyWorker(AmRuntime& rt, RankId rank, DeltaRankState& st, RankId num_ranks)
      : rt_(rt), rank_(rank), st_(st), num_ranks_(num_ranks) {}

  bool has_work() const override { return st_.heavy_idx < st_.settled.size(); }
  std::uint64_t pending() const override {
    return st_.settled.size() - st_.heavy_idx;
  }

  void step() override {
    const Vertex v = st_.settled[st_.heavy_idx++];
    const LocalGraph& g = *st_.graph;
    const Dist d = st_.tentative[v - g.lo];
    const std::uint64_t delta = rt_.config().delta;
    const auto targets = g.neighbors(v);
    const auto weights = g.edge_weights(v);
    for (std::size_t i = 0; i < targets.size(); ++i) {
      if (weights[i] < delta) continue;
      const std::uint64_t nd = static_cast<std::uint64_t>(d) + weights[i];
      if (nd >= kInfDist) continue;
      rt_.am_send(rank_, {targets[i], static_cast<Dist>(nd)},
                  owner(targets[i], g.n, num_ranks_));
    }
  }

 private:
  AmRuntime& rt_;
  RankId rank_;
  DeltaRankState& st_;
  RankId num_ranks_;
};

}  // namespace

RunResult delta_stepping(const std::vector<LocalGraph>& parts, Vertex source,
                         const RuntimeConfig& cfg) {
  check_source(parts, source);
  const RankId p = static_cast<RankId>(parts.size());
  if (cfg.num_ranks != p)
    throw std::invalid_argument("delta_stepping: cfg.num_ranks does not match fragments");

  simnet::Network net(p, cfg.net);
  AmRuntime rt(cfg, net);

  std::vector<DeltaRankState> states(p);
  for (RankId r = 0; r < p; ++r) {
    states[r].graph = &parts[r];
    states[r].tentative.assign(parts[r].num_owned(), kInfDist);
    states[r].in_settled.assign(parts[r].num_owned(), false);
  }

  rt.set_handler([&](RankId rank, const DistanceMessage& msg) {
    DeltaRankState& st = states[rank];
    Dist& tent = st.tentative[msg.vertex - st.graph->lo];
    if (msg.distance < tent) {
      tent = msg.distance;
      st.push_task(msg.distance, msg.vertex, cfg.delta);
    } else {
      ++st.stats.rejected;
    }
  });

  std::vector<DeltaLightWorker> light;
  std::vector<DeltaHeavyWorker> heavy;
  light.reserve(p);
  heavy.reserve(p);
  for (RankId r = 0; r < p; ++r) {
    light.emplace_back(rt, r, states[r], p);
    heavy.emplace_back(rt, r, states[r], p);
  }
  std::vector<Worker*> light_ptrs, heavy_ptrs;
  for (RankId r = 0; r < p; ++r) {
    light_ptrs.push_back(&light[r]);
    heavy_ptrs.push_back(&heavy[r]);
  }

  rt.deliver_local(owner(source, parts.front().n, p), {source, 0});

  std::uint64_t buckets_processed = 0;
  std::vector<std::uint64_t> local_mins(p);
  while (true) {
    for (RankId r = 0; r < p; ++r) local_mins[r] = states[r].min_nonempty_bucket();
    const std::uint64_t bucket = rt.allreduce_min(local_mins);
    if (bucket == kNoBucket) break;
    rt.barrier();

    for (RankId r = 0; r < p; ++r) {
      states[r].current_bucket = bucket;
      states[r].read_idx = 0;
      states[r].processed_this_round = 0;
    }
    rt.run_epoch(light_ptrs);

    for (RankId r = 0; r < p; ++r) states[r].heavy_idx = 0;
    rt.run_epoch(heavy_ptrs);

    std::uint64_t processed = 0;
    for (RankId r = 0; r < p; ++r) processed += states[r].processed_this_round;
    if (processed > 0) ++buckets_processed;

    for (RankId r = 0; r < p; ++r) {
      DeltaRankState& st = states[r];
      if (bucket < st.buckets.size()) st.buckets[bucket].clear();
      for (const Vertex v : st.settled) st.in_settled[v - st.graph->lo] = false;
      st.settled.clear();
      st.current_bucket = kNoBucket;
    }
  }

  RunResult result;
  std::vector<std::vector<Dist>> tentative;
  for (RankId r = 0; r < p; ++r) tentative.push_back(std::move(states[r].tentative));
  result.distances = gather_distances(parts, tentative);
  for (RankId r = 0; r < p; ++r) result.stats.merge(states[r].stats);
  result.stats.buckets_processed = buckets_processed;
  finish_stats(parts, rt, net.now(), result);
  return result;
}

// ---------------------------------------------------------------------------
// Oracle and validation

std::vector<Dist> dijkstra_reference(const EdgeList& edges, Vertex source) {
  if (source >= edges.n)
    throw std::invalid_argument("dijkstra_reference: source out of range");
  const std::vector<LocalGraph> whole = partition_1d(edges, 1);
  const LocalGraph& g = whole.front();

  std::vector<Dist> dist(edges.n, kInfDist);
  dist[source] = 0;
  TaskQueue heap;
  heap.push({0, source});
  while (!heap.empty()) {
    const Task t = heap.top();
    heap.pop();
    if (t.distance > dist[t.vertex]) continue;
    const auto targets = g.neighbors(t.vertex);
    const auto weights = g.edge_weights(t.vertex);
    for (std::size_t i = 0; i < targets.size(); ++i) {
      const std::uint64_t nd = static_cast<std::uint64_t>(t.distance) + weights[i];
      if (nd >= kInfDist) continue;
      if (nd < dist[targets[i]]) {
        dist[targets[i]] = static_cast<Dist>(nd);
        heap.push({static_cast<Dist>(nd), targets[i]});
      }
    }
  }
  return dist;
}

bool validate(std::span<const Dist> distances, std::span<const Dist> oracle) {
  return distances.size() == oracle.size() &&
         std::equal(distances.begin(), distances.end(), oracle.begin());
}

std::uint64_t reachable_edge_count(const std::vector<LocalGraph>& parts,
                                   std::span<const Dist> distances) {
  std::uint64_t count = 0;
  for (const LocalGraph& g : parts)
    for (Vertex v = g.lo; v < g.hi; ++v)
      if (distances[v] != kInfDist) count += g.neighbors(v).size();
  return count;
}

}  // namespace dgalab
