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

#include <random>
#include <stdexcept>
#include <vector>

#include <doctest.h>

#include "dgalab/message.hpp"
#include "dgalab/runtime.hpp"

using namespace dgalab;

namespace {

RuntimeConfig test_config(RankId ranks, std::uint64_t coalescing = 4) {
  RuntimeConfig cfg;
  cfg.num_ranks = ranks;
  cfg.coalescing_size = coalescing;
  cfg.net.base_latency = 0;
  cfg.net.byte_cost = 0;
  cfg.net.send_overhead = 0;
  cfg.net.barrier_latency = 0;
  return cfg;
}

class IdleWorker final : public Worker {
 public:
  bool has_work() const override { return false; }
  void step() override {}
  std::uint64_t pending() const override { return 0; }
};

// Sends a fixed number of messages to one destination, per_step at a time.
class SenderWorker final : public Worker {
 public:
  SenderWorker(AmRuntime& rt, RankId rank, RankId dst, std::uint64_t total,
               std::uint64_t per_step)
      : rt_(rt), rank_(rank), dst_(dst), total_(total), per_step_(per_step) {}

  bool has_work() const override { return sent_ < total_; }
  std::uint64_t pending() const override { return total_ - sent_; }
  void step() override {
    for (std::uint64_t i = 0; i < per_step_ && sent_ < total_; ++i, ++sent_)
      rt_.am_send(rank_, {sent_, static_cast<Dist>(sent_)}, dst_);
  }

 private:
  AmRuntime& rt_;
  RankId rank_;
  RankId dst_;
  std::uint64_t total_;
  std::uint64_t per_step_;
  std::uint64_t sent_ = 0;
};

struct Harness {
  explicit Harness(RuntimeConfig cfg)
      : net(cfg.num_ranks, cfg.net), rt(cfg, net) {
    rt.set_handler([this](RankId rank, const DistanceMessage& msg) {
      received.push_back({rank, msg});
    });
  }
  simnet::Network net;
  AmRuntime rt;
  std::vector<std::pair<RankId, DistanceMessage>> received;
};

}  // namespace

TEST_CASE("wire records are 12 bytes and round-trip") {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<DistanceMessage> msgs;
    const std::size_t count = rng() % 64;
    for (std::size_t i = 0; i < count; ++i)
      msgs.push_back({rng(), static_cast<Dist>(rng())});
    const auto bytes = encode_messages(msgs);
    CHECK(bytes.size() == msgs.size() * kWireRecordBytes);
    CHECK(decode_messages(bytes) == msgs);
  }
}

TEST_CASE("wire layout is little-endian u64 vertex then u32 distance") {
  const auto bytes = encode_messages(std::vector<DistanceMessage>{
      {0x0102030405060708ULL, 0x0A0B0C0DU}});
  REQUIRE(bytes.size() == 12);
  const std::vector<std::uint8_t> expect = {0x08, 0x07, 0x06, 0x05, 0x04, 0x03,
                                            0x02, 0x01, 0x0D, 0x0C, 0x0B, 0x0A};
  CHECK(bytes == expect);
}

TEST_CASE("decode rejects lengths that are not whole records") {
  CHECK_THROWS(decode_messages(std::vector<std::uint8_t>(13, 0)));
  CHECK_THROWS(decode_messages(std::vector<std::uint8_t>(11, 0)));
  CHECK(decode_messages(std::vector<std::uint8_t>{}).empty());
}

TEST_CASE("reduction cache keeps the minimum per vertex") {
  ReductionCache cache(16);
  CHECK(cache.admit({5, 5}));   // first sighting passes
  CHECK(!cache.admit({5, 7}));  // larger is dropped
  CHECK(cache.admit({5, 3}));   // smaller passes and replaces
  CHECK(!cache.admit({5, 3}));  // equal is dropped
}

TEST_CASE("reduction cache direct-mapped eviction") {
  ReductionCache cache(1);
  CHECK(cache.admit({0, 9}));
  CHECK(cache.admit({1, 20}));  // collision evicts vertex 0
  CHECK(cache.admit({0, 9}));   // vertex 0 was forgotten
}

TEST_CASE("cache drops only messages dominated by an earlier pass") {
  // Soundness: a drop implies an earlier admit for the same vertex with a
  // distance <= the dropped one.
  ReductionCache cache(8);
  std::mt19937_64 rng(11);
  std::vector<Dist> best(32, kInfDist);
  for (int i = 0; i < 2000; ++i) {
    const Vertex v = rng() % 32;
    const Dist d = static_cast<Dist>(rng() % 100);
    if (!cache.admit({v, d})) {
      CHECK(best[v] <= d);
    } else {
      best[v] = std::min(best[v], d);
    }
  }
}

TEST_CASE("a full coalescing buffer is submitted as one envelope") {
  Harness h(test_config(2, /*coalescing=*/2));
  h.rt.open_epoch();
  h.rt.am_send(0, {10, 1}, 1);
  CHECK(h.net.submitted_total() == 0);
  h.rt.am_send(0, {11, 2}, 1);
  CHECK(h.net.submitted_total() == 1);
  auto env = h.net.step();
  REQUIRE(env);
  CHECK(env->payload.size() == 24);
  CHECK(h.rt.counters(0).full_buffers == 1);
  CHECK(h.rt.counters(0).messages_sent == 2);
  CHECK(h.rt.counters(0).partial_buffers == 0);
}

TEST_CASE("coalescing_size=1 submits immediately, no partials") {
  Harness h(test_config(2, 1));
  h.rt.open_epoch();
  for (int i = 0; i < 5; ++i) h.rt.am_send(0, {static_cast<Vertex>(i), 0}, 1);
  CHECK(h.net.submitted_total() == 5);
  CHECK(h.rt.counters(0).full_buffers == 5);
  CHECK(h.rt.counters(0).partial_buffers == 0);
}

TEST_CASE("self-send check bypasses transport and counters") {
  Harness h(test_config(2));
  h.rt.open_epoch();
  h.rt.am_send(0, {3, 7}, 0);
  CHECK(h.net.submitted_total() == 0);
  CHECK(h.rt.counters(0).messages_sent == 0);
  CHECK(h.rt.counters(0).local_deliveries == 1);
  REQUIRE(h.received.size() == 1);
  CHECK(h.received[0].first == 0);
  CHECK(h.received[0].second == DistanceMessage{3, 7});
}

TEST_CASE("without the self-send check, own-rank messages are transported") {
  RuntimeConfig cfg = test_config(2, 1);
  cfg.self_send_check = false;
  Harness h(cfg);
  h.rt.open_epoch();
  h.rt.am_send(0, {3, 7}, 0);
  CHECK(h.net.submitted_total() == 1);
  CHECK(h.rt.counters(0).messages_sent == 1);
  CHECK(h.rt.counters(0).local_deliveries == 0);
  CHECK(h.rt.progress(0) == 1);
  CHECK(h.rt.counters(0).messages_received == 1);
}

TEST_CASE("flush_partials submits every non-empty buffer") {
  Harness h(test_config(3, 100));
  h.rt.open_epoch();
  for (int i = 0; i < 3; ++i) h.rt.am_send(0, {static_cast<Vertex>(i), 0}, 1);
  h.rt.flush_partials(0);
  CHECK(h.net.submitted_total() == 1);
  auto env = h.net.step();
  REQUIRE(env);
  CHECK(env->payload.size() == 36);
  CHECK(h.rt.counters(0).partial_buffers == 1);
  CHECK(h.rt.counters(0).partial_buffer_messages == 3);

  h.rt.flush_partials(0);  // everything empty now
  CHECK(h.net.submitted_total() == 1);
  CHECK(h.rt.counters(0).partial_buffers == 1);
}

TEST_CASE("buffer accounting identity holds under mixed flushes") {
  Harness h(test_config(2, 4));
  h.rt.open_epoch();
  for (int i = 0; i < 11; ++i) h.rt.am_send(0, {static_cast<Vertex>(i), 0}, 1);
  h.rt.flush_partials(0);
  const RankCounters& c = h.rt.counters(0);
  CHECK(c.full_buffers == 2);
  CHECK(c.partial_buffers == 1);
  CHECK(c.partial_buffer_messages == 3);
  CHECK(c.full_buffers * 4 + c.partial_buffer_messages == c.messages_sent);
}

TEST_CASE("send-side cache filters inside am_send") {
  RuntimeConfig cfg = test_config(2, 1);
  cfg.cache_capacity = 8;
  Harness h(cfg);
  h.rt.open_epoch();
  h.rt.am_send(0, {5, 5}, 1);
  h.rt.am_send(0, {5, 7}, 1);  // dominated, dropped
  h.rt.am_send(0, {5, 3}, 1);  // improvement, passes
  CHECK(h.net.submitted_total() == 2);
  CHECK(h.rt.counters(0).messages_sent == 2);
  CHECK(h.rt.counters(0).cache_hits == 1);
}

TEST_CASE("priority messages use a small dedicated lane") {
  RuntimeConfig cfg = test_config(2, 32);
  cfg.priority_messages = true;
  Harness h(cfg);
  h.rt.open_epoch();
  CHECK(cfg.priority_capacity() == 2);
  h.rt.am_send(0, {1, 1}, 1, /*priority=*/true);
  CHECK(h.net.submitted_total() == 0);
  h.rt.am_send(0, {2, 2}, 1, /*priority=*/true);
  CHECK(h.net.submitted_total() == 1);  // priority lane filled at 2
  // Capacity-flushed priority buffers count as partial, keeping the
  // full-buffer invariant exact.
  CHECK(h.rt.counters(0).full_buffers == 0);
  CHECK(h.rt.counters(0).partial_buffers == 1);
  CHECK(h.rt.counters(0).partial_buffer_messages == 2);
}

TEST_CASE("progress handles priority envelopes first") {
  RuntimeConfig cfg = test_config(2, 8);
  cfg.priority_messages = true;
  Harness h(cfg);
  h.rt.open_epoch();
  h.rt.am_send(0, {100, 9}, 1, /*priority=*/false);
  h.rt.am_send(0, {200, 1}, 1, /*priority=*/true);
  h.rt.flush_partials(0);
  h.net.advance_to(h.net.next_event_time().value());
  CHECK(h.rt.progress(1) == 2);
  REQUIRE(h.received.size() == 2);
  CHECK(h.received[0].second.vertex == 200);  // priority first
  CHECK(h.received[1].second.vertex == 100);
}

TEST_CASE("progress returns counts and faults on corrupt payloads") {
  Harness h(test_config(2, 2));
  h.rt.open_epoch();
  CHECK(h.rt.progress(1) == 0);  // nothing pending
  h.rt.am_send(0, {1, 1}, 1);
  h.rt.am_send(0, {2, 2}, 1);
  h.net.advance_to(h.net.next_event_time().value());
  CHECK(h.rt.progress(1) == 2);  // one 24-byte envelope, two records

  h.net.submit_send(0, 1, std::vector<std::uint8_t>(13, 0));
  h.net.advance_to(h.net.next_event_time().value());
  CHECK_THROWS(h.rt.progress(1));
}

TEST_CASE("am_send faults outside an open epoch and on bad ranks") {
  Harness h(test_config(2));
  CHECK_THROWS_AS(h.rt.am_send(0, {1, 1}, 1), std::logic_error);
  h.rt.open_epoch();
  CHECK_THROWS_AS(h.rt.am_send(0, {1, 1}, 9), std::out_of_range);
}

TEST_CASE("empty epoch terminates in one detection round") {
  Harness h(test_config(1));
  IdleWorker idle;
  std::vector<Worker*> workers = {&idle};
  h.rt.run_epoch(workers);
  CHECK(h.rt.epoch_state().rounds == 1);
  CHECK(h.net.now() == 0);
}

TEST_CASE("detection observes in-flight imbalance and needs a stable round") {
  RuntimeConfig cfg = test_config(2, 1);
  cfg.net.base_latency = 10;
  Harness h(cfg);
  h.rt.open_epoch();
  std::vector<Worker*> none;

  for (int i = 0; i < 9; ++i) h.rt.am_send(0, {static_cast<Vertex>(i), 0}, 1);
  h.net.advance_to(10);
  h.rt.progress(1);  // 9 received
  h.rt.am_send(0, {99, 0}, 1);  // the 10th is still in flight

  CHECK(!h.rt.detect_termination(none));  // sums 10 vs 9
  h.net.advance_to(20);
  h.rt.progress(1);
  CHECK(!h.rt.detect_termination(none));  // equal but changed since last round
  CHECK(h.rt.detect_termination(none));   // stable now
}

TEST_CASE("detection refuses while a rank still has local work or buffers") {
  Harness h(test_config(2, 100));
  h.rt.open_epoch();
  std::vector<Worker*> none;
  h.rt.am_send(0, {1, 1}, 1);  // parked in a coalescing buffer
  CHECK(!h.rt.detect_termination(none));

  h.rt.flush_partials(0);
  h.net.advance_to(h.net.next_event_time().value());
  h.rt.progress(1);
  CHECK(!h.rt.detect_termination(none));  // counters moved this round
  CHECK(h.rt.detect_termination(none));

  SenderWorker busy(h.rt, 0, 1, 5, 1);
  IdleWorker idle;
  std::vector<Worker*> workers = {&busy, &idle};
  h.rt.open_epoch();
  CHECK(!h.rt.detect_termination(workers));  // busy worker blocks it
}

TEST_CASE("run_epoch calls progress on the EE schedule") {
  struct SnapshotWorker final : Worker {
    AmRuntime* rt = nullptr;
    std::uint64_t steps = 0;
    std::uint64_t calls_at_last_step = 0;
    bool has_work() const override { return steps < 50; }
    std::uint64_t pending() const override { return 50 - steps; }
    void step() override {
      ++steps;
      if (steps == 50) calls_at_last_step = rt->counters(0).progress_calls;
    }
  };

  auto run_with = [](std::uint64_t ee, std::uint64_t el) {
    RuntimeConfig cfg = test_config(1);
    cfg.ee = ee;
    cfg.el = el;
    simnet::Network net(1, cfg.net);
    AmRuntime rt(cfg, net);
    rt.set_handler([](RankId, const DistanceMessage&) {});
    SnapshotWorker w;
    w.rt = &rt;
    std::vector<Worker*> workers = {&w};
    rt.run_epoch(workers);
    return w.calls_at_last_step;
  };

  // Iterations 22 and 44 trigger progress among the first 49.
  CHECK(run_with(22, 0) == 2);
  CHECK(run_with(1, 0) == 49);
  // An effectively infinite eager limit forces progress every iteration.
  CHECK(run_with(1000, std::numeric_limits<std::uint64_t>::max()) == 49);
  CHECK(run_with(1000, 0) == 0);
}

TEST_CASE("run_epoch delivers everything and closes with equal counters") {
  RuntimeConfig cfg = test_config(3, 4);
  cfg.net.base_latency = 7;
  cfg.flush_period = 5;
  Harness h(cfg);
  SenderWorker a(h.rt, 0, 1, 10, 1);
  SenderWorker b(h.rt, 2, 1, 7, 2);
  IdleWorker idle;
  std::vector<Worker*> workers = {&a, &idle, &b};
  h.rt.run_epoch(workers);

  std::uint64_t sent = 0, received = 0, full = 0, partial_msgs = 0;
  for (RankId r = 0; r < 3; ++r) {
    sent += h.rt.counters(r).messages_sent;
    received += h.rt.counters(r).messages_received;
    full += h.rt.counters(r).full_buffers;
    partial_msgs += h.rt.counters(r).partial_buffer_messages;
  }
  CHECK(sent == 17);
  CHECK(received == 17);
  CHECK(full * 4 + partial_msgs == sent);
  CHECK(h.net.in_flight() == 0);
  CHECK(h.received.size() == 17);
  CHECK(!h.rt.epoch_open());
  CHECK_THROWS(h.rt.am_send(0, {1, 1}, 1));  // epoch closed
}

TEST_CASE("livelock guard trips on a worker that never finishes") {
  struct ForeverWorker final : Worker {
    bool has_work() const override { return true; }
    void step() override {}
    std::uint64_t pending() const override { return 1; }
  };
  RuntimeConfig cfg = test_config(1);
  cfg.horizon = 100;
  simnet::Network net(1, cfg.net);
  AmRuntime rt(cfg, net);
  rt.set_handler([](RankId, const DistanceMessage&) {});
  ForeverWorker w;
  std::vector<Worker*> workers = {&w};
  CHECK_THROWS_AS(rt.run_epoch(workers), std::runtime_error);
}

TEST_CASE("allreduce_min charges one barrier and returns the minimum") {
  RuntimeConfig cfg = test_config(2);
  cfg.net.barrier_latency = 13;
  Harness h(cfg);
  const std::vector<std::uint64_t> values = {9, 5};
  CHECK(h.rt.allreduce_min(values) == 5);
  CHECK(h.net.now() == 13);
}

TEST_CASE("runtime config invariants are enforced") {
  RuntimeConfig cfg = test_config(1);
  cfg.ee = 0;
  CHECK_THROWS(cfg.check());
  cfg = test_config(1);
  cfg.coalescing_size = 0;
  CHECK_THROWS(cfg.check());
  cfg = test_config(1);
  cfg.delta = 0;
  CHECK_THROWS(cfg.check());
}
