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

#include <algorithm>
#include <random>
#include <sstream>

#include <doctest.h>

#include "dgalab/graph.hpp"

using namespace dgalab;

namespace {

std::vector<WeightedEdge> sorted_edges(std::vector<WeightedEdge> edges) {
  std::sort(edges.begin(), edges.end(), [](const WeightedEdge& a, const WeightedEdge& b) {
    return std::tie(a.src, a.dst, a.weight) < std::tie(b.src, b.dst, b.weight);
  });
  return edges;
}

}  // namespace

TEST_CASE("kronecker sample count is 2^scale * edgefactor") {
  const auto samples = kronecker_samples(4, 16, 1, 1);
  CHECK(samples.size() == 256);
  for (const WeightedEdge& e : samples) {
    CHECK(e.src < 16);
    CHECK(e.dst < 16);
    CHECK(e.weight == 1);
  }
}

TEST_CASE("scale-1 samples stay in {0,1} with unit weight") {
  const auto samples = kronecker_samples(1, 1, 1, 7);
  REQUIRE(samples.size() == 2);  // 2^1 * 1
  for (const WeightedEdge& e : samples) {
    CHECK(e.src <= 1);
    CHECK(e.dst <= 1);
    CHECK(e.weight == 1);
  }
}

TEST_CASE("generator is deterministic per seed") {
  const EdgeList a = generate_kronecker(10, 16, 100, 42);
  const EdgeList b = generate_kronecker(10, 16, 100, 42);
  CHECK(a.n == b.n);
  CHECK(a.edges == b.edges);
  const EdgeList c = generate_kronecker(10, 16, 100, 43);
  CHECK(a.edges != c.edges);
}

TEST_CASE("generator cleans self-loops and bounds weights") {
  const EdgeList g = generate_kronecker(6, 8, 100, 3);
  CHECK(g.n == 64);
  CHECK(!g.edges.empty());
  for (const WeightedEdge& e : g.edges) {
    CHECK(e.src != e.dst);
    CHECK(e.weight >= 1);
    CHECK(e.weight <= 100);
  }
}

TEST_CASE("generator rejects out-of-range parameters") {
  CHECK_THROWS(generate_kronecker(0, 16, 1, 1));
  CHECK_THROWS(generate_kronecker(31, 16, 1, 1));
  CHECK_THROWS(generate_kronecker(4, 0, 1, 1));
  CHECK_THROWS(generate_kronecker(4, 16, 0, 1));
}

TEST_CASE("owner follows the block rule") {
  CHECK(owner(3, 8, 2) == 0);
  CHECK(owner(4, 8, 2) == 1);
  CHECK(owner(7, 8, 8) == 7);
  // n not divisible by p
  CHECK(owner(0, 8, 3) == 0);
  CHECK(owner(2, 8, 3) == 0);
  CHECK(owner(3, 8, 3) == 1);
  CHECK(owner(7, 8, 3) == 2);
}

TEST_CASE("partition_1d ranges and hand-built CSR") {
  EdgeList edges;
  edges.n = 4;
  edges.edges = {{0, 1, 1}, {1, 2, 2}, {0, 2, 5}, {2, 3, 1}};

  const auto parts = partition_1d(edges, 1);
  REQUIRE(parts.size() == 1);
  const LocalGraph& g = parts[0];
  CHECK(g.lo == 0);
  CHECK(g.hi == 4);
  CHECK(g.row_offsets == std::vector<std::uint64_t>{0, 2, 3, 4, 4});
  CHECK(g.col == std::vector<Vertex>{1, 2, 2, 3});
  CHECK(g.weights == std::vector<Weight>{1, 5, 2, 1});

  EdgeList eight = edges;
  eight.n = 8;
  const auto two = partition_1d(eight, 2);
  CHECK(two[0].lo == 0);
  CHECK(two[0].hi == 4);
  CHECK(two[1].lo == 4);
  CHECK(two[1].hi == 8);
}

TEST_CASE("partition_1d conserves edges and rejects p > n") {
  const EdgeList g = generate_kronecker(7, 8, 10, 5);
  for (RankId p : {1u, 2u, 3u, 4u, 8u}) {
    const auto parts = partition_1d(g, p);
    std::uint64_t total = 0;
    for (const LocalGraph& lg : parts) {
      total += lg.num_edges();
      CHECK(lg.row_offsets.size() == lg.num_owned() + 1);
      CHECK(lg.row_offsets.front() == 0);
      CHECK(std::is_sorted(lg.row_offsets.begin(), lg.row_offsets.end()));
    }
    CHECK(total == g.edges.size());
  }
  EdgeList tiny;
  tiny.n = 2;
  tiny.edges = {{0, 1, 1}};
  CHECK_THROWS(partition_1d(tiny, 3));
}

TEST_CASE("CSR round-trip recovers the cleaned edge list") {
  const EdgeList g = generate_kronecker(8, 8, 50, 11);
  for (RankId p : {1u, 4u, 7u}) {
    const auto parts = partition_1d(g, p);
    std::vector<WeightedEdge> flat;
    for (const LocalGraph& lg : parts)
      for (Vertex v = lg.lo; v < lg.hi; ++v) {
        const auto ns = lg.neighbors(v);
        const auto ws = lg.edge_weights(v);
        for (std::size_t i = 0; i < ns.size(); ++i)
          flat.push_back({v, ns[i], ws[i]});
      }
    CHECK(sorted_edges(flat) == sorted_edges(g.edges));
  }
}

TEST_CASE("every vertex is owned by exactly one rank") {
  const std::uint64_t n = 64;
  for (RankId p : {1u, 2u, 5u, 64u}) {
    std::vector<std::uint64_t> seen(p, 0);
    for (Vertex v = 0; v < n; ++v) {
      const RankId r = owner(v, n, p);
      REQUIRE(r < p);
      ++seen[r];
    }
    std::uint64_t total = 0;
    for (const auto c : seen) total += c;
    CHECK(total == n);
  }
}

TEST_CASE("load_edge_list basics") {
  std::istringstream two("0 1 1\n1 0 1\n");
  const EdgeList g = load_edge_list(two, "two");
  CHECK(g.n == 2);
  CHECK(g.edges.size() == 2);

  std::istringstream next_pow("0 2 5\n");
  CHECK(load_edge_list(next_pow, "pow").n == 4);

  std::istringstream comments("# comment only\n");
  CHECK_THROWS_WITH_AS(load_edge_list(comments, "empty"), "empty: no edges",
                       std::runtime_error);
}

TEST_CASE("load_edge_list error reporting carries line numbers") {
  std::istringstream malformed("0 1 1\nnot an edge\n");
  CHECK_THROWS_WITH_AS(load_edge_list(malformed, "bad"),
                       "bad:2: malformed edge line: \"not an edge\"",
                       std::runtime_error);

  std::istringstream negative("0 1 -3\n");
  CHECK_THROWS_AS(load_edge_list(negative, "neg"), std::runtime_error);

  std::istringstream zero_weight("0 1 0\n");
  CHECK_THROWS_AS(load_edge_list(zero_weight, "zero"), std::runtime_error);
}

TEST_CASE("save/load round-trips the edge set") {
  const EdgeList g = generate_kronecker(6, 4, 9, 21);
  std::stringstream buf;
  save_edge_list(g, buf);
  const EdgeList back = load_edge_list(buf, "buf");
  CHECK(sorted_edges(back.edges) == sorted_edges(g.edges));
}

TEST_CASE("loader drops self-loops like the generator") {
  std::istringstream in("0 0 1\n0 1 2\n");
  const EdgeList g = load_edge_list(in, "loops");
  REQUIRE(g.edges.size() == 1);
  CHECK(g.edges[0].src == 0);
  CHECK(g.edges[0].dst == 1);
}
