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

#include "dgalab/graph.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>

namespace dgalab {

namespace {

constexpr unsigned kMaxScale = 30;

double unit_interval(std::mt19937_64& rng) {
  // 53-bit mantissa, uniform on [0, 1).
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

std::vector<WeightedEdge> kronecker_samples(unsigned scale, unsigned edgefactor,
                                            Weight max_weight,
                                            std::uint64_t seed) {
  if (scale < 1) throw std::invalid_argument("kronecker: scale must be >= 1");
  if (scale > kMaxScale)
    throw std::invalid_argument("kronecker: scale > 30 exceeds the desk-scale memory guard");
  if (edgefactor < 1)
    throw std::invalid_argument("kronecker: edgefactor must be >= 1");
  if (max_weight < 1)
    throw std::invalid_argument("kronecker: max_weight must be >= 1");

  // Initiator matrix (A, B, C, D) = (0.57, 0.19, 0.19, 0.05), sampled one
  // bit level at a time as in the Graph500 reference code.
  constexpr double kA = 0.57;
  constexpr double kB = 0.19;
  constexpr double kC = 0.19;
  const double ab = kA + kB;
  const double a_norm = kA / (kA + kB);
  const double c_norm = kC / (1.0 - kA - kB);

  const std::uint64_t num_samples =
      (std::uint64_t{1} << scale) * static_cast<std::uint64_t>(edgefactor);

  std::mt19937_64 rng(seed);
  std::vector<WeightedEdge> samples;
  samples.reserve(num_samples);
  for (std::uint64_t i = 0; i < num_samples; ++i) {
    Vertex src = 0;
    Vertex dst = 0;
    for (unsigned bit = 0; bit < scale; ++bit) {
      const bool ii = unit_interval(rng) > ab;
      const bool jj = unit_interval(rng) > (ii ? c_norm : a_norm);
      src |= static_cast<Vertex>(ii) << bit;
      dst |= static_cast<Vertex>(jj) << bit;
    }
    // One word per edge even for max_weight == 1, so the draw sequence does
    // not shift with the weight range.
    const Weight w = static_cast<Weight>(1 + rng() % max_weight);
    samples.push_back({src, dst, w});
  }
  return samples;
}

EdgeList generate_kronecker(unsigned scale, unsigned edgefactor,
                            Weight max_weight, std::uint64_t seed) {
  std::vector<WeightedEdge> samples =
      kronecker_samples(scale, edgefactor, max_weight, seed);
  EdgeList out;
  out.n = std::uint64_t{1} << scale;
  out.edges.reserve(samples.size());
  for (const WeightedEdge& e : samples) {
    if (e.src != e.dst) out.edges.push_back(e);
  }
  return out;
}

RankId owner(Vertex v, std::uint64_t n, RankId num_ranks) {
  const std::uint64_t per_rank = (n + num_ranks - 1) / num_ranks;
  return static_cast<RankId>(v / per_rank);
}

std::vector<LocalGraph> partition_1d(const EdgeList& edges, RankId num_ranks) {
  if (num_ranks < 1) throw std::invalid_argument("partition_1d: num_ranks must be >= 1");
  if (num_ranks > edges.n)
    throw std::invalid_argument("partition_1d: num_ranks exceeds vertex count");

  const std::uint64_t n = edges.n;
  const std::uint64_t per_rank = (n + num_ranks - 1) / num_ranks;

  std::vector<LocalGraph> parts(num_ranks);
  for (RankId r = 0; r < num_ranks; ++r) {
    parts[r].n = n;
    parts[r].lo = std::min<std::uint64_t>(static_cast<std::uint64_t>(r) * per_rank, n);
    parts[r].hi = std::min<std::uint64_t>(parts[r].lo + per_rank, n);
    parts[r].row_offsets.assign(parts[r].num_owned() + 1, 0);
  }

  // Counting sort by source vertex; stable, so row order follows input order.
  for (const WeightedEdge& e : edges.edges) {
    LocalGraph& g = parts[owner(e.src, n, num_ranks)];
    ++g.row_offsets[e.src - g.lo + 1];
  }
  for (LocalGraph& g : parts) {
    for (std::size_t i = 1; i < g.row_offsets.size(); ++i)
      g.row_offsets[i] += g.row_offsets[i - 1];
    g.col.resize(g.row_offsets.back());
    g.weights.resize(g.row_offsets.back());
  }
  std::vector<std::vector<std::uint64_t>> cursor(num_ranks);
  for (RankId r = 0; r < num_ranks; ++r)
    cursor[r].assign(parts[r].row_offsets.begin(), parts[r].row_offsets.end() - 1);
  for (const WeightedEdge& e : edges.edges) {
    const RankId r = owner(e.src, n, num_ranks);
    LocalGraph& g = parts[r];
    const std::uint64_t slot = cursor[r][e.src - g.lo]++;
    g.col[slot] = e.dst;
    g.weights[slot] = e.weight;
  }
  return parts;
}

std::vector<LocalGraph> with_unit_weights(const std::vector<LocalGraph>& parts) {
  std::vector<LocalGraph> out = parts;
  for (LocalGraph& g : out) std::fill(g.weights.begin(), g.weights.end(), Weight{1});
  return out;
}

EdgeList load_edge_list(std::istream& in, const std::string& name) {
  EdgeList out;
  std::string line;
  std::uint64_t line_no = 0;
  Vertex max_id = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::size_t start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos || line[start] == '#') continue;
    std::istringstream fields(line);
    std::int64_t src = 0, dst = 0, weight = 0;
    if (!(fields >> src >> dst >> weight)) {
      throw std::runtime_error(name + ":" + std::to_string(line_no) +
                               ": malformed edge line: \"" + line + "\"");
    }
    std::string trailing;
    if (fields >> trailing) {
      throw std::runtime_error(name + ":" + std::to_string(line_no) +
                               ": trailing tokens on edge line");
    }
    if (src < 0 || dst < 0) {
      throw std::runtime_error(name + ":" + std::to_string(line_no) +
                               ": negative vertex id");
    }
    if (weight < 1) {
      throw std::runtime_error(name + ":" + std::to_string(line_no) +
                               ": edge weight must be a positive integer");
    }
    if (src == dst) continue;  // same cleaning rule as the generator
    max_id = std::max({max_id, static_cast<Vertex>(src), static_cast<Vertex>(dst)});
    out.edges.push_back({static_cast<Vertex>(src), static_cast<Vertex>(dst),
                         static_cast<Weight>(weight)});
  }
  if (out.edges.empty()) throw std::runtime_error(name + ": no edges");
  out.n = std::bit_ceil(max_id + 1);
  return out;
}

EdgeList load_edge_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(path + ": cannot open");
  return load_edge_list(in, path);
}

void save_edge_list(const EdgeList& edges, std::ostream& out) {
  out << "# dgalab edge list: " << edges.n << " vertices, " << edges.edges.size()
      << " edges\n";
  for (const WeightedEdge& e : edges.edges)
    out << e.src << ' ' << e.dst << ' ' << e.weight << '\n';
}

}  // namespace dgalab
