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

#ifndef DGALAB_GRAPH_HPP
#define DGALAB_GRAPH_HPP

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "dgalab/types.hpp"

namespace dgalab {

struct WeightedEdge {
  Vertex src = 0;
  Vertex dst = 0;
  Weight weight = 1;

  friend bool operator==(const WeightedEdge&, const WeightedEdge&) = default;
};

// A weighted directed edge list over n vertices, n a power of two.
// Self-loops are removed at construction; duplicate edges are kept.
struct EdgeList {
  std::uint64_t n = 0;
  std::vector<WeightedEdge> edges;
};

// CSR fragment of a 1D block-partitioned graph. One rank owns the
// contiguous vertex range [lo, hi); every edge whose source falls in that
// range is stored here. Column ids stay global.
struct LocalGraph {
  std::uint64_t n = 0;
  Vertex lo = 0;
  Vertex hi = 0;
  std::vector<std::uint64_t> row_offsets;  // length (hi - lo) + 1
  std::vector<Vertex> col;
  std::vector<Weight> weights;

  std::uint64_t num_owned() const { return hi - lo; }
  std::uint64_t num_edges() const { return col.size(); }
  bool owns(Vertex v) const { return v >= lo && v < hi; }

  std::span<const Vertex> neighbors(Vertex v) const {
    const std::uint64_t b = row_offsets[v - lo];
    const std::uint64_t e = row_offsets[v - lo + 1];
    return {col.data() + b, col.data() + e};
  }
  std::span<const Weight> edge_weights(Vertex v) const {
    const std::uint64_t b = row_offsets[v - lo];
    const std::uint64_t e = row_offsets[v - lo + 1];
    return {weights.data() + b, weights.data() + e};
  }
};

// Raw recursive-matrix samples, 2^scale * edgefactor of them, self-loops
// included. Initiator probabilities (0.57, 0.19, 0.19, 0.05).
std::vector<WeightedEdge> kronecker_samples(unsigned scale, unsigned edgefactor,
                                            Weight max_weight,
                                            std::uint64_t seed);

// Graph500-style generator: samples as above, then self-loops dropped.
// Deterministic per (scale, edgefactor, max_weight, seed). scale must be
// in [1, 30]; the upper bound is a memory guard.
EdgeList generate_kronecker(unsigned scale, unsigned edgefactor,
                            Weight max_weight, std::uint64_t seed);

// Rank that owns vertex v under the block partition: floor(v / ceil(n/p)).
RankId owner(Vertex v, std::uint64_t n, RankId num_ranks);

// Splits the edge list into per-rank CSR fragments. num_ranks must be in
// [1, n]. Edge order within a row follows input order.
std::vector<LocalGraph> partition_1d(const EdgeList& edges, RankId num_ranks);

// Same fragments with every weight forced to 1.
std::vector<LocalGraph> with_unit_weights(const std::vector<LocalGraph>& parts);

// Text format: one "src dst weight" triple per line, '#' starts a comment.
// n is inferred as the smallest power of two exceeding the largest vertex
// id. Malformed lines report their line number; an input without edges is
// an error.
EdgeList load_edge_list(std::istream& in, const std::string& name);
EdgeList load_edge_list(const std::string& path);

void save_edge_list(const EdgeList& edges, std::ostream& out);

}  // namespace dgalab

#endif  // DGALAB_GRAPH_HPP
