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

#include "dgalab/experiment.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <memory>
#include <random>
#include <stdexcept>

#include "dgalab/algorithms.hpp"
#include "dgalab/graph.hpp"

namespace dgalab {

namespace {

struct GraphBundle {
  EdgeList edges;
  EdgeList unit_edges;  // built on first use
  bool unit_built = false;
  std::vector<Vertex> sources;
  std::map<std::pair<Vertex, bool>, std::vector<Dist>> oracles;

  const EdgeList& unit() {
    if (!unit_built) {
      unit_edges = edges;
      for (WeightedEdge& e : unit_edges.edges) e.weight = 1;
      unit_built = true;
    }
    return unit_edges;
  }

  const std::vector<Dist>& oracle(Vertex source, bool unit_weights) {
    auto it = oracles.find({source, unit_weights});
    if (it == oracles.end()) {
      it = oracles
               .emplace(std::make_pair(source, unit_weights),
                        dijkstra_reference(unit_weights ? unit() : edges, source))
               .first;
    }
    return it->second;
  }
};

using GraphCache = std::map<std::string, std::shared_ptr<GraphBundle>>;

std::string graph_key(const ExperimentConfig& cfg) {
  if (!cfg.graph_file.empty()) return "file:" + cfg.graph_file;
  return "gen:" + std::to_string(cfg.scale) + ":" + std::to_string(cfg.edgefactor) +
         ":" + std::to_string(cfg.max_weight) + ":" + std::to_string(cfg.rt.seed);
}

std::shared_ptr<GraphBundle> prepare_graph(const ExperimentConfig& cfg,
                                           GraphCache& cache) {
  const std::string key = graph_key(cfg);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  auto bundle = std::make_shared<GraphBundle>();
  bundle->edges = cfg.graph_file.empty()
                      ? generate_kronecker(cfg.scale, cfg.edgefactor,
                                           cfg.max_weight, cfg.rt.seed)
                      : load_edge_list(cfg.graph_file);
  // Source choice is a separate deterministic stream so it does not shift
  // with generator parameters.
  std::mt19937_64 rng(cfg.rt.seed ^ 0xD6E8FEB86659FD93ULL);
  bundle->sources.reserve(cfg.sources);
  for (std::uint32_t i = 0; i < cfg.sources; ++i)
    bundle->sources.push_back(rng() % bundle->edges.n);
  cache.emplace(key, bundle);
  return bundle;
}

RunResult dispatch(const std::string& algorithm,
                   const std::vector<LocalGraph>& parts, Vertex source,
                   const RuntimeConfig& rt) {
  if (algorithm == "dc-sssp") return dc_sssp(parts, source, rt);
  if (algorithm == "dc-bfs") return dc_bfs(parts, source, rt);
  if (algorithm == "delta-stepping") return delta_stepping(parts, source, rt);
  throw std::invalid_argument("unknown algorithm: " + algorithm);
}

CsvRow make_row(const ExperimentConfig& cfg, const GraphBundle& bundle,
                Vertex source, const RunResult& result) {
  CsvRow row;
  if (cfg.graph_file.empty()) {
    row.scale = cfg.scale;
    row.edgefactor = cfg.edgefactor;
    row.max_weight = cfg.max_weight;
  } else {
    row.scale = static_cast<std::uint32_t>(std::countr_zero(bundle.edges.n));
    row.edgefactor =
        static_cast<std::uint32_t>(bundle.edges.edges.size() / bundle.edges.n);
    Weight mw = 1;
    for (const WeightedEdge& e : bundle.edges.edges) mw = std::max(mw, e.weight);
    row.max_weight = mw;
  }
  row.num_ranks = cfg.rt.num_ranks;
  row.algorithm = cfg.algorithm;
  row.delta = cfg.rt.delta;
  row.coalescing_size = cfg.rt.coalescing_size;
  row.ee = cfg.rt.ee;
  row.el = cfg.rt.el;
  row.flush_period = cfg.rt.flush_period;
  row.cache_capacity = cfg.rt.cache_capacity;
  row.priority_messages = cfg.rt.priority_messages;
  row.seed = cfg.rt.seed;
  row.source = source;
  row.completion_time = result.stats.completion_time;
  row.teps = result.stats.teps;
  row.useful = result.stats.useful;
  row.useless = result.stats.useless;
  row.rejected = result.stats.rejected;
  row.invalidated = result.stats.invalidated;
  row.messages_sent = result.stats.messages_sent;
  row.messages_received = result.stats.messages_received;
  row.full_buffers = result.stats.full_buffers_sent;
  row.partial_buffers = result.stats.partial_buffers_sent;
  return row;
}

void run_cell(const ExperimentConfig& cfg, GraphCache& cache,
              ExperimentOutput& out) {
  check(cfg);
  std::shared_ptr<GraphBundle> bundle = prepare_graph(cfg, cache);
  const std::vector<LocalGraph> parts =
      partition_1d(bundle->edges, cfg.rt.num_ranks);

  const std::uint32_t graph_scale =
      static_cast<std::uint32_t>(std::countr_zero(bundle->edges.n));
  const bool validate_runs = graph_scale <= 16 || cfg.force_validate;

  for (std::uint32_t si = 0; si < cfg.sources; ++si) {
    const Vertex source = bundle->sources[si];
    for (std::uint32_t rep = 0; rep < cfg.repetitions; ++rep) {
      const RunResult result = dispatch(cfg.algorithm, parts, source, cfg.rt);
      if (validate_runs) {
        ++out.validated_runs;
        const std::vector<Dist>& oracle =
            bundle->oracle(source, cfg.algorithm == "dc-bfs");
        if (!validate(result.distances, oracle)) ++out.mismatches;
      }
      out.rows.push_back(make_row(cfg, *bundle, source, result));
    }
  }
}

}  // namespace

ExperimentOutput run_experiment(const ExperimentConfig& cfg) {
  if (!cfg.sweep_axes.empty())
    throw std::invalid_argument("run: config declares sweep axes; use sweep");
  ExperimentOutput out;
  GraphCache cache;
  run_cell(cfg, cache, out);
  return out;
}

ExperimentOutput sweep_experiment(const ExperimentConfig& cfg) {
  ExperimentOutput out;
  GraphCache cache;
  if (cfg.sweep_axes.empty()) {
    run_cell(cfg, cache, out);
    return out;
  }

  std::vector<std::pair<std::string, std::vector<std::string>>> axes(
      cfg.sweep_axes.begin(), cfg.sweep_axes.end());
  std::vector<std::size_t> index(axes.size(), 0);
  while (true) {
    ExperimentConfig cell = cfg;
    cell.sweep_axes.clear();
    for (std::size_t a = 0; a < axes.size(); ++a)
      apply_kv(cell, axes[a].first, axes[a].second[index[a]]);
    run_cell(cell, cache, out);

    std::size_t a = axes.size();
    while (a > 0) {
      --a;
      if (++index[a] < axes[a].second.size()) break;
      index[a] = 0;
      if (a == 0) return out;
    }
  }
}

ValidationReport validate_all(const ExperimentConfig& cfg) {
  if (!cfg.sweep_axes.empty())
    throw std::invalid_argument("validate: config declares sweep axes");
  ValidationReport report;
  GraphCache cache;
  for (const char* algorithm : {"dc-sssp", "dc-bfs", "delta-stepping"}) {
    ExperimentConfig cell = cfg;
    cell.algorithm = algorithm;
    cell.force_validate = true;
    ExperimentOutput out;
    run_cell(cell, cache, out);
    report.entries.push_back({algorithm, out.validated_runs, out.mismatches});
    if (out.mismatches > 0) report.all_ok = false;
  }
  return report;
}

std::string rows_to_csv(const std::vector<CsvRow>& rows) {
  std::string out = csv_header();
  out += '\n';
  for (const CsvRow& row : rows) {
    out += to_csv(row);
    out += '\n';
  }
  return out;
}

}  // namespace dgalab
