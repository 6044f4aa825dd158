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

#include "dgalab/config.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <sstream>
#include <stdexcept>

namespace dgalab {

namespace {

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
  if (value.empty() || value.find_first_not_of("0123456789") != std::string::npos)
    throw std::invalid_argument(key + ": expected a non-negative integer, got \"" +
                                value + "\"");
  errno = 0;
  const unsigned long long v = std::strtoull(value.c_str(), nullptr, 10);
  if (errno != 0)
    throw std::invalid_argument(key + ": value out of range: \"" + value + "\"");
  return v;
}

std::uint32_t parse_u32(const std::string& key, const std::string& value) {
  const std::uint64_t v = parse_u64(key, value);
  if (v > std::numeric_limits<std::uint32_t>::max())
    throw std::invalid_argument(key + ": value out of range: \"" + value + "\"");
  return static_cast<std::uint32_t>(v);
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "1" || value == "true" || value == "yes" || value == "on")
    return true;
  if (value == "0" || value == "false" || value == "no" || value == "off")
    return false;
  throw std::invalid_argument(key + ": expected a boolean, got \"" + value + "\"");
}

std::string trim(const std::string& s) {
  const std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(value);
  while (std::getline(in, item, ',')) out.push_back(trim(item));
  return out;
}

void apply_scalar(ExperimentConfig& cfg, const std::string& key,
                  const std::string& value) {
  if (key == "scale") cfg.scale = parse_u32(key, value);
  else if (key == "edgefactor") cfg.edgefactor = parse_u32(key, value);
  else if (key == "max_weight") cfg.max_weight = parse_u32(key, value);
  else if (key == "num_ranks") cfg.rt.num_ranks = parse_u32(key, value);
  else if (key == "seed") cfg.rt.seed = parse_u64(key, value);
  else if (key == "algorithm") cfg.algorithm = value;
  else if (key == "sources") cfg.sources = parse_u32(key, value);
  else if (key == "repetitions") cfg.repetitions = parse_u32(key, value);
  else if (key == "validate") cfg.force_validate = parse_bool(key, value);
  else if (key == "graph.file") cfg.graph_file = value;
  else if (key == "rt.coalescing_size") cfg.rt.coalescing_size = parse_u64(key, value);
  else if (key == "rt.flush_period") cfg.rt.flush_period = parse_u64(key, value);
  else if (key == "rt.ee") cfg.rt.ee = parse_u64(key, value);
  else if (key == "rt.el") cfg.rt.el = parse_u64(key, value);
  else if (key == "rt.cache_capacity") cfg.rt.cache_capacity = parse_u64(key, value);
  else if (key == "rt.priority_messages") cfg.rt.priority_messages = parse_bool(key, value);
  else if (key == "rt.self_send_check") cfg.rt.self_send_check = parse_bool(key, value);
  else if (key == "rt.delta") cfg.rt.delta = parse_u64(key, value);
  else if (key == "rt.horizon") cfg.rt.horizon = parse_u64(key, value);
  else if (key == "net.base_latency") cfg.rt.net.base_latency = parse_u64(key, value);
  else if (key == "net.byte_cost") cfg.rt.net.byte_cost = parse_u64(key, value);
  else if (key == "net.send_overhead") cfg.rt.net.send_overhead = parse_u64(key, value);
  else if (key == "net.eager_threshold_bytes")
    cfg.rt.net.eager_threshold_bytes = parse_u64(key, value);
  else if (key == "net.rendezvous_rtt") cfg.rt.net.rendezvous_rtt = parse_u64(key, value);
  else if (key == "net.chunk_penalty") cfg.rt.net.chunk_penalty = parse_u64(key, value);
  else if (key == "net.barrier_latency") cfg.rt.net.barrier_latency = parse_u64(key, value);
  else {
    std::string msg = "unknown config key \"" + key + "\"; valid keys:";
    for (const std::string& k : valid_keys()) msg += " " + k;
    throw std::invalid_argument(msg);
  }
}

}  // namespace

const std::vector<std::string>& valid_keys() {
  static const std::vector<std::string> keys = {
      "scale", "edgefactor", "max_weight", "num_ranks", "seed", "algorithm",
      "sources", "repetitions", "validate", "graph.file",
      "rt.coalescing_size", "rt.flush_period", "rt.ee", "rt.el",
      "rt.cache_capacity", "rt.priority_messages", "rt.self_send_check",
      "rt.delta", "rt.horizon",
      "net.base_latency", "net.byte_cost", "net.send_overhead",
      "net.eager_threshold_bytes", "net.rendezvous_rtt", "net.chunk_penalty",
      "net.barrier_latency"};
  return keys;
}

void apply_kv(ExperimentConfig& cfg, const std::string& key,
              const std::string& value) {
  if (key.rfind("sweep.", 0) == 0) {
    const std::string target = key.substr(6);
    if (std::find(valid_keys().begin(), valid_keys().end(), target) ==
        valid_keys().end()) {
      std::string msg = "unknown sweep axis \"" + target + "\"; valid keys:";
      for (const std::string& k : valid_keys()) msg += " " + k;
      throw std::invalid_argument(msg);
    }
    std::vector<std::string> values = split_list(value);
    if (values.empty())
      throw std::invalid_argument(key + ": sweep axis needs at least one value");
    cfg.sweep_axes[target] = std::move(values);
    return;
  }
  apply_scalar(cfg, key, value);
}

void parse_config_stream(std::istream& in, const std::string& name,
                         ExperimentConfig& cfg) {
  std::string line;
  std::uint64_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped[0] == '#') continue;
    const std::size_t eq = stripped.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument(name + ":" + std::to_string(line_no) +
                                  ": expected key=value, got \"" + stripped + "\"");
    apply_kv(cfg, trim(stripped.substr(0, eq)), trim(stripped.substr(eq + 1)));
  }
}

ExperimentConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(path + ": cannot open");
  ExperimentConfig cfg;
  parse_config_stream(in, path, cfg);
  return cfg;
}

void apply_env_overrides(ExperimentConfig& cfg) {
  if (const char* seed = std::getenv("DGALAB_SEED"))
    cfg.rt.seed = parse_u64("DGALAB_SEED", seed);
}

void check(const ExperimentConfig& cfg) {
  if (cfg.graph_file.empty()) {
    if (cfg.scale < 1 || cfg.scale > 30)
      throw std::invalid_argument("scale must be in [1, 30]");
    if (cfg.edgefactor < 1) throw std::invalid_argument("edgefactor must be >= 1");
    if (cfg.max_weight < 1) throw std::invalid_argument("max_weight must be >= 1");
  }
  if (cfg.sources < 1) throw std::invalid_argument("sources must be >= 1");
  if (cfg.repetitions < 1) throw std::invalid_argument("repetitions must be >= 1");
  if (cfg.algorithm != "dc-sssp" && cfg.algorithm != "dc-bfs" &&
      cfg.algorithm != "delta-stepping")
    throw std::invalid_argument(
        "algorithm must be one of: dc-sssp, dc-bfs, delta-stepping");
  cfg.rt.check();
}

}  // namespace dgalab
