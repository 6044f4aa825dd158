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

#ifndef DGALAB_CONFIG_HPP
#define DGALAB_CONFIG_HPP

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "dgalab/runtime.hpp"
#include "dgalab/types.hpp"

namespace dgalab {

// A full experiment description: graph parameters, the runtime parameter
// space, the algorithm to drive, and optional list-valued sweep axes keyed
// by the scalar config key they override.
struct ExperimentConfig {
  std::uint32_t scale = 8;
  std::uint32_t edgefactor = 16;
  Weight max_weight = 100;
  std::string graph_file;  // when non-empty, load instead of generate
  std::string algorithm = "dc-sssp";
  std::uint32_t sources = 1;
  std::uint32_t repetitions = 1;
  bool force_validate = false;  // oracle check above scale 16 too
  RuntimeConfig rt;             // carries seed and num_ranks

  std::map<std::string, std::vector<std::string>> sweep_axes;
};

// Scalar keys accepted in config files and as --key flags.
const std::vector<std::string>& valid_keys();

// Applies one key=value assignment. "sweep.<key>=a,b,c" declares an axis.
// Unknown keys fault with the list of valid keys.
void apply_kv(ExperimentConfig& cfg, const std::string& key,
              const std::string& value);

// Flat key=value text, '#' comments and blank lines allowed.
void parse_config_stream(std::istream& in, const std::string& name,
                         ExperimentConfig& cfg);
ExperimentConfig parse_config_file(const std::string& path);

// DGALAB_SEED takes precedence over file and flag values.
void apply_env_overrides(ExperimentConfig& cfg);

// Faults on invariant violations (ee >= 1, scale in [1,30], ...).
void check(const ExperimentConfig& cfg);

}  // namespace dgalab

#endif  // DGALAB_CONFIG_HPP
