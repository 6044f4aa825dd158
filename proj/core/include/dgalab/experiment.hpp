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

#ifndef DGALAB_EXPERIMENT_HPP
#define DGALAB_EXPERIMENT_HPP

#include <string>
#include <vector>

#include "dgalab/config.hpp"
#include "dgalab/metrics.hpp"

namespace dgalab {

struct ExperimentOutput {
  std::vector<CsvRow> rows;
  std::size_t validated_runs = 0;
  std::size_t mismatches = 0;
};

// Executes one scalar configuration: generate (or load), partition, run
// the selected algorithm per (source, repetition), validate against the
// oracle (unconditionally up to scale 16, opt-in above), one CSV row per
// run. Faults if sweep axes are present.
ExperimentOutput run_experiment(const ExperimentConfig& cfg);

// Cartesian product over the sweep axes in key order, last axis fastest.
// Cells sharing graph parameters reuse the same graph and source vertices.
// With no axes this is exactly run_experiment.
ExperimentOutput sweep_experiment(const ExperimentConfig& cfg);

struct ValidationReport {
  struct Entry {
    std::string algorithm;
    std::size_t runs = 0;
    std::size_t mismatches = 0;
  };
  std::vector<Entry> entries;
  bool all_ok = true;
};

// Runs every algorithm on the configuration and compares each run against
// the oracle, regardless of scale.
ValidationReport validate_all(const ExperimentConfig& cfg);

std::string rows_to_csv(const std::vector<CsvRow>& rows);

}  // namespace dgalab

#endif  // DGALAB_EXPERIMENT_HPP
