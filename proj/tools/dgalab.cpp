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

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "dgalab/config.hpp"
#include "dgalab/experiment.hpp"
#include "dgalab/graph.hpp"

namespace {

struct ArgState {
  std::string config_path;
  std::string out_path;
  std::vector<std::pair<std::string, std::string>> assignments;
};

// Every config key is mirrored as a --key flag (and --sweep.key for axes);
// flags override file values, DGALAB_SEED overrides both.
void add_config_options(CLI::App* cmd, ArgState& st) {
  cmd->add_option("--config", st.config_path, "key=value config file");
  cmd->add_option("--out", st.out_path, "output file (default: stdout)");
  for (const std::string& key : dgalab::valid_keys()) {
    cmd->add_option_function<std::string>(
        "--" + key,
        [&st, key](const std::string& v) { st.assignments.emplace_back(key, v); });
    cmd->add_option_function<std::string>(
        "--sweep." + key, [&st, key](const std::string& v) {
          st.assignments.emplace_back("sweep." + key, v);
        });
  }
}

dgalab::ExperimentConfig build_config(const ArgState& st) {
  dgalab::ExperimentConfig cfg;
  if (!st.config_path.empty()) cfg = dgalab::parse_config_file(st.config_path);
  for (const auto& [key, value] : st.assignments) dgalab::apply_kv(cfg, key, value);
  dgalab::apply_env_overrides(cfg);
  return cfg;
}

int write_output(const ArgState& st, const std::string& text) {
  if (st.out_path.empty()) {
    std::cout << text;
    return 0;
  }
  std::ofstream out(st.out_path);
  if (!out) {
    std::cerr << "dgalab: cannot open " << st.out_path << " for writing\n";
    return 2;
  }
  out << text;
  return 0;
}

int cmd_generate(const ArgState& st) {
  const dgalab::ExperimentConfig cfg = build_config(st);
  dgalab::check(cfg);
  const dgalab::EdgeList edges =
      cfg.graph_file.empty()
          ? dgalab::generate_kronecker(cfg.scale, cfg.edgefactor, cfg.max_weight,
                                       cfg.rt.seed)
          : dgalab::load_edge_list(cfg.graph_file);
  std::ostringstream text;
  dgalab::save_edge_list(edges, text);
  return write_output(st, text.str());
}

int cmd_run(const ArgState& st, bool sweep) {
  const dgalab::ExperimentConfig cfg = build_config(st);
  const dgalab::ExperimentOutput out =
      sweep ? dgalab::sweep_experiment(cfg) : dgalab::run_experiment(cfg);
  const int rc = write_output(st, dgalab::rows_to_csv(out.rows));
  if (rc != 0) return rc;
  if (out.mismatches > 0) {
    std::cerr << "dgalab: " << out.mismatches << " of " << out.validated_runs
              << " validated runs disagree with the oracle\n";
    return 1;
  }
  return 0;
}

int cmd_validate(const ArgState& st) {
  const dgalab::ExperimentConfig cfg = build_config(st);
  const dgalab::ValidationReport report = dgalab::validate_all(cfg);
  std::ostringstream text;
  for (const auto& e : report.entries) {
    text << e.algorithm << ": " << e.runs << " runs, " << e.mismatches
         << " mismatches [" << (e.mismatches == 0 ? "PASS" : "FAIL") << "]\n";
  }
  text << (report.all_ok ? "validation passed" : "validation FAILED") << "\n";
  const int rc = write_output(st, text.str());
  if (rc != 0) return rc;
  return report.all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dgalab: a deterministic laboratory for distributed SSSP/BFS runtimes"};
  app.require_subcommand(1);

  ArgState gen_args, run_args, sweep_args, validate_args;
  CLI::App* gen = app.add_subcommand("generate", "emit a weighted edge list");
  CLI::App* run = app.add_subcommand("run", "run one configuration, emit CSV");
  CLI::App* sweep =
      app.add_subcommand("sweep", "run the Cartesian sweep, emit CSV");
  CLI::App* validate =
      app.add_subcommand("validate", "compare every algorithm with the oracle");
  add_config_options(gen, gen_args);
  add_config_options(run, run_args);
  add_config_options(sweep, sweep_args);
  add_config_options(validate, validate_args);

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) return cmd_generate(gen_args);
    if (run->parsed()) return cmd_run(run_args, /*sweep=*/false);
    if (sweep->parsed()) return cmd_run(sweep_args, /*sweep=*/true);
    if (validate->parsed()) return cmd_validate(validate_args);
  } catch (const std::exception& e) {
    std::cerr << "dgalab: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
