// Copyright 2026 The markovplay Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end: runs builtin or configured experiments and writes
// per-seed trajectory CSVs plus a summary JSON.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "markovplay/engine.h"
#include "markovplay/experiment.h"

namespace {

using markovplay::ExperimentSpec;

struct RunOptions {
  std::string config_path;
  std::string builtin;
  std::optional<std::int64_t> iterations;
  std::optional<std::uint64_t> seed;
  std::optional<int> replications;
  std::optional<std::string> procedure;
  std::optional<std::int64_t> stride;
  std::optional<double> geometric;
  std::string out_dir = "results";
  int threads = 0;
  bool quiet = false;
};

std::string ReadFile(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open " + path);
  std::ostringstream text;
  text << file.rdbuf();
  return text.str();
}

ExperimentSpec LoadSpec(const RunOptions& options) {
  ExperimentSpec spec = options.config_path.empty()
                            ? markovplay::BuiltinSpec(options.builtin)
                            : markovplay::ParseConfig(ReadFile(options.config_path));
  if (options.iterations) spec.simulation.iterations = *options.iterations;
  if (options.seed) spec.seed_base = *options.seed;
  if (options.replications) spec.replications = *options.replications;
  if (options.stride) spec.simulation.record.stride = *options.stride;
  if (options.geometric) spec.simulation.record.geometric_ratio = *options.geometric;
  if (options.procedure) {
    const markovplay::Procedure procedure =
        markovplay::ParseProcedure(*options.procedure);
    for (auto& player : spec.simulation.players) player.procedure = procedure;
  }
  markovplay::ValidateConfig(spec.simulation);
  return spec;
}

void PrintQuartiles(const std::string& label, const markovplay::Quartiles& q) {
  std::cout << fmt::format("  {:<22} median {:.6g}  iqr {:.6g}  [{:.6g}, {:.6g}]\n",
                           label, q.median, q.iqr(), q.q1, q.q3);
}

int Run(const RunOptions& options) {
  const ExperimentSpec spec = LoadSpec(options);
  const markovplay::ExperimentSummary summary =
      markovplay::RunExperiment(spec, options.out_dir, options.threads);
  if (!options.quiet) {
    std::cout << fmt::format("{}: {} replications x {} iterations ({})\n",
                             spec.name, spec.replications,
                             spec.simulation.iterations,
                             markovplay::ToString(summary.game_class));
    PrintQuartiles("final exploitability", summary.exploitability);
    PrintQuartiles("|gbar1|", summary.abs_gbar1);
    if (summary.value_error) PrintQuartiles("value error", *summary.value_error);
    if (summary.potential_drift) {
      PrintQuartiles("potential drift", *summary.potential_drift);
      PrintQuartiles("potential tail mean", *summary.potential_tail_mean);
    }
    std::cout << "  output: " << options.out_dir << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Payoff-based Markovian learning on graph-restricted games"};
  app.require_subcommand(1);

  RunOptions options;
  CLI::App* run = app.add_subcommand("run", "Run an experiment");
  auto* config = run->add_option("--config", options.config_path, "JSON experiment file")
                     ->check(CLI::ExistingFile);
  auto* builtin = run->add_option("--builtin", options.builtin, "Builtin experiment")
                      ->check(CLI::IsMember(markovplay::BuiltinNames()));
  config->excludes(builtin);
  builtin->excludes(config);
  run->add_option("--iters", options.iterations, "Stages per replication");
  run->add_option("--seed", options.seed, "Seed of the first replication");
  run->add_option("--reps", options.replications, "Number of replications");
  run->add_option("--out", options.out_dir, "Output directory");
  run->add_option("--procedure", options.procedure, "pbm or mfp (both players)")
      ->check(CLI::IsMember({"pbm", "mfp"}));
  run->add_option("--stride", options.stride, "Record every N stages");
  run->add_option("--geometric", options.geometric,
                  "Record geometrically spaced stages with this ratio");
  run->add_option("--threads", options.threads, "Worker threads (0: all cores)");
  run->add_flag("--quiet", options.quiet, "Suppress the summary printout");

  std::string show_name;
  CLI::App* show = app.add_subcommand("show", "Print a builtin experiment as JSON");
  show->add_option("name", show_name, "Builtin experiment")
      ->required()
      ->check(CLI::IsMember(markovplay::BuiltinNames()));

  CLI11_PARSE(app, argc, argv);

  try {
    if (*show) {
      std::cout << markovplay::EmitConfig(markovplay::BuiltinSpec(show_name));
      return 0;
    }
    if (options.config_path.empty() && options.builtin.empty()) {
      std::cerr << "error: run needs --config FILE or --builtin NAME\n";
      return 2;
    }
    return Run(options);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
