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

#ifndef MARKOVPLAY_EXPERIMENT_H_
#define MARKOVPLAY_EXPERIMENT_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "markovplay/diagnostics.h"
#include "markovplay/engine.h"

namespace markovplay {

struct OutputOptions {
  bool trajectory_csv = true;
  bool summary_json = true;
};

// A multi-seed experiment. `simulation.seed` is ignored; replication k runs
// with seed seed_base + k.
struct ExperimentSpec {
  std::string name;
  std::optional<std::string> builtin;
  SimulationConfig simulation;
  int replications = 1;
  std::uint64_t seed_base = 0;
  OutputOptions outputs;
  // Game value, for zero-sum games.
  std::optional<double> value;
  double tail_fraction = 0.2;
};

// "rsp", "potential_gprime", "coordination_c".
std::vector<std::string> BuiltinNames();

// Builtin experiments with 5e5 iterations, 20 replications, seed_base 1,
// stride 100, both players on the payoff-based procedure with the default
// schedule beta_n = ln(1 + n)^0.8. Throws ConfigError for unknown names.
ExperimentSpec BuiltinSpec(const std::string& name);

// Parses the JSON experiment description (see README). Matrices are lists of
// rows whose entries are numbers or strings such as "1/3". When "builtin" is
// present the builtin spec is the starting point and every other key
// overrides it. Exploration matrices are certified here. Errors are
// ConfigError with the JSON path first, or the chain_analysis errors
// prefixed by the matrix path.
ExperimentSpec ParseConfig(const std::string& text);

// Fully expanded JSON; ParseConfig(EmitConfig(s)) is equivalent to s.
std::string EmitConfig(const ExperimentSpec& spec);

struct Quartiles {
  double q1 = 0.0;
  double median = 0.0;
  double q3 = 0.0;
  double iqr() const { return q3 - q1; }
};

// Linear-interpolation quartiles. Throws DomainError on empty input.
Quartiles ComputeQuartiles(std::vector<double> values);

struct ReplicationResult {
  std::uint64_t seed = 0;
  Trajectory trajectory;
  ConvergenceReport report;
  MixedProfile final_profile;
  double gbar1 = 0.0;
  double gbar2 = 0.0;
  double gbar1_tail_mean = 0.0;
  // Identical-interest games: nearest strict equilibrium and its payoff.
  std::optional<NearestEquilibrium> nearest_strict;
  std::optional<double> gbar_limit;
};

struct ExperimentSummary {
  std::string name;
  GameClass game_class = GameClass::kGeneral;
  std::vector<ReplicationResult> replications;  // in seed order
  Quartiles exploitability;
  Quartiles abs_gbar1;
  std::optional<Quartiles> value_error;
  std::optional<Quartiles> potential_drift;
  std::optional<Quartiles> potential_tail_mean;
};

// Runs all replications on up to `threads` workers (0: hardware
// concurrency). A failing replication aborts with an error naming its seed.
ExperimentSummary RunReplications(const ExperimentSpec& spec, int threads = 0);

// RunReplications plus file output into `out_dir` (created if missing):
// <name>_seed<seed>.csv per replication and <name>_summary.json.
ExperimentSummary RunExperiment(const ExperimentSpec& spec,
                                const std::filesystem::path& out_dir,
                                int threads = 0);

// Header n,v1_0..,v2_0..,gbar1,gbar2[,phibar]; 12 significant digits; '\n'.
std::string FormatTrajectoryCsv(const Trajectory& trajectory);
void WriteTrajectoryCsv(const Trajectory& trajectory,
                        const std::filesystem::path& path);

// {name, seeds: [...], aggregate: {...}}
std::string FormatSummaryJson(const ExperimentSpec& spec,
                              const ExperimentSummary& summary);

std::string TrajectoryFileName(const std::string& name, std::uint64_t seed);
std::string SummaryFileName(const std::string& name);

}  // namespace markovplay

#endif  // MARKOVPLAY_EXPERIMENT_H_
