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

#ifndef MARKOVPLAY_ENGINE_H_
#define MARKOVPLAY_ENGINE_H_

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "markovplay/chain.h"
#include "markovplay/game.h"
#include "markovplay/learners.h"
#include "markovplay/random.h"

namespace markovplay {

enum class Procedure { kPayoffBased, kFictitious };

std::string ToString(Procedure procedure);  // "pbm" / "mfp"
Procedure ParseProcedure(const std::string& name);

struct PlayerSetup {
  Procedure procedure = Procedure::kPayoffBased;
  ExplorationChain chain;
  BetaSchedule schedule;
};

// Which stages the trajectory keeps. Multiples of `stride` are recorded, or,
// when geometric_ratio > 1, the stages 1, ceil(1 * ratio), ... (strictly
// increasing). The final stage is always recorded.
struct RecordPolicy {
  std::int64_t stride = 100;
  double geometric_ratio = 0.0;
};

struct SimulationConfig {
  Game game;
  std::array<PlayerSetup, 2> players;
  std::int64_t iterations = 1;
  std::uint64_t seed = 0;
  RecordPolicy record;
  std::optional<Eigen::MatrixXd> potential;
};

// Throws ConfigError on any inconsistency. For kLogLinear schedules the
// player's payoff spread is computed from the game and 2 * A * omega < 1 is
// enforced.
void ValidateConfig(const SimulationConfig& config);

struct Trajectory {
  std::vector<std::int64_t> stages;
  std::vector<Eigen::VectorXd> v1;
  std::vector<Eigen::VectorXd> v2;
  std::vector<double> gbar1;
  std::vector<double> gbar2;
  // Empty when no potential is configured.
  std::vector<double> phibar;
  std::array<LearnerSnapshot, 2> final_state;

  bool has_potential() const { return !phibar.empty(); }
  // Empirical frequencies at the last recorded stage.
  MixedProfile FinalProfile() const;
};

struct Observation {
  double g1;
  double g2;
  std::optional<double> phi;
};

// Table lookups for the realised profile. Throws ShapeError on bad indices.
Observation ObservePayoffs(const Game& game, int row_action, int column_action,
                           const Eigen::MatrixXd* potential = nullptr);

// v_{n+1} = v_n + (delta_s - v_n) / (n + 1).
Eigen::VectorXd EmpiricalUpdate(const Eigen::VectorXd& v, std::int64_t stage,
                                int action);

// Everything that happened during one stage, for observers.
struct StageEvent {
  std::int64_t stage;             // n + 1
  std::array<int, 2> previous;    // s_n
  std::array<int, 2> played;      // s_{n+1}
  std::array<double, 2> payoffs;  // g_{n+1}
  std::array<Eigen::VectorXd, 2> rows;  // choice-rule rows used
};

using Learner = std::variant<PayoffBasedLearner, FictitiousLearner>;

// One repeated-game run, advanced a stage at a time. Both players draw from
// their stage-n states before either state is updated.
class Simulation {
 public:
  explicit Simulation(const SimulationConfig& config);

  StageEvent Step();

  std::int64_t stage() const { return stage_; }
  const Learner& learner(Side side) const { return learners_[Index(side)]; }
  const std::vector<std::int64_t>& counts(Side side) const {
    return counts_[Index(side)];
  }
  Eigen::VectorXd Frequencies(Side side) const;
  double AveragePayoff(Side side) const { return gbar_[Index(side)]; }
  double AveragePotential() const { return phibar_; }
  LearnerSnapshot Snapshot(Side side) const;

 private:
  SimulationConfig config_;
  std::array<Rng, 2> rngs_;
  std::array<Learner, 2> learners_;
  std::array<std::vector<std::int64_t>, 2> counts_;
  std::array<double, 2> gbar_ = {0.0, 0.0};
  double phibar_ = 0.0;
  std::int64_t stage_ = 0;
};

using StageObserver = std::function<void(const Simulation&, const StageEvent&)>;

// Validates, then runs config.iterations stages. Deterministic per seed.
Trajectory Run(const SimulationConfig& config,
               const StageObserver& observer = nullptr);

}  // namespace markovplay

#endif  // MARKOVPLAY_ENGINE_H_
