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

#include "markovplay/engine.h"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "markovplay/errors.h"

namespace markovplay {
namespace {

std::string PlayerPath(Side side) {
  return "players[" + std::to_string(Index(side)) + "]";
}

Learner MakeLearner(const PlayerSetup& setup, Rng& rng) {
  const int initial_action = SampleIndex(setup.chain.pi0(), rng.Uniform());
  if (setup.procedure == Procedure::kPayoffBased) {
    return PayoffBasedLearner(setup.chain, setup.schedule, initial_action);
  }
  return FictitiousLearner(setup.chain, setup.schedule, initial_action);
}

int LastAction(const Learner& learner) {
  return std::visit([](const auto& l) { return l.last_action(); }, learner);
}

Choice ChooseWith(const Learner& learner, Rng& rng) {
  return std::visit([&rng](const auto& l) { return l.Choose(rng); }, learner);
}

// Payoff-based learners get the scalar payoff and nothing else.
void Inform(Learner& learner, const Game& game, Side side,
            const std::array<int, 2>& played, double payoff) {
  if (auto* pbm = std::get_if<PayoffBasedLearner>(&learner)) {
    pbm->Update(played[Index(side)], payoff);
    return;
  }
  auto& mfp = std::get<FictitiousLearner>(learner);
  const int opponent_action = played[Index(Opponent(side))];
  const Eigen::VectorXd row =
      side == Side::kRow ? Eigen::VectorXd(game.payoff(side).col(opponent_action))
                         : Eigen::VectorXd(game.payoff(side).row(opponent_action).transpose());
  mfp.Update(played[Index(side)], opponent_action, row);
}

SimulationConfig WithPayoffSpreads(SimulationConfig config) {
  for (Side side : kSides) {
    BetaSchedule& schedule = config.players[Index(side)].schedule;
    if (schedule.kind == BetaSchedule::Kind::kLogLinear) {
      schedule.omega = PayoffSpread(config.game, side);
    }
  }
  return config;
}

}  // namespace

std::string ToString(Procedure procedure) {
  return procedure == Procedure::kPayoffBased ? "pbm" : "mfp";
}

Procedure ParseProcedure(const std::string& name) {
  if (name == "pbm") return Procedure::kPayoffBased;
  if (name == "mfp") return Procedure::kFictitious;
  throw ConfigError("procedure: expected \"pbm\" or \"mfp\", got \"" + name +
                    "\"");
}

void ValidateConfig(const SimulationConfig& config) {
  if (config.iterations < 1) throw ConfigError("iterations: must be >= 1");
  if (config.record.stride < 1) throw ConfigError("record_stride: must be >= 1");
  const double ratio = config.record.geometric_ratio;
  if (!(ratio == 0.0 || (ratio > 1.0 && std::isfinite(ratio)))) {
    throw ConfigError("geometric_ratio: must be 0 (off) or > 1");
  }
  for (Side side : kSides) {
    const PlayerSetup& setup = config.players[Index(side)];
    if (setup.chain.size() != config.game.num_actions(side)) {
      throw ConfigError(PlayerPath(side) + ".exploration: chain has " +
                        std::to_string(setup.chain.size()) + " states, player has " +
                        std::to_string(config.game.num_actions(side)) +
                        " actions");
    }
    BetaSchedule schedule = setup.schedule;
    if (schedule.kind == BetaSchedule::Kind::kLogLinear) {
      schedule.omega = PayoffSpread(config.game, side);
    }
    try {
      schedule.Validate();
    } catch (const DomainError& e) {
      throw ConfigError(PlayerPath(side) + ".schedule: " + e.what());
    }
  }
  if (config.potential) {
    if (config.potential->rows() != config.game.num_actions(Side::kRow) ||
        config.potential->cols() != config.game.num_actions(Side::kColumn)) {
      throw ConfigError("potential: shape does not match the game");
    }
    if (!config.potential->allFinite()) {
      throw ConfigError("potential: entries must be finite");
    }
  }
}

MixedProfile Trajectory::FinalProfile() const {
  if (stages.empty()) throw DomainError("empty trajectory");
  return MixedProfile{MixedStrategy(v1.back()), MixedStrategy(v2.back())};
}

Observation ObservePayoffs(const Game& game, int row_action, int column_action,
                           const Eigen::MatrixXd* potential) {
  if (row_action < 0 || row_action >= game.num_actions(Side::kRow) ||
      column_action < 0 || column_action >= game.num_actions(Side::kColumn)) {
    throw ShapeError("profile (" + std::to_string(row_action) + "," +
                     std::to_string(column_action) + ") out of range");
  }
  Observation obs{game.payoff(Side::kRow, row_action, column_action),
                  game.payoff(Side::kColumn, row_action, column_action),
                  std::nullopt};
  if (potential != nullptr) obs.phi = (*potential)(row_action, column_action);
  return obs;
}

Eigen::VectorXd EmpiricalUpdate(const Eigen::VectorXd& v, std::int64_t stage,
                                int action) {
  if (action < 0 || action >= v.size()) {
    throw ShapeError("action " + std::to_string(action) + " out of range");
  }
  Eigen::VectorXd delta = Eigen::VectorXd::Zero(v.size());
  delta[action] = 1.0;
  return v + (delta - v) / static_cast<double>(stage + 1);
}

Simulation::Simulation(const SimulationConfig& config)
    : config_(WithPayoffSpreads(config)),
      rngs_{Rng::ForPlayer(config.seed, 0), Rng::ForPlayer(config.seed, 1)},
      learners_{MakeLearner(config_.players[0], rngs_[0]),
                MakeLearner(config_.players[1], rngs_[1])},
      counts_{std::vector<std::int64_t>(config.game.num_actions(Side::kRow), 0),
              std::vector<std::int64_t>(config.game.num_actions(Side::kColumn), 0)} {}

StageEvent Simulation::Step() {
  StageEvent event;
  event.stage = stage_ + 1;
  // Both choices come from the stage-n states.
  for (Side side : kSides) {
    const int i = Index(side);
    event.previous[i] = LastAction(learners_[i]);
    Choice choice = ChooseWith(learners_[i], rngs_[i]);
    event.played[i] = choice.action;
    event.rows[i] = std::move(choice.row);
  }
  const Observation obs =
      ObservePayoffs(config_.game, event.played[0], event.played[1],
                     config_.potential ? &*config_.potential : nullptr);
  event.payoffs = {obs.g1, obs.g2};
  for (Side side : kSides) {
    Inform(learners_[Index(side)], config_.game, side, event.played,
           event.payoffs[Index(side)]);
  }

  const double weight = 1.0 / static_cast<double>(stage_ + 1);
  for (int i = 0; i < 2; ++i) {
    ++counts_[i][event.played[i]];
    gbar_[i] += (event.payoffs[i] - gbar_[i]) * weight;
  }
  if (obs.phi) phibar_ += (*obs.phi - phibar_) * weight;
  ++stage_;
  return event;
}

Eigen::VectorXd Simulation::Frequencies(Side side) const {
  const auto& counts = counts_[Index(side)];
  Eigen::VectorXd v(static_cast<Eigen::Index>(counts.size()));
  if (stage_ == 0) {
    v.setZero();
    return v;
  }
  for (std::size_t s = 0; s < counts.size(); ++s) {
    v[static_cast<Eigen::Index>(s)] =
        static_cast<double>(counts[s]) / static_cast<double>(stage_);
  }
  return v;
}

LearnerSnapshot Simulation::Snapshot(Side side) const {
  return std::visit([](const auto& l) { return l.Snapshot(); },
                    learners_[Index(side)]);
}

Trajectory Run(const SimulationConfig& config, const StageObserver& observer) {
  ValidateConfig(config);
  Simulation simulation(config);
  Trajectory trajectory;
  const bool geometric = config.record.geometric_ratio > 1.0;
  std::int64_t next_geometric = 1;

  for (std::int64_t n = 1; n <= config.iterations; ++n) {
    const StageEvent event = simulation.Step();
    if (observer) observer(simulation, event);

    bool record = n == config.iterations;
    if (geometric) {
      if (n == next_geometric) {
        record = true;
        next_geometric = std::max<std::int64_t>(
            n + 1, static_cast<std::int64_t>(
                       std::ceil(static_cast<double>(n) *
                                 config.record.geometric_ratio)));
      }
    } else if (n % config.record.stride == 0) {
      record = true;
    }
    if (!record) continue;

    trajectory.stages.push_back(n);
    trajectory.v1.push_back(simulation.Frequencies(Side::kRow));
    trajectory.v2.push_back(simulation.Frequencies(Side::kColumn));
    trajectory.gbar1.push_back(simulation.AveragePayoff(Side::kRow));
    trajectory.gbar2.push_back(simulation.AveragePayoff(Side::kColumn));
    if (config.potential) trajectory.phibar.push_back(simulation.AveragePotential());
  }
  trajectory.final_state = {simulation.Snapshot(Side::kRow),
                            simulation.Snapshot(Side::kColumn)};
  return trajectory;
}

}  // namespace markovplay
