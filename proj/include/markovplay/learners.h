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

#ifndef MARKOVPLAY_LEARNERS_H_
#define MARKOVPLAY_LEARNERS_H_

#include <cstdint>
#include <string>

#include <Eigen/Dense>

#include "markovplay/chain.h"
#include "markovplay/game.h"
#include "markovplay/random.h"

namespace markovplay {

// Inverse-temperature sequence beta_n.
//
//   kLogPower:  beta_n = a0 * ln(1 + n)^p with 0 < p < 1. Grows without
//               bound while beta_n / ln(n) -> 0, so the slope A_n vanishes.
//   kLogLinear: beta_n = a_const * ln(1 + n), admissible only when
//               2 * a_const * omega < 1 for the player's payoff spread omega.
struct BetaSchedule {
  enum class Kind { kLogPower, kLogLinear };

  Kind kind = Kind::kLogPower;
  double a0 = 1.0;
  double p = 0.8;
  double a_const = 0.0;
  double omega = 0.0;

  static BetaSchedule LogPower(double a0, double p);
  static BetaSchedule LogLinear(double a_const, double omega);

  // Throws DomainError when the parameters leave the admissible region.
  void Validate() const;
};

std::string ToString(BetaSchedule::Kind kind);

double BetaAt(const BetaSchedule& schedule, std::int64_t stage);

// min{1, 1 / ((stage + 1) * pi_s)}. Throws DomainError unless 0 < pi_s <= 1.
double StepSize(std::int64_t stage, double pi_s);

// K = max{ spread of the initial score, PayoffSpread(game, side) }.
double ScoreBound(const Game& game, Side side,
                  const Eigen::VectorXd& initial_score);

// The action drawn by a choice rule together with the exact row it was
// drawn from.
struct Choice {
  int action;
  Eigen::VectorXd row;
};

// What the trajectory recorder keeps of a learner.
struct LearnerSnapshot {
  Eigen::VectorXd score;
  double beta = 0.0;
  Eigen::VectorXd invariant;
  int last_action = 0;
  std::int64_t stage = 0;
};

// Payoff-based Markovian learner. Sees nothing but its own action and the
// scalar payoff it realised.
class PayoffBasedLearner {
 public:
  // An empty initial score means the zero vector.
  PayoffBasedLearner(ExplorationChain chain, BetaSchedule schedule,
                     int initial_action, Eigen::VectorXd initial_score = {},
                     std::int64_t stage = 0);

  // Samples the next action from row `last_action` of M[beta_n, R_n].
  Choice Choose(Rng& rng) const;

  // R(played) moves toward the payoff with step min{1, 1/((n+1) pi_n(played))};
  // other components stay. Then n -> n+1 and the Gibbs chain is rebuilt.
  void Update(int played, double realized_payoff);

  const Eigen::VectorXd& score() const { return score_; }
  int last_action() const { return last_action_; }
  std::int64_t stage() const { return stage_; }
  double beta() const { return current_.beta; }
  const GibbsChain& current() const { return current_; }
  const ExplorationChain& chain() const { return chain_; }
  const BetaSchedule& schedule() const { return schedule_; }
  // Last stage at which (n+1) * min_s pi_n(s) <= 1, i.e. the step-size clamp
  // could bind; 0 when it never did.
  std::int64_t last_clamped_stage() const { return last_clamped_stage_; }

  LearnerSnapshot Snapshot() const;

 private:
  ExplorationChain chain_;
  BetaSchedule schedule_;
  Eigen::VectorXd score_;
  int last_action_;
  std::int64_t stage_;
  GibbsChain current_;
  std::int64_t last_clamped_stage_ = 0;
};

// Markovian fictitious play: the same choice mechanics driven by the running
// average payoff vector U_n = G(., v_n^{-i}), which needs the opponent's
// actions and the player's own payoff function.
class FictitiousLearner {
 public:
  FictitiousLearner(ExplorationChain chain, BetaSchedule schedule,
                    int initial_action, std::int64_t stage = 0,
                    Eigen::VectorXd average = {});

  Choice Choose(Rng& rng) const;

  // `payoff_row` is G^i(., opponent_action). U moves to the running mean.
  void Update(int played, int opponent_action,
              const Eigen::VectorXd& payoff_row);

  const Eigen::VectorXd& average() const { return average_; }
  int last_action() const { return last_action_; }
  int last_opponent_action() const { return last_opponent_action_; }
  std::int64_t stage() const { return stage_; }
  double beta() const { return current_.beta; }
  const GibbsChain& current() const { return current_; }
  const ExplorationChain& chain() const { return chain_; }

  LearnerSnapshot Snapshot() const;

 private:
  ExplorationChain chain_;
  BetaSchedule schedule_;
  Eigen::VectorXd average_;
  int last_action_;
  int last_opponent_action_ = -1;
  std::int64_t stage_;
  GibbsChain current_;
};

}  // namespace markovplay

#endif  // MARKOVPLAY_LEARNERS_H_
