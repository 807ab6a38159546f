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

#include "markovplay/learners.h"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "markovplay/errors.h"

namespace markovplay {
namespace {

void CheckAction(int action, int size, const char* what) {
  if (action < 0 || action >= size) {
    throw ShapeError(std::string(what) + " " + std::to_string(action) +
                     " out of range for " + std::to_string(size) + " actions");
  }
}

Eigen::VectorXd InitialVector(Eigen::VectorXd v, int size, const char* what) {
  if (v.size() == 0) return Eigen::VectorXd::Zero(size);
  if (v.size() != size) {
    throw ShapeError(std::string(what) + " has " + std::to_string(v.size()) +
                     " entries, expected " + std::to_string(size));
  }
  if (!v.allFinite()) throw DomainError(std::string(what) + " must be finite");
  return v;
}

Choice ChooseFrom(const GibbsChain& current, int last_action, Rng& rng) {
  Eigen::VectorXd row = current.matrix.entries().row(last_action).transpose();
  const int action = SampleIndex(row, rng.Uniform());
  return Choice{action, std::move(row)};
}

}  // namespace

BetaSchedule BetaSchedule::LogPower(double a0, double p) {
  BetaSchedule schedule;
  schedule.kind = Kind::kLogPower;
  schedule.a0 = a0;
  schedule.p = p;
  schedule.Validate();
  return schedule;
}

BetaSchedule BetaSchedule::LogLinear(double a_const, double omega) {
  BetaSchedule schedule;
  schedule.kind = Kind::kLogLinear;
  schedule.a_const = a_const;
  schedule.omega = omega;
  schedule.Validate();
  return schedule;
}

void BetaSchedule::Validate() const {
  switch (kind) {
    case Kind::kLogPower:
      if (!(a0 > 0.0) || !std::isfinite(a0)) {
        throw DomainError("schedule a0 must be positive");
      }
      if (!(p > 0.0 && p < 1.0)) {
        throw DomainError("schedule exponent p must lie in (0, 1)");
      }
      return;
    case Kind::kLogLinear:
      if (!(a_const > 0.0) || !std::isfinite(a_const)) {
        throw DomainError("schedule slope must be positive");
      }
      if (!(omega >= 0.0)) throw DomainError("payoff spread must be >= 0");
      if (!(2.0 * a_const * omega < 1.0)) {
        throw DomainError("log-linear schedule needs 2 * A * omega < 1, got " +
                          std::to_string(2.0 * a_const * omega));
      }
      return;
  }
}

std::string ToString(BetaSchedule::Kind kind) {
  return kind == BetaSchedule::Kind::kLogPower ? "H" : "Hprime";
}

double BetaAt(const BetaSchedule& schedule, std::int64_t stage) {
  if (stage < 0) throw DomainError("negative stage");
  const double log_stage = std::log1p(static_cast<double>(stage));
  switch (schedule.kind) {
    case BetaSchedule::Kind::kLogPower:
      return schedule.a0 * std::pow(log_stage, schedule.p);
    case BetaSchedule::Kind::kLogLinear:
      return schedule.a_const * log_stage;
  }
  return 0.0;
}

double StepSize(std::int64_t stage, double pi_s) {
  if (!(pi_s > 0.0 && pi_s <= 1.0)) {
    throw DomainError("step size needs a probability in (0, 1], got " +
                      std::to_string(pi_s));
  }
  if (stage < 0) throw DomainError("negative stage");
  const double scaled = static_cast<double>(stage + 1) * pi_s;
  return scaled <= 1.0 ? 1.0 : 1.0 / scaled;
}

double ScoreBound(const Game& game, Side side,
                  const Eigen::VectorXd& initial_score) {
  const double initial_spread =
      initial_score.size() == 0
          ? 0.0
          : initial_score.maxCoeff() - initial_score.minCoeff();
  return std::max(initial_spread, PayoffSpread(game, side));
}

PayoffBasedLearner::PayoffBasedLearner(ExplorationChain chain,
                                       BetaSchedule schedule,
                                       int initial_action,
                                       Eigen::VectorXd initial_score,
                                       std::int64_t stage)
    : chain_(std::move(chain)),
      schedule_(schedule),
      score_(InitialVector(std::move(initial_score), chain_.size(),
                           "initial score")),
      last_action_(initial_action),
      stage_(stage),
      current_(GibbsMatrix(chain_, BetaAt(schedule_, stage_), score_)) {
  schedule_.Validate();
  CheckAction(initial_action, chain_.size(), "initial action");
}

Choice PayoffBasedLearner::Choose(Rng& rng) const {
  return ChooseFrom(current_, last_action_, rng);
}

void PayoffBasedLearner::Update(int played, double realized_payoff) {
  CheckAction(played, chain_.size(), "played action");
  if (!std::isfinite(realized_payoff)) {
    throw DomainError("realized payoff must be finite");
  }
  const Eigen::VectorXd& pi = current_.invariant;
  if (static_cast<double>(stage_ + 1) * pi.minCoeff() <= 1.0) {
    last_clamped_stage_ = stage_ + 1;
  }
  const double gamma = StepSize(stage_, pi[played]);
  score_[played] += gamma * (realized_payoff - score_[played]);
  last_action_ = played;
  ++stage_;
  current_ = GibbsMatrix(chain_, BetaAt(schedule_, stage_), score_);
}

LearnerSnapshot PayoffBasedLearner::Snapshot() const {
  return LearnerSnapshot{score_, current_.beta, current_.invariant,
                         last_action_, stage_};
}

FictitiousLearner::FictitiousLearner(ExplorationChain chain,
                                     BetaSchedule schedule, int initial_action,
                                     std::int64_t stage,
                                     Eigen::VectorXd average)
    : chain_(std::move(chain)),
      schedule_(schedule),
      average_(InitialVector(std::move(average), chain_.size(),
                             "average payoff")),
      last_action_(initial_action),
      stage_(stage),
      current_(GibbsMatrix(chain_, BetaAt(schedule_, stage_), average_)) {
  schedule_.Validate();
  CheckAction(initial_action, chain_.size(), "initial action");
}

Choice FictitiousLearner::Choose(Rng& rng) const {
  return ChooseFrom(current_, last_action_, rng);
}

void FictitiousLearner::Update(int played, int opponent_action,
                               const Eigen::VectorXd& payoff_row) {
  CheckAction(played, chain_.size(), "played action");
  if (payoff_row.size() != chain_.size()) {
    throw ShapeError("payoff row has " + std::to_string(payoff_row.size()) +
                     " entries, expected " + std::to_string(chain_.size()));
  }
  if (!payoff_row.allFinite()) throw DomainError("payoff row must be finite");
  average_ += (payoff_row - average_) / static_cast<double>(stage_ + 1);
  last_action_ = played;
  last_opponent_action_ = opponent_action;
  ++stage_;
  current_ = GibbsMatrix(chain_, BetaAt(schedule_, stage_), average_);
}

LearnerSnapshot FictitiousLearner::Snapshot() const {
  return LearnerSnapshot{average_, current_.beta, current_.invariant,
                         last_action_, stage_};
}

}  // namespace markovplay
