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

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "markovplay/builtins.h"
#include "markovplay/errors.h"
#include "markovplay/random.h"

namespace markovplay {
namespace {

constexpr int kR = 0, kS = 1, kP = 2;

ExplorationChain Rsp() {
  return CheckExploration(StochasticMatrix(builtins::PathExploration()));
}

ExplorationChain Complete2() {
  return CheckExploration(StochasticMatrix(Eigen::Matrix2d::Constant(0.5)));
}

const BetaSchedule kDefault = BetaSchedule::LogPower(1.0, 0.8);

TEST(BetaScheduleTest, LogPowerValues) {
  EXPECT_EQ(BetaAt(kDefault, 0), 0.0);
  EXPECT_NEAR(BetaAt(kDefault, 1), std::pow(std::log(2.0), 0.8), 1e-15);
  EXPECT_NEAR(BetaAt(BetaSchedule::LogPower(2.5, 0.5), 9),
              2.5 * std::sqrt(std::log(10.0)), 1e-14);
  // ln(1 + n) = 1 needs n = e - 1, which is not a stage; the exponent then
  // drops out, which we check on the continuous formula's neighbours.
  for (double p : {0.2, 0.5, 0.9}) {
    const BetaSchedule s = BetaSchedule::LogPower(1.0, p);
    EXPECT_LT(BetaAt(s, 1), 1.0);  // ln 2 < 1
    EXPECT_GT(BetaAt(s, 2), 1.0);  // ln 3 > 1
  }
}

TEST(BetaScheduleTest, GrowsSlowerThanLog) {
  double previous_beta = 0.0;
  double previous_ratio = std::numeric_limits<double>::infinity();
  for (std::int64_t n = 10; n <= 1000000; n *= 10) {
    const double beta = BetaAt(kDefault, n);
    const double ratio = beta / std::log(static_cast<double>(n));  // A_n
    EXPECT_GT(beta, previous_beta);
    EXPECT_LT(ratio, previous_ratio);
    previous_beta = beta;
    previous_ratio = ratio;
  }
  EXPECT_LT(previous_ratio, 0.7);
  for (std::int64_t n = 0; n < 2000; ++n) {
    EXPECT_LE(BetaAt(kDefault, n), BetaAt(kDefault, n + 1));
  }
}

TEST(BetaScheduleTest, LogLinearAndValidation) {
  const BetaSchedule s = BetaSchedule::LogLinear(0.2, 2.0);
  EXPECT_NEAR(BetaAt(s, 99), 0.2 * std::log(100.0), 1e-14);
  EXPECT_THROW(BetaSchedule::LogLinear(0.25, 2.0), DomainError);  // 2*A*omega = 1
  EXPECT_THROW(BetaSchedule::LogLinear(-1.0, 0.0), DomainError);
  EXPECT_THROW(BetaSchedule::LogPower(0.0, 0.5), DomainError);
  EXPECT_THROW(BetaSchedule::LogPower(1.0, 1.0), DomainError);
  EXPECT_THROW(BetaSchedule::LogPower(1.0, 0.0), DomainError);
  EXPECT_THROW(BetaAt(kDefault, -1), DomainError);
  EXPECT_EQ(ToString(BetaSchedule::Kind::kLogPower), "H");
  EXPECT_EQ(ToString(BetaSchedule::Kind::kLogLinear), "Hprime");
}

TEST(StepSizeTest, Examples) {
  EXPECT_EQ(StepSize(0, 0.9), 1.0);
  EXPECT_EQ(StepSize(9, 0.1), 1.0);  // (n+1) pi = 1
  EXPECT_NEAR(StepSize(999, 0.5), 0.002, 1e-15);
  EXPECT_THROW(StepSize(3, 0.0), DomainError);
  EXPECT_THROW(StepSize(3, -0.2), DomainError);
  EXPECT_THROW(StepSize(3, 1.5), DomainError);
}

TEST(ScoreBoundTest, UsesTheLargerSpread) {
  const Game rsp = builtins::RockScissorsPaper();
  EXPECT_EQ(ScoreBound(rsp, Side::kRow, Eigen::Vector3d::Zero()), 2.0);
  EXPECT_EQ(ScoreBound(rsp, Side::kRow, Eigen::Vector3d(-3, 0, 1)), 4.0);
}

TEST(PayoffBasedLearnerTest, ZeroBetaRowIsExplorationRow) {
  const PayoffBasedLearner learner(Rsp(), kDefault, kS, Eigen::Vector3d(3, -1, 2));
  Rng rng(1);
  const Choice choice = learner.Choose(rng);
  EXPECT_TRUE(choice.row.isApprox(builtins::PathExploration().row(kS).transpose()));
}

TEST(PayoffBasedLearnerTest, RestrictionGraphRespected) {
  PayoffBasedLearner learner(Rsp(), kDefault, kR);
  Rng rng(5);
  for (int i = 0; i < 2000; ++i) {
    const int previous = learner.last_action();
    const Choice choice = learner.Choose(rng);
    if (previous == kR) EXPECT_EQ(choice.row[kP], 0.0);
    EXPECT_TRUE(choice.action == previous ||
                builtins::PathExploration()(previous, choice.action) > 0.0);
    EXPECT_NEAR(choice.row.sum(), 1.0, 1e-12);
    EXPECT_GE(choice.row.minCoeff(), 0.0);
    learner.Update(choice.action, choice.action == kP ? 1.0 : -0.5);
  }
}

TEST(PayoffBasedLearnerTest, HandEvaluatedChoiceRow) {
  // beta_1 = ln 2 under beta_n = ln(1 + n).
  const BetaSchedule log2 = BetaSchedule::LogLinear(1.0, 0.0);
  const PayoffBasedLearner learner(Rsp(), log2, kS, Eigen::Vector3d(0, 10, 0), 1);
  EXPECT_NEAR(learner.beta(), std::log(2.0), 1e-15);
  Rng rng(3);
  const Choice choice = learner.Choose(rng);
  EXPECT_NEAR(choice.row[kR], std::ldexp(1.0 / 3, -10), 1e-15);
  EXPECT_NEAR(choice.row[kP], std::ldexp(1.0 / 3, -10), 1e-15);
  EXPECT_NEAR(choice.row[kS], 1.0 - 2 * std::ldexp(1.0 / 3, -10), 1e-15);
}

TEST(PayoffBasedLearnerTest, UpdateTouchesOnlyThePlayedAction) {
  PayoffBasedLearner learner(Rsp(), kDefault, kR, Eigen::Vector3d(0.5, -0.25, 0.75), 50);
  const double pi_s = learner.current().invariant[kS];
  const double gamma = StepSize(50, pi_s);
  learner.Update(kS, 1.0);
  EXPECT_EQ(learner.score()[kR], 0.5);
  EXPECT_EQ(learner.score()[kP], 0.75);
  EXPECT_NEAR(learner.score()[kS], -0.25 + gamma * 1.25, 1e-15);
  EXPECT_EQ(learner.stage(), 51);
  EXPECT_EQ(learner.last_action(), kS);
  EXPECT_NEAR(learner.beta(), BetaAt(kDefault, 51), 1e-15);
  const GibbsChain rebuilt = GibbsMatrix(learner.chain(), BetaAt(kDefault, 51),
                                         learner.score());
  EXPECT_EQ(rebuilt.matrix.entries(), learner.current().matrix.entries());
}

TEST(PayoffBasedLearnerTest, ClampedStepReplacesTheScore) {
  PayoffBasedLearner learner(Rsp(), kDefault, kR, Eigen::Vector3d(4, 4, 4));
  learner.Update(kP, -1.0);  // stage 0: gamma = 1
  EXPECT_EQ(learner.score()[kP], -1.0);
  EXPECT_EQ(learner.last_clamped_stage(), 1);
}

TEST(PayoffBasedLearnerTest, SmallStepAtStage999) {
  PayoffBasedLearner learner(Complete2(), kDefault, 0, Eigen::Vector2d::Zero(), 999);
  ASSERT_NEAR(learner.current().invariant[1], 0.5, 1e-15);
  learner.Update(1, 1.0);
  EXPECT_NEAR(learner.score()[1], 0.002, 1e-15);
  EXPECT_EQ(learner.score()[0], 0.0);
}

TEST(PayoffBasedLearnerTest, RejectsBadInput) {
  PayoffBasedLearner learner(Rsp(), kDefault, kR);
  EXPECT_THROW(learner.Update(kS, std::nan("")), DomainError);
  EXPECT_THROW(learner.Update(3, 0.0), ShapeError);
  EXPECT_THROW(PayoffBasedLearner(Rsp(), kDefault, 7), ShapeError);
  EXPECT_THROW(PayoffBasedLearner(Rsp(), kDefault, 0, Eigen::Vector2d::Zero()),
               ShapeError);
}

TEST(PayoffBasedLearnerTest, SnapshotMirrorsState) {
  PayoffBasedLearner learner(Rsp(), kDefault, kS);
  learner.Update(kR, 0.5);
  const LearnerSnapshot snap = learner.Snapshot();
  EXPECT_EQ(snap.score, learner.score());
  EXPECT_EQ(snap.stage, 1);
  EXPECT_EQ(snap.last_action, kR);
  EXPECT_EQ(snap.invariant, learner.current().invariant);
  EXPECT_EQ(snap.beta, learner.beta());
}

TEST(FictitiousLearnerTest, ExplorationRowWhenFlatOrCold) {
  const FictitiousLearner cold(Rsp(), kDefault, kS);
  Rng rng(1);
  EXPECT_TRUE(cold.Choose(rng).row.isApprox(
      builtins::PathExploration().row(kS).transpose()));
  const FictitiousLearner flat(Rsp(), kDefault, kR, 100, Eigen::Vector3d::Constant(2));
  EXPECT_TRUE(flat.Choose(rng).row.isApprox(
      builtins::PathExploration().row(kR).transpose()));
}

TEST(FictitiousLearnerTest, RowChainHasTheClosedFormInvariant) {
  const FictitiousLearner learner(Rsp(), kDefault, kR, 500, Eigen::Vector3d(0.3, -0.2, 0.1));
  const Eigen::VectorXd solved = InvariantMeasure(learner.current().matrix);
  const Eigen::VectorXd closed =
      GibbsInvariant(learner.chain(), learner.beta(), learner.average());
  EXPECT_LT((solved - closed).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(FictitiousLearnerTest, AverageTracksOpponentHistory) {
  const Game rsp = builtins::RockScissorsPaper();
  FictitiousLearner learner(Rsp(), kDefault, kR);
  Rng rng(99);
  std::vector<int> history;
  for (int n = 0; n < 500; ++n) {
    const int opponent = static_cast<int>(rng.Uniform() * 3);
    const Eigen::VectorXd row = rsp.payoff(Side::kRow).col(opponent);
    const Choice choice = learner.Choose(rng);
    learner.Update(choice.action, opponent, row);
    history.push_back(opponent);
    if (n == 0) EXPECT_EQ(learner.average(), row);
    EXPECT_GE(learner.average().minCoeff(), -1.0);
    EXPECT_LE(learner.average().maxCoeff(), 1.0);
  }
  Eigen::Vector3d direct = Eigen::Vector3d::Zero();
  for (int opponent : history) direct += rsp.payoff(Side::kRow).col(opponent);
  direct /= static_cast<double>(history.size());
  EXPECT_LT((direct - learner.average()).cwiseAbs().maxCoeff(), 1e-13);
  EXPECT_EQ(learner.stage(), 500);
  EXPECT_EQ(learner.last_opponent_action(), history.back());
}

TEST(FictitiousLearnerTest, RejectsBadRow) {
  FictitiousLearner learner(Rsp(), kDefault, kR);
  EXPECT_THROW(learner.Update(kR, 0, Eigen::Vector2d::Zero()), ShapeError);
  EXPECT_THROW(learner.Update(kR, 0, Eigen::Vector3d(0, INFINITY, 0)), DomainError);
}

TEST(SampleIndexTest, InverseCdfInIndexOrder) {
  const Eigen::Vector3d p(0.25, 0.0, 0.75);
  EXPECT_EQ(SampleIndex(p, 0.0), 0);
  EXPECT_EQ(SampleIndex(p, 0.2499), 0);
  EXPECT_EQ(SampleIndex(p, 0.25), 2);
  EXPECT_EQ(SampleIndex(p, 0.999999), 2);
  EXPECT_THROW(SampleIndex(Eigen::Vector3d::Zero(), 0.5), DomainError);
}

TEST(RngTest, PlayerStreamsDifferAndRepeat) {
  Rng a = Rng::ForPlayer(7, 0), b = Rng::ForPlayer(7, 1), c = Rng::ForPlayer(7, 0);
  const double x = a.Uniform();
  EXPECT_NE(x, b.Uniform());
  EXPECT_EQ(x, c.Uniform());
  for (int i = 0; i < 1000; ++i) {
    const double u = a.Uniform();
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
  }
}

}  // namespace
}  // namespace markovplay
