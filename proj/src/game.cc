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

#include "markovplay/game.h"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "markovplay/errors.h"

namespace markovplay {

MixedStrategy::MixedStrategy(Eigen::VectorXd weights)
    : weights_(std::move(weights)) {
  if (weights_.size() == 0) {
    throw ShapeError("mixed strategy over an empty action set");
  }
  for (Eigen::Index i = 0; i < weights_.size(); ++i) {
    if (!(weights_[i] >= 0.0)) {
      throw DomainError("mixed strategy weight " + std::to_string(i) +
                        " is negative or NaN");
    }
  }
  if (std::abs(weights_.sum() - 1.0) > kSimplexTolerance) {
    throw DomainError("mixed strategy weights sum to " +
                      std::to_string(weights_.sum()));
  }
}

MixedStrategy MixedStrategy::Pure(int num_actions, int action) {
  if (action < 0 || action >= num_actions) {
    throw ShapeError("pure action " + std::to_string(action) +
                     " out of range for " + std::to_string(num_actions) +
                     " actions");
  }
  Eigen::VectorXd weights = Eigen::VectorXd::Zero(num_actions);
  weights[action] = 1.0;
  return MixedStrategy(std::move(weights));
}

MixedStrategy MixedStrategy::Uniform(int num_actions) {
  if (num_actions < 1) throw ShapeError("uniform over an empty action set");
  return MixedStrategy(Eigen::VectorXd::Constant(num_actions, 1.0 / num_actions));
}

Game::Game(Eigen::MatrixXd row_payoff, Eigen::MatrixXd column_payoff,
           std::vector<std::string> row_labels,
           std::vector<std::string> column_labels)
    : payoffs_{std::move(row_payoff), std::move(column_payoff)},
      labels_{std::move(row_labels), std::move(column_labels)} {
  const Eigen::MatrixXd& g1 = payoffs_[0];
  const Eigen::MatrixXd& g2 = payoffs_[1];
  if (g1.rows() < 1 || g1.cols() < 1) {
    throw ShapeError("each player needs at least one action");
  }
  if (g1.rows() != g2.rows() || g1.cols() != g2.cols()) {
    throw ShapeError("payoff tables differ in shape: " +
                     std::to_string(g1.rows()) + "x" +
                     std::to_string(g1.cols()) + " vs " +
                     std::to_string(g2.rows()) + "x" +
                     std::to_string(g2.cols()));
  }
  if (!g1.allFinite() || !g2.allFinite()) {
    throw DomainError("payoff tables must have finite entries");
  }
  for (Side side : kSides) {
    const auto& labels = labels_[Index(side)];
    if (!labels.empty() &&
        static_cast<int>(labels.size()) != num_actions(side)) {
      throw ShapeError("player " + std::to_string(Index(side) + 1) + " has " +
                       std::to_string(labels.size()) + " labels for " +
                       std::to_string(num_actions(side)) + " actions");
    }
  }
}

std::string Game::ActionName(Side side, int action) const {
  const auto& labels = labels_[Index(side)];
  if (labels.empty()) return std::to_string(action);
  return labels.at(action);
}

std::string ToString(GameClass game_class) {
  switch (game_class) {
    case GameClass::kZeroSum:
      return "zero_sum";
    case GameClass::kIdentical:
      return "identical";
    case GameClass::kGeneral:
      return "general";
  }
  return "general";
}

namespace {

void CheckProfileShape(const Game& game, const MixedProfile& profile) {
  if (profile.row.size() != game.num_actions(Side::kRow) ||
      profile.column.size() != game.num_actions(Side::kColumn)) {
    throw ShapeError("profile of shape " + std::to_string(profile.row.size()) +
                     "x" + std::to_string(profile.column.size()) +
                     " for a " + std::to_string(game.num_actions(Side::kRow)) +
                     "x" + std::to_string(game.num_actions(Side::kColumn)) +
                     " game");
  }
}

}  // namespace

double ExpectedPayoff(const Game& game, Side side, const MixedProfile& profile) {
  CheckProfileShape(game, profile);
  return profile.row.weights().dot(game.payoff(side) *
                                   profile.column.weights());
}

Eigen::VectorXd PayoffVector(const Game& game, Side side,
                             const MixedStrategy& opponent_mix) {
  if (opponent_mix.size() != game.num_actions(Opponent(side))) {
    throw ShapeError("opponent mixture has " +
                     std::to_string(opponent_mix.size()) + " entries, expected " +
                     std::to_string(game.num_actions(Opponent(side))));
  }
  if (side == Side::kRow) return game.payoff(side) * opponent_mix.weights();
  return game.payoff(side).transpose() * opponent_mix.weights();
}

std::vector<int> BestResponseSet(const Game& game, Side side,
                                 const MixedStrategy& opponent_mix,
                                 double tolerance) {
  if (!(tolerance >= 0.0)) throw DomainError("negative tolerance");
  const Eigen::VectorXd payoffs = PayoffVector(game, side, opponent_mix);
  const double best = payoffs.maxCoeff();
  std::vector<int> actions;
  for (Eigen::Index s = 0; s < payoffs.size(); ++s) {
    if (payoffs[s] >= best - tolerance) actions.push_back(static_cast<int>(s));
  }
  return actions;
}

GameClass Classify(const Game& game, double tolerance) {
  const Eigen::MatrixXd& g1 = game.payoff(Side::kRow);
  const Eigen::MatrixXd& g2 = game.payoff(Side::kColumn);
  if ((g1 + g2).cwiseAbs().maxCoeff() <= tolerance) return GameClass::kZeroSum;
  if ((g1 - g2).cwiseAbs().maxCoeff() <= tolerance) return GameClass::kIdentical;
  return GameClass::kGeneral;
}

PotentialCertificate VerifyPotential(const Game& game,
                                     const Eigen::MatrixXd& potential) {
  const int rows = game.num_actions(Side::kRow);
  const int cols = game.num_actions(Side::kColumn);
  if (potential.rows() != rows || potential.cols() != cols) {
    throw ShapeError("potential table is " + std::to_string(potential.rows()) +
                     "x" + std::to_string(potential.cols()) + ", game is " +
                     std::to_string(rows) + "x" + std::to_string(cols));
  }
  const Eigen::MatrixXd& g1 = game.payoff(Side::kRow);
  const Eigen::MatrixXd& g2 = game.payoff(Side::kColumn);
  double residual = 0.0;
  // Row player deviates s -> t against a fixed column r.
  for (int r = 0; r < cols; ++r) {
    for (int s = 0; s < rows; ++s) {
      for (int t = 0; t < rows; ++t) {
        const double d = (g1(s, r) - g1(t, r)) -
                         (potential(s, r) - potential(t, r));
        residual = std::max(residual, std::abs(d));
      }
    }
  }
  // Column player deviates r -> q against a fixed row s.
  for (int s = 0; s < rows; ++s) {
    for (int r = 0; r < cols; ++r) {
      for (int q = 0; q < cols; ++q) {
        const double d = (g2(s, r) - g2(s, q)) -
                         (potential(s, r) - potential(s, q));
        residual = std::max(residual, std::abs(d));
      }
    }
  }
  return PotentialCertificate{potential, residual};
}

double PayoffSpread(const Game& game, Side side) {
  const Eigen::MatrixXd& g = game.payoff(side);
  // Own actions index rows for the row player and columns for the column
  // player; the spread runs over the opponent's axis.
  if (side == Side::kRow) {
    return (g.rowwise().maxCoeff() - g.rowwise().minCoeff()).maxCoeff();
  }
  return (g.colwise().maxCoeff() - g.colwise().minCoeff()).maxCoeff();
}

}  // namespace markovplay
