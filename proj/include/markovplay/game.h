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

#ifndef MARKOVPLAY_GAME_H_
#define MARKOVPLAY_GAME_H_

#include <array>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace markovplay {

inline constexpr double kDefaultTolerance = 1e-9;
inline constexpr double kSimplexTolerance = 1e-12;

// The two players. Payoff tables are always indexed (row action, column
// action), i.e. row-major by player-1 action.
enum class Side : int { kRow = 0, kColumn = 1 };

constexpr Side Opponent(Side side) {
  return side == Side::kRow ? Side::kColumn : Side::kRow;
}
constexpr int Index(Side side) { return static_cast<int>(side); }
inline constexpr std::array<Side, 2> kSides = {Side::kRow, Side::kColumn};

// A point of the simplex over one player's actions.
class MixedStrategy {
 public:
  // Throws DomainError unless weights are >= 0 and sum to 1 within
  // kSimplexTolerance.
  explicit MixedStrategy(Eigen::VectorXd weights);

  static MixedStrategy Pure(int num_actions, int action);
  static MixedStrategy Uniform(int num_actions);

  int size() const { return static_cast<int>(weights_.size()); }
  double operator[](int action) const { return weights_[action]; }
  const Eigen::VectorXd& weights() const { return weights_; }

 private:
  Eigen::VectorXd weights_;
};

struct MixedProfile {
  MixedStrategy row;
  MixedStrategy column;

  const MixedStrategy& of(Side side) const {
    return side == Side::kRow ? row : column;
  }
};

// Finite two-player normal-form game.
class Game {
 public:
  // Both tables must have the same shape (at least 1x1) and finite entries.
  // Labels are optional; when given they must match the action counts.
  Game(Eigen::MatrixXd row_payoff, Eigen::MatrixXd column_payoff,
       std::vector<std::string> row_labels = {},
       std::vector<std::string> column_labels = {});

  int num_actions(Side side) const {
    return side == Side::kRow ? static_cast<int>(payoffs_[0].rows())
                              : static_cast<int>(payoffs_[0].cols());
  }
  const Eigen::MatrixXd& payoff(Side side) const {
    return payoffs_[Index(side)];
  }
  double payoff(Side side, int row_action, int column_action) const {
    return payoffs_[Index(side)](row_action, column_action);
  }
  const std::vector<std::string>& labels(Side side) const {
    return labels_[Index(side)];
  }
  // The configured label, or the action index as a string.
  std::string ActionName(Side side, int action) const;

 private:
  std::array<Eigen::MatrixXd, 2> payoffs_;
  std::array<std::vector<std::string>, 2> labels_;
};

enum class GameClass { kZeroSum, kIdentical, kGeneral };

std::string ToString(GameClass game_class);

struct PotentialCertificate {
  Eigen::MatrixXd potential;
  // Largest |dG - dPhi| over all unilateral deviations of both players.
  double max_residual = 0.0;
};

// Bilinear extension sum_{s,r} p_row(s) p_col(r) G^side(s, r).
double ExpectedPayoff(const Game& game, Side side, const MixedProfile& profile);

// G^side(., opponent_mix), indexed by the player's own actions.
Eigen::VectorXd PayoffVector(const Game& game, Side side,
                             const MixedStrategy& opponent_mix);

// Actions within `tolerance` of the best payoff against `opponent_mix`, in
// increasing index order. Never empty.
std::vector<int> BestResponseSet(const Game& game, Side side,
                                 const MixedStrategy& opponent_mix,
                                 double tolerance = kDefaultTolerance);

// kZeroSum when max|G1 + G2| <= tolerance, else kIdentical when
// max|G1 - G2| <= tolerance, else kGeneral.
GameClass Classify(const Game& game, double tolerance = kDefaultTolerance);

PotentialCertificate VerifyPotential(const Game& game,
                                     const Eigen::MatrixXd& potential);

// max_s max_{t,t'} |G^side(s,t) - G^side(s,t')|: the largest payoff swing a
// fixed own action can see from the opponent's choice.
double PayoffSpread(const Game& game, Side side);

}  // namespace markovplay

#endif  // MARKOVPLAY_GAME_H_
