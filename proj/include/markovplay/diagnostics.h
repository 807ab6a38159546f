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

#ifndef MARKOVPLAY_DIAGNOSTICS_H_
#define MARKOVPLAY_DIAGNOSTICS_H_

#include <cstdint>
#include <optional>
#include <vector>

#include "markovplay/engine.h"
#include "markovplay/game.h"

namespace markovplay {

struct ConvergenceReport {
  double exploitability = 0.0;
  std::optional<double> value_error;
  std::optional<double> potential_drift;
  std::optional<double> potential_tail_mean;
  // Number of recorded stages in the tail window.
  std::int64_t tail_window = 0;
};

// Largest gain any single player can get by deviating unilaterally:
// max_i [max_s G^i(s, p^{-i}) - G^i(p)]. Zero exactly at Nash equilibria.
double Exploitability(const Game& game, const MixedProfile& profile);

// |gbar1 - value|. Throws DomainError unless the game is zero-sum.
double ValueError(const Game& game, double gbar1, double value);

// Half-open index range [begin, end) of recorded stages n with
// n >= (1 - tail_fraction) * final stage.
struct TailRange {
  std::size_t begin;
  std::size_t end;
};
TailRange TailOf(const Trajectory& trajectory, double tail_fraction);

// max - min of the running average potential over the tail window. Throws
// DomainError when the trajectory has no potential or the fraction is not in
// (0, 1].
double PotentialFlatness(const Trajectory& trajectory, double tail_fraction);

// Mean of the running average potential over the tail window.
double PotentialTailMean(const Trajectory& trajectory, double tail_fraction);

// Mean of player-1 running average payoff over the tail window.
double PayoffTailMean(const Trajectory& trajectory, double tail_fraction);

// Euler scheme for v' = -v + BR(v) with the uniform mixture over the
// best-response set as selection. Returns steps + 1 profiles, v0 first.
std::vector<MixedProfile> EulerBrd(const Game& game, const MixedProfile& v0,
                                   int steps, double dt);

struct PureProfile {
  int row;
  int column;
};

// Pure profiles where each action is the unique best reply to the other.
std::vector<PureProfile> StrictPureEquilibria(const Game& game);

struct NearestEquilibrium {
  PureProfile profile;
  double distance;  // sup-norm distance from the mixed profile
};

std::optional<NearestEquilibrium> NearestStrictEquilibrium(
    const Game& game, const MixedProfile& profile);

// Final-stage report. value_error is filled when `value` is given (the game
// must then be zero-sum); potential fields when the trajectory has one.
ConvergenceReport Evaluate(const Game& game, const Trajectory& trajectory,
                           std::optional<double> value, double tail_fraction);

}  // namespace markovplay

#endif  // MARKOVPLAY_DIAGNOSTICS_H_
