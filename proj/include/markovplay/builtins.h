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

#ifndef MARKOVPLAY_BUILTINS_H_
#define MARKOVPLAY_BUILTINS_H_

#include <Eigen/Dense>

#include "markovplay/game.h"

// The literal games and exploration matrices of the shipped experiments.
namespace markovplay::builtins {

// Rock-Scissors-Paper, actions (R, S, P), G2 = -G1. Value 0.
Game RockScissorsPaper();

// Three-state path chain R <-> S <-> P (no direct R <-> P move):
//   [1/2 1/2 0; 1/3 1/3 1/3; 0 1/2 1/2], pi0 = (2/7, 3/7, 2/7).
Eigen::MatrixXd PathExploration();

// 3x3 potential game whose two strict equilibria (A,a), (C,c) have
// potential 4, with its potential.
Game PotentialGame();
Eigen::MatrixXd PotentialGamePotential();

// Its modification with a connected equilibrium set on which the potential
// equals 4, with its potential.
Game PotentialGamePrime();
Eigen::MatrixXd PotentialGamePrimePotential();

// 5x5 identical-interest coordination game, diagonal (2, 1, 0, 1, 2).
Game CoordinationGame();

// Star chain through the centre action C:
//   pi0 = (2/13, 2/13, 5/13, 2/13, 2/13).
Eigen::MatrixXd StarExploration();

}  // namespace markovplay::builtins

#endif  // MARKOVPLAY_BUILTINS_H_
