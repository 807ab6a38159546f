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

#include "markovplay/builtins.h"

namespace markovplay::builtins {

Game RockScissorsPaper() {
  Eigen::MatrixXd g(3, 3);
  g << 0, 1, -1,
      -1, 0, 1,
      1, -1, 0;
  return Game(g, -g, {"R", "S", "P"}, {"R", "S", "P"});
}

Eigen::MatrixXd PathExploration() {
  Eigen::MatrixXd m(3, 3);
  m << 1.0 / 2, 1.0 / 2, 0,
      1.0 / 3, 1.0 / 3, 1.0 / 3,
      0, 1.0 / 2, 1.0 / 2;
  return m;
}

Game PotentialGame() {
  Eigen::MatrixXd g1(3, 3), g2(3, 3);
  // (C,b) pays 8 to the row player; with 9 the table differs from the
  // potential by 1 on column b.
  g1 << 1, 9, 1,
      0, 6, 0,
      0, 8, 2;
  g2 << 1, 0, 0,
      9, 6, 8,
      1, 0, 2;
  return Game(g1, g2, {"A", "B", "C"}, {"a", "b", "c"});
}

Eigen::MatrixXd PotentialGamePotential() {
  Eigen::MatrixXd phi(3, 3);
  phi << 4, 3, 3,
      3, 0, 2,
      3, 2, 4;
  return phi;
}

Game PotentialGamePrime() {
  Eigen::MatrixXd g1(3, 3), g2(3, 3);
  g1 << 1, 9, 1,
      0, 6, 0,
      1, 8, 2;
  g2 << 1, 0, 0,
      9, 6, 8,
      2, 0, 2;
  return Game(g1, g2, {"A", "B", "C"}, {"a", "b", "c"});
}

Eigen::MatrixXd PotentialGamePrimePotential() {
  Eigen::MatrixXd phi(3, 3);
  phi << 4, 3, 3,
      3, 0, 2,
      4, 2, 4;
  return phi;
}

Game CoordinationGame() {
  Eigen::VectorXd diagonal(5);
  diagonal << 2, 1, 0, 1, 2;
  const Eigen::MatrixXd g = diagonal.asDiagonal();
  const std::vector<std::string> labels = {"A", "B", "C", "D", "E"};
  return Game(g, g, labels, labels);
}

Eigen::MatrixXd StarExploration() {
  Eigen::MatrixXd m(5, 5);
  m << 0.5, 0, 0.5, 0, 0,
      0, 0.5, 0.5, 0, 0,
      0.2, 0.2, 0.2, 0.2, 0.2,
      0, 0, 0.5, 0.5, 0,
      0, 0, 0.5, 0, 0.5;
  return m;
}

}  // namespace markovplay::builtins
