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

#include "markovplay/diagnostics.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "markovplay/errors.h"

namespace markovplay {
namespace {

MixedStrategy UniformOver(const std::vector<int>& actions, int num_actions) {
  Eigen::VectorXd weights = Eigen::VectorXd::Zero(num_actions);
  for (int a : actions) weights[a] = 1.0 / static_cast<double>(actions.size());
  return MixedStrategy(weights);
}

Eigen::VectorXd Renormalized(Eigen::VectorXd v) {
  v = v.cwiseMax(0.0);
  return v / v.sum();
}

void CheckTailFraction(double tail_fraction) {
  if (!(tail_fraction > 0.0 && tail_fraction <= 1.0)) {
    throw DomainError("tail fraction must lie in (0, 1]");
  }
}

}  // namespace

double Exploitability(const Game& game, const MixedProfile& profile) {
  double worst = 0.0;
  for (Side side : kSides) {
    const double current = ExpectedPayoff(game, side, profile);
    const double best =
        PayoffVector(game, side, profile.of(Opponent(side))).maxCoeff();
    worst = std::max(worst, best - current);
  }
  return worst;
}

double ValueError(const Game& game, double gbar1, double value) {
  if (Classify(game) != GameClass::kZeroSum) {
    throw DomainError("value error is defined for zero-sum games only");
  }
  return std::abs(gbar1 - value);
}

TailRange TailOf(const Trajectory& trajectory, double tail_fraction) {
  CheckTailFraction(tail_fraction);
  if (trajectory.stages.empty()) throw DomainError("empty trajectory");
  const double cutoff =
      (1.0 - tail_fraction) * static_cast<double>(trajectory.stages.back());
  const auto first = std::lower_bound(
      trajectory.stages.begin(), trajectory.stages.end(), cutoff,
      [](std::int64_t stage, double c) { return static_cast<double>(stage) < c; });
  return TailRange{
      static_cast<std::size_t>(first - trajectory.stages.begin()),
      trajectory.stages.size()};
}

double PotentialFlatness(const Trajectory& trajectory, double tail_fraction) {
  if (!trajectory.has_potential()) {
    throw DomainError("trajectory carries no potential");
  }
  const TailRange tail = TailOf(trajectory, tail_fraction);
  const auto [lo, hi] =
      std::minmax_element(trajectory.phibar.begin() + tail.begin,
                          trajectory.phibar.begin() + tail.end);
  return *hi - *lo;
}

double PotentialTailMean(const Trajectory& trajectory, double tail_fraction) {
  if (!trajectory.has_potential()) {
    throw DomainError("trajectory carries no potential");
  }
  const TailRange tail = TailOf(trajectory, tail_fraction);
  double sum = 0.0;
  for (std::size_t i = tail.begin; i < tail.end; ++i) sum += trajectory.phibar[i];
  return sum / static_cast<double>(tail.end - tail.begin);
}

double PayoffTailMean(const Trajectory& trajectory, double tail_fraction) {
  const TailRange tail = TailOf(trajectory, tail_fraction);
  double sum = 0.0;
  for (std::size_t i = tail.begin; i < tail.end; ++i) sum += trajectory.gbar1[i];
  return sum / static_cast<double>(tail.end - tail.begin);
}

std::vector<MixedProfile> EulerBrd(const Game& game, const MixedProfile& v0,
                                   int steps, double dt) {
  if (!(dt > 0.0 && dt <= 1.0)) throw DomainError("dt must lie in (0, 1]");
  if (steps < 0) throw DomainError("negative step count");
  std::vector<MixedProfile> path;
  path.reserve(static_cast<std::size_t>(steps) + 1);
  path.push_back(v0);
  for (int k = 0; k < steps; ++k) {
    const MixedProfile& v = path.back();
    const MixedStrategy b_row = UniformOver(
        BestResponseSet(game, Side::kRow, v.column), v.row.size());
    const MixedStrategy b_col = UniformOver(
        BestResponseSet(game, Side::kColumn, v.row), v.column.size());
    Eigen::VectorXd row = v.row.weights() + dt * (b_row.weights() - v.row.weights());
    Eigen::VectorXd col =
        v.column.weights() + dt * (b_col.weights() - v.column.weights());
    path.push_back(MixedProfile{MixedStrategy(Renormalized(std::move(row))),
                                MixedStrategy(Renormalized(std::move(col)))});
  }
  return path;
}

std::vector<PureProfile> StrictPureEquilibria(const Game& game) {
  const int rows = game.num_actions(Side::kRow);
  const int cols = game.num_actions(Side::kColumn);
  const Eigen::MatrixXd& g1 = game.payoff(Side::kRow);
  const Eigen::MatrixXd& g2 = game.payoff(Side::kColumn);
  std::vector<PureProfile> result;
  for (int s = 0; s < rows; ++s) {
    for (int r = 0; r < cols; ++r) {
      bool strict = true;
      for (int t = 0; t < rows && strict; ++t) {
        if (t != s && g1(t, r) >= g1(s, r)) strict = false;
      }
      for (int q = 0; q < cols && strict; ++q) {
        if (q != r && g2(s, q) >= g2(s, r)) strict = false;
      }
      if (strict) result.push_back(PureProfile{s, r});
    }
  }
  return result;
}

std::optional<NearestEquilibrium> NearestStrictEquilibrium(
    const Game& game, const MixedProfile& profile) {
  std::optional<NearestEquilibrium> best;
  for (const PureProfile& eq : StrictPureEquilibria(game)) {
    Eigen::VectorXd d_row = profile.row.weights();
    d_row[eq.row] -= 1.0;
    Eigen::VectorXd d_col = profile.column.weights();
    d_col[eq.column] -= 1.0;
    const double distance = std::max(d_row.cwiseAbs().maxCoeff(),
                                     d_col.cwiseAbs().maxCoeff());
    if (!best || distance < best->distance) {
      best = NearestEquilibrium{eq, distance};
    }
  }
  return best;
}

ConvergenceReport Evaluate(const Game& game, const Trajectory& trajectory,
                           std::optional<double> value, double tail_fraction) {
  ConvergenceReport report;
  report.exploitability = Exploitability(game, trajectory.FinalProfile());
  if (value) {
    report.value_error = ValueError(game, trajectory.gbar1.back(), *value);
  }
  const TailRange tail = TailOf(trajectory, tail_fraction);
  report.tail_window = static_cast<std::int64_t>(tail.end - tail.begin);
  if (trajectory.has_potential()) {
    report.potential_drift = PotentialFlatness(trajectory, tail_fraction);
    report.potential_tail_mean = PotentialTailMean(trajectory, tail_fraction);
  }
  return report;
}

}  // namespace markovplay
