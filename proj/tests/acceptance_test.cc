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

// Acceptance gate. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <fmt/format.h>

#include "markovplay/builtins.h"
#include "markovplay/chain.h"
#include "markovplay/diagnostics.h"
#include "markovplay/engine.h"
#include "markovplay/experiment.h"
#include "test_util.h"

namespace markovplay {
namespace {

namespace fs = std::filesystem;

constexpr double kTol = 0.05;

struct Outcome {
  bool pass = true;
  std::string detail;
};

double Median(std::vector<double> v) { return ComputeQuartiles(std::move(v)).median; }

ExperimentSpec WithProcedure(ExperimentSpec spec, Procedure procedure) {
  for (auto& player : spec.simulation.players) player.procedure = procedure;
  return spec;
}

// --- criteria 1, 2, 4 ---------------------------------------------------

Outcome ZeroSum(Procedure procedure) {
  const ExperimentSummary s =
      RunReplications(WithProcedure(BuiltinSpec("rsp"), procedure));
  const double expl = s.exploitability.median, gbar = s.abs_gbar1.median;
  return {expl <= kTol && gbar <= kTol,
          fmt::format("rsp {}: median exploitability {:.4f}, median |gbar1| {:.4f}",
                      ToString(procedure), expl, gbar)};
}

Outcome Potential(Procedure procedure) {
  const ExperimentSummary s =
      RunReplications(WithProcedure(BuiltinSpec("potential_gprime"), procedure));
  const double drift = s.potential_drift->median;
  const double tail = s.potential_tail_mean->median;
  return {drift <= 0.1 && std::abs(tail - 4.0) <= 0.15,
          fmt::format("gprime {}: median tail drift {:.4f}, median tail phibar {:.4f}",
                      ToString(procedure), drift, tail)};
}

Outcome Both(const Outcome& a, const Outcome& b) {
  return {a.pass && b.pass, a.detail + "; " + b.detail};
}

// --- criterion 3 --------------------------------------------------------

Outcome Coordination() {
  const ExperimentSummary s = RunReplications(BuiltinSpec("coordination_c"));
  int converged = 0, on_target = 0;
  for (const ReplicationResult& r : s.replications) {
    if (r.report.exploitability > kTol) continue;
    ++converged;
    if (std::abs(r.gbar1_tail_mean - 1.0) <= 0.1 ||
        std::abs(r.gbar1_tail_mean - 2.0) <= 0.1) {
      ++on_target;
    }
  }
  const int total = static_cast<int>(s.replications.size());
  return {on_target == converged && 10 * converged >= 7 * total,
          fmt::format("{}/{} seeds with exploitability <= {}; {}/{} of those with "
                      "gbar tail within 0.1 of 1 or 2",
                      converged, total, kTol, on_target, converged)};
}

// --- criterion 5 --------------------------------------------------------

double ScoreSpread(const Eigen::VectorXd& r) { return r.maxCoeff() - r.minCoeff(); }

// Omega written out directly: the largest payoff range over opponent actions
// for a fixed own action.
double Omega(const Game& game, Side side) {
  const Eigen::MatrixXd g = side == Side::kRow ? game.payoff(Side::kRow)
                                               : game.payoff(Side::kColumn).transpose();
  double omega = 0.0;
  for (int s = 0; s < g.rows(); ++s) {
    omega = std::max(omega, g.row(s).maxCoeff() - g.row(s).minCoeff());
  }
  return omega;
}

std::vector<ExplorationChain> BuiltinChains() {
  return {CheckExploration(StochasticMatrix(builtins::PathExploration())),
          CheckExploration(StochasticMatrix(builtins::StarExploration()))};
}

std::string GibbsInvariants() {
  std::mt19937_64 gen(501);
  std::uniform_real_distribution<double> beta(0.0, 10.0), score(-5.0, 5.0);
  double worst = 0.0;
  for (const ExplorationChain& chain : BuiltinChains()) {
    for (int draw = 0; draw < 200; ++draw) {
      Eigen::VectorXd r(chain.size());
      for (int i = 0; i < r.size(); ++i) r[i] = score(gen);
      const GibbsChain g = GibbsMatrix(chain, beta(gen), r);
      const Eigen::RowVectorXd residual =
          g.invariant.transpose() * g.matrix.entries() - g.invariant.transpose();
      worst = std::max(worst, residual.cwiseAbs().maxCoeff());
    }
  }
  return worst < 1e-10 ? "" : fmt::format("(a) pi*M residual {:.3g}", worst);
}

std::string PoissonEquations() {
  std::mt19937_64 gen(502);
  double worst_poisson = 0.0, worst_rows = 0.0;
  for (int k = 0; k < 100; ++k) {
    const int n = 2 + k % 7;
    const auto chain = testing::RandomReversible(n, gen);
    const StochasticMatrix m(chain.m);
    const PseudoInverse q = ComputePseudoInverse(m, chain.pi);
    const Eigen::MatrixXd i_m = Eigen::MatrixXd::Identity(n, n) - chain.m;
    const Eigen::MatrixXd target = Eigen::MatrixXd::Identity(n, n) -
                                   Eigen::VectorXd::Ones(n) * chain.pi.transpose();
    worst_poisson = std::max({worst_poisson, (q.q * i_m - target).cwiseAbs().maxCoeff(),
                              (i_m * q.q - target).cwiseAbs().maxCoeff(),
                              PoissonResidual(q, m, chain.pi)});
    worst_rows = std::max(worst_rows, q.q.rowwise().sum().cwiseAbs().maxCoeff());
  }
  return worst_poisson < 1e-9 && worst_rows < 1e-9
             ? ""
             : fmt::format("(b) Poisson residual {:.3g}, row sums {:.3g}",
                           worst_poisson, worst_rows);
}

// Eigenvalues of a reversible chain straight from the nonsymmetric solver.
Eigen::VectorXd RealSpectrum(const Eigen::MatrixXd& m) {
  Eigen::EigenSolver<Eigen::MatrixXd> solver(m, false);
  Eigen::VectorXd values = solver.eigenvalues().real();
  std::sort(values.data(), values.data() + values.size(), std::greater<>());
  return values;
}

// The gap of A (x) B is 1 - max over non-trivial products of eigenvalues, so
// it equals min(gap A, gap B) only when no two negative eigenvalues multiply
// past the second largest ones. Reported alongside the stated identity.
std::string KroneckerGaps() {
  std::mt19937_64 gen(503);
  double worst_min = 0.0, worst_product = 0.0, worst_nonnegative = 0.0;
  int violations = 0, nonnegative_pairs = 0;
  for (int k = 0; k < 50; ++k) {
    const auto a = testing::RandomReversible(2 + k % 4, gen);
    const auto b = testing::RandomReversible(2 + (k / 4) % 4, gen);
    const StochasticMatrix ab = Kronecker(StochasticMatrix(a.m), StochasticMatrix(b.m));
    Eigen::VectorXd pab(ab.size());
    for (int s = 0; s < a.pi.size(); ++s) {
      for (int r = 0; r < b.pi.size(); ++r) pab[s * b.pi.size() + r] = a.pi[s] * b.pi[r];
    }
    const double lhs = SpectralGap(ab, pab);
    const double rhs = std::min(SpectralGap(StochasticMatrix(a.m), a.pi),
                                SpectralGap(StochasticMatrix(b.m), b.pi));
    const double error = std::abs(lhs - rhs);
    worst_min = std::max(worst_min, error);
    if (error > 1e-8) ++violations;

    const Eigen::VectorXd la = RealSpectrum(a.m), lb = RealSpectrum(b.m);
    double second = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < la.size(); ++i) {
      for (int j = 0; j < lb.size(); ++j) {
        if (i != 0 || j != 0) second = std::max(second, la[i] * lb[j]);
      }
    }
    worst_product = std::max(worst_product, std::abs(lhs - (1.0 - second)));
    if (la.minCoeff() >= 0.0 && lb.minCoeff() >= 0.0) {
      ++nonnegative_pairs;
      worst_nonnegative = std::max(worst_nonnegative, error);
    }
  }
  if (violations == 0) return "";
  return fmt::format(
      "(c) min identity off by up to {:.3g} on {}/50 pairs; product-spectrum "
      "identity error {:.3g}; min identity error {:.3g} on the {} pairs with "
      "nonnegative spectra",
      worst_min, violations, worst_product, worst_nonnegative, nonnegative_pairs);
}

// (d) and (f) share one logged RSP run; (f) also covers game C.
std::string ScoreBoundAndRestrictions() {
  std::string failures;
  {
    SimulationConfig config = BuiltinSpec("rsp").simulation;
    config.iterations = 100000;
    config.seed = 504;
    std::array<double, 2> k{};
    for (Side side : kSides) {
      k[Index(side)] = std::max(0.0 /* zero initial score */, Omega(config.game, side));
    }
    const Eigen::MatrixXd m0 = builtins::PathExploration();
    std::int64_t bound_violations = 0, graph_violations = 0;
    Run(config, [&](const Simulation& sim, const StageEvent& e) {
      for (Side side : kSides) {
        const int i = Index(side);
        const Eigen::VectorXd r = sim.Snapshot(side).score;
        if (r.cwiseAbs().maxCoeff() > k[i]) ++bound_violations;
        if (e.played[i] != e.previous[i] && !(m0(e.previous[i], e.played[i]) > 0.0)) {
          ++graph_violations;
        }
      }
    });
    if (bound_violations > 0) {
      failures += fmt::format("(d) {} stages outside [-K, K] ", bound_violations);
    }
    if (graph_violations > 0) {
      failures += fmt::format("(f) {} rsp transitions off the graph ", graph_violations);
    }
  }
  {
    SimulationConfig config = BuiltinSpec("coordination_c").simulation;
    config.iterations = 100000;
    config.seed = 506;
    const Eigen::MatrixXd m0 = builtins::StarExploration();
    std::int64_t graph_violations = 0;
    Run(config, [&](const Simulation&, const StageEvent& e) {
      for (int i = 0; i < 2; ++i) {
        if (e.played[i] != e.previous[i] && !(m0(e.previous[i], e.played[i]) > 0.0)) {
          ++graph_violations;
        }
      }
    });
    if (graph_violations > 0) {
      failures += fmt::format("(f) {} game C transitions off the graph ", graph_violations);
    }
  }
  return failures;
}

std::string GapBounds() {
  std::mt19937_64 gen(505);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const auto chains = BuiltinChains();
  int violations = 0;
  for (int draw = 0; draw < 100; ++draw) {
    const ExplorationChain& chain = chains[draw % chains.size()];
    const double k = 3.0 * unit(gen);
    const double beta = 5.0 * unit(gen);
    Eigen::VectorXd r(chain.size());
    for (int i = 0; i < r.size(); ++i) r[i] = k * (2.0 * unit(gen) - 1.0) / 2.0;
    if (ScoreSpread(r) > k) return "(e) sweep produced a score with spread > K";
    const GibbsChain g = GibbsMatrix(chain, beta, r);
    const double c = SpectralGap(chain.m0(), chain.pi0());
    if (SpectralGap(g.matrix, g.invariant) < c * std::exp(-2.0 * k * beta)) ++violations;
  }
  return violations == 0 ? "" : fmt::format("(e) {} draws below the bound", violations);
}

std::string ReadAll(const fs::path& path) {
  std::ifstream file(path, std::ios::binary);
  std::ostringstream text;
  text << file.rdbuf();
  return text.str();
}

std::string SeedDeterminism() {
  ExperimentSpec spec = BuiltinSpec("potential_gprime");
  spec.simulation.iterations = 50000;
  spec.replications = 3;
  const fs::path base = fs::temp_directory_path() / "markovplay_acceptance";
  fs::remove_all(base);
  RunExperiment(spec, base / "a");
  RunExperiment(spec, base / "b");
  int mismatches = 0;
  for (int k = 0; k < spec.replications; ++k) {
    const std::string name = TrajectoryFileName(spec.name, spec.seed_base + k);
    const std::string a = ReadAll(base / "a" / name);
    if (a.empty() || a != ReadAll(base / "b" / name)) ++mismatches;
  }
  if (ReadAll(base / "a" / SummaryFileName(spec.name)) !=
      ReadAll(base / "b" / SummaryFileName(spec.name))) {
    ++mismatches;
  }
  fs::remove_all(base);
  return mismatches == 0 ? "" : fmt::format("(g) {} files differ", mismatches);
}

Outcome Properties() {
  std::string failures;
  for (const auto& check :
       std::vector<std::function<std::string()>>{GibbsInvariants, PoissonEquations,
                                                 KroneckerGaps, ScoreBoundAndRestrictions,
                                                 GapBounds, SeedDeterminism}) {
    const std::string f = check();
    if (!f.empty()) failures += f + " ";
  }
  if (failures.empty()) return {true, "properties (a)-(g) hold"};
  return {false, failures};
}

// --- criterion 6 --------------------------------------------------------

struct Equilibrium {
  Eigen::VectorXd x, y;
};

// All equilibria by support enumeration. Sets `continuum` when some support
// pair admits a positive-dimensional family of solutions.
std::vector<Equilibrium> EnumerateEquilibria(const Eigen::MatrixXd& a,
                                             const Eigen::MatrixXd& b, bool& continuum) {
  const int m = static_cast<int>(a.rows()), n = static_cast<int>(a.cols());
  continuum = false;
  std::vector<Equilibrium> found;
  // Solves for a mixture over `own` that makes every action in `other`
  // equally good under `payoff` (rows: own actions, cols: other actions).
  const auto indifferent = [](const Eigen::MatrixXd& payoff, const std::vector<int>& own,
                              const std::vector<int>& other, bool& underdetermined)
      -> std::optional<Eigen::VectorXd> {
    const int k = static_cast<int>(own.size()), l = static_cast<int>(other.size());
    Eigen::MatrixXd sys = Eigen::MatrixXd::Zero(l + 1, k + 1);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(l + 1);
    for (int j = 0; j < l; ++j) {
      for (int i = 0; i < k; ++i) sys(j, i) = payoff(own[i], other[j]);
      sys(j, k) = -1.0;
    }
    for (int i = 0; i < k; ++i) sys(l, i) = 1.0;
    rhs[l] = 1.0;
    Eigen::FullPivLU<Eigen::MatrixXd> lu(sys);
    const Eigen::VectorXd sol = lu.solve(rhs);
    if ((sys * sol - rhs).norm() > 1e-9) return std::nullopt;
    if (lu.rank() < k + 1) underdetermined = true;
    return sol.head(k);
  };
  for (int s1 = 1; s1 < (1 << m); ++s1) {
    for (int s2 = 1; s2 < (1 << n); ++s2) {
      std::vector<int> rows, cols;
      for (int i = 0; i < m; ++i) if (s1 >> i & 1) rows.push_back(i);
      for (int j = 0; j < n; ++j) if (s2 >> j & 1) cols.push_back(j);
      bool under_x = false, under_y = false;
      // x makes the column player indifferent over `cols`, and vice versa.
      const auto xs = indifferent(b, rows, cols, under_x);
      const auto ys = indifferent(a.transpose(), cols, rows, under_y);
      if (!xs || !ys) continue;
      if (xs->minCoeff() < -1e-12 || ys->minCoeff() < -1e-12) continue;
      Eigen::VectorXd x = Eigen::VectorXd::Zero(m), y = Eigen::VectorXd::Zero(n);
      for (std::size_t i = 0; i < rows.size(); ++i) x[rows[i]] = (*xs)[i];
      for (std::size_t j = 0; j < cols.size(); ++j) y[cols[j]] = (*ys)[j];
      const Eigen::VectorXd row_payoffs = a * y, col_payoffs = b.transpose() * x;
      const double u = row_payoffs[rows[0]], v = col_payoffs[cols[0]];
      if (row_payoffs.maxCoeff() > u + 1e-9 || col_payoffs.maxCoeff() > v + 1e-9) continue;
      if (under_x || under_y) continuum = true;
      const bool duplicate = std::any_of(found.begin(), found.end(), [&](const auto& e) {
        return (e.x - x).cwiseAbs().maxCoeff() < 1e-9 &&
               (e.y - y).cwiseAbs().maxCoeff() < 1e-9;
      });
      if (!duplicate) found.push_back({x, y});
    }
  }
  return found;
}

Outcome TwoByN() {
  Eigen::MatrixXd g1(2, 3), g2(2, 3);
  g1 << 3, 0, 1,
        0, 2, 1;
  g2 << 0, 2, 1,
        3, 0, 1;
  // Closed form: the column player mixes a and b so that 3q = 2(1 - q),
  // the row player mixes so that 3(1 - p) = 2p; c earns 1 < 6/5.
  const Eigen::Vector2d x_hand(0.6, 0.4);
  const Eigen::Vector3d y_hand(0.4, 0.6, 0.0);
  bool continuum = false;
  const auto all = EnumerateEquilibria(g1, g2, continuum);
  if (continuum || all.size() != 1 || (all[0].x - x_hand).cwiseAbs().maxCoeff() > 1e-12 ||
      (all[0].y - y_hand).cwiseAbs().maxCoeff() > 1e-12) {
    return {false, fmt::format("hand oracle disagrees with enumeration ({} equilibria{})",
                               all.size(), continuum ? ", continuum" : "")};
  }
  const Game game(g1, g2);
  if (Exploitability(game, {MixedStrategy(x_hand), MixedStrategy(y_hand)}) > 1e-12) {
    return {false, "hand equilibrium is not an equilibrium"};
  }

  const BetaSchedule schedule = BetaSchedule::LogPower(1.0, 0.8);
  std::vector<double> exploitability, distance;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    SimulationConfig config{
        game,
        {PlayerSetup{Procedure::kPayoffBased,
                     CheckExploration(StochasticMatrix(Eigen::Matrix2d::Constant(0.5))),
                     schedule},
         PlayerSetup{Procedure::kPayoffBased,
                     CheckExploration(StochasticMatrix(builtins::PathExploration())),
                     schedule}},
        500000,
        seed,
        RecordPolicy{500000, 0.0},
        std::nullopt};
    const Trajectory t = Run(config);
    const MixedProfile v = t.FinalProfile();
    exploitability.push_back(Exploitability(game, v));
    distance.push_back(std::max((v.row.weights() - x_hand).cwiseAbs().maxCoeff(),
                                (v.column.weights() - y_hand).cwiseAbs().maxCoeff()));
  }
  const double median = Median(exploitability);
  return {median <= kTol,
          fmt::format("unique NE x=(0.6,0.4) y=(0.4,0.6,0); median exploitability "
                      "{:.4f}, median sup-distance to NE {:.4f}",
                      median, Median(distance))};
}

}  // namespace
}  // namespace markovplay

int main() {
  using markovplay::Outcome;
  using markovplay::Procedure;
  const std::vector<std::pair<int, std::function<Outcome()>>> criteria = {
      {1, [] { return markovplay::ZeroSum(Procedure::kPayoffBased); }},
      {2, [] { return markovplay::Potential(Procedure::kPayoffBased); }},
      {3, markovplay::Coordination},
      {4,
       [] {
         return markovplay::Both(markovplay::ZeroSum(Procedure::kFictitious),
                                 markovplay::Potential(Procedure::kFictitious));
       }},
      {5, markovplay::Properties},
      {6, markovplay::TwoByN},
  };
  int failed = 0;
  for (const auto& [id, check] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = check();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cout << fmt::format("criterion {}: {} - {} [{:.1f}s]\n", id,
                             outcome.pass ? "PASS" : "FAIL", outcome.detail, seconds)
              << std::flush;
    if (!outcome.pass) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
