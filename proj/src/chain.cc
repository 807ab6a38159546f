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

#include "markovplay/chain.h"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "markovplay/errors.h"

namespace markovplay {
namespace {

constexpr double kSpectralReversibilityTolerance = 1e-10;

void CheckSquareVector(const StochasticMatrix& m, const Eigen::VectorXd& v,
                       const char* what) {
  if (v.size() != m.size()) {
    throw ShapeError(std::string(what) + " has " + std::to_string(v.size()) +
                     " entries for a chain on " + std::to_string(m.size()) +
                     " states");
  }
}

// States reachable from `start` along entries above kStructuralZero.
std::vector<bool> Reachable(const Eigen::MatrixXd& m, int start) {
  const int n = static_cast<int>(m.rows());
  std::vector<bool> seen(n, false);
  std::vector<int> stack = {start};
  seen[start] = true;
  while (!stack.empty()) {
    const int s = stack.back();
    stack.pop_back();
    for (int r = 0; r < n; ++r) {
      if (!seen[r] && m(s, r) > kStructuralZero) {
        seen[r] = true;
        stack.push_back(r);
      }
    }
  }
  return seen;
}

}  // namespace

StochasticMatrix::StochasticMatrix(Eigen::MatrixXd entries, double tolerance)
    : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols() || entries_.rows() == 0) {
    throw ShapeError("stochastic matrix must be square and nonempty, got " +
                     std::to_string(entries_.rows()) + "x" +
                     std::to_string(entries_.cols()));
  }
  for (Eigen::Index s = 0; s < entries_.rows(); ++s) {
    for (Eigen::Index r = 0; r < entries_.cols(); ++r) {
      if (!(entries_(s, r) >= 0.0) || !std::isfinite(entries_(s, r))) {
        throw DomainError("entry (" + std::to_string(s) + "," +
                          std::to_string(r) +
                          ") is negative or not finite");
      }
    }
    const double sum = entries_.row(s).sum();
    if (std::abs(sum - 1.0) > tolerance) {
      throw DomainError("row " + std::to_string(s) + " sums to " +
                        std::to_string(sum));
    }
  }
}

std::optional<std::pair<int, int>> FindUnreachablePair(const StochasticMatrix& m) {
  for (int s = 0; s < m.size(); ++s) {
    const std::vector<bool> seen = Reachable(m.entries(), s);
    for (int r = 0; r < m.size(); ++r) {
      if (!seen[r]) return std::make_pair(s, r);
    }
  }
  return std::nullopt;
}

Eigen::VectorXd InvariantMeasure(const StochasticMatrix& m) {
  if (auto pair = FindUnreachablePair(m)) {
    throw StructuralError("chain is not irreducible: state " +
                              std::to_string(pair->second) +
                              " is unreachable from state " +
                              std::to_string(pair->first),
                          pair->first, pair->second);
  }
  const int n = m.size();
  Eigen::MatrixXd system(n + 1, n);
  system.topRows(n) =
      Eigen::MatrixXd::Identity(n, n) - m.entries().transpose();
  system.row(n).setOnes();
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n + 1);
  rhs[n] = 1.0;
  Eigen::VectorXd pi = system.colPivHouseholderQr().solve(rhs);
  // Roundoff can leave entries of order 1e-17 below zero.
  pi = pi.cwiseMax(0.0);
  return pi / pi.sum();
}

double MaxDetailedBalanceViolation(const StochasticMatrix& m,
                                   const Eigen::VectorXd& pi) {
  CheckSquareVector(m, pi, "measure");
  double worst = 0.0;
  for (int s = 0; s < m.size(); ++s) {
    for (int r = s + 1; r < m.size(); ++r) {
      worst = std::max(worst, std::abs(pi[s] * m(s, r) - pi[r] * m(r, s)));
    }
  }
  return worst;
}

ExplorationChain CheckExploration(const StochasticMatrix& m0) {
  Eigen::VectorXd pi0 = InvariantMeasure(m0);
  const double violation = MaxDetailedBalanceViolation(m0, pi0);
  if (violation > kDetailedBalanceTolerance) {
    throw ReversibilityError(
        "exploration matrix is not reversible: detailed balance violated by " +
            std::to_string(violation),
        violation);
  }
  return ExplorationChain(m0, std::move(pi0));
}

Eigen::VectorXd GibbsInvariant(const ExplorationChain& chain, double beta,
                               const Eigen::VectorXd& score) {
  const Eigen::VectorXd exponent = beta * score;
  const double shift = exponent.maxCoeff();
  Eigen::VectorXd weights =
      chain.pi0().cwiseProduct((exponent.array() - shift).exp().matrix());
  return weights / weights.sum();
}

GibbsChain GibbsMatrix(const ExplorationChain& chain, double beta,
                       const Eigen::VectorXd& score) {
  if (!(beta >= 0.0) || !std::isfinite(beta)) {
    throw DomainError("beta must be finite and nonnegative");
  }
  if (score.size() != chain.size()) {
    throw ShapeError("score has " + std::to_string(score.size()) +
                     " entries for a chain on " + std::to_string(chain.size()) +
                     " states");
  }
  if (!score.allFinite()) throw DomainError("score must be finite");

  const int n = chain.size();
  const Eigen::MatrixXd& m0 = chain.m0().entries();
  Eigen::MatrixXd m(n, n);
  for (int s = 0; s < n; ++s) {
    double off_diagonal = 0.0;
    for (int r = 0; r < n; ++r) {
      if (r == s) continue;
      const double downhill = std::max(score[s] - score[r], 0.0);
      const double entry =
          m0(s, r) == 0.0 ? 0.0 : m0(s, r) * std::exp(-beta * downhill);
      m(s, r) = entry;
      off_diagonal += entry;
    }
    m(s, s) = std::max(1.0 - off_diagonal, 0.0);
  }
  return GibbsChain{StochasticMatrix(StochasticMatrix::Unchecked{}, std::move(m)),
                    GibbsInvariant(chain, beta, score), beta, score};
}

double SpectralGap(const StochasticMatrix& m, const Eigen::VectorXd& pi) {
  CheckSquareVector(m, pi, "invariant measure");
  const double violation = MaxDetailedBalanceViolation(m, pi);
  if (violation > kSpectralReversibilityTolerance) {
    throw DomainError("spectral gap needs a reversible chain; detailed "
                      "balance violated by " +
                      std::to_string(violation));
  }
  if (pi.minCoeff() <= 0.0) {
    throw DomainError("invariant measure must be strictly positive");
  }
  const int n = m.size();
  if (n == 1) return 1.0;
  const Eigen::VectorXd root = pi.cwiseSqrt();
  Eigen::MatrixXd sym = root.asDiagonal() * m.entries() *
                        root.cwiseInverse().asDiagonal();
  sym = 0.5 * (sym + sym.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
      sym, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("eigen-decomposition failed");
  }
  // Eigenvalues are sorted increasingly; the top one is 1.
  return 1.0 - solver.eigenvalues()[n - 2];
}

double DirichletForm(const StochasticMatrix& m, const Eigen::VectorXd& pi,
                     const Eigen::VectorXd& f) {
  CheckSquareVector(m, pi, "measure");
  CheckSquareVector(m, f, "function");
  double energy = 0.0;
  for (int s = 0; s < m.size(); ++s) {
    for (int r = 0; r < m.size(); ++r) {
      const double d = f[s] - f[r];
      energy += d * d * m(s, r) * pi[s];
    }
  }
  return 0.5 * energy;
}

double Variance(const Eigen::VectorXd& pi, const Eigen::VectorXd& f) {
  if (pi.size() != f.size()) {
    throw ShapeError("measure and function differ in length");
  }
  const double mean = pi.dot(f);
  return pi.dot(f.cwiseProduct(f)) - mean * mean;
}

PseudoInverse ComputePseudoInverse(const StochasticMatrix& m,
                                   const Eigen::VectorXd& pi) {
  CheckSquareVector(m, pi, "invariant measure");
  const int n = m.size();
  const Eigen::MatrixXd projector = Eigen::VectorXd::Ones(n) * pi.transpose();
  const Eigen::MatrixXd fundamental =
      Eigen::MatrixXd::Identity(n, n) - m.entries() + projector;
  Eigen::FullPivLU<Eigen::MatrixXd> lu(fundamental);
  if (!lu.isInvertible()) {
    throw NumericalError("I - M + Pi is singular; chain is numerically "
                         "reducible or pi is not its invariant measure");
  }
  return PseudoInverse{lu.inverse() - projector};
}

double PoissonResidual(const PseudoInverse& q, const StochasticMatrix& m,
                       const Eigen::VectorXd& pi) {
  CheckSquareVector(m, pi, "invariant measure");
  const int n = m.size();
  const Eigen::MatrixXd identity = Eigen::MatrixXd::Identity(n, n);
  const Eigen::MatrixXd target =
      identity - Eigen::VectorXd::Ones(n) * pi.transpose();
  const Eigen::MatrixXd generator = identity - m.entries();
  const double left = (q.q * generator - target).cwiseAbs().maxCoeff();
  const double right = (generator * q.q - target).cwiseAbs().maxCoeff();
  return std::max(left, right);
}

StochasticMatrix Kronecker(const StochasticMatrix& a, const StochasticMatrix& b) {
  const int na = a.size();
  const int nb = b.size();
  Eigen::MatrixXd product(na * nb, na * nb);
  for (int i = 0; i < na; ++i) {
    for (int j = 0; j < na; ++j) {
      product.block(i * nb, j * nb, nb, nb) = a(i, j) * b.entries();
    }
  }
  return StochasticMatrix(StochasticMatrix::Unchecked{}, std::move(product));
}

double GapLowerBound(const ExplorationChain& chain, double beta,
                     double k_bound) {
  return SpectralGap(chain.m0(), chain.pi0()) * std::exp(-2.0 * k_bound * beta);
}

}  // namespace markovplay
