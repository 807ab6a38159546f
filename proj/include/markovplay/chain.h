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

#ifndef MARKOVPLAY_CHAIN_H_
#define MARKOVPLAY_CHAIN_H_

#include <optional>
#include <utility>

#include <Eigen/Dense>

namespace markovplay {

inline constexpr double kRowSumTolerance = 1e-12;
inline constexpr double kDetailedBalanceTolerance = 1e-12;
// Entries at or below this are treated as structural zeros when building the
// transition digraph.
inline constexpr double kStructuralZero = 1e-15;

class StochasticMatrix;
struct GibbsChain;
class ExplorationChain;
GibbsChain GibbsMatrix(const ExplorationChain& chain, double beta,
                       const Eigen::VectorXd& score);
StochasticMatrix Kronecker(const StochasticMatrix& a, const StochasticMatrix& b);

// Square matrix with nonnegative entries and unit row sums.
class StochasticMatrix {
 public:
  // Throws ShapeError for non-square input and DomainError for negative,
  // non-finite entries or rows not summing to 1 within `tolerance`.
  explicit StochasticMatrix(Eigen::MatrixXd entries,
                            double tolerance = kRowSumTolerance);

  int size() const { return static_cast<int>(entries_.rows()); }
  double operator()(int from, int to) const { return entries_(from, to); }
  const Eigen::MatrixXd& entries() const { return entries_; }

 private:
  struct Unchecked {};
  StochasticMatrix(Unchecked, Eigen::MatrixXd entries)
      : entries_(std::move(entries)) {}

  friend GibbsChain GibbsMatrix(const ExplorationChain&, double,
                                const Eigen::VectorXd&);
  friend StochasticMatrix Kronecker(const StochasticMatrix&,
                                    const StochasticMatrix&);

  Eigen::MatrixXd entries_;
};

// An irreducible exploration matrix M0, reversible with respect to its
// invariant measure pi0. Only CheckExploration creates one.
class ExplorationChain {
 public:
  const StochasticMatrix& m0() const { return m0_; }
  const Eigen::VectorXd& pi0() const { return pi0_; }
  int size() const { return m0_.size(); }

 private:
  ExplorationChain(StochasticMatrix m0, Eigen::VectorXd pi0)
      : m0_(std::move(m0)), pi0_(std::move(pi0)) {}
  friend ExplorationChain CheckExploration(const StochasticMatrix& m0);

  StochasticMatrix m0_;
  Eigen::VectorXd pi0_;
};

// M[beta, R]: off-diagonal moves of M0 damped by exp(-beta |R(s) - R(r)|_+),
// with the Gibbs measure pi0(s) exp(beta R(s)) / Z as invariant.
struct GibbsChain {
  StochasticMatrix matrix;
  Eigen::VectorXd invariant;
  double beta;
  Eigen::VectorXd score;
};

struct PseudoInverse {
  Eigen::MatrixXd q;
};

// Certifies m0: irreducibility (StructuralError naming an unreachable pair),
// invariant measure, detailed balance (ReversibilityError with the largest
// violation).
ExplorationChain CheckExploration(const StochasticMatrix& m0);

// Returns some (from, to) with no directed path from -> to over entries
// above kStructuralZero, or nullopt when the chain is irreducible.
std::optional<std::pair<int, int>> FindUnreachablePair(const StochasticMatrix& m);

// Throws DomainError on a negative beta or a non-finite/mis-sized score.
GibbsChain GibbsMatrix(const ExplorationChain& chain, double beta,
                       const Eigen::VectorXd& score);

// Closed-form Gibbs measure pi0(s) exp(beta R(s)) / Z, evaluated with the
// maximum exponent factored out.
Eigen::VectorXd GibbsInvariant(const ExplorationChain& chain, double beta,
                               const Eigen::VectorXd& score);

// Unique left fixed point of an irreducible matrix, from the linear system
// (I - M^T) x = 0 with a normalisation row appended.
Eigen::VectorXd InvariantMeasure(const StochasticMatrix& m);

// max_{s,r} |pi(s) M(s,r) - pi(r) M(r,s)|.
double MaxDetailedBalanceViolation(const StochasticMatrix& m,
                                   const Eigen::VectorXd& pi);

// 1 - lambda_2 of the pi-symmetrised matrix D^{1/2} M D^{-1/2}. Throws
// DomainError when (m, pi) is not reversible within 1e-10.
double SpectralGap(const StochasticMatrix& m, const Eigen::VectorXd& pi);

// E(f, f) = 1/2 sum_{s,r} (f(s) - f(r))^2 M(s,r) pi(s).
double DirichletForm(const StochasticMatrix& m, const Eigen::VectorXd& pi,
                     const Eigen::VectorXd& f);

double Variance(const Eigen::VectorXd& pi, const Eigen::VectorXd& f);

// Zero-row-sum solution of Q(I - M) = (I - M)Q = I - Pi, computed as
// (I - M + Pi)^{-1} - Pi. Throws NumericalError when I - M + Pi is singular.
PseudoInverse ComputePseudoInverse(const StochasticMatrix& m,
                                   const Eigen::VectorXd& pi);

// Largest absolute entry of Q(I - M) - (I - Pi) and (I - M)Q - (I - Pi).
double PoissonResidual(const PseudoInverse& q, const StochasticMatrix& m,
                       const Eigen::VectorXd& pi);

// Product chain on pairs (s, r) indexed s * b.size() + r.
StochasticMatrix Kronecker(const StochasticMatrix& a, const StochasticMatrix& b);

// c * exp(-2 k_bound beta) with c the spectral gap of M0.
double GapLowerBound(const ExplorationChain& chain, double beta,
                     double k_bound);

}  // namespace markovplay

#endif  // MARKOVPLAY_CHAIN_H_
