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

#ifndef MARKOVPLAY_ERRORS_H_
#define MARKOVPLAY_ERRORS_H_

#include <stdexcept>
#include <string>

namespace markovplay {

// Dimension mismatch between tables, vectors or indices.
class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Argument outside the mathematical domain of an operation (non-finite
// payoffs, nonpositive probabilities, wrong game class...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A chain that is not irreducible. Carries one (from, to) pair with no path.
class StructuralError : public std::runtime_error {
 public:
  StructuralError(const std::string& what, int from, int to)
      : std::runtime_error(what), from_(from), to_(to) {}
  int from() const { return from_; }
  int to() const { return to_; }

 private:
  int from_;
  int to_;
};

// Detailed balance does not hold. Carries the largest violation.
class ReversibilityError : public std::runtime_error {
 public:
  ReversibilityError(const std::string& what, double max_violation)
      : std::runtime_error(what), max_violation_(max_violation) {}
  double max_violation() const { return max_violation_; }

 private:
  double max_violation_;
};

class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid configuration; the message starts with the offending path.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace markovplay

#endif  // MARKOVPLAY_ERRORS_H_
