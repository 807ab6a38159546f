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

#include "markovplay/random.h"

#include "markovplay/errors.h"

namespace markovplay {

std::uint64_t MixSeed(std::uint64_t value) {
  value += 0x9e3779b97f4a7c15ULL;
  value = (value ^ (value >> 30)) * 0xbf58476d1ce4e5b9ULL;
  value = (value ^ (value >> 27)) * 0x94d049bb133111ebULL;
  return value ^ (value >> 31);
}

Rng Rng::ForPlayer(std::uint64_t seed, int player) {
  return Rng(MixSeed(MixSeed(seed) + static_cast<std::uint64_t>(player) + 1));
}

int SampleIndex(const Eigen::VectorXd& probabilities, double u) {
  if (probabilities.size() == 0) throw ShapeError("empty distribution");
  double cumulative = 0.0;
  int last_positive = -1;
  for (Eigen::Index i = 0; i < probabilities.size(); ++i) {
    if (probabilities[i] <= 0.0) continue;
    cumulative += probabilities[i];
    last_positive = static_cast<int>(i);
    if (u < cumulative) return last_positive;
  }
  // u fell in the roundoff gap between the row total and 1.
  if (last_positive < 0) throw DomainError("distribution has no mass");
  return last_positive;
}

}  // namespace markovplay
