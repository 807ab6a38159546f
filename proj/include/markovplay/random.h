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

#ifndef MARKOVPLAY_RANDOM_H_
#define MARKOVPLAY_RANDOM_H_

#include <cstdint>
#include <random>

#include <Eigen/Dense>

namespace markovplay {

// Seedable 64-bit source with a bit-exact stream on every platform:
// std::mt19937_64 is fully specified by the standard, and uniforms are built
// from the top 53 bits rather than through a library distribution.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Independent substream for one player of one simulation.
  static Rng ForPlayer(std::uint64_t seed, int player);

  // Uniform on [0, 1).
  double Uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

 private:
  std::mt19937_64 engine_;
};

// SplitMix64 finaliser, used to decorrelate derived seeds.
std::uint64_t MixSeed(std::uint64_t value);

// Inverse-CDF sample in index order: the first index whose cumulative
// probability exceeds u. Zero-probability entries are never returned.
int SampleIndex(const Eigen::VectorXd& probabilities, double u);

}  // namespace markovplay

#endif  // MARKOVPLAY_RANDOM_H_
