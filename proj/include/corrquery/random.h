// Copyright 2026 The corrquery Authors
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

#ifndef CORRQUERY_RANDOM_H_
#define CORRQUERY_RANDOM_H_

#include <cstdint>
#include <random>

namespace corrquery {

using Rng = std::mt19937_64;

// Seed for trial `index` of a sweep with `master_seed`: a SplitMix64 finalizer
// over the pair, so results do not depend on how trials are scheduled.
inline std::uint64_t TrialSeed(std::uint64_t master_seed, std::uint64_t index) {
  std::uint64_t z = master_seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Uniform integer in [0, bound).
inline std::uint64_t UniformBelow(Rng& rng, std::uint64_t bound) {
  return std::uniform_int_distribution<std::uint64_t>(0, bound - 1)(rng);
}

inline double UniformUnit(Rng& rng) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

}  // namespace corrquery

#endif  // CORRQUERY_RANDOM_H_
