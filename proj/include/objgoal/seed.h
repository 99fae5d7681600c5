// Copyright 2026 The objgoal Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef OBJGOAL_SEED_H_
#define OBJGOAL_SEED_H_

#include <cstdint>

namespace objgoal {

// Independent RNG streams are carved out of one run seed with a splitmix64
// mix so that, e.g., evaluation never perturbs the training stream.
inline std::uint64_t DeriveSeed(std::uint64_t seed, std::uint64_t stream,
                                std::uint64_t index = 0) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1) +
                    0xbf58476d1ce4e5b9ULL * index;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

namespace stream {
inline constexpr std::uint64_t kAgentInit = 1;
inline constexpr std::uint64_t kTraining = 2;
inline constexpr std::uint64_t kEvaluation = 3;
inline constexpr std::uint64_t kCurriculum = 4;
inline constexpr std::uint64_t kBoundary = 5;
inline constexpr std::uint64_t kBonus = 6;
inline constexpr std::uint64_t kDataset = 7;
inline constexpr std::uint64_t kImaginer = 8;
}  // namespace stream

}  // namespace objgoal

#endif  // OBJGOAL_SEED_H_
