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

#ifndef OBJGOAL_NN_CHECKPOINT_H_
#define OBJGOAL_NN_CHECKPOINT_H_

#include <filesystem>
#include <istream>
#include <ostream>

#include "objgoal/nn/mlp.h"

namespace objgoal::nn {

// Network checkpoint layout (all little-endian):
//
//   char[8]   magic "OGMLP001"
//   u32       number of layer sizes n
//   u32[n]    layer sizes, input first
//   u8        output activation (0 identity, 1 scaled tanh)
//   f64       output scale
//   per layer: f64[out*in] weight, row-major; f64[out] bias
inline constexpr char kMlpMagic[] = "OGMLP001";

void WriteMlp(std::ostream& out, const MlpSpec& spec, const MlpParams& params);

struct LoadedMlp {
  MlpSpec spec;
  MlpParams params;
};

LoadedMlp ReadMlp(std::istream& in);

void SaveMlp(const std::filesystem::path& path, const MlpSpec& spec,
             const MlpParams& params);
LoadedMlp LoadMlp(const std::filesystem::path& path);

}  // namespace objgoal::nn

#endif  // OBJGOAL_NN_CHECKPOINT_H_
