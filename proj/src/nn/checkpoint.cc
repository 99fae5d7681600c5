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

#include "objgoal/nn/checkpoint.h"

#include <fstream>
#include <string>

#include "objgoal/error.h"
#include "objgoal/io/binary_io.h"

namespace objgoal::nn {

void WriteMlp(std::ostream& out, const MlpSpec& spec, const MlpParams& params) {
  spec.Validate();
  CheckShapes(params, spec);
  io::WriteMagic(out, kMlpMagic);
  io::WriteU32(out, static_cast<std::uint32_t>(spec.layer_sizes.size()));
  for (int size : spec.layer_sizes) io::WriteU32(out, static_cast<std::uint32_t>(size));
  io::WriteU8(out, static_cast<std::uint8_t>(spec.output_activation));
  io::WriteF64(out, spec.output_scale);
  for (const Layer& layer : params.layers) {
    for (Eigen::Index r = 0; r < layer.weight.rows(); ++r) {
      for (Eigen::Index c = 0; c < layer.weight.cols(); ++c) {
        io::WriteF64(out, layer.weight(r, c));
      }
    }
    for (Eigen::Index r = 0; r < layer.bias.size(); ++r) io::WriteF64(out, layer.bias(r));
  }
}

LoadedMlp ReadMlp(std::istream& in) {
  io::ExpectMagic(in, kMlpMagic);
  LoadedMlp loaded;
  const std::uint32_t n = io::ReadU32(in);
  if (n < 2 || n > 64) throw Error("implausible layer count " + std::to_string(n));
  for (std::uint32_t i = 0; i < n; ++i) {
    loaded.spec.layer_sizes.push_back(static_cast<int>(io::ReadU32(in)));
  }
  const std::uint8_t act = io::ReadU8(in);
  if (act > 1) throw Error("unknown output activation " + std::to_string(act));
  loaded.spec.output_activation = static_cast<OutputActivation>(act);
  loaded.spec.output_scale = io::ReadF64(in);
  loaded.spec.Validate();
  loaded.params = ZeroParams(loaded.spec);
  for (Layer& layer : loaded.params.layers) {
    for (Eigen::Index r = 0; r < layer.weight.rows(); ++r) {
      for (Eigen::Index c = 0; c < layer.weight.cols(); ++c) {
        layer.weight(r, c) = io::ReadF64(in);
      }
    }
    for (Eigen::Index r = 0; r < layer.bias.size(); ++r) layer.bias(r) = io::ReadF64(in);
  }
  return loaded;
}

void SaveMlp(const std::filesystem::path& path, const MlpSpec& spec,
             const MlpParams& params) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  WriteMlp(out, spec, params);
}

LoadedMlp LoadMlp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  return ReadMlp(in);
}

}  // namespace objgoal::nn
