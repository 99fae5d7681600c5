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

#ifndef OBJGOAL_NN_ADAM_H_
#define OBJGOAL_NN_ADAM_H_

#include <cstdint>
#include <vector>

#include "objgoal/nn/mlp.h"

namespace objgoal::nn {

struct AdamConfig {
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

struct AdamState {
  std::vector<Layer> first_moment;
  std::vector<Layer> second_moment;
  std::int64_t step = 0;
  AdamConfig config;

  static AdamState ZerosLike(const MlpParams& params, AdamConfig config = {});
};

// Bias-corrected Adam update, in place. Throws NonFiniteError naming the
// offending layer if any gradient entry is NaN/inf; params are untouched in
// that case. lr must be >= 0 (0 leaves params unchanged but advances step).
void AdamStep(MlpParams& params, const Gradients& grads, AdamState& state,
              double lr);

}  // namespace objgoal::nn

#endif  // OBJGOAL_NN_ADAM_H_
