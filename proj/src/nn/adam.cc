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

#include "objgoal/nn/adam.h"

#include <cmath>
#include <string>

#include "objgoal/error.h"

namespace objgoal::nn {

AdamState AdamState::ZerosLike(const MlpParams& params, AdamConfig config) {
  AdamState state;
  state.first_moment = Gradients::ZerosLike(params).layers;
  state.second_moment = state.first_moment;
  state.config = config;
  return state;
}

void AdamStep(MlpParams& params, const Gradients& grads, AdamState& state,
              double lr) {
  if (!(lr >= 0.0) || !std::isfinite(lr)) {
    throw ConfigError("Adam learning rate must be finite and >= 0, got " +
                      std::to_string(lr));
  }
  const std::size_t n = params.layers.size();
  if (grads.layers.size() != n) {
    throw DimensionError("adam gradient layers", n, grads.layers.size());
  }
  if (state.first_moment.size() != n || state.second_moment.size() != n) {
    throw DimensionError("adam moment layers", n, state.first_moment.size());
  }
  for (std::size_t i = 0; i < n; ++i) {
    const Layer& g = grads.layers[i];
    const Layer& p = params.layers[i];
    if (g.weight.rows() != p.weight.rows() || g.weight.cols() != p.weight.cols() ||
        g.bias.size() != p.bias.size()) {
      throw DimensionError("adam gradient layer " + std::to_string(i),
                           p.weight.size() + p.bias.size(),
                           g.weight.size() + g.bias.size());
    }
    if (!g.weight.allFinite() || !g.bias.allFinite()) {
      throw NonFiniteError("non-finite gradient in layer " + std::to_string(i));
    }
  }

  const AdamConfig& c = state.config;
  state.step += 1;
  const double t = static_cast<double>(state.step);
  const double correction1 = 1.0 - std::pow(c.beta1, t);
  const double correction2 = 1.0 - std::pow(c.beta2, t);

  auto update = [&](auto& param, const auto& grad, auto& m, auto& v) {
    m = c.beta1 * m + (1.0 - c.beta1) * grad;
    v = c.beta2 * v + (1.0 - c.beta2) * grad.cwiseProduct(grad);
    param.array() -= lr * (m.array() / correction1) /
                     ((v.array() / correction2).sqrt() + c.epsilon);
  };
  for (std::size_t i = 0; i < n; ++i) {
    update(params.layers[i].weight, grads.layers[i].weight,
           state.first_moment[i].weight, state.second_moment[i].weight);
    update(params.layers[i].bias, grads.layers[i].bias,
           state.first_moment[i].bias, state.second_moment[i].bias);
  }
}

}  // namespace objgoal::nn
