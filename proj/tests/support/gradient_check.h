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

#ifndef OBJGOAL_TESTS_SUPPORT_GRADIENT_CHECK_H_
#define OBJGOAL_TESTS_SUPPORT_GRADIENT_CHECK_H_

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "objgoal/nn/mlp.h"

namespace objgoal::testing {

// errors smaller than this are ignored
inline constexpr double kAbsoluteTolerance = 1e-9;

inline double RelativeError(double a, double b) {
  const double numerator = std::max(0.0, std::abs(a - b) - kAbsoluteTolerance);
  const double denominator = std::abs(a) + std::abs(b) + kAbsoluteTolerance;
  return numerator / denominator;
}

struct GradientCheckResult {
  double max_relative_error = 0.0;
  int probes = 0;
};

// Compares the analytic gradient of <w, f(x)> against central finite
// differences on `probes` randomly chosen parameters. Only the forward pass is
// used on the finite-difference side.
inline GradientCheckResult CheckParameterGradients(const nn::MlpSpec& spec,
                                                   std::uint64_t seed,
                                                   int probes,
                                                   double step = 1e-6) {
  std::mt19937_64 rng(seed);
  nn::MlpParams params = nn::InitParams(spec, rng);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> input(spec.input_size());
  for (double& v : input) v = normal(rng);
  std::vector<double> weights(spec.output_size());
  for (double& v : weights) v = normal(rng);

  auto objective = [&](const nn::MlpParams& p) {
    std::vector<double> out = nn::MlpForward(p, spec, input);
    double total = 0.0;
    for (std::size_t i = 0; i < out.size(); ++i) total += weights[i] * out[i];
    return total;
  };

  nn::VectorBackwardResult analytic =
      nn::MlpBackward(params, spec, input, weights);
  std::vector<double> flat_grad = nn::Flatten(analytic.grads.layers);
  std::vector<double> flat = nn::Flatten(params.layers);
  std::uniform_int_distribution<std::size_t> pick(0, flat.size() - 1);

  GradientCheckResult result;
  nn::MlpParams probe = params;
  for (int i = 0; i < probes; ++i) {
    const std::size_t k = pick(rng);
    std::vector<double> shifted = flat;
    shifted[k] = flat[k] + step;
    nn::Unflatten(shifted, probe.layers);
    const double plus = objective(probe);
    shifted[k] = flat[k] - step;
    nn::Unflatten(shifted, probe.layers);
    const double minus = objective(probe);
    const double numeric = (plus - minus) / (2.0 * step);
    result.max_relative_error =
        std::max(result.max_relative_error, RelativeError(flat_grad[k], numeric));
    ++result.probes;
  }
  return result;
}

// Same comparison for the gradient with respect to the input.
inline GradientCheckResult CheckInputGradients(const nn::MlpSpec& spec,
                                               std::uint64_t seed, int probes,
                                               double step = 1e-6) {
  std::mt19937_64 rng(seed);
  const nn::MlpParams params = nn::InitParams(spec, rng);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> input(spec.input_size());
  for (double& v : input) v = normal(rng);
  std::vector<double> weights(spec.output_size());
  for (double& v : weights) v = normal(rng);
  auto objective = [&](const std::vector<double>& x) {
    std::vector<double> out = nn::MlpForward(params, spec, x);
    double total = 0.0;
    for (std::size_t i = 0; i < out.size(); ++i) total += weights[i] * out[i];
    return total;
  };
  const nn::VectorBackwardResult analytic =
      nn::MlpBackward(params, spec, input, weights);
  std::uniform_int_distribution<std::size_t> pick(0, input.size() - 1);
  GradientCheckResult result;
  for (int p = 0; p < probes; ++p) {
    const std::size_t k = pick(rng);
    std::vector<double> x = input;
    x[k] = input[k] + step;
    const double plus = objective(x);
    x[k] = input[k] - step;
    const double minus = objective(x);
    const double numeric = (plus - minus) / (2.0 * step);
    result.max_relative_error = std::max(
        result.max_relative_error, RelativeError(analytic.input_grad[k], numeric));
    ++result.probes;
  }
  return result;
}

}  // namespace objgoal::testing

#endif  // OBJGOAL_TESTS_SUPPORT_GRADIENT_CHECK_H_
